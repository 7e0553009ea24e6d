#pragma once

#include <cstdint>
#include <vector>

#include "immunize/graph.hpp"
#include "immunize/wide_int.hpp"

namespace immunize::walks {

/// Per-node diagonal entries A^p(v,v) for p in {2,3,4,5,6,8}, plus the
/// derived closed-walk counts. Exact profiles hold integers; profiles built
/// from a graph summary hold real-valued W8 estimates instead (which may be
/// negative).
struct WalkProfile {
    enum class Source { exact, summary_estimate };

    Source source = Source::exact;
    node_id n = 0;

    std::vector<walk_int> diag2, diag3, diag4, diag5, diag6, diag8;

    // Filled by w8_closed_form / w6_closed_form on exact profiles.
    std::vector<walk_int> w8;
    std::vector<walk_int> w6;

    // Summary-estimate path.
    std::vector<double> w8_estimate;
    int32_t summary_t = 0;
    uint64_t summary_seed = 0;

    const std::vector<walk_int>& diag(int p) const;
    bool exact() const noexcept { return source == Source::exact; }
};

struct WalkOptions {
    enum class Mode { automatic, dense, sparse };
    Mode mode = Mode::automatic;
    // Hard bound for materializing dense A^2, A^3, A^4. Beyond it, exact
    // counting is refused (use sparse mode explicitly, or the summary path).
    node_id dense_limit = 20000;
};

// Exact diagonals. Only A^2, A^3, A^4 are materialized; higher diagonals
// come from row inner products: A^5(v,v) = <A^2 row, A^3 row>,
// A^6(v,v) = ||A^3 row||^2, A^8(v,v) = ||A^4 row||^2.
WalkProfile diagonal_powers(const Graph& g, const WalkOptions& opts = {});

// Number of closed 8-walks containing each node, assembled from the
// diagonal profile:
//   W8(v) = 8 A^8 - 8 A^2 A^6 - 8 A^3 A^5 - 4 (A^4)^2
//           + 8 A^2 (A^3)^2 + 8 (A^2)^2 A^4 - 2 (A^2)^4   (all at (v,v)).
// A negative value indicates a corrupted profile and raises logic_error.
std::vector<walk_int> w8_closed_form(const WalkProfile& profile);

// Closed 6-walk analogue, derived by the same rotation-class bookkeeping
// over segment types {2,2,2}, {2,4}, {3,3}, {6}:
//   W6(v) = 6 A^6 - 6 A^2 A^4 - 3 (A^3)^2 + 2 (A^2)^3.
std::vector<walk_int> w6_closed_form(const WalkProfile& profile);

struct BruteOptions {
    // Bound on n * max_degree^(p-1) enumeration work; the oracle is meant
    // for test-sized graphs only.
    double work_limit = 4e9;
};

// Test oracle: counts closed p-walks containing v by depth-first
// enumeration from every start vertex. Walks are linear sequences
// (x0,...,x_{p-1},x0); rotations with different start vertices count as
// distinct walks.
walk_int brute_walk_count(const Graph& g, node_id v, int p, const BruteOptions& opts = {});

// Same enumeration, one pass for all v.
std::vector<walk_int> brute_walk_counts_all(const Graph& g, int p, const BruteOptions& opts = {});

// W_p(S,G) = trace(A^p) - trace((A[-S])^p) for even p in {2,4,6,8}: the
// number of closed p-walks meeting S.
walk_int set_walk_count(const Graph& g, const NodeSet& s, int p, const WalkOptions& opts = {});

// trace(A^p) = sum of the profile's p-diagonal.
walk_int trace_power(const WalkProfile& profile, int p);

} // namespace immunize::walks
