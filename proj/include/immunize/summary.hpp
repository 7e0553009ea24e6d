#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "immunize/graph.hpp"
#include "immunize/walks.hpp"

namespace immunize::summary {

/// Random partition of V into t supernodes with all counts needed by the
/// W8 estimator: the weighted supernode adjacency C (diagonal 2*e_i so that
/// C^p(i,i) counts directed closed walk mass), its power diagonals, and the
/// per-supernode degree power sums behind alpha_p.
struct SummaryGraph {
    int32_t t = 0;
    node_id n = 0;
    uint64_t seed = 0;

    std::vector<int32_t> part;           // node -> supernode
    std::vector<int64_t> supernode_size; // n_i
    std::vector<int64_t> internal_edges; // e_i
    std::vector<int64_t> c;              // t x t row-major; c(i,i)=2e_i, c(i,j)=e_ij

    // cpow_diag[p][i] = C^p(i,i), p in {3..8}. Double-valued; exact while
    // magnitudes stay below 2^53.
    std::array<std::vector<double>, 9> cpow_diag;

    // degree_power_sums[p][i] = sum_{u in V_i} d(u)^p, p in {3..8}.
    std::array<std::vector<double>, 9> degree_power_sums;

    int64_t c_at(int32_t i, int32_t j) const {
        return c[static_cast<size_t>(i) * static_cast<size_t>(t) + static_cast<size_t>(j)];
    }
};

// Maximum t for the dense C^p computation.
inline constexpr int32_t kMaxSupernodes = 5000;

// Seeded random partition into exactly t non-empty parts (shuffle, then
// deal round-robin), one edge scan for all counts, then the C power
// diagonals. t = n yields the identity partition of singletons.
SummaryGraph build_summary(const Graph& g, int32_t t, uint64_t seed);

// The two phases of build_summary, exposed so the bench can time the t^3
// power computation separately.
SummaryGraph build_partition(const Graph& g, int32_t t, uint64_t seed);
void compute_power_diagonals(SummaryGraph& sg);

// alpha_p(v) = d(v)^p / sum_{u in part(v)} d(u)^p, defined as 0 when the
// denominator vanishes (all-isolated supernode). p in {3..8}.
double alpha(const SummaryGraph& sg, const Graph& g, node_id v, int p);

// W8 estimate per node: Theorem-style closed form with A^p(v,v) replaced by
// alpha_p(v) * C^p(i,i) for p >= 3 and A^2(v,v) = d(v). Estimates may be
// negative and are kept as-is; selection clamps them.
walks::WalkProfile estimate_w8(const SummaryGraph& sg, const Graph& g);

// Expected-adjacency reconstruction entry (diagnostic only; no algorithm
// consumes it).
double expected_adjacency(const SummaryGraph& sg, node_id u, node_id v);

// Debug dump: "i,j,weight" rows of C, and "node,supernode" partition rows.
void dump_summary_csv(const SummaryGraph& sg, std::ostream& edges_out, std::ostream& partition_out);

} // namespace immunize::summary
