#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "immunize/graph.hpp"
#include "immunize/spectral.hpp"
#include "immunize/walks.hpp"

namespace immunize::selection {

enum class Method { walk8, walk6, walk8_exact, netshield, greedy_exact, degree, random };

std::string method_name(Method m);

struct WalkSource {
    enum class Kind { none, exact, summary };
    Kind kind = Kind::none;
    int32_t t = 0;
    uint64_t seed = 0;
};

struct SelectionResult {
    NodeSet picked; // ordered by pick
    // Marginal gain recorded at each pick. Shield-based methods store the
    // Eq.-style marginal score; greedy-exact stores the lambda drop of the
    // step; degree stores the degree; random stores 0.
    std::vector<double> per_step_score;
    double gamma = 0.0;
    Method method = Method::walk8;
    WalkSource walk_source;
};

// Per-node weights the shield score and greedy run on: exact counts, or
// summary estimates with negatives clamped to 0 (a negative estimate
// squared would fake importance). p selects W8 or W6 on exact profiles.
std::vector<double> selection_weights(const walks::WalkProfile& profile, int p = 8);

// Shield value of S:
//   score_p(S) = gamma * sum_{v in S} W(v)^2
//                - sum_{ordered u,v in S} W(v) A(u,v) W(u)
// (each adjacent pair is counted in both orders). gamma must be positive.
double shield_score(const walks::WalkProfile& profile, const Graph& g, const NodeSet& s, double gamma,
                    int p = 8);

struct GreedyOptions {
    int p = 8;
    // Default gamma is the algorithm's own max_v W(v); the override exists
    // for the theorem-compliant gamma >= k * max W used by the property
    // suites.
    std::optional<double> gamma_override;
    // Re-gathers the penalty vector from scratch each round (the O(n k^2)
    // cost model) instead of incremental updates. Same picks either way;
    // the bench times this mode.
    bool naive_updates = false;
};

// Greedy shield-value maximization: k rounds of
//   score[j] = gamma W[j]^2 - 2 u[j] W[j],  u = A[:,S] W[S],
// picking the argmax with ties broken by lowest node id.
SelectionResult greedy_walk_select(const walks::WalkProfile& profile, const Graph& g, int k,
                                   const GreedyOptions& opts = {});

struct ExactGreedyOptions {
    node_id node_limit = 2000; // cost is O(k * n * power iteration)
    spectral::PowerOptions power;
};

// Reference greedy on the true objective: each step removes the node
// minimizing lambda_max of the remaining graph.
SelectionResult greedy_exact_eigen(const Graph& g, int k, const ExactGreedyOptions& opts = {});

// Eigenvector-based baseline: greedy maximization of
//   Sv(S) = sum_{i in S} 2 lambda u(i)^2 - sum_{i,j in S} A(i,j) u(i) u(j)
// with u the dominant eigenvector of the original graph.
SelectionResult netshield_select(const Graph& g, int k, const spectral::PowerOptions& opts = {});

enum class BaselineKind { degree, random };

// degree: top-k degrees (ties by id). random: uniform without replacement.
SelectionResult baseline_select(const Graph& g, int k, BaselineKind kind, uint64_t seed = 0);

} // namespace immunize::selection
