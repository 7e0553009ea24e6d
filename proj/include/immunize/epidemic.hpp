#pragma once

#include <cstdint>
#include <vector>

#include "immunize/graph.hpp"
#include "immunize/spectral.hpp"

namespace immunize::epidemic {

enum class Model { sir, sis };

struct SimConfig {
    double beta = 0.0;  // infection probability per infected contact per step
    double delta = 0.0; // recovery probability per step
    int steps = 1;
    Model model = Model::sir;
    int runs = 1;
    uint64_t seed = 0;
    NodeSet immunized; // removed from the graph before simulation
};

struct SimTrace {
    // Fraction of remaining (non-immunized) nodes infected at each step,
    // length steps+1, averaged over runs.
    std::vector<double> infected_fraction;
    // s = lambda_max(immunized graph) * beta / delta; +inf when delta = 0
    // and the product is positive.
    double virus_strength = 0.0;
    // Diagnostic: total susceptible->infected transitions over all runs.
    int64_t s_to_i_transitions = 0;
};

// s = lambda_max(G - s_nodes) * beta / delta. delta must be positive.
double virus_strength(const Graph& g, const NodeSet& s_nodes, double beta, double delta,
                      const spectral::PowerOptions& opts = {});

// Discrete-time synchronous SIR/SIS on the immunized graph. All remaining
// nodes start infected. Per step, from the step-start state: a susceptible
// node with c infected neighbors becomes infected with probability
// 1-(1-beta)^c; an infected node recovers with probability delta (SIR:
// removed, SIS: susceptible). Runs use independent (seed, run) RNG streams;
// results are deterministic for a fixed seed.
SimTrace simulate(const Graph& g, const SimConfig& cfg, const spectral::PowerOptions& opts = {});

} // namespace immunize::epidemic
