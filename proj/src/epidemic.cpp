#include "immunize/epidemic.hpp"

#include <atomic>
#include <cmath>
#include <limits>

#include "immunize/parallel.hpp"
#include "immunize/rng.hpp"

namespace immunize::epidemic {

double virus_strength(const Graph& g, const NodeSet& s_nodes, double beta, double delta,
                      const spectral::PowerOptions& opts) {
    if (delta <= 0.0) throw DomainError("virus strength requires delta > 0");
    double lam = spectral::lambda_max(remove_nodes(g, s_nodes), opts).lambda_max;
    return lam * beta / delta;
}

namespace {

void validate(const SimConfig& cfg) {
    if (cfg.beta < 0.0 || cfg.beta > 1.0) throw DomainError("beta must lie in [0,1]");
    if (cfg.delta < 0.0 || cfg.delta > 1.0) throw DomainError("delta must lie in [0,1]");
    if (cfg.steps < 1) throw DomainError("steps must be >= 1");
    if (cfg.runs < 1) throw DomainError("runs must be >= 1");
}

enum : uint8_t { kSusceptible = 0, kInfected = 1, kRemoved = 2 };

// One run; accumulates infected counts per step into `counts`.
int64_t run_once(const Graph& h, const SimConfig& cfg, uint64_t run_index,
                 std::vector<int64_t>& counts) {
    size_t n = static_cast<size_t>(h.node_count());
    auto rng = make_rng(cfg.seed, /*stream=*/0xe91d + run_index);

    std::vector<uint8_t> state(n, kInfected), next(n);
    std::vector<int32_t> infected_neighbors(n);
    int64_t infected = static_cast<int64_t>(n);
    int64_t s_to_i = 0;
    counts[0] += infected;

    for (int t = 1; t <= cfg.steps; ++t) {
        if (infected == 0) break; // nothing left to recover or transmit
        std::fill(infected_neighbors.begin(), infected_neighbors.end(), 0);
        for (size_t v = 0; v < n; ++v)
            if (state[v] == kInfected)
                for (node_id w : h.neighbors(static_cast<node_id>(v)))
                    infected_neighbors[static_cast<size_t>(w)]++;

        next = state;
        for (size_t v = 0; v < n; ++v) {
            if (state[v] != kSusceptible) continue;
            int32_t c = infected_neighbors[v];
            if (c == 0) continue;
            double p_infect = 1.0 - std::pow(1.0 - cfg.beta, c);
            if (uniform01(rng) < p_infect) {
                next[v] = kInfected;
                ++infected;
                ++s_to_i;
            }
        }
        for (size_t v = 0; v < n; ++v) {
            if (state[v] != kInfected) continue;
            if (uniform01(rng) < cfg.delta) {
                next[v] = cfg.model == Model::sir ? kRemoved : kSusceptible;
                --infected;
            }
        }
        state.swap(next);
        counts[static_cast<size_t>(t)] += infected;
    }
    return s_to_i;
}

} // namespace

SimTrace simulate(const Graph& g, const SimConfig& cfg, const spectral::PowerOptions& opts) {
    validate(cfg);
    cfg.immunized.check_valid_for(g);
    Graph h = remove_nodes(g, cfg.immunized);
    size_t n = static_cast<size_t>(h.node_count());

    SimTrace trace;
    trace.infected_fraction.assign(static_cast<size_t>(cfg.steps) + 1, 0.0);

    double lam = spectral::lambda_max(h, opts).lambda_max;
    if (cfg.delta > 0.0)
        trace.virus_strength = lam * cfg.beta / cfg.delta;
    else
        trace.virus_strength =
            lam * cfg.beta > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;

    if (n == 0) return trace; // everyone immunized: fraction stays 0

    // Per-run count accumulators, reduced in run order afterwards so the
    // result is independent of scheduling.
    std::vector<std::vector<int64_t>> per_run(static_cast<size_t>(cfg.runs));
    std::vector<int64_t> transitions(static_cast<size_t>(cfg.runs), 0);
    parallel_for(
        static_cast<size_t>(cfg.runs),
        [&](size_t b, size_t e) {
            for (size_t r = b; r < e; ++r) {
                per_run[r].assign(static_cast<size_t>(cfg.steps) + 1, 0);
                transitions[r] = run_once(h, cfg, r, per_run[r]);
            }
        },
        /*min_chunk=*/1);

    for (size_t r = 0; r < per_run.size(); ++r) {
        trace.s_to_i_transitions += transitions[r];
        for (size_t t = 0; t < trace.infected_fraction.size(); ++t)
            trace.infected_fraction[t] += static_cast<double>(per_run[r][t]);
    }
    double scale = 1.0 / (static_cast<double>(cfg.runs) * static_cast<double>(n));
    for (double& x : trace.infected_fraction) x *= scale;
    return trace;
}

} // namespace immunize::epidemic
