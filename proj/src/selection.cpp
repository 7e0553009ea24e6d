#include "immunize/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "immunize/rng.hpp"

namespace immunize::selection {

std::string method_name(Method m) {
    switch (m) {
    case Method::walk8: return "walk8";
    case Method::walk6: return "walk6";
    case Method::walk8_exact: return "walk8-exact";
    case Method::netshield: return "netshield";
    case Method::greedy_exact: return "greedy-exact";
    case Method::degree: return "degree";
    case Method::random: return "random";
    }
    return "?";
}

std::vector<double> selection_weights(const walks::WalkProfile& profile, int p) {
    size_t n = static_cast<size_t>(profile.n);
    std::vector<double> w(n);
    if (profile.exact()) {
        const std::vector<walk_int>* src = nullptr;
        if (p == 8)
            src = &profile.w8;
        else if (p == 6)
            src = &profile.w6;
        else
            throw DomainError("selection weights support p in {6,8}");
        if (src->size() != n)
            throw DomainError("profile is missing W" + std::to_string(p) +
                              " values; run the closed form first");
        for (size_t v = 0; v < n; ++v) w[v] = static_cast<double>((*src)[v]);
    } else {
        if (p != 8) throw DomainError("summary profiles carry W8 estimates only");
        for (size_t v = 0; v < n; ++v) w[v] = std::max(0.0, profile.w8_estimate[v]);
    }
    return w;
}

double shield_score(const walks::WalkProfile& profile, const Graph& g, const NodeSet& s, double gamma,
                    int p) {
    if (gamma <= 0.0) throw DomainError("shield score requires gamma > 0");
    if (profile.n != g.node_count()) throw DomainError("profile/graph node counts differ");
    s.check_valid_for(g);
    std::vector<double> w = selection_weights(profile, p);

    double square_term = 0.0;
    double pair_term = 0.0;
    const auto& nodes = s.order();
    for (size_t a = 0; a < nodes.size(); ++a) {
        double wa = w[static_cast<size_t>(nodes[a])];
        square_term += wa * wa;
        for (size_t b = a + 1; b < nodes.size(); ++b) {
            if (g.has_edge(nodes[a], nodes[b]))
                pair_term += 2.0 * wa * w[static_cast<size_t>(nodes[b])];
        }
    }
    return gamma * square_term - pair_term;
}

namespace {

int clamp_budget(int k, node_id n) {
    if (k < 0) throw DomainError("budget k must be non-negative");
    return std::min<int>(k, n);
}

} // namespace

SelectionResult greedy_walk_select(const walks::WalkProfile& profile, const Graph& g, int k,
                                   const GreedyOptions& opts) {
    if (profile.n != g.node_count()) throw DomainError("profile/graph node counts differ");
    size_t n = static_cast<size_t>(g.node_count());
    k = clamp_budget(k, g.node_count());

    std::vector<double> w = selection_weights(profile, opts.p);
    double gamma = 0.0;
    for (double x : w) gamma = std::max(gamma, x);
    if (opts.gamma_override) {
        if (*opts.gamma_override <= 0.0) throw DomainError("gamma override must be positive");
        gamma = *opts.gamma_override;
    }

    std::vector<double> w2(n);
    for (size_t i = 0; i < n; ++i) w2[i] = gamma * w[i] * w[i];

    SelectionResult result;
    result.gamma = gamma;
    if (opts.p == 6)
        result.method = Method::walk6;
    else
        result.method = profile.exact() ? Method::walk8_exact : Method::walk8;
    result.walk_source.kind = profile.exact() ? WalkSource::Kind::exact : WalkSource::Kind::summary;
    result.walk_source.t = profile.summary_t;
    result.walk_source.seed = profile.summary_seed;

    std::vector<char> in_set(n, 0);
    std::vector<double> penalty(n, 0.0); // u[j] = sum_{s in S} A(j,s) W[s]
    for (int step = 0; step < k; ++step) {
        if (opts.naive_updates) {
            // u <- A[:,S] * W[S], re-gathered per row as in the O(n|S|)
            // per-round cost model.
            for (size_t j = 0; j < n; ++j) {
                double acc = 0.0;
                for (node_id s : result.picked.order())
                    if (g.has_edge(static_cast<node_id>(j), s)) acc += w[static_cast<size_t>(s)];
                penalty[j] = acc;
            }
        }
        node_id best = -1;
        double best_score = 0.0;
        for (size_t j = 0; j < n; ++j) {
            if (in_set[j]) continue;
            double score = w2[j] - 2.0 * penalty[j] * w[j];
            if (best < 0 || score > best_score) {
                best = static_cast<node_id>(j);
                best_score = score;
            }
        }
        result.picked.add(best);
        result.per_step_score.push_back(best_score);
        in_set[static_cast<size_t>(best)] = 1;
        if (!opts.naive_updates)
            for (node_id nb : g.neighbors(best)) penalty[static_cast<size_t>(nb)] += w[static_cast<size_t>(best)];
    }
    return result;
}

SelectionResult greedy_exact_eigen(const Graph& g, int k, const ExactGreedyOptions& opts) {
    if (g.node_count() > opts.node_limit)
        throw CapabilityError("greedy-exact is bounded at n <= " + std::to_string(opts.node_limit) +
                              " nodes");
    k = clamp_budget(k, g.node_count());

    SelectionResult result;
    result.method = Method::greedy_exact;
    double current = spectral::lambda_max(g, opts.power).lambda_max;
    for (int step = 0; step < k; ++step) {
        node_id best = -1;
        double best_lambda = 0.0;
        for (node_id x = 0; x < g.node_count(); ++x) {
            if (result.picked.contains(x)) continue;
            NodeSet candidate(result.picked.order());
            candidate.add(x);
            double lam = spectral::lambda_max(remove_nodes(g, candidate), opts.power).lambda_max;
            if (best < 0 || lam < best_lambda) {
                best = x;
                best_lambda = lam;
            }
        }
        result.picked.add(best);
        result.per_step_score.push_back(current - best_lambda);
        current = best_lambda;
    }
    return result;
}

SelectionResult netshield_select(const Graph& g, int k, const spectral::PowerOptions& opts) {
    size_t n = static_cast<size_t>(g.node_count());
    k = clamp_budget(k, g.node_count());

    spectral::SpectralResult eig = spectral::lambda_max(g, opts);
    const std::vector<double>& u = eig.eigvec;
    double lam = eig.lambda_max;

    SelectionResult result;
    result.method = Method::netshield;
    std::vector<char> in_set(n, 0);
    std::vector<double> penalty(n, 0.0);
    for (int step = 0; step < k; ++step) {
        node_id best = -1;
        double best_score = 0.0;
        for (size_t j = 0; j < n; ++j) {
            if (in_set[j]) continue;
            double score = 2.0 * lam * u[j] * u[j] - 2.0 * penalty[j] * u[j];
            if (best < 0 || score > best_score) {
                best = static_cast<node_id>(j);
                best_score = score;
            }
        }
        result.picked.add(best);
        result.per_step_score.push_back(best_score);
        in_set[static_cast<size_t>(best)] = 1;
        for (node_id nb : g.neighbors(best)) penalty[static_cast<size_t>(nb)] += u[static_cast<size_t>(best)];
    }
    return result;
}

SelectionResult baseline_select(const Graph& g, int k, BaselineKind kind, uint64_t seed) {
    k = clamp_budget(k, g.node_count());
    SelectionResult result;
    if (kind == BaselineKind::degree) {
        result.method = Method::degree;
        std::vector<node_id> ids(static_cast<size_t>(g.node_count()));
        std::iota(ids.begin(), ids.end(), 0);
        std::stable_sort(ids.begin(), ids.end(),
                         [&](node_id a, node_id b) { return g.degree(a) > g.degree(b); });
        for (int i = 0; i < k; ++i) {
            result.picked.add(ids[static_cast<size_t>(i)]);
            result.per_step_score.push_back(static_cast<double>(g.degree(ids[static_cast<size_t>(i)])));
        }
    } else {
        result.method = Method::random;
        auto rng = make_rng(seed, /*stream=*/0xba5e);
        std::vector<node_id> ids(static_cast<size_t>(g.node_count()));
        std::iota(ids.begin(), ids.end(), 0);
        // Partial Fisher-Yates: first k slots are a uniform sample.
        for (int i = 0; i < k; ++i) {
            size_t j = static_cast<size_t>(i) +
                       static_cast<size_t>(uniform_below(rng, ids.size() - static_cast<size_t>(i)));
            std::swap(ids[static_cast<size_t>(i)], ids[j]);
            result.picked.add(ids[static_cast<size_t>(i)]);
            result.per_step_score.push_back(0.0);
        }
    }
    return result;
}

} // namespace immunize::selection
