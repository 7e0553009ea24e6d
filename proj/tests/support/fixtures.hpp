#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "immunize/gnp.hpp"
#include "immunize/graph.hpp"
#include "immunize/rng.hpp"

namespace immunize::testsupport {

inline Graph make_path(node_id n) {
    std::vector<std::pair<node_id, node_id>> edges;
    for (node_id v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    return Graph::from_edges(n, edges);
}

inline Graph make_cycle(node_id n) {
    std::vector<std::pair<node_id, node_id>> edges;
    for (node_id v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
    return Graph::from_edges(n, edges);
}

// Star K_{1,leaves}; node 0 is the center.
inline Graph make_star(node_id leaves) {
    std::vector<std::pair<node_id, node_id>> edges;
    for (node_id v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
    return Graph::from_edges(leaves + 1, edges);
}

inline Graph make_complete(node_id n) {
    std::vector<std::pair<node_id, node_id>> edges;
    for (node_id v = 0; v < n; ++v)
        for (node_id w = v + 1; w < n; ++w) edges.emplace_back(v, w);
    return Graph::from_edges(n, edges);
}

inline Graph disjoint_union(const Graph& a, const Graph& b) {
    std::vector<std::pair<node_id, node_id>> edges;
    for (node_id v = 0; v < a.node_count(); ++v)
        for (node_id w : a.neighbors(v))
            if (w > v) edges.emplace_back(v, w);
    node_id off = a.node_count();
    for (node_id v = 0; v < b.node_count(); ++v)
        for (node_id w : b.neighbors(v))
            if (w > v) edges.emplace_back(v + off, w + off);
    return Graph::from_edges(a.node_count() + b.node_count(), edges);
}

inline bool is_connected(const Graph& g) {
    node_id n = g.node_count();
    if (n == 0) return true;
    std::vector<char> seen(static_cast<size_t>(n), 0);
    std::vector<node_id> stack{0};
    seen[0] = 1;
    node_id visited = 1;
    while (!stack.empty()) {
        node_id v = stack.back();
        stack.pop_back();
        for (node_id w : g.neighbors(v))
            if (!seen[static_cast<size_t>(w)]) {
                seen[static_cast<size_t>(w)] = 1;
                ++visited;
                stack.push_back(w);
            }
    }
    return visited == n;
}

// Random connected graph on n nodes by rejection over G(n,p), p drawn from
// [0.3, 0.9]. Dense enough that rejection terminates fast for n <= 12.
inline Graph random_connected(node_id n, uint64_t seed) {
    auto rng = make_rng(seed, /*stream=*/0xc0de);
    for (int attempt = 0;; ++attempt) {
        double p = 0.3 + 0.6 * uniform01(rng);
        Graph g = gnp(n, p, rng());
        if (is_connected(g)) return g;
        if (attempt > 10000) throw std::runtime_error("random_connected: rejection stuck");
    }
}

// The oracle corpus: `count` random connected graphs with 2 <= n <= 7.
inline std::vector<Graph> oracle_corpus(size_t count, uint64_t seed) {
    auto rng = make_rng(seed, /*stream=*/0xc02b);
    std::vector<Graph> graphs;
    graphs.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        node_id n = static_cast<node_id>(2 + uniform_below(rng, 6)); // 2..7
        graphs.push_back(random_connected(n, rng()));
    }
    return graphs;
}

// Paths, cycles, stars and complete graphs with up to max_n nodes.
inline std::vector<Graph> structured_fixtures(node_id max_n) {
    std::vector<Graph> graphs;
    for (node_id n = 2; n <= max_n; ++n) graphs.push_back(make_path(n));
    for (node_id n = 3; n <= max_n; ++n) graphs.push_back(make_cycle(n));
    for (node_id d = 1; d + 1 <= max_n; ++d) graphs.push_back(make_star(d));
    for (node_id n = 2; n <= max_n; ++n) graphs.push_back(make_complete(n));
    return graphs;
}

// Uniform k-subset of the graph's nodes.
inline NodeSet random_subset(const Graph& g, size_t k, std::mt19937_64& rng) {
    std::vector<node_id> ids(static_cast<size_t>(g.node_count()));
    for (node_id v = 0; v < g.node_count(); ++v) ids[static_cast<size_t>(v)] = v;
    shuffle_vec(ids, rng);
    NodeSet s;
    for (size_t i = 0; i < k && i < ids.size(); ++i) s.add(ids[i]);
    return s;
}

} // namespace immunize::testsupport
