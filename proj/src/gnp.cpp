#include "immunize/gnp.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include "immunize/rng.hpp"

namespace immunize {

Graph gnp(node_id n, double p, uint64_t seed) {
    if (n < 0) throw DomainError("gnp: negative node count");
    if (p < 0.0 || p > 1.0) throw DomainError("gnp: p must lie in [0,1]");
    std::vector<std::pair<node_id, node_id>> edges;
    if (p > 0.0 && n > 1) {
        auto rng = make_rng(seed, /*stream=*/0x69e0);
        double log1mp = std::log(1.0 - p);
        if (p == 1.0) {
            for (node_id v = 1; v < n; ++v)
                for (node_id w = 0; w < v; ++w) edges.emplace_back(w, v);
        } else {
            // Batagelj-Brandes: jump over the linearized lower triangle with
            // geometric gaps.
            int64_t v = 1, w = -1;
            for (;;) {
                double r = 1.0 - uniform01(rng); // (0,1]
                w += 1 + static_cast<int64_t>(std::floor(std::log(r) / log1mp));
                while (w >= v && v < n) {
                    w -= v;
                    ++v;
                }
                if (v >= n) break;
                edges.emplace_back(static_cast<node_id>(w), static_cast<node_id>(v));
            }
        }
    }
    return Graph::from_edges(n, edges);
}

} // namespace immunize
