#pragma once

#include <cstdint>

#include "immunize/graph.hpp"

namespace immunize {

// Seeded Erdos-Renyi G(n,p) via geometric skip sampling over the pair
// stream; O(n + m) expected time.
Graph gnp(node_id n, double p, uint64_t seed);

} // namespace immunize
