#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "immunize/errors.hpp"

namespace immunize {

using node_id = int32_t;

/// Immutable simple undirected graph in compressed sparse adjacency form.
/// Node ids are dense 0..n-1; neighbor lists are sorted, so adjacency
/// queries are O(log deg). Safe for unlimited concurrent readers.
class Graph {
public:
    Graph() = default;

    // Builds a graph from internal-id edge pairs. Self-loops and duplicate
    // edges are dropped. `labels`, when non-empty, must have size n and maps
    // internal ids back to external ids.
    static Graph from_edges(node_id n, const std::vector<std::pair<node_id, node_id>>& edges,
                            std::vector<std::string> labels = {});

    node_id node_count() const noexcept { return n_; }
    int64_t edge_count() const noexcept { return m_; }

    std::span<const node_id> neighbors(node_id v) const {
        check_node(v);
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }

    node_id degree(node_id v) const {
        check_node(v);
        return static_cast<node_id>(offsets_[v + 1] - offsets_[v]);
    }

    bool has_edge(node_id u, node_id v) const;

    // External label of a node; falls back to the decimal internal id for
    // synthetically built graphs.
    std::string label(node_id v) const;
    bool has_labels() const noexcept { return !labels_.empty(); }

private:
    void check_node(node_id v) const {
        if (v < 0 || v >= n_) throw DomainError("node id out of range: " + std::to_string(v));
    }

    node_id n_ = 0;
    int64_t m_ = 0;
    std::vector<int64_t> offsets_{0};
    std::vector<node_id> adj_;
    std::vector<std::string> labels_;
};

/// Ordered set of nodes; keeps the greedy pick order.
class NodeSet {
public:
    NodeSet() = default;
    explicit NodeSet(const std::vector<node_id>& nodes) {
        for (node_id v : nodes) add(v);
    }

    void add(node_id v) {
        if (!members_.insert(v).second) throw DomainError("duplicate node in set: " + std::to_string(v));
        order_.push_back(v);
    }

    bool contains(node_id v) const { return members_.count(v) != 0; }
    size_t size() const noexcept { return order_.size(); }
    bool empty() const noexcept { return order_.empty(); }
    const std::vector<node_id>& order() const noexcept { return order_; }

    // Throws when any member falls outside the graph's id range.
    void check_valid_for(const Graph& g) const;

private:
    std::unordered_set<node_id> members_;
    std::vector<node_id> order_;
};

struct LoadStats {
    int64_t edge_lines = 0;
    int64_t self_loops_dropped = 0;
    int64_t duplicate_edges_dropped = 0;
};

struct LoadResult {
    Graph graph;
    LoadStats stats;
};

// Reads a SNAP-style edge list: whitespace-separated id pairs (tab or
// space), '#' starts a comment line. Ids may be arbitrary tokens and get
// densely remapped in first-appearance order; the original tokens are kept
// as labels. Malformed lines raise ParseError with the line number; input
// with no edge lines raises IoError.
LoadResult load_edge_list(std::istream& in);
LoadResult load_edge_list_file(const std::string& path);

// Subgraph after deleting s and every incident edge. Remaining nodes are
// re-packed to 0..n-|s|-1 preserving relative order; labels carry over, so
// outputs can always be mapped back to external ids.
Graph remove_nodes(const Graph& g, const NodeSet& s);

// Same, also exposing the index remap (new id -> old id).
Graph remove_nodes(const Graph& g, const NodeSet& s, std::vector<node_id>& new_to_old);

// Test validator: checks symmetry, sortedness, simplicity and sum(deg)=2m.
// Throws std::logic_error on violation.
void check_valid(const Graph& g);

} // namespace immunize
