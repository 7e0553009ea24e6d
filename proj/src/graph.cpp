#include "immunize/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace immunize {

Graph Graph::from_edges(node_id n, const std::vector<std::pair<node_id, node_id>>& edges,
                        std::vector<std::string> labels) {
    if (n < 0) throw DomainError("negative node count");
    if (!labels.empty() && static_cast<node_id>(labels.size()) != n)
        throw DomainError("label table size does not match node count");

    std::vector<std::vector<node_id>> adj(static_cast<size_t>(n));
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw DomainError("edge endpoint out of range");
        if (u == v) continue;
        adj[static_cast<size_t>(u)].push_back(v);
        adj[static_cast<size_t>(v)].push_back(u);
    }

    Graph g;
    g.n_ = n;
    g.labels_ = std::move(labels);
    g.offsets_.assign(static_cast<size_t>(n) + 1, 0);
    int64_t total = 0;
    for (node_id v = 0; v < n; ++v) {
        auto& nb = adj[static_cast<size_t>(v)];
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
        total += static_cast<int64_t>(nb.size());
        g.offsets_[static_cast<size_t>(v) + 1] = total;
    }
    g.adj_.reserve(static_cast<size_t>(total));
    for (node_id v = 0; v < n; ++v)
        g.adj_.insert(g.adj_.end(), adj[static_cast<size_t>(v)].begin(), adj[static_cast<size_t>(v)].end());
    g.m_ = total / 2;
    return g;
}

bool Graph::has_edge(node_id u, node_id v) const {
    check_node(u);
    check_node(v);
    if (degree(u) > degree(v)) std::swap(u, v);
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::string Graph::label(node_id v) const {
    check_node(v);
    if (labels_.empty()) return std::to_string(v);
    return labels_[static_cast<size_t>(v)];
}

void NodeSet::check_valid_for(const Graph& g) const {
    for (node_id v : order_)
        if (v < 0 || v >= g.node_count())
            throw DomainError("node set member out of range: " + std::to_string(v));
}

LoadResult load_edge_list(std::istream& in) {
    LoadStats stats;
    std::unordered_map<std::string, node_id> ids;
    std::vector<std::string> labels;
    std::vector<std::pair<node_id, node_id>> edges;

    auto intern = [&](const std::string& token) -> node_id {
        auto [it, inserted] = ids.emplace(token, static_cast<node_id>(labels.size()));
        if (inserted) labels.push_back(token);
        return it->second;
    };

    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;

        std::istringstream ls(line);
        std::string a, b, extra;
        if (!(ls >> a >> b)) throw ParseError("malformed edge line: expected two ids", line_no);
        if (ls >> extra) throw ParseError("malformed edge line: trailing token '" + extra + "'", line_no);

        ++stats.edge_lines;
        node_id u = intern(a);
        node_id v = intern(b);
        if (u == v) {
            ++stats.self_loops_dropped;
            continue;
        }
        edges.emplace_back(u, v);
    }

    if (stats.edge_lines == 0) throw IoError("empty input: no edge lines found");

    LoadResult result;
    node_id n = static_cast<node_id>(labels.size());
    result.graph = Graph::from_edges(n, edges, std::move(labels));
    int64_t non_loop_lines = stats.edge_lines - stats.self_loops_dropped;
    stats.duplicate_edges_dropped = non_loop_lines - result.graph.edge_count();
    result.stats = stats;
    return result;
}

LoadResult load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open input file: " + path);
    return load_edge_list(in);
}

Graph remove_nodes(const Graph& g, const NodeSet& s, std::vector<node_id>& new_to_old) {
    s.check_valid_for(g);
    node_id n = g.node_count();
    std::vector<node_id> old_to_new(static_cast<size_t>(n), -1);
    new_to_old.clear();
    for (node_id v = 0; v < n; ++v) {
        if (s.contains(v)) continue;
        old_to_new[static_cast<size_t>(v)] = static_cast<node_id>(new_to_old.size());
        new_to_old.push_back(v);
    }

    std::vector<std::pair<node_id, node_id>> edges;
    std::vector<std::string> labels;
    labels.reserve(new_to_old.size());
    for (node_id v : new_to_old) labels.push_back(g.label(v));
    for (node_id v : new_to_old) {
        node_id nv = old_to_new[static_cast<size_t>(v)];
        for (node_id w : g.neighbors(v)) {
            if (w <= v) continue;
            node_id nw = old_to_new[static_cast<size_t>(w)];
            if (nw >= 0) edges.emplace_back(nv, nw);
        }
    }
    return Graph::from_edges(static_cast<node_id>(new_to_old.size()), edges, std::move(labels));
}

Graph remove_nodes(const Graph& g, const NodeSet& s) {
    std::vector<node_id> unused;
    return remove_nodes(g, s, unused);
}

void check_valid(const Graph& g) {
    int64_t degree_sum = 0;
    for (node_id v = 0; v < g.node_count(); ++v) {
        auto nb = g.neighbors(v);
        degree_sum += static_cast<int64_t>(nb.size());
        node_id prev = -1;
        for (node_id w : nb) {
            if (w == v) throw std::logic_error("self-loop present");
            if (w <= prev) throw std::logic_error("neighbor list not strictly sorted");
            if (!g.has_edge(w, v)) throw std::logic_error("adjacency not symmetric");
            prev = w;
        }
    }
    if (degree_sum != 2 * g.edge_count()) throw std::logic_error("degree sum != 2m");
}

} // namespace immunize
