#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "immunize/graph.hpp"
#include "immunize/gnp.hpp"
#include "support/fixtures.hpp"

using namespace immunize;
namespace ts = immunize::testsupport;

TEST_CASE("loads a triangle from an edge list") {
    std::istringstream in("0 1\n1 2\n2 0");
    LoadResult r = load_edge_list(in);
    CHECK(r.graph.node_count() == 3);
    CHECK(r.graph.edge_count() == 3);
    CHECK(r.stats.edge_lines == 3);
    check_valid(r.graph);
}

TEST_CASE("drops self-loops and duplicate edges with counts") {
    std::istringstream in("0 0\n0 1\n0 1");
    LoadResult r = load_edge_list(in);
    CHECK(r.graph.node_count() == 2);
    CHECK(r.graph.edge_count() == 1);
    CHECK(r.stats.self_loops_dropped == 1);
    CHECK(r.stats.duplicate_edges_dropped == 1);
}

TEST_CASE("reversed duplicates collapse too") {
    std::istringstream in("a b\nb a\n");
    LoadResult r = load_edge_list(in);
    CHECK(r.graph.edge_count() == 1);
    CHECK(r.stats.duplicate_edges_dropped == 1);
}

TEST_CASE("accepts comments, tabs and string ids; keeps labels") {
    std::istringstream in("# a comment\n42\t7\n7 x9\n");
    LoadResult r = load_edge_list(in);
    CHECK(r.graph.node_count() == 3);
    CHECK(r.graph.edge_count() == 2);
    // first-appearance remap
    CHECK(r.graph.label(0) == "42");
    CHECK(r.graph.label(1) == "7");
    CHECK(r.graph.label(2) == "x9");
}

TEST_CASE("malformed lines report the line number") {
    std::istringstream one_token("0 1\nbroken\n");
    CHECK_THROWS_AS(load_edge_list(one_token), ParseError);
    try {
        std::istringstream again("0 1\nbroken\n");
        load_edge_list(again);
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    std::istringstream three_tokens("0 1 9\n");
    CHECK_THROWS_AS(load_edge_list(three_tokens), ParseError);
}

TEST_CASE("empty input is an error") {
    std::istringstream in("# only a comment\n\n");
    CHECK_THROWS_AS(load_edge_list(in), IoError);
}

TEST_CASE("removing the star center isolates the leaves") {
    Graph star = ts::make_star(4);
    NodeSet s;
    s.add(0);
    Graph rest = remove_nodes(star, s);
    CHECK(rest.node_count() == 4);
    CHECK(rest.edge_count() == 0);
}

TEST_CASE("removing one triangle node leaves a single edge") {
    Graph tri = ts::make_complete(3);
    NodeSet s;
    s.add(1);
    Graph rest = remove_nodes(tri, s);
    CHECK(rest.node_count() == 2);
    CHECK(rest.edge_count() == 1);
    CHECK(rest.has_edge(0, 1));
}

TEST_CASE("removing a path leaf keeps the other edge") {
    Graph p3 = ts::make_path(3);
    NodeSet s;
    s.add(0);
    Graph rest = remove_nodes(p3, s);
    CHECK(rest.node_count() == 2);
    CHECK(rest.edge_count() == 1);
}

TEST_CASE("removing the empty set is the identity") {
    Graph g = gnp(30, 0.2, 7);
    Graph rest = remove_nodes(g, NodeSet{});
    REQUIRE(rest.node_count() == g.node_count());
    CHECK(rest.edge_count() == g.edge_count());
    for (node_id v = 0; v < g.node_count(); ++v) {
        auto a = g.neighbors(v);
        auto b = rest.neighbors(v);
        REQUIRE(a.size() == b.size());
        for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    }
}

TEST_CASE("removal is order-insensitive") {
    Graph g = gnp(25, 0.25, 11);
    NodeSet fwd, rev;
    for (node_id v : {3, 9, 17}) fwd.add(v);
    for (node_id v : {17, 9, 3}) rev.add(v);
    Graph a = remove_nodes(g, fwd);
    Graph b = remove_nodes(g, rev);
    REQUIRE(a.node_count() == b.node_count());
    CHECK(a.edge_count() == b.edge_count());
    for (node_id v = 0; v < a.node_count(); ++v) {
        auto na = a.neighbors(v);
        auto nb = b.neighbors(v);
        REQUIRE(na.size() == nb.size());
        for (size_t i = 0; i < na.size(); ++i) CHECK(na[i] == nb[i]);
    }
}

TEST_CASE("removal keeps external labels") {
    std::istringstream in("a b\nb c\nc a\n");
    Graph g = load_edge_list(in).graph;
    NodeSet s;
    s.add(0); // "a"
    Graph rest = remove_nodes(g, s);
    CHECK(rest.label(0) == "b");
    CHECK(rest.label(1) == "c");
}

TEST_CASE("degree fixtures and range checks") {
    Graph k2 = ts::make_complete(2);
    CHECK(k2.degree(0) == 1);
    CHECK(k2.degree(1) == 1);
    Graph star = ts::make_star(4);
    CHECK(star.degree(0) == 4);
    Graph lonely = ts::disjoint_union(k2, Graph::from_edges(1, {}));
    CHECK(lonely.degree(2) == 0);
    CHECK_THROWS_AS(star.degree(99), DomainError);
    CHECK_THROWS_AS(star.degree(-1), DomainError);
}

TEST_CASE("node set rejects duplicates and out-of-range members") {
    NodeSet s;
    s.add(1);
    CHECK_THROWS_AS(s.add(1), DomainError);
    Graph k2 = ts::make_complete(2);
    NodeSet bad;
    bad.add(5);
    CHECK_THROWS_AS(bad.check_valid_for(k2), DomainError);
    CHECK_THROWS_AS(remove_nodes(k2, bad), DomainError);
}

TEST_CASE("random graphs satisfy the structural invariants") {
    for (uint64_t seed = 0; seed < 20; ++seed) {
        Graph g = gnp(40, 0.15, seed);
        check_valid(g); // symmetry, sortedness, simplicity, sum(deg)=2m
    }
}
