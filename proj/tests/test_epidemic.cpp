#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "immunize/epidemic.hpp"
#include "immunize/gnp.hpp"
#include "immunize/spectral.hpp"
#include "support/fixtures.hpp"

using namespace immunize;
namespace ts = immunize::testsupport;
using epidemic::Model;
using epidemic::SimConfig;

TEST_CASE("beta=0, delta=1 SIR collapses in one step") {
    Graph g = gnp(30, 0.2, 1);
    SimConfig cfg;
    cfg.beta = 0.0;
    cfg.delta = 1.0;
    cfg.steps = 4;
    cfg.runs = 2;
    auto trace = epidemic::simulate(g, cfg);
    CHECK(trace.infected_fraction[0] == 1.0);
    for (size_t t = 1; t < trace.infected_fraction.size(); ++t)
        CHECK(trace.infected_fraction[t] == 0.0);
    CHECK(trace.s_to_i_transitions == 0);
}

TEST_CASE("delta=0 keeps everyone infected forever") {
    Graph g = gnp(20, 0.3, 2);
    SimConfig cfg;
    cfg.beta = 0.5;
    cfg.delta = 0.0;
    cfg.steps = 10;
    auto trace = epidemic::simulate(g, cfg);
    for (double f : trace.infected_fraction) CHECK(f == 1.0);
    CHECK(std::isinf(trace.virus_strength));
}

TEST_CASE("SIR from all-infected decays monotonically with zero S->I events") {
    for (uint64_t seed = 0; seed < 10; ++seed) {
        Graph g = gnp(60, 0.1, seed);
        SimConfig cfg;
        cfg.beta = 0.6; // would spread fast if susceptibles existed
        cfg.delta = 0.25;
        cfg.steps = 80;
        cfg.runs = 1;
        cfg.seed = seed;
        cfg.model = Model::sir;
        auto trace = epidemic::simulate(g, cfg);
        CHECK(trace.s_to_i_transitions == 0);
        for (size_t t = 1; t < trace.infected_fraction.size(); ++t)
            CHECK(trace.infected_fraction[t] <= trace.infected_fraction[t - 1] + 1e-15);
    }
}

TEST_CASE("traces stay in [0,1] and reruns are exactly reproducible") {
    Graph g = gnp(80, 0.06, 3);
    SimConfig cfg;
    cfg.beta = 0.2;
    cfg.delta = 0.3;
    cfg.steps = 60;
    cfg.runs = 4;
    cfg.seed = 12345;
    cfg.model = Model::sis;
    auto a = epidemic::simulate(g, cfg);
    auto b = epidemic::simulate(g, cfg);
    CHECK(a.infected_fraction == b.infected_fraction);
    CHECK(a.s_to_i_transitions == b.s_to_i_transitions);
    for (double f : a.infected_fraction) {
        CHECK(f >= 0.0);
        CHECK(f <= 1.0);
    }
}

TEST_CASE("immunized nodes are removed before simulation") {
    Graph star = ts::make_star(4);
    SimConfig cfg;
    cfg.beta = 0.9;
    cfg.delta = 0.5;
    cfg.steps = 30;
    cfg.runs = 3;
    cfg.model = Model::sis;
    cfg.immunized.add(0); // center: remaining graph has no edges
    auto trace = epidemic::simulate(star, cfg);
    CHECK(trace.virus_strength == 0.0);
    // With no edges, nobody can be reinfected after recovering.
    CHECK(trace.infected_fraction.back() < 1.0);
    CHECK(trace.s_to_i_transitions == 0);

    NodeSet everyone;
    for (node_id v = 0; v < star.node_count(); ++v) everyone.add(v);
    cfg.immunized = everyone;
    auto empty = epidemic::simulate(star, cfg);
    for (double f : empty.infected_fraction) CHECK(f == 0.0);
}

TEST_CASE("virus strength identities") {
    Graph star = ts::make_star(4);
    NodeSet center;
    center.add(0);
    CHECK(epidemic::virus_strength(star, center, 0.3, 0.7) == 0.0);

    Graph k2 = ts::make_complete(2);
    CHECK(epidemic::virus_strength(k2, NodeSet{}, 0.2, 0.2) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(epidemic::virus_strength(k2, NodeSet{}, 0.2, 0.0), DomainError);

    // The trace's s must agree with the op on the immunized graph.
    SimConfig cfg;
    cfg.beta = 0.4;
    cfg.delta = 0.2;
    cfg.steps = 5;
    cfg.immunized = center;
    auto trace = epidemic::simulate(star, cfg);
    CHECK(trace.virus_strength == epidemic::virus_strength(star, center, cfg.beta, cfg.delta));
}

TEST_CASE("SIS below the threshold dies out on K2") {
    // s = lambda * beta / delta = 1 * 0.1 / 0.2 = 0.5
    Graph k2 = ts::make_complete(2);
    SimConfig cfg;
    cfg.beta = 0.1;
    cfg.delta = 0.2;
    cfg.steps = 2000;
    cfg.runs = 3;
    cfg.model = Model::sis;
    cfg.seed = 7;
    auto trace = epidemic::simulate(k2, cfg);
    CHECK(trace.virus_strength == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(trace.infected_fraction.back() == 0.0);
}

TEST_CASE("SIS threshold behavior at desk scale") {
    // Lighter version of the acceptance check: 6 seeds, G(200, 0.05).
    int die_out = 0, persist = 0;
    const int kSeeds = 6;
    for (int seed = 0; seed < kSeeds; ++seed) {
        Graph g = gnp(200, 0.05, static_cast<uint64_t>(seed));
        double lam = spectral::lambda_max(g).lambda_max;
        REQUIRE(lam > 0.0);

        SimConfig weak;
        weak.model = Model::sis;
        weak.delta = 0.5;
        weak.beta = 0.5 * weak.delta / lam; // s = 0.5
        weak.steps = 3000;
        weak.runs = 1;
        weak.seed = static_cast<uint64_t>(seed);
        if (epidemic::simulate(g, weak).infected_fraction.back() == 0.0) ++die_out;

        SimConfig strong;
        strong.model = Model::sis;
        strong.delta = 0.2;
        strong.beta = std::min(1.0, 5.0 * strong.delta / lam); // s = 5
        strong.steps = 3000;
        strong.runs = 1;
        strong.seed = static_cast<uint64_t>(seed);
        if (epidemic::simulate(g, strong).infected_fraction.back() > 0.0) ++persist;
    }
    CHECK(die_out >= kSeeds - 1);
    CHECK(persist >= kSeeds - 1);
}

TEST_CASE("config validation") {
    Graph g = ts::make_complete(2);
    SimConfig cfg;
    cfg.beta = 1.5;
    CHECK_THROWS_AS(epidemic::simulate(g, cfg), DomainError);
    cfg.beta = 0.5;
    cfg.delta = -0.1;
    CHECK_THROWS_AS(epidemic::simulate(g, cfg), DomainError);
    cfg.delta = 0.5;
    cfg.steps = 0;
    CHECK_THROWS_AS(epidemic::simulate(g, cfg), DomainError);
    cfg.steps = 5;
    cfg.runs = 0;
    CHECK_THROWS_AS(epidemic::simulate(g, cfg), DomainError);
}
