#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "rsl/classifier.hpp"
#include "rsl/errors.hpp"
#include "rsl/graph.hpp"
#include "rsl/rng.hpp"
#include "rsl/synth.hpp"

using namespace rsl;

TEST_CASE("select_candidates basic ordering") {
    auto c = select_candidates({0.3, 0.1, 0.2}, 2);
    CHECK(c.positions == std::vector<std::size_t>{1, 2});
    CHECK(c.threshold == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("select_candidates tie-break by index") {
    auto c = select_candidates({0.5, 0.5, 0.5}, 2);
    CHECK(c.positions == std::vector<std::size_t>{0, 1});
    CHECK(c.threshold == 0.5);
}

TEST_CASE("select_candidates n = wild count and bounds") {
    auto c = select_candidates({0.2, 0.1}, 2);
    CHECK(c.positions == std::vector<std::size_t>{0, 1});
    CHECK(c.threshold == doctest::Approx(0.2).epsilon(1e-15));
    CHECK_THROWS_AS(select_candidates({0.1}, 2), ConfigError);
    CHECK_THROWS_AS(select_candidates({0.1}, 0), ConfigError);
}

TEST_CASE("select_candidates excluded nodes have tau >= T") {
    std::vector<double> taus = {0.9, 0.3, 0.3, 0.1, 0.8};
    auto c = select_candidates(taus, 3);
    CHECK(c.positions == std::vector<std::size_t>{1, 2, 3});
    CHECK(c.threshold == doctest::Approx(0.3).epsilon(1e-15));
    for (std::size_t i = 0; i < taus.size(); ++i)
        if (std::find(c.positions.begin(), c.positions.end(), i) == c.positions.end())
            CHECK(taus[i] >= c.threshold);
}

TEST_CASE("sgld_step literal boundary semantics") {
    SynthConfig cfg;
    cfg.step_size = 1.0;

    // lambda = 1, zero grad, zero noise -> unchanged
    cfg.lambda = 1.0;
    auto r1 = sgld_step({2.0}, {0.0}, {4.0}, cfg, {0.0});
    CHECK(r1[0] == 2.0);

    // lambda = 0 -> reflection mean - x
    cfg.lambda = 0.0;
    auto r0 = sgld_step({2.0}, {5.0}, {4.0}, cfg, {0.0});
    CHECK(r0[0] == doctest::Approx(2.0).epsilon(1e-15));

    // lambda = 0.5, x=2, grad=0, mean=4 -> 0.5*2 + 0.5*(4-2) = 2
    cfg.lambda = 0.5;
    auto rh = sgld_step({2.0}, {0.0}, {4.0}, cfg, {0.0});
    CHECK(rh[0] == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("sgld_step lambda=1 zero-noise equals plain gradient descent") {
    SynthConfig cfg;
    cfg.lambda = 1.0;
    cfg.step_size = 0.8;
    std::vector<double> x = {1.0, -2.0, 3.0};
    std::vector<double> g = {0.5, 0.25, -1.0};
    auto out = sgld_step(x, g, {0, 0, 0}, cfg, {0, 0, 0});
    auto gd = x;
    sgd_step(gd, g, cfg.step_size / 2.0);
    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK(out[i] == doctest::Approx(gd[i]).epsilon(1e-12));
}

TEST_CASE("sgld_step validates inputs") {
    SynthConfig cfg;
    cfg.lambda = 1.5;
    CHECK_THROWS_AS(sgld_step({1.0}, {0.0}, {0.0}, cfg, {0.0}), ConfigError);
    cfg.lambda = 0.5;
    CHECK_THROWS_AS(sgld_step({std::nan("")}, {0.0}, {0.0}, cfg, {0.0}), NumericalError);
}

namespace {

struct SynthFixture {
    Graph graph;
    CsrMatrix a_hat;
    EnergyModel model;
    std::vector<std::size_t> cands = {0, 1};

    SynthFixture() {
        graph.num_nodes = 4;
        graph.adj = build_adjacency(4, {{0, 1}, {1, 2}, {2, 3}});
        graph.features = DenseMatrix(4, 3);
        Rng rng(2);
        for (auto& v : graph.features.data)
            v = rng.normal();
        a_hat = normalize_adjacency(graph);
        Rng mr(7);
        model = init_energy_model(3, 5, 2, mr);
    }
};

}  // namespace

TEST_CASE("synthesize_nodes: steps=0 returns the seeded init, deterministic") {
    SynthFixture f;
    SynthConfig cfg;
    cfg.count = 2;
    cfg.steps = 0;
    cfg.seed = 11;
    auto a = synthesize_nodes(f.model, f.graph, f.graph.features, f.cands, cfg);
    auto b = synthesize_nodes(f.model, f.graph, f.graph.features, f.cands, cfg);
    CHECK(a.features.data == b.features.data);
    CHECK(a.features.rows == 2);
    CHECK(a.features.cols == 3);

    cfg.steps = 5;
    cfg.noise_std = 0.0;
    auto c = synthesize_nodes(f.model, f.graph, f.graph.features, f.cands, cfg);
    auto d = synthesize_nodes(f.model, f.graph, f.graph.features, f.cands, cfg);
    CHECK(c.features.data == d.features.data);
    // SGLD moved the features
    CHECK(c.features.data != a.features.data);
    // wiring is based on the init, so it matches the steps=0 run
    CHECK(c.edges == a.edges);
}

TEST_CASE("synthesize_nodes: knn_k=1 with one candidate wires everything to it") {
    SynthFixture f;
    SynthConfig cfg;
    cfg.count = 3;
    cfg.steps = 0;
    cfg.knn_k = 1;
    cfg.seed = 4;
    std::vector<std::size_t> one = {2};
    auto r = synthesize_nodes(f.model, f.graph, f.graph.features, one, cfg);
    REQUIRE(r.edges.size() == 3);
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(r.edges[j].first == j);
        CHECK(r.edges[j].second == 2);
    }
}

TEST_CASE("synthesize_nodes rejects an empty candidate set") {
    SynthFixture f;
    SynthConfig cfg;
    cfg.count = 1;
    CHECK_THROWS_AS(synthesize_nodes(f.model, f.graph, f.graph.features, {}, cfg), ConfigError);
}

TEST_CASE("augment_adjacency adds bidirectional wiring and self-loops") {
    SynthFixture f;
    std::vector<std::pair<std::size_t, std::size_t>> wiring = {{0, 1}, {1, 3}};
    auto aug = augment_adjacency(f.graph.adj, 2, wiring);
    CHECK(aug.n == 6);
    CHECK(aug.has_edge(4, 1));
    CHECK(aug.has_edge(1, 4));
    CHECK(aug.has_edge(5, 3));
    CHECK(aug.has_edge(3, 5));
    // original edges intact
    CHECK(aug.has_edge(0, 1));
    CHECK(aug.has_edge(2, 3));
}

TEST_CASE("augment_features stacks rows") {
    DenseMatrix x(2, 2);
    x(0, 0) = 1; x(1, 1) = 2;
    DenseMatrix s(1, 2);
    s(0, 0) = 9; s(0, 1) = 8;
    auto a = augment_features(x, s);
    CHECK(a.rows == 3);
    CHECK(a(0, 0) == 1);
    CHECK(a(2, 0) == 9);
    CHECK(a(2, 1) == 8);
}
