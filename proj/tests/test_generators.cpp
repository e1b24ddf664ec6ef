#include <cmath>

#include "doctest.h"
#include "rsl/errors.hpp"
#include "rsl/generators.hpp"

using namespace rsl;

TEST_CASE("toy dataset determinism") {
    ToySpec s = default_toy_spec();
    s.seed = 123;
    auto a = make_toy_dataset(s);
    auto b = make_toy_dataset(s);
    CHECK(a.graph.features.data == b.graph.features.data);
    CHECK(a.masks.known_id == b.masks.known_id);
    CHECK(a.masks.val_in == b.masks.val_in);
    CHECK(a.ood_flags == b.ood_flags);
}

TEST_CASE("toy dataset spread 0 collapses to the centers") {
    ToySpec s = default_toy_spec();
    s.spread = 0.0;
    s.n_known = 3;
    s.n_wild_in = 3;
    s.n_wild_out = 3;
    auto d = make_toy_dataset(s);
    for (std::size_t i = 0; i < d.graph.num_nodes; ++i) {
        const auto& c = d.ood_flags[i] ? s.ood_center : s.id_center;
        for (std::size_t j = 0; j < s.dim; ++j)
            CHECK(d.graph.features(i, j) == c[j]);
    }
}

TEST_CASE("toy dataset is edgeless and splits correctly") {
    ToySpec s = default_toy_spec();
    auto d = make_toy_dataset(s);
    CHECK(d.graph.adj.num_directed_edges() == 0);
    CHECK(d.graph.num_nodes == 600);
    CHECK(d.masks.known_id.size() == 200);
    CHECK(d.masks.wild.size() == 400);
    // ceil(200/3) = 67 val per class
    CHECK(d.masks.val_in.size() == 67);
    CHECK(d.masks.val_out.size() == 67);
    CHECK(d.masks.test_in.size() == 133);
    CHECK(d.masks.test_out.size() == 133);
}

TEST_CASE("toy dataset rejects n_known = 0") {
    ToySpec s = default_toy_spec();
    s.n_known = 0;
    CHECK_THROWS_AS(make_toy_dataset(s), ConfigError);
}

TEST_CASE("sbm determinism") {
    SbmSpec s = default_sbm_spec();
    s.seed = 77;
    auto a = make_sbm_dataset(s);
    auto b = make_sbm_dataset(s);
    CHECK(a.graph.adj.indices == b.graph.adj.indices);
    CHECK(a.graph.features.data == b.graph.features.data);
    CHECK(a.masks.known_id == b.masks.known_id);
}

TEST_CASE("sbm p_in=1 p_out=0 gives disjoint cliques") {
    SbmSpec s;
    s.dim = 2;
    SbmBlock b0, b1;
    b0.size = 5; b0.is_ood = false; b0.center = {1, 0};
    b1.size = 5; b1.is_ood = true;  b1.center = {0, 1};
    s.blocks = {b0, b1};
    s.p_in = 1.0;
    s.p_out = 0.0;
    auto d = make_sbm_dataset(s);
    for (std::size_t i = 0; i < 10; ++i)
        for (std::size_t j = 0; j < 10; ++j) {
            if (i == j) continue;
            bool same_block = (i < 5) == (j < 5);
            CHECK(d.graph.adj.has_edge(i, j) == same_block);
        }
}

TEST_CASE("sbm invalid probability") {
    SbmSpec s = default_sbm_spec();
    s.p_in = 1.5;
    CHECK_THROWS_AS(make_sbm_dataset(s), ConfigError);
}

TEST_CASE("sbm p_in = p_out has equal densities within 3 sigma") {
    // two blocks of 40; within pairs = 2*C(40,2) = 1560, between pairs = 1600.
    // With p = 0.2 both are Binomial(n_pairs, p); compare rates over 10 trials.
    SbmSpec s;
    s.dim = 2;
    SbmBlock b0, b1;
    b0.size = 40; b0.is_ood = false; b0.center = {1, 0};
    b1.size = 40; b1.is_ood = true;  b1.center = {0, 1};
    s.blocks = {b0, b1};
    const double p = 0.2;
    s.p_in = p;
    s.p_out = p;
    double within = 0, between = 0;
    const double n_within = 2.0 * (40.0 * 39.0 / 2.0);
    const double n_between = 40.0 * 40.0;
    for (std::uint64_t trial = 0; trial < 10; ++trial) {
        s.seed = trial;
        auto d = make_sbm_dataset(s);
        for (std::size_t i = 0; i < 80; ++i)
            for (std::size_t k = d.graph.adj.indptr[i]; k < d.graph.adj.indptr[i + 1]; ++k) {
                std::size_t j = d.graph.adj.indices[k];
                if (j <= i) continue;
                if ((i < 40) == (j < 40)) within += 1;
                else between += 1;
            }
    }
    const double rate_within = within / (10.0 * n_within);
    const double rate_between = between / (10.0 * n_between);
    // 3-sigma band on the difference of two binomial rates
    const double sd = std::sqrt(p * (1 - p) * (1.0 / (10 * n_within) + 1.0 / (10 * n_between)));
    CHECK(std::abs(rate_within - rate_between) < 3.0 * sd);
}

TEST_CASE("sbm homophily_shift=1 swaps the densities") {
    SbmSpec s;
    s.dim = 2;
    SbmBlock b0, b1;
    b0.size = 5; b0.is_ood = false; b0.center = {1, 0};
    b1.size = 5; b1.is_ood = true;  b1.center = {0, 1};
    s.blocks = {b0, b1};
    s.p_in = 1.0;
    s.p_out = 0.0;
    s.homophily_shift = 1.0;
    auto d = make_sbm_dataset(s);
    // fully heterophilous: only between-block edges
    for (std::size_t i = 0; i < 10; ++i)
        for (std::size_t j = 0; j < 10; ++j) {
            if (i == j) continue;
            bool same_block = (i < 5) == (j < 5);
            CHECK(d.graph.adj.has_edge(i, j) == !same_block);
        }
}

TEST_CASE("sbm known fraction is 40 percent of ID") {
    SbmSpec s = default_sbm_spec();
    auto d = make_sbm_dataset(s);
    // 400 ID nodes -> 160 known
    CHECK(d.masks.known_id.size() == 160);
    CHECK(d.masks.wild.size() == 440);
    for (auto v : d.masks.known_id)
        CHECK(d.ood_flags[v] == 0);
}

TEST_CASE("default sbm spec shape") {
    SbmSpec s = default_sbm_spec();
    REQUIRE(s.blocks.size() == 3);
    CHECK_FALSE(s.blocks[0].is_ood);
    CHECK_FALSE(s.blocks[1].is_ood);
    CHECK(s.blocks[2].is_ood);
    std::size_t total = 0;
    for (const auto& b : s.blocks)
        total += b.size;
    CHECK(total == 600);
}
