#include <cmath>

#include "doctest.h"
#include "rsl/errors.hpp"
#include "rsl/graph.hpp"
#include "rsl/nn.hpp"
#include "rsl/rng.hpp"

using namespace rsl;

TEST_CASE("linear_forward hand value") {
    DenseMatrix x(1, 2);
    x(0, 0) = 1; x(0, 1) = 2;
    DenseMatrix w(1, 2);  // out x in
    w(0, 0) = 3; w(0, 1) = 4;
    auto h = linear_forward(x, w);
    REQUIRE(h.rows == 1);
    REQUIRE(h.cols == 1);
    CHECK(h(0, 0) == 11);
}

TEST_CASE("mse_align_loss hand value: H=[[0]], e=[1]") {
    DenseMatrix h(1, 1);
    std::vector<double> e = {1.0};
    auto lg = mse_align_loss(h, e);
    CHECK(lg.loss == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(lg.grad(0, 0) == doctest::Approx(-2.0).epsilon(1e-15));
}

TEST_CASE("mse_align_loss averages over rows and cols") {
    DenseMatrix h(2, 2);
    h(0, 0) = 1; h(0, 1) = 1; h(1, 0) = 1; h(1, 1) = 1;
    DenseMatrix t(2, 2);  // zeros
    auto lg = mse_align_loss(h, t);
    CHECK(lg.loss == doctest::Approx(1.0).epsilon(1e-15));
    for (double g : lg.grad.data)
        CHECK(g == doctest::Approx(2.0 / 4.0).epsilon(1e-15));
}

TEST_CASE("mse_align_loss gradient matches finite differences") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t r = 1 + rng.uniform_index(4);
        std::size_t c = 1 + rng.uniform_index(4);
        DenseMatrix h(r, c), t(r, c);
        for (auto& v : h.data) v = rng.normal();
        for (auto& v : t.data) v = rng.normal();
        auto lg = mse_align_loss(h, t);
        const double eps = 1e-6;
        for (std::size_t k = 0; k < h.data.size(); ++k) {
            auto hp = h, hm = h;
            hp.data[k] += eps;
            hm.data[k] -= eps;
            double fd = (mse_align_loss(hp, t).loss - mse_align_loss(hm, t).loss) / (2 * eps);
            CHECK(lg.grad.data[k] == doctest::Approx(fd).epsilon(1e-4));
        }
    }
}

TEST_CASE("bce_loss hand values and stability") {
    // z=0, y=1 -> ln 2
    auto lg = bce_loss({0.0}, {1});
    CHECK(lg.loss == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(lg.grad[0] == doctest::Approx(-0.5).epsilon(1e-15));

    // huge logits stay finite
    auto big = bce_loss({40.0, -40.0}, {1, 0});
    CHECK(std::isfinite(big.loss));
    CHECK(big.loss < 1e-15);

    auto wrong = bce_loss({40.0}, {0});
    CHECK(wrong.loss == doctest::Approx(40.0).epsilon(1e-12));
}

TEST_CASE("bce_loss rejects labels outside 0/1") {
    CHECK_THROWS_AS(bce_loss({0.0}, {2}), ValidationError);
}

TEST_CASE("bce_loss gradient matches finite differences") {
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 1 + rng.uniform_index(6);
        std::vector<double> z(n);
        std::vector<int> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            z[i] = rng.normal() * 2;
            y[i] = rng.uniform() < 0.5 ? 0 : 1;
        }
        auto lg = bce_loss(z, y);
        const double eps = 1e-6;
        for (std::size_t i = 0; i < n; ++i) {
            auto zp = z, zm = z;
            zp[i] += eps;
            zm[i] -= eps;
            double fd = (bce_loss(zp, y).loss - bce_loss(zm, y).loss) / (2 * eps);
            CHECK(lg.grad[i] == doctest::Approx(fd).epsilon(1e-4));
        }
    }
}

TEST_CASE("sigmoid basics") {
    CHECK(sigmoid(0.0) == 0.5);
    CHECK(sigmoid(800.0) == doctest::Approx(1.0));
    CHECK(sigmoid(-800.0) == doctest::Approx(0.0));
    CHECK(sigmoid(-800.0) >= 0.0);
}

TEST_CASE("sgd_step hand value") {
    DenseMatrix p(1, 1), g(1, 1);
    p(0, 0) = 1.0;
    g(0, 0) = 2.0;
    sgd_step(p, g, 0.005);
    CHECK(p(0, 0) == doctest::Approx(0.99).epsilon(1e-15));
}

TEST_CASE("sgd_step rejects non-finite gradients") {
    DenseMatrix p(1, 1), g(1, 1);
    g(0, 0) = std::nan("");
    CHECK_THROWS_AS(sgd_step(p, g, 0.1), NumericalError);
}

TEST_CASE("init_weight bounds and determinism") {
    Rng a(4), b(4);
    auto w1 = init_weight(8, 16, a);
    auto w2 = init_weight(8, 16, b);
    CHECK(w1.data == w2.data);
    const double bound = 1.0 / std::sqrt(16.0);
    for (double v : w1.data) {
        CHECK(v >= -bound);
        CHECK(v <= bound);
    }
}

TEST_CASE("gcn_forward hand computation on a 2-node graph") {
    // A_hat all 0.5; X = [[2],[4]]; one layer W=[[1]] (no relu on last layer)
    Graph g;
    g.num_nodes = 2;
    g.adj = build_adjacency(2, {{0, 1}});
    auto a = normalize_adjacency(g);
    DenseMatrix x(2, 1);
    x(0, 0) = 2; x(1, 0) = 4;
    GcnParams params;
    DenseMatrix w(1, 1);
    w(0, 0) = 1.0;
    params.layer_weights = {w};
    auto layers = gcn_forward(a, x, params);
    REQUIRE(layers.size() == 1);
    CHECK(layers[0](0, 0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(layers[0](1, 0) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("gcn_forward applies relu on non-final layers") {
    Graph g;
    g.num_nodes = 1;
    g.adj = build_adjacency(1, {});
    auto a = normalize_adjacency(g);
    DenseMatrix x(1, 1);
    x(0, 0) = 1.0;
    GcnParams params;
    DenseMatrix w1(1, 1), w2(1, 1);
    w1(0, 0) = -2.0;  // produces -2, relu -> 0
    w2(0, 0) = 5.0;
    params.layer_weights = {w1, w2};
    auto layers = gcn_forward(a, x, params);
    REQUIRE(layers.size() == 2);
    CHECK(layers[0](0, 0) == 0.0);
    CHECK(layers[1](0, 0) == 0.0);
}
