#include "rsl/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rsl/errors.hpp"

namespace rsl {

Candidates select_candidates(const std::vector<double>& taus, std::size_t n) {
    if (n < 1 || n > taus.size())
        throw ConfigError("candidate count must be in [1, wild count]");
    std::vector<std::size_t> order(taus.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return taus[a] < taus[b]; });
    Candidates c;
    c.positions.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n));
    c.threshold = taus[c.positions.back()];
    std::sort(c.positions.begin(), c.positions.end());
    return c;
}

std::vector<double> sgld_step(const std::vector<double>& x, const std::vector<double>& grad_e,
                              const std::vector<double>& cand_mean, const SynthConfig& cfg,
                              const std::vector<double>& noise) {
    if (x.size() != grad_e.size() || x.size() != cand_mean.size() || x.size() != noise.size())
        throw DimensionError("sgld_step: length mismatch");
    if (cfg.lambda < 0.0 || cfg.lambda > 1.0)
        throw ConfigError("lambda must be in [0,1]");
    if (cfg.step_size <= 0.0)
        throw ConfigError("step_size must be positive");
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(grad_e[i]))
            throw NumericalError("sgld_step: non-finite input");
        const double langevin = x[i] - 0.5 * cfg.step_size * grad_e[i] + noise[i];
        out[i] = cfg.lambda * langevin + (1.0 - cfg.lambda) * (cand_mean[i] - x[i]);
    }
    return out;
}

AdjList augment_adjacency(const AdjList& adj, std::size_t num_synth,
                          const std::vector<std::pair<std::size_t, std::size_t>>& wiring) {
    const std::size_t n = adj.n + num_synth;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < adj.n; ++i)
        for (std::size_t p = adj.indptr[i]; p < adj.indptr[i + 1]; ++p)
            if (adj.indices[p] >= i)
                edges.emplace_back(i, adj.indices[p]);
    for (const auto& [syn, cand] : wiring)
        edges.emplace_back(adj.n + syn, cand);
    return build_adjacency(n, edges);
}

DenseMatrix augment_features(const DenseMatrix& x, const DenseMatrix& synth) {
    if (synth.rows > 0 && synth.cols != x.cols)
        throw DimensionError("augment_features: width mismatch");
    DenseMatrix out(x.rows + synth.rows, x.cols);
    std::copy(x.data.begin(), x.data.end(), out.data.begin());
    std::copy(synth.data.begin(), synth.data.end(),
              out.data.begin() + static_cast<std::ptrdiff_t>(x.data.size()));
    return out;
}

SynthResult synthesize_nodes(const EnergyModel& model, const Graph& graph,
                             const DenseMatrix& x, const std::vector<std::size_t>& cand_nodes,
                             const SynthConfig& cfg) {
    if (cand_nodes.empty())
        throw ConfigError("synthesize_nodes: empty candidate set");
    if (x.rows != graph.num_nodes)
        throw DimensionError("synthesize_nodes: feature rows != node count");
    const std::size_t count = cfg.count > 0 ? cfg.count : cand_nodes.size();
    const std::size_t dim = x.cols;
    const std::size_t k = std::min(cfg.knn_k, cand_nodes.size());
    if (k == 0)
        throw ConfigError("synthesize_nodes: knn_k must be >= 1");

    Rng rng(cfg.seed);
    SynthResult result;
    result.features = DenseMatrix(count, dim);
    for (double& v : result.features.data)
        v = rng.normal();

    // wire each synthetic node to its k nearest candidates on the initial
    // features; wiring stays fixed across SGLD steps
    for (std::size_t j = 0; j < count; ++j) {
        std::vector<std::pair<double, std::size_t>> dists;
        for (std::size_t c : cand_nodes) {
            double d2 = 0.0;
            for (std::size_t f = 0; f < dim; ++f) {
                const double d = result.features(j, f) - x(c, f);
                d2 += d * d;
            }
            dists.emplace_back(d2, c);
        }
        std::sort(dists.begin(), dists.end());
        for (std::size_t i = 0; i < k; ++i)
            result.edges.emplace_back(j, dists[i].second);
    }

    AdjList aug = augment_adjacency(graph.adj, count, result.edges);
    CsrMatrix a_hat = normalize_adjacency(aug);

    std::vector<double> cand_mean(dim, 0.0);
    for (std::size_t c : cand_nodes)
        for (std::size_t f = 0; f < dim; ++f)
            cand_mean[f] += x(c, f);
    for (double& v : cand_mean)
        v /= static_cast<double>(cand_nodes.size());

    for (std::size_t step = 0; step < cfg.steps; ++step) {
        DenseMatrix x_aug = augment_features(x, result.features);
        for (std::size_t j = 0; j < count; ++j) {
            std::vector<double> coeffs(x_aug.rows, 0.0);
            coeffs[graph.num_nodes + j] = 1.0;
            DenseMatrix dx = energy_input_gradient(model, a_hat, x_aug, coeffs);

            std::vector<double> xj(dim), grad(dim), noise(dim);
            for (std::size_t f = 0; f < dim; ++f) {
                xj[f] = result.features(j, f);
                grad[f] = dx(graph.num_nodes + j, f);
                noise[f] = cfg.noise_std > 0.0 ? rng.normal(0.0, cfg.noise_std) : 0.0;
            }
            std::vector<double> next = sgld_step(xj, grad, cand_mean, cfg, noise);
            for (std::size_t f = 0; f < dim; ++f)
                result.features(j, f) = next[f];
        }
    }
    return result;
}

}  // namespace rsl
