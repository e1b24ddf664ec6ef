#pragma once

#include <cstdint>
#include <vector>

#include "rsl/classifier.hpp"
#include "rsl/dense.hpp"
#include "rsl/graph.hpp"
#include "rsl/rng.hpp"

namespace rsl {

struct CandidateConfig {
    std::size_t n = 2;
};

struct Candidates {
    std::vector<std::size_t> positions;  // indices into the tau vector, ascending
    double threshold = 0.0;              // T = n-th smallest tau
};

/// The n positions with the smallest tau; ties broken by ascending index.
Candidates select_candidates(const std::vector<double>& taus, std::size_t n);

struct SynthConfig {
    std::size_t count = 0;      // 0 = same as candidate count
    std::size_t steps = 20;
    double step_size = 1.0;     // the alpha of the alpha/2 SGLD coefficient
    double lambda = 0.5;
    double noise_std = 0.01;    // sqrt of the noise variance
    std::size_t knn_k = 5;
    std::uint64_t seed = 0;
};

/// x' = lambda*(x - step_size/2 * grad + noise) + (1-lambda)*(cand_mean - x).
std::vector<double> sgld_step(const std::vector<double>& x, const std::vector<double>& grad_e,
                              const std::vector<double>& cand_mean, const SynthConfig& cfg,
                              const std::vector<double>& noise);

struct SynthResult {
    DenseMatrix features;  // one row per synthetic node
    /// Wiring (synthetic local index, candidate node id); bidirectional when
    /// the augmented adjacency is built.
    std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// Initializes synthetic features from a seeded Gaussian, wires each to its
/// knn_k nearest candidates (Euclidean on the initial features), then runs
/// SGLD against the fixed energy model, recomputing the input gradient through
/// the wired GNN every step.
SynthResult synthesize_nodes(const EnergyModel& model, const Graph& graph,
                             const DenseMatrix& x, const std::vector<std::size_t>& cand_nodes,
                             const SynthConfig& cfg);

/// Original adjacency plus synthetic wiring; synthetic node j becomes node
/// num_nodes + j.
AdjList augment_adjacency(const AdjList& adj, std::size_t num_synth,
                          const std::vector<std::pair<std::size_t, std::size_t>>& wiring);

/// Stacks synthetic feature rows under X.
DenseMatrix augment_features(const DenseMatrix& x, const DenseMatrix& synth);

}  // namespace rsl
