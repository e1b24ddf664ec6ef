#pragma once

#include <cstdint>
#include <vector>

#include "rsl/dense.hpp"
#include "rsl/graph.hpp"
#include "rsl/nn.hpp"
#include "rsl/rng.hpp"

namespace rsl {

/// Energy model E(v) = w_out . sum_k beta_k h_v^(k) over a K-layer GCN whose
/// layers all share the same output width.
struct EnergyModel {
    GcnParams gcn;
    std::vector<double> beta;
    DenseMatrix w_out;  // 1 x hidden
};

/// Fresh model: layer widths in_dim -> hidden (x K), beta_k = 1/K, w_out
/// scaled-uniform.
EnergyModel init_energy_model(std::size_t in_dim, std::size_t hidden, std::size_t layers,
                              Rng& rng);

/// Cached intermediates from a forward pass, consumed by the backward pass.
struct EnergyCache {
    std::vector<DenseMatrix> inputs;   // (possibly dropped-out) input of each layer
    std::vector<DenseMatrix> aggs;     // A_hat * input per layer
    std::vector<DenseMatrix> layers;   // post-activation h^(k)
    std::vector<DenseMatrix> masks;    // dropout masks (empty when disabled)
    DenseMatrix mix;                   // sum_k beta_k h^(k)
    std::vector<double> energies;
};

/// Energies for every node; dropout applied to each layer input when
/// dropout_rate > 0 (training passes only).
std::vector<double> energy_forward(const EnergyModel& model, const CsrMatrix& a_hat,
                                   const DenseMatrix& x, EnergyCache* cache = nullptr,
                                   double dropout_rate = 0.0, Rng* rng = nullptr);

struct EnergyGrads {
    std::vector<DenseMatrix> layer_weights;
    std::vector<double> beta;
    DenseMatrix w_out;
};

/// Gradients of sum_v coeff_v * E(v) w.r.t. every trainable tensor, using the
/// cache from the matching forward pass.
EnergyGrads energy_backward(const EnergyModel& model, const CsrMatrix& a_hat,
                            const EnergyCache& cache, const std::vector<double>& coeffs);

/// Gradient of sum_v coeff_v * E(v) w.r.t. the input features (no dropout).
DenseMatrix energy_input_gradient(const EnergyModel& model, const CsrMatrix& a_hat,
                                  const DenseMatrix& x, const std::vector<double>& coeffs);

struct TrainResult {
    EnergyModel model;
    std::size_t best_epoch = 0;             // 0 = initialization
    std::vector<double> val_auroc_history;  // entry 0 = initialization
    std::vector<double> loss_history;
};

/// Full-batch BCE training with dropout; the returned model is the snapshot at
/// the best validation AUROC (epoch 0 = initialization, ties to earliest).
TrainResult train_classifier(const EnergyModel& init, const CsrMatrix& a_hat,
                             const DenseMatrix& x, const std::vector<std::size_t>& train_nodes,
                             const std::vector<int>& train_labels,
                             const std::vector<std::size_t>& val_in_nodes,
                             const std::vector<std::size_t>& val_out_nodes, std::size_t epochs,
                             double lr, double dropout_rate, Rng& rng);

/// gamma' = nearest-rank lower (1 - target_id_tpr)-quantile of validation ID
/// energies; OOD flagged when E <= gamma'.
double energy_threshold(const std::vector<double>& val_id_energies, double target_id_tpr);

std::vector<int> detect_ood_energy(const std::vector<double>& energies, double gamma_prime);

}  // namespace rsl
