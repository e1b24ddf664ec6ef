#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rsl/dense.hpp"
#include "rsl/nn.hpp"

namespace rsl {

enum class TargetMode { single_random, multi_random, etf_by_label };

struct TargetSpec {
    TargetMode mode = TargetMode::single_random;
    std::size_t num_targets = 1;
    std::size_t dim = 16;
    std::uint64_t seed = 0;
    /// Optional per-known-node target assignment; round-robin by node index
    /// when empty and num_targets > 1.
    std::vector<std::size_t> labels;
};

/// Rows are unit-norm target vectors. In etf_by_label mode the Gram matrix has
/// diagonal 1 and off-diagonal -1/(K-1).
DenseMatrix generate_targets(const TargetSpec& spec);

/// Expands targets into one row per known node using spec.labels or
/// round-robin assignment.
DenseMatrix assign_targets(const DenseMatrix& targets, const TargetSpec& spec,
                           std::size_t num_known);

struct ResonanceHead {
    DenseMatrix w;  // (head dim) x (input dim)
    double lr = 0.005;
};

/// One full-batch gradient step on the MSE alignment loss; returns the
/// pre-step loss.
double align_epoch(ResonanceHead& head, const DenseMatrix& p_known,
                   const DenseMatrix& assigned_targets);

/// tau_i = || x_i (W_after - W_before)^T ||_2.
std::vector<double> compute_tau(const DenseMatrix& w_before, const DenseMatrix& w_after,
                                const DenseMatrix& p_wild);

struct ResonanceTrace {
    DenseMatrix taus;               // epochs x wild nodes
    std::vector<double> val_auroc;  // per epoch
    /// Per-epoch wild representations (epochs+1 entries, snapshot 0 = init);
    /// recorded only when requested.
    std::vector<DenseMatrix> rep_snapshots;
};

enum class TrajectoryVariant { scalar_sum, vector_norm, window };

/// scalar_sum: sum_t tau_i^t; vector_norm: ||h_last - h_first||_2 (needs
/// snapshots); window: sum of tau over epochs (end-width+1 .. end).
std::vector<double> trajectory_scores(const ResonanceTrace& trace, TrajectoryVariant variant,
                                      std::size_t window_width = 0,
                                      std::optional<std::size_t> window_end = std::nullopt);

/// Per-epoch AUROC of -tau over validation wild positions; argmax epoch, ties
/// to the earliest.
std::size_t select_resonant_epoch(const DenseMatrix& taus,
                                  const std::vector<std::size_t>& val_in_pos,
                                  const std::vector<std::size_t>& val_out_pos);

/// AUROC of ood_score = -tau with validation OOD positive.
double validation_auroc(const std::vector<double>& taus,
                        const std::vector<std::size_t>& val_in_pos,
                        const std::vector<std::size_t>& val_out_pos);

struct DetectorThreshold {
    double gamma = 0.0;
    double target_id_tpr = 0.95;
};

/// gamma = nearest-rank lower (1 - target_id_tpr)-quantile of validation ID
/// tau; nodes with tau <= gamma are flagged OOD.
DetectorThreshold tau_threshold(const std::vector<double>& val_id_taus, double target_id_tpr);

std::vector<int> detect_ood_tau(const std::vector<double>& taus, const DetectorThreshold& thr);

/// Orthogonal projection of x onto g.
std::vector<double> project_onto_gradient(const std::vector<double>& x,
                                          const std::vector<double>& g);

struct ResonanceOptions {
    double lr = 0.005;
    std::size_t epochs = 200;
    std::size_t head_dim = 16;
    TargetMode target_mode = TargetMode::single_random;
    std::size_t num_targets = 1;
    std::uint64_t seed = 0;
    bool record_snapshots = false;
    std::vector<std::size_t> known_labels;  // for etf_by_label
};

/// Phase 1: trains the alignment head on P_known and records tau over P_wild
/// plus validation AUROC every epoch. val_*_pos index into the wild rows.
ResonanceTrace run_resonance(const DenseMatrix& p_known, const DenseMatrix& p_wild,
                             const std::vector<std::size_t>& val_in_pos,
                             const std::vector<std::size_t>& val_out_pos,
                             const ResonanceOptions& opts);

}  // namespace rsl
