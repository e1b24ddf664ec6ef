#pragma once

#include <cstddef>
#include <vector>

namespace rsl {

/// Scores with ground truth; higher score = more OOD-like, OOD is the
/// positive class for AUROC/AUPR.
struct ScoredLabels {
    std::vector<double> ood_score;
    std::vector<int> is_ood;
};

/// Mann-Whitney AUROC with half credit for ties.
double auroc(const ScoredLabels& data);

/// Average precision; tied scores form a single threshold step.
double aupr(const ScoredLabels& data);

/// FPR when the threshold keeps >= tpr of ID classified correctly
/// (nearest-rank quantile of ID scores).
double fpr_at_95_tpr(const ScoredLabels& data, double tpr = 0.95);

/// Nearest-rank lower q-quantile of values (q in [0,1]): the element at
/// 1-indexed rank max(1, ceil(q*N)) of the ascending sort.
double nearest_rank_quantile(std::vector<double> values, double q);

}  // namespace rsl
