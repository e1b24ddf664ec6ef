#include "rsl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rsl/errors.hpp"

namespace rsl {

namespace {

void check_lengths(const ScoredLabels& d) {
    if (d.ood_score.size() != d.is_ood.size())
        throw DimensionError("scored labels: length mismatch");
    if (d.ood_score.empty())
        throw MetricError("empty input");
}

std::pair<std::size_t, std::size_t> class_counts(const ScoredLabels& d) {
    std::size_t pos = 0;
    for (int y : d.is_ood)
        pos += y ? 1 : 0;
    return {pos, d.is_ood.size() - pos};
}

}  // namespace

double auroc(const ScoredLabels& data) {
    check_lengths(data);
    const auto [n_pos, n_neg] = class_counts(data);
    if (n_pos == 0 || n_neg == 0)
        throw MetricError("auroc needs both classes");

    const std::size_t n = data.ood_score.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return data.ood_score[a] < data.ood_score[b];
    });

    // rank sum of positives with midranks for ties
    double pos_rank_sum = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && data.ood_score[order[j]] == data.ood_score[order[i]])
            ++j;
        const double midrank = 0.5 * static_cast<double>(i + 1 + j);  // average of ranks i+1..j
        for (std::size_t k = i; k < j; ++k)
            if (data.is_ood[order[k]])
                pos_rank_sum += midrank;
        i = j;
    }
    const double np = static_cast<double>(n_pos);
    const double u = pos_rank_sum - np * (np + 1.0) / 2.0;
    return u / (np * static_cast<double>(n_neg));
}

double aupr(const ScoredLabels& data) {
    check_lengths(data);
    const auto [n_pos, n_neg] = class_counts(data);
    (void)n_neg;
    if (n_pos == 0)
        throw MetricError("aupr needs at least one positive");

    const std::size_t n = data.ood_score.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return data.ood_score[a] > data.ood_score[b];
    });

    double ap = 0.0;
    std::size_t tp = 0, fp = 0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        std::size_t group_pos = 0;
        while (j < n && data.ood_score[order[j]] == data.ood_score[order[i]]) {
            group_pos += data.is_ood[order[j]] ? 1 : 0;
            ++j;
        }
        tp += group_pos;
        fp += (j - i) - group_pos;
        if (group_pos > 0) {
            const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
            const double recall_delta = static_cast<double>(group_pos) / static_cast<double>(n_pos);
            ap += recall_delta * precision;
        }
        i = j;
    }
    // recall deltas sum to 1 and precision <= 1; clip accumulation round-off
    return std::min(ap, 1.0);
}

double nearest_rank_quantile(std::vector<double> values, double q) {
    if (values.empty())
        throw MetricError("quantile of empty input");
    std::sort(values.begin(), values.end());
    const double nd = static_cast<double>(values.size());
    // absorb round-off in q*n (e.g. 0.05*20 > 1 in binary) before the ceil
    std::size_t rank = static_cast<std::size_t>(std::ceil(q * nd - 1e-9));
    if (rank < 1) rank = 1;
    if (rank > values.size()) rank = values.size();
    return values[rank - 1];
}

double fpr_at_95_tpr(const ScoredLabels& data, double tpr) {
    check_lengths(data);
    const auto [n_pos, n_neg] = class_counts(data);
    if (n_pos == 0 || n_neg == 0)
        throw MetricError("fpr_at_95_tpr needs both classes");

    // ID nodes (negatives here) are classified ID when their score is at or
    // below the threshold; keep >= tpr of them correct.
    std::vector<double> id_scores;
    id_scores.reserve(n_neg);
    for (std::size_t i = 0; i < data.is_ood.size(); ++i)
        if (!data.is_ood[i])
            id_scores.push_back(data.ood_score[i]);
    const double threshold = nearest_rank_quantile(std::move(id_scores), tpr);

    std::size_t false_id = 0;
    for (std::size_t i = 0; i < data.is_ood.size(); ++i)
        if (data.is_ood[i] && data.ood_score[i] <= threshold)
            ++false_id;
    return static_cast<double>(false_id) / static_cast<double>(n_pos);
}

}  // namespace rsl
