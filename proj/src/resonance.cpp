#include "rsl/resonance.hpp"

#include <cmath>

#include "rsl/errors.hpp"
#include "rsl/metrics.hpp"
#include "rsl/rng.hpp"

namespace rsl {

namespace {

void normalize_row(DenseMatrix& m, std::size_t i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m.cols; ++j)
        s += m(i, j) * m(i, j);
    s = std::sqrt(s);
    if (s == 0.0)
        throw NumericalError("cannot normalize a zero target vector");
    for (std::size_t j = 0; j < m.cols; ++j)
        m(i, j) /= s;
}

// Orthonormal columns via modified Gram-Schmidt on a seeded Gaussian matrix.
DenseMatrix random_orthonormal(std::size_t rows, std::size_t cols, Rng& rng) {
    DenseMatrix u(rows, cols);
    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t r = 0; r < rows; ++r)
            u(r, c) = rng.normal();
        for (std::size_t p = 0; p < c; ++p) {
            double dot = 0.0;
            for (std::size_t r = 0; r < rows; ++r)
                dot += u(r, c) * u(r, p);
            for (std::size_t r = 0; r < rows; ++r)
                u(r, c) -= dot * u(r, p);
        }
        double norm = 0.0;
        for (std::size_t r = 0; r < rows; ++r)
            norm += u(r, c) * u(r, c);
        norm = std::sqrt(norm);
        if (norm < 1e-12)
            throw NumericalError("degenerate draw in orthonormal basis");
        for (std::size_t r = 0; r < rows; ++r)
            u(r, c) /= norm;
    }
    return u;
}

}  // namespace

DenseMatrix generate_targets(const TargetSpec& spec) {
    if (spec.mode == TargetMode::single_random && spec.num_targets != 1)
        throw ConfigError("single_random requires num_targets = 1");
    if (spec.num_targets == 0)
        throw ConfigError("num_targets must be >= 1");
    Rng rng(spec.seed);

    if (spec.mode == TargetMode::etf_by_label) {
        const std::size_t k = spec.num_targets;
        if (spec.dim < k)
            throw ConfigError("ETF needs dim >= num_targets");
        if (k < 2)
            throw ConfigError("ETF needs num_targets >= 2");
        // E = sqrt(K/(K-1)) U (I - 11^T/K), columns are the targets
        DenseMatrix u = random_orthonormal(spec.dim, k, rng);
        const double scale = std::sqrt(static_cast<double>(k) / static_cast<double>(k - 1));
        DenseMatrix targets(k, spec.dim);
        for (std::size_t c = 0; c < k; ++c) {
            // column c of (I - 11^T/K) applied on the right
            for (std::size_t r = 0; r < spec.dim; ++r) {
                double s = u(r, c);
                double mean = 0.0;
                for (std::size_t c2 = 0; c2 < k; ++c2)
                    mean += u(r, c2);
                s -= mean / static_cast<double>(k);
                targets(c, r) = scale * s;
            }
        }
        return targets;
    }

    DenseMatrix targets(spec.num_targets, spec.dim);
    for (std::size_t i = 0; i < spec.num_targets; ++i) {
        for (std::size_t j = 0; j < spec.dim; ++j)
            targets(i, j) = rng.normal();
        normalize_row(targets, i);
    }
    return targets;
}

DenseMatrix assign_targets(const DenseMatrix& targets, const TargetSpec& spec,
                           std::size_t num_known) {
    if (!spec.labels.empty() && spec.labels.size() != num_known)
        throw DimensionError("target labels must cover every known node");
    DenseMatrix assigned(num_known, targets.cols);
    for (std::size_t i = 0; i < num_known; ++i) {
        const std::size_t t = spec.labels.empty() ? i % targets.rows : spec.labels[i];
        if (t >= targets.rows)
            throw BoundsError("target label out of range");
        for (std::size_t j = 0; j < targets.cols; ++j)
            assigned(i, j) = targets(t, j);
    }
    return assigned;
}

double align_epoch(ResonanceHead& head, const DenseMatrix& p_known,
                   const DenseMatrix& assigned_targets) {
    if (p_known.rows != assigned_targets.rows)
        throw DimensionError("align_epoch: target rows != known rows");
    DenseMatrix h = linear_forward(p_known, head.w);
    LossGrad lg = mse_align_loss(h, assigned_targets);
    if (!std::isfinite(lg.loss))
        throw NumericalError("align_epoch: non-finite loss");
    // dW = grad_H^T * P
    DenseMatrix grad_w = matmul_at(lg.grad, p_known);
    sgd_step(head.w, grad_w, head.lr);
    return lg.loss;
}

std::vector<double> compute_tau(const DenseMatrix& w_before, const DenseMatrix& w_after,
                                const DenseMatrix& p_wild) {
    if (!w_before.same_shape(w_after))
        throw DimensionError("compute_tau: weight shapes differ");
    DenseMatrix dw = w_after;
    axpy(dw, -1.0, w_before);
    return row_norms(matmul_bt(p_wild, dw));
}

std::vector<double> trajectory_scores(const ResonanceTrace& trace, TrajectoryVariant variant,
                                      std::size_t window_width,
                                      std::optional<std::size_t> window_end) {
    const std::size_t epochs = trace.taus.rows;
    const std::size_t n = trace.taus.cols;
    if (epochs == 0)
        throw ConfigError("trajectory_scores: empty trace");
    std::vector<double> out(n, 0.0);
    switch (variant) {
        case TrajectoryVariant::scalar_sum:
            for (std::size_t t = 0; t < epochs; ++t)
                for (std::size_t i = 0; i < n; ++i)
                    out[i] += trace.taus(t, i);
            return out;
        case TrajectoryVariant::vector_norm: {
            if (trace.rep_snapshots.size() != epochs + 1)
                throw ConfigError("trajectory_scores: vector_norm needs representation snapshots");
            const DenseMatrix& first = trace.rep_snapshots.front();
            const DenseMatrix& last = trace.rep_snapshots.back();
            DenseMatrix diff = last;
            axpy(diff, -1.0, first);
            return row_norms(diff);
        }
        case TrajectoryVariant::window: {
            if (window_width < 1)
                throw ConfigError("trajectory_scores: window width must be >= 1");
            if (window_width > epochs)
                throw ConfigError("trajectory_scores: window wider than trace");
            const std::size_t end = window_end.value_or(epochs - 1);
            if (end >= epochs || end + 1 < window_width)
                throw ConfigError("trajectory_scores: window out of range");
            for (std::size_t t = end + 1 - window_width; t <= end; ++t)
                for (std::size_t i = 0; i < n; ++i)
                    out[i] += trace.taus(t, i);
            return out;
        }
    }
    throw ConfigError("trajectory_scores: unknown variant");
}

double validation_auroc(const std::vector<double>& taus,
                        const std::vector<std::size_t>& val_in_pos,
                        const std::vector<std::size_t>& val_out_pos) {
    if (val_in_pos.empty() || val_out_pos.empty())
        throw SplitError("validation needs both classes");
    ScoredLabels data;
    for (std::size_t p : val_in_pos) {
        data.ood_score.push_back(-taus[p]);
        data.is_ood.push_back(0);
    }
    for (std::size_t p : val_out_pos) {
        data.ood_score.push_back(-taus[p]);
        data.is_ood.push_back(1);
    }
    return auroc(data);
}

std::size_t select_resonant_epoch(const DenseMatrix& taus,
                                  const std::vector<std::size_t>& val_in_pos,
                                  const std::vector<std::size_t>& val_out_pos) {
    if (taus.rows == 0)
        throw ConfigError("select_resonant_epoch: empty trace");
    std::size_t best = 0;
    double best_auc = -1.0;
    std::vector<double> row(taus.cols);
    for (std::size_t t = 0; t < taus.rows; ++t) {
        for (std::size_t i = 0; i < taus.cols; ++i)
            row[i] = taus(t, i);
        const double auc = validation_auroc(row, val_in_pos, val_out_pos);
        if (auc > best_auc) {
            best_auc = auc;
            best = t;
        }
    }
    return best;
}

DetectorThreshold tau_threshold(const std::vector<double>& val_id_taus, double target_id_tpr) {
    if (val_id_taus.empty())
        throw MetricError("tau_threshold: empty validation ID taus");
    if (target_id_tpr <= 0.0 || target_id_tpr > 1.0)
        throw ConfigError("target_id_tpr must be in (0,1]");
    DetectorThreshold thr;
    thr.target_id_tpr = target_id_tpr;
    thr.gamma = nearest_rank_quantile(val_id_taus, 1.0 - target_id_tpr);
    return thr;
}

std::vector<int> detect_ood_tau(const std::vector<double>& taus, const DetectorThreshold& thr) {
    std::vector<int> flags(taus.size());
    for (std::size_t i = 0; i < taus.size(); ++i)
        flags[i] = taus[i] <= thr.gamma ? 1 : 0;
    return flags;
}

std::vector<double> project_onto_gradient(const std::vector<double>& x,
                                          const std::vector<double>& g) {
    if (x.size() != g.size())
        throw DimensionError("project_onto_gradient: length mismatch");
    double gg = 0.0, xg = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        gg += g[i] * g[i];
        xg += x[i] * g[i];
    }
    if (gg == 0.0)
        throw NumericalError("projection onto a zero gradient is undefined");
    std::vector<double> out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        out[i] = xg / gg * g[i];
    return out;
}

ResonanceTrace run_resonance(const DenseMatrix& p_known, const DenseMatrix& p_wild,
                             const std::vector<std::size_t>& val_in_pos,
                             const std::vector<std::size_t>& val_out_pos,
                             const ResonanceOptions& opts) {
    if (p_known.rows == 0)
        throw ConfigError("run_resonance: no known ID nodes");
    if (p_known.cols != p_wild.cols)
        throw DimensionError("run_resonance: feature widths differ");

    TargetSpec tspec;
    tspec.mode = opts.target_mode;
    tspec.num_targets = opts.target_mode == TargetMode::single_random ? 1 : opts.num_targets;
    tspec.dim = opts.head_dim;
    tspec.seed = opts.seed;
    tspec.labels = opts.known_labels;
    DenseMatrix targets = generate_targets(tspec);
    DenseMatrix assigned = assign_targets(targets, tspec, p_known.rows);

    Rng rng(opts.seed + 1);
    ResonanceHead head;
    head.lr = opts.lr;
    head.w = init_weight(opts.head_dim, p_known.cols, rng);

    ResonanceTrace trace;
    trace.taus = DenseMatrix(opts.epochs, p_wild.rows);
    if (opts.record_snapshots)
        trace.rep_snapshots.push_back(linear_forward(p_wild, head.w));

    for (std::size_t t = 0; t < opts.epochs; ++t) {
        const DenseMatrix w_before = head.w;
        align_epoch(head, p_known, assigned);
        std::vector<double> taus = compute_tau(w_before, head.w, p_wild);
        for (std::size_t i = 0; i < taus.size(); ++i)
            trace.taus(t, i) = taus[i];
        trace.val_auroc.push_back(validation_auroc(taus, val_in_pos, val_out_pos));
        if (opts.record_snapshots)
            trace.rep_snapshots.push_back(linear_forward(p_wild, head.w));
    }
    return trace;
}

}  // namespace rsl
