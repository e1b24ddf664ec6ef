#include "rsl/classifier.hpp"

#include <cmath>

#include "rsl/errors.hpp"
#include "rsl/metrics.hpp"

namespace rsl {

EnergyModel init_energy_model(std::size_t in_dim, std::size_t hidden, std::size_t layers,
                              Rng& rng) {
    if (layers < 1)
        throw ConfigError("energy model needs at least one layer");
    EnergyModel m;
    std::size_t in = in_dim;
    for (std::size_t k = 0; k < layers; ++k) {
        m.gcn.layer_weights.push_back(init_weight(hidden, in, rng));
        in = hidden;
    }
    m.beta.assign(layers, 1.0 / static_cast<double>(layers));
    m.w_out = init_weight(1, hidden, rng);
    return m;
}

std::vector<double> energy_forward(const EnergyModel& model, const CsrMatrix& a_hat,
                                   const DenseMatrix& x, EnergyCache* cache,
                                   double dropout_rate, Rng* rng) {
    const std::size_t k_layers = model.gcn.layer_weights.size();
    if (model.beta.size() != k_layers)
        throw DimensionError("energy_forward: beta count != layer count");
    const std::size_t hidden = model.w_out.cols;
    if (dropout_rate > 0.0 && rng == nullptr)
        throw ConfigError("dropout requires an rng");

    EnergyCache local;
    EnergyCache& c = cache ? *cache : local;
    c = EnergyCache{};

    DenseMatrix h = x;
    for (std::size_t k = 0; k < k_layers; ++k) {
        DenseMatrix in = h;
        if (dropout_rate > 0.0) {
            DenseMatrix mask(in.rows, in.cols);
            const double keep = 1.0 - dropout_rate;
            for (std::size_t i = 0; i < mask.data.size(); ++i)
                mask.data[i] = rng->uniform() < keep ? 1.0 / keep : 0.0;
            for (std::size_t i = 0; i < in.data.size(); ++i)
                in.data[i] *= mask.data[i];
            c.masks.push_back(std::move(mask));
        }
        DenseMatrix agg = spmm(a_hat, in);
        DenseMatrix pre = matmul_bt(agg, model.gcn.layer_weights[k]);
        if (pre.cols != hidden)
            throw DimensionError("energy_forward: layer width != hidden width");
        if (k + 1 != k_layers)
            for (double& v : pre.data) v = v > 0.0 ? v : 0.0;
        c.inputs.push_back(std::move(in));
        c.aggs.push_back(std::move(agg));
        c.layers.push_back(std::move(pre));
        h = c.layers.back();
    }

    c.mix = DenseMatrix(x.rows, hidden);
    for (std::size_t k = 0; k < k_layers; ++k)
        axpy(c.mix, model.beta[k], c.layers[k]);

    c.energies.assign(x.rows, 0.0);
    for (std::size_t v = 0; v < x.rows; ++v) {
        double e = 0.0;
        for (std::size_t j = 0; j < hidden; ++j)
            e += model.w_out(0, j) * c.mix(v, j);
        c.energies[v] = e;
    }
    return c.energies;
}

namespace {

// Shared reverse pass: given per-node coefficients of sum c_v E(v), fills
// parameter grads (if grads != nullptr) and returns dX (if want_input).
DenseMatrix backward_impl(const EnergyModel& model, const CsrMatrix& a_hat,
                          const EnergyCache& cache, const std::vector<double>& coeffs,
                          EnergyGrads* grads, bool want_input) {
    const std::size_t k_layers = model.gcn.layer_weights.size();
    if (cache.layers.size() != k_layers)
        throw ConfigError("energy backward called without a matching forward cache");
    const std::size_t n = cache.mix.rows;
    if (coeffs.size() != n)
        throw DimensionError("energy backward: coefficient length mismatch");
    const std::size_t hidden = model.w_out.cols;

    if (grads) {
        grads->layer_weights.assign(k_layers, DenseMatrix());
        grads->beta.assign(k_layers, 0.0);
        grads->w_out = DenseMatrix(1, hidden);
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t j = 0; j < hidden; ++j)
                grads->w_out(0, j) += coeffs[v] * cache.mix(v, j);
    }

    // d mix = c outer w_out
    DenseMatrix dmix(n, hidden);
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t j = 0; j < hidden; ++j)
            dmix(v, j) = coeffs[v] * model.w_out(0, j);

    DenseMatrix dh;  // gradient flowing into layer output k (accumulated)
    for (std::size_t kk = k_layers; kk-- > 0;) {
        DenseMatrix dh_k = dmix;
        for (double& v : dh_k.data) v *= model.beta[kk];
        if (dh.rows != 0)
            axpy(dh_k, 1.0, dh);

        if (grads) {
            double db = 0.0;
            for (std::size_t v = 0; v < n; ++v)
                for (std::size_t j = 0; j < hidden; ++j)
                    db += coeffs[v] * model.w_out(0, j) * cache.layers[kk](v, j);
            grads->beta[kk] = db;
        }

        DenseMatrix dpre = std::move(dh_k);
        if (kk + 1 != k_layers)
            for (std::size_t i = 0; i < dpre.data.size(); ++i)
                if (cache.layers[kk].data[i] <= 0.0) dpre.data[i] = 0.0;

        if (grads)
            grads->layer_weights[kk] = matmul_at(dpre, cache.aggs[kk]);

        if (kk > 0 || want_input) {
            DenseMatrix dagg = matmul(dpre, model.gcn.layer_weights[kk]);
            DenseMatrix din = spmm(a_hat, dagg);  // A_hat symmetric
            if (!cache.masks.empty())
                for (std::size_t i = 0; i < din.data.size(); ++i)
                    din.data[i] *= cache.masks[kk].data[i];
            dh = std::move(din);
        } else {
            dh = DenseMatrix();
        }
    }
    return dh;
}

}  // namespace

EnergyGrads energy_backward(const EnergyModel& model, const CsrMatrix& a_hat,
                            const EnergyCache& cache, const std::vector<double>& coeffs) {
    EnergyGrads grads;
    backward_impl(model, a_hat, cache, coeffs, &grads, false);
    return grads;
}

DenseMatrix energy_input_gradient(const EnergyModel& model, const CsrMatrix& a_hat,
                                  const DenseMatrix& x, const std::vector<double>& coeffs) {
    EnergyCache cache;
    energy_forward(model, a_hat, x, &cache);
    return backward_impl(model, a_hat, cache, coeffs, nullptr, true);
}

namespace {

double val_energy_auroc(const EnergyModel& model, const CsrMatrix& a_hat, const DenseMatrix& x,
                        const std::vector<std::size_t>& val_in,
                        const std::vector<std::size_t>& val_out) {
    std::vector<double> e = energy_forward(model, a_hat, x);
    ScoredLabels data;
    for (std::size_t v : val_in) {
        data.ood_score.push_back(-e[v]);
        data.is_ood.push_back(0);
    }
    for (std::size_t v : val_out) {
        data.ood_score.push_back(-e[v]);
        data.is_ood.push_back(1);
    }
    return auroc(data);
}

}  // namespace

TrainResult train_classifier(const EnergyModel& init, const CsrMatrix& a_hat,
                             const DenseMatrix& x, const std::vector<std::size_t>& train_nodes,
                             const std::vector<int>& train_labels,
                             const std::vector<std::size_t>& val_in_nodes,
                             const std::vector<std::size_t>& val_out_nodes, std::size_t epochs,
                             double lr, double dropout_rate, Rng& rng) {
    if (train_nodes.size() != train_labels.size())
        throw DimensionError("train_classifier: label count mismatch");
    bool has0 = false, has1 = false;
    for (int y : train_labels)
        (y ? has1 : has0) = true;
    if (!has0 || !has1)
        throw ConfigError("train_classifier: both labels must be present");
    if (val_in_nodes.empty() || val_out_nodes.empty())
        throw SplitError("train_classifier: validation needs both classes");

    EnergyModel model = init;
    TrainResult result;
    result.model = model;
    result.best_epoch = 0;
    double best_auc = val_energy_auroc(model, a_hat, x, val_in_nodes, val_out_nodes);
    result.val_auroc_history.push_back(best_auc);

    for (std::size_t epoch = 1; epoch <= epochs; ++epoch) {
        EnergyCache cache;
        std::vector<double> energies =
            energy_forward(model, a_hat, x, &cache, dropout_rate, &rng);

        std::vector<double> logits(train_nodes.size());
        for (std::size_t i = 0; i < train_nodes.size(); ++i)
            logits[i] = energies[train_nodes[i]];
        BceGrad bce = bce_loss(logits, train_labels);
        result.loss_history.push_back(bce.loss);

        std::vector<double> coeffs(x.rows, 0.0);
        for (std::size_t i = 0; i < train_nodes.size(); ++i)
            coeffs[train_nodes[i]] += bce.grad[i];

        EnergyGrads grads = energy_backward(model, a_hat, cache, coeffs);
        for (std::size_t k = 0; k < model.gcn.layer_weights.size(); ++k)
            sgd_step(model.gcn.layer_weights[k], grads.layer_weights[k], lr);
        sgd_step(model.beta, grads.beta, lr);
        sgd_step(model.w_out, grads.w_out, lr);

        const double auc = val_energy_auroc(model, a_hat, x, val_in_nodes, val_out_nodes);
        result.val_auroc_history.push_back(auc);
        if (auc > best_auc) {
            best_auc = auc;
            result.best_epoch = epoch;
            result.model = model;
        }
    }
    return result;
}

double energy_threshold(const std::vector<double>& val_id_energies, double target_id_tpr) {
    if (val_id_energies.empty())
        throw MetricError("energy_threshold: empty validation ID energies");
    if (target_id_tpr <= 0.0 || target_id_tpr > 1.0)
        throw ConfigError("target_id_tpr must be in (0,1]");
    return nearest_rank_quantile(val_id_energies, 1.0 - target_id_tpr);
}

std::vector<int> detect_ood_energy(const std::vector<double>& energies, double gamma_prime) {
    std::vector<int> flags(energies.size());
    for (std::size_t i = 0; i < energies.size(); ++i)
        flags[i] = energies[i] <= gamma_prime ? 1 : 0;
    return flags;
}

}  // namespace rsl
