#include "rsl/nn.hpp"

#include <cmath>

#include "rsl/errors.hpp"

namespace rsl {

DenseMatrix linear_forward(const DenseMatrix& x, const DenseMatrix& w) {
    return matmul_bt(x, w);
}

std::vector<DenseMatrix> gcn_forward(const CsrMatrix& a_hat, const DenseMatrix& x,
                                     const GcnParams& params) {
    if (params.layer_weights.empty())
        throw DimensionError("gcn_forward: no layers");
    std::vector<DenseMatrix> layers;
    DenseMatrix h = x;
    const std::size_t k_last = params.layer_weights.size() - 1;
    for (std::size_t k = 0; k < params.layer_weights.size(); ++k) {
        DenseMatrix pre = matmul_bt(spmm(a_hat, h), params.layer_weights[k]);
        if (k != k_last)
            for (double& v : pre.data) v = v > 0.0 ? v : 0.0;
        layers.push_back(pre);
        h = layers.back();
    }
    return layers;
}

LossGrad mse_align_loss(const DenseMatrix& h, const DenseMatrix& targets) {
    if (!h.same_shape(targets))
        throw DimensionError("mse_align_loss: shape mismatch");
    const double count = static_cast<double>(h.rows * h.cols);
    LossGrad out;
    out.grad = DenseMatrix(h.rows, h.cols);
    for (std::size_t i = 0; i < h.data.size(); ++i) {
        const double d = h.data[i] - targets.data[i];
        out.loss += d * d;
        out.grad.data[i] = 2.0 * d / count;
    }
    out.loss /= count;
    return out;
}

LossGrad mse_align_loss(const DenseMatrix& h, const std::vector<double>& e) {
    if (h.cols != e.size())
        throw DimensionError("mse_align_loss: target length mismatch");
    DenseMatrix t(h.rows, h.cols);
    for (std::size_t i = 0; i < h.rows; ++i)
        for (std::size_t j = 0; j < h.cols; ++j)
            t(i, j) = e[j];
    return mse_align_loss(h, t);
}

double sigmoid(double z) {
    if (z >= 0.0)
        return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

BceGrad bce_loss(const std::vector<double>& logits, const std::vector<int>& labels) {
    if (logits.size() != labels.size())
        throw DimensionError("bce_loss: length mismatch");
    if (logits.empty())
        throw DimensionError("bce_loss: empty input");
    const double n = static_cast<double>(logits.size());
    BceGrad out;
    out.grad.resize(logits.size());
    for (std::size_t i = 0; i < logits.size(); ++i) {
        if (labels[i] != 0 && labels[i] != 1)
            throw ValidationError("bce_loss: label outside {0,1}");
        const double z = logits[i];
        const double y = labels[i];
        // max(z,0) - z*y + log(1 + exp(-|z|))
        out.loss += std::max(z, 0.0) - z * y + std::log1p(std::exp(-std::abs(z)));
        out.grad[i] = (sigmoid(z) - y) / n;
    }
    out.loss /= n;
    return out;
}

void sgd_step(DenseMatrix& params, const DenseMatrix& grads, double lr) {
    if (!params.same_shape(grads))
        throw DimensionError("sgd_step: shape mismatch");
    if (lr <= 0.0)
        throw ConfigError("sgd_step: lr must be positive");
    if (!all_finite(grads))
        throw NumericalError("sgd_step: non-finite gradient");
    for (std::size_t i = 0; i < params.data.size(); ++i)
        params.data[i] -= lr * grads.data[i];
}

void sgd_step(std::vector<double>& params, const std::vector<double>& grads, double lr) {
    if (params.size() != grads.size())
        throw DimensionError("sgd_step: length mismatch");
    if (lr <= 0.0)
        throw ConfigError("sgd_step: lr must be positive");
    for (double g : grads)
        if (!std::isfinite(g))
            throw NumericalError("sgd_step: non-finite gradient");
    for (std::size_t i = 0; i < params.size(); ++i)
        params[i] -= lr * grads[i];
}

DenseMatrix init_weight(std::size_t out_dim, std::size_t in_dim, Rng& rng) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(in_dim));
    DenseMatrix w(out_dim, in_dim);
    for (double& v : w.data)
        v = rng.uniform(-bound, bound);
    return w;
}

}  // namespace rsl
