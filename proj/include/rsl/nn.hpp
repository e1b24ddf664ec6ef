#pragma once

#include <vector>

#include "rsl/dense.hpp"
#include "rsl/graph.hpp"
#include "rsl/rng.hpp"

namespace rsl {

/// K-layer GCN weights. W_k is stored (out x in), so a layer computes
/// rectifier(A_hat * H * W_k^T); the final layer has no rectifier.
struct GcnParams {
    std::vector<DenseMatrix> layer_weights;
};

/// Output = X * W^T, no bias.
DenseMatrix linear_forward(const DenseMatrix& x, const DenseMatrix& w);

/// Returns all K per-layer representations h^(1..K).
std::vector<DenseMatrix> gcn_forward(const CsrMatrix& a_hat, const DenseMatrix& x,
                                     const GcnParams& params);

struct LossGrad {
    double loss = 0.0;
    DenseMatrix grad;  // w.r.t. the first argument
};

/// Mean over rows*cols of (H_ij - T_ij)^2; grad = 2(H - T)/(rows*cols).
LossGrad mse_align_loss(const DenseMatrix& h, const DenseMatrix& targets);
/// Broadcast form: every row of H is pulled toward e.
LossGrad mse_align_loss(const DenseMatrix& h, const std::vector<double>& e);

struct BceGrad {
    double loss = 0.0;
    std::vector<double> grad;  // w.r.t. logits
};

/// Numerically stable mean BCE on logits; grad = (sigmoid(z) - y)/count.
BceGrad bce_loss(const std::vector<double>& logits, const std::vector<int>& labels);

double sigmoid(double z);

/// p <- p - lr*g. Throws NumericalError on non-finite gradients.
void sgd_step(DenseMatrix& params, const DenseMatrix& grads, double lr);
void sgd_step(std::vector<double>& params, const std::vector<double>& grads, double lr);

/// Entries uniform in [-1/sqrt(fan_in), +1/sqrt(fan_in)].
DenseMatrix init_weight(std::size_t out_dim, std::size_t in_dim, Rng& rng);

}  // namespace rsl
