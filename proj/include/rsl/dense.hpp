#pragma once

#include <cstddef>
#include <vector>

namespace rsl {

/// Row-major dense matrix of doubles.
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    bool same_shape(const DenseMatrix& o) const { return rows == o.rows && cols == o.cols; }
};

// C = A * B
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
// C = A * B^T
DenseMatrix matmul_bt(const DenseMatrix& a, const DenseMatrix& b);
// C = A^T * B
DenseMatrix matmul_at(const DenseMatrix& a, const DenseMatrix& b);

DenseMatrix transpose(const DenseMatrix& a);

// y += alpha * x (shapes must match)
void axpy(DenseMatrix& y, double alpha, const DenseMatrix& x);

bool all_finite(const DenseMatrix& a);

// L2 norm of each row.
std::vector<double> row_norms(const DenseMatrix& a);

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

// In-place Cholesky factorization of an SPD matrix; returns lower factor L.
DenseMatrix cholesky(const DenseMatrix& spd);
// Solves L L^T x = b given the lower factor.
std::vector<double> cholesky_solve(const DenseMatrix& lower, const std::vector<double>& b);

}  // namespace rsl
