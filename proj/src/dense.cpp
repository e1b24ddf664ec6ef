#include "rsl/dense.hpp"

#include <cmath>

#include "rsl/errors.hpp"

namespace rsl {

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols != b.rows)
        throw DimensionError("matmul: inner dimensions disagree");
    DenseMatrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols; ++j)
                c(i, j) += aik * b(k, j);
        }
    return c;
}

DenseMatrix matmul_bt(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols != b.cols)
        throw DimensionError("matmul_bt: inner dimensions disagree");
    DenseMatrix c(a.rows, b.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < b.rows; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < a.cols; ++k)
                s += a(i, k) * b(j, k);
            c(i, j) = s;
        }
    return c;
}

DenseMatrix matmul_at(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows != b.rows)
        throw DimensionError("matmul_at: inner dimensions disagree");
    DenseMatrix c(a.cols, b.cols);
    for (std::size_t k = 0; k < a.rows; ++k)
        for (std::size_t i = 0; i < a.cols; ++i) {
            const double aki = a(k, i);
            if (aki == 0.0) continue;
            for (std::size_t j = 0; j < b.cols; ++j)
                c(i, j) += aki * b(k, j);
        }
    return c;
}

DenseMatrix transpose(const DenseMatrix& a) {
    DenseMatrix t(a.cols, a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j)
            t(j, i) = a(i, j);
    return t;
}

void axpy(DenseMatrix& y, double alpha, const DenseMatrix& x) {
    if (!y.same_shape(x))
        throw DimensionError("axpy: shape mismatch");
    for (std::size_t i = 0; i < y.data.size(); ++i)
        y.data[i] += alpha * x.data[i];
}

bool all_finite(const DenseMatrix& a) {
    for (double v : a.data)
        if (!std::isfinite(v)) return false;
    return true;
}

std::vector<double> row_norms(const DenseMatrix& a) {
    std::vector<double> out(a.rows, 0.0);
    for (std::size_t i = 0; i < a.rows; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols; ++j)
            s += a(i, j) * a(i, j);
        out[i] = std::sqrt(s);
    }
    return out;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
    if (!a.same_shape(b))
        throw DimensionError("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i)
        m = std::max(m, std::abs(a.data[i] - b.data[i]));
    return m;
}

DenseMatrix cholesky(const DenseMatrix& spd) {
    if (spd.rows != spd.cols)
        throw DimensionError("cholesky: matrix not square");
    const std::size_t n = spd.rows;
    DenseMatrix l(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = spd(i, j);
            for (std::size_t k = 0; k < j; ++k)
                s -= l(i, k) * l(j, k);
            if (i == j) {
                if (s <= 0.0)
                    throw NumericalError("cholesky: matrix not positive definite");
                l(i, i) = std::sqrt(s);
            } else {
                l(i, j) = s / l(j, j);
            }
        }
    }
    return l;
}

std::vector<double> cholesky_solve(const DenseMatrix& lower, const std::vector<double>& b) {
    const std::size_t n = lower.rows;
    if (b.size() != n)
        throw DimensionError("cholesky_solve: rhs length mismatch");
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k)
            s -= lower(i, k) * y[k];
        y[i] = s / lower(i, i);
    }
    std::vector<double> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = y[ii];
        for (std::size_t k = ii + 1; k < n; ++k)
            s -= lower(k, ii) * x[k];
        x[ii] = s / lower(ii, ii);
    }
    return x;
}

}  // namespace rsl
