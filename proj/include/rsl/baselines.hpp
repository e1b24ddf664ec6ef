#pragma once

#include <string>
#include <vector>

#include "rsl/dense.hpp"

namespace rsl {

enum class BaselineMode { cosine, euclidean, mahalanobis };

struct Prototype {
    std::vector<double> mean;
    DenseMatrix covariance;  // regularized sample covariance (mahalanobis only)
    DenseMatrix chol;        // its Cholesky factor
    bool has_covariance = false;
};

/// mean = arithmetic mean of rows; covariance = sample covariance + 1e-3 I
/// (needs >= 2 rows).
Prototype fit_prototype(const DenseMatrix& known_reps, bool with_covariance);

/// ood_score per row: -cosine similarity | Euclidean distance | Mahalanobis
/// distance to the prototype mean. Higher = more OOD-like.
std::vector<double> baseline_scores(BaselineMode mode, const Prototype& proto,
                                    const DenseMatrix& reps);

BaselineMode parse_baseline_mode(const std::string& name);
std::string baseline_mode_name(BaselineMode mode);

}  // namespace rsl
