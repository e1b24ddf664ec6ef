#include "rsl/baselines.hpp"

#include <cmath>
#include <string>

#include "rsl/errors.hpp"

namespace rsl {

Prototype fit_prototype(const DenseMatrix& known_reps, bool with_covariance) {
    if (known_reps.rows == 0)
        throw ConfigError("fit_prototype: no known rows");
    if (with_covariance && known_reps.rows < 2)
        throw ConfigError("fit_prototype: covariance needs >= 2 rows");
    const std::size_t d = known_reps.cols;
    Prototype p;
    p.mean.assign(d, 0.0);
    for (std::size_t i = 0; i < known_reps.rows; ++i)
        for (std::size_t j = 0; j < d; ++j)
            p.mean[j] += known_reps(i, j);
    for (double& v : p.mean)
        v /= static_cast<double>(known_reps.rows);

    if (with_covariance) {
        p.covariance = DenseMatrix(d, d);
        for (std::size_t i = 0; i < known_reps.rows; ++i)
            for (std::size_t a = 0; a < d; ++a) {
                const double da = known_reps(i, a) - p.mean[a];
                for (std::size_t b = 0; b < d; ++b)
                    p.covariance(a, b) += da * (known_reps(i, b) - p.mean[b]);
            }
        const double denom = static_cast<double>(known_reps.rows - 1);
        for (double& v : p.covariance.data)
            v /= denom;
        for (std::size_t a = 0; a < d; ++a)
            p.covariance(a, a) += 1e-3;
        p.chol = cholesky(p.covariance);
        p.has_covariance = true;
    }
    return p;
}

std::vector<double> baseline_scores(BaselineMode mode, const Prototype& proto,
                                    const DenseMatrix& reps) {
    if (reps.cols != proto.mean.size())
        throw DimensionError("baseline_scores: width mismatch");
    if (mode == BaselineMode::mahalanobis && !proto.has_covariance)
        throw ConfigError("baseline_scores: prototype lacks a covariance");
    const std::size_t d = reps.cols;
    std::vector<double> scores(reps.rows);
    double mean_norm = 0.0;
    for (double v : proto.mean)
        mean_norm += v * v;
    mean_norm = std::sqrt(mean_norm);

    for (std::size_t i = 0; i < reps.rows; ++i) {
        std::vector<double> diff(d);
        for (std::size_t j = 0; j < d; ++j)
            diff[j] = reps(i, j) - proto.mean[j];
        switch (mode) {
            case BaselineMode::cosine: {
                double dot = 0.0, norm = 0.0;
                for (std::size_t j = 0; j < d; ++j) {
                    dot += reps(i, j) * proto.mean[j];
                    norm += reps(i, j) * reps(i, j);
                }
                norm = std::sqrt(norm);
                if (norm == 0.0 || mean_norm == 0.0)
                    throw NumericalError("cosine similarity undefined for a zero vector");
                scores[i] = -dot / (norm * mean_norm);
                break;
            }
            case BaselineMode::euclidean: {
                double s = 0.0;
                for (double v : diff)
                    s += v * v;
                scores[i] = std::sqrt(s);
                break;
            }
            case BaselineMode::mahalanobis: {
                std::vector<double> solved = cholesky_solve(proto.chol, diff);
                double s = 0.0;
                for (std::size_t j = 0; j < d; ++j)
                    s += diff[j] * solved[j];
                scores[i] = std::sqrt(std::max(0.0, s));
                break;
            }
        }
    }
    return scores;
}

BaselineMode parse_baseline_mode(const std::string& name) {
    if (name == "cosine") return BaselineMode::cosine;
    if (name == "euclidean") return BaselineMode::euclidean;
    if (name == "mahalanobis") return BaselineMode::mahalanobis;
    throw ConfigError("unknown baseline mode: " + name);
}

std::string baseline_mode_name(BaselineMode mode) {
    switch (mode) {
        case BaselineMode::cosine: return "cosine";
        case BaselineMode::euclidean: return "euclidean";
        case BaselineMode::mahalanobis: return "mahalanobis";
    }
    return "?";
}

}  // namespace rsl
