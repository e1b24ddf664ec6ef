#pragma once

#include <stdexcept>
#include <string>

namespace rsl {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& m) : std::runtime_error("config error: " + m) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& m) : std::runtime_error("parse error: " + m) {}
};

struct DimensionError : std::runtime_error {
    explicit DimensionError(const std::string& m) : std::runtime_error("dimension error: " + m) {}
};

struct BoundsError : std::runtime_error {
    explicit BoundsError(const std::string& m) : std::runtime_error("bounds error: " + m) {}
};

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& m) : std::runtime_error("validation error: " + m) {}
};

struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& m) : std::runtime_error("numerical error: " + m) {}
};

struct MetricError : std::runtime_error {
    explicit MetricError(const std::string& m) : std::runtime_error("metric error: " + m) {}
};

struct SplitError : std::runtime_error {
    explicit SplitError(const std::string& m) : std::runtime_error("split error: " + m) {}
};

struct DependencyError : std::runtime_error {
    explicit DependencyError(const std::string& m) : std::runtime_error("dependency error: " + m) {}
};

}  // namespace rsl
