#pragma once

#include <stdexcept>
#include <string>

namespace coulombgap {

// Numerical failure inside an integration routine (tolerance not met).
struct QuadratureFailure : std::runtime_error {
    explicit QuadratureFailure(const std::string& msg) : std::runtime_error(msg) {}
};

// A bracketed root solve did not find a sign change or did not converge.
struct RootNotFound : std::runtime_error {
    explicit RootNotFound(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConvergenceFailure : std::runtime_error {
    explicit ConvergenceFailure(const std::string& msg) : std::runtime_error(msg) {}
};

// Droplet solver diagnostics.
struct MultiGapUnsupported : std::runtime_error {
    explicit MultiGapUnsupported(const std::string& msg) : std::runtime_error(msg) {}
};
struct NonPositiveLaplacian : std::runtime_error {
    explicit NonPositiveLaplacian(const std::string& msg) : std::runtime_error(msg) {}
};
struct FrostmanViolation : std::runtime_error {
    explicit FrostmanViolation(const std::string& msg) : std::runtime_error(msg) {}
};

// Sampler table construction failed (quadrature or degenerate support).
struct TableBuildFailure : std::runtime_error {
    explicit TableBuildFailure(const std::string& msg) : std::runtime_error(msg) {}
};

// Kernel / predictor placement errors.
struct OutOfWindow : std::domain_error {
    explicit OutOfWindow(const std::string& msg) : std::domain_error(msg) {}
};
struct ModeMismatch : std::domain_error {
    explicit ModeMismatch(const std::string& msg) : std::domain_error(msg) {}
};
struct Divergence : std::domain_error {
    explicit Divergence(const std::string& msg) : std::domain_error(msg) {}
};
struct AngleCoincidence : std::domain_error {
    explicit AngleCoincidence(const std::string& msg) : std::domain_error(msg) {}
};
struct PoleError : std::domain_error {
    explicit PoleError(const std::string& msg) : std::domain_error(msg) {}
};

}  // namespace coulombgap
