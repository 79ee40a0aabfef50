#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

namespace coulombgap {

// Bracketed 1D root finding: bisection down to `bisect_width`, then Newton
// polish (secant if no derivative supplied) to `polish_tol`.
// f(lo) and f(hi) must have opposite signs.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double bisect_width = 1e-6, double polish_tol = 1e-13,
                 const std::function<double(double)>& df = nullptr);

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    std::size_t evaluations = 0;
};

// Adaptive Gauss(7)/Kronrod(15) integration of f on [a, b].
// Throws QuadratureFailure if the tolerance is not met within max_intervals.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double rel_tol = 1e-12,
                           double abs_tol = 0.0,
                           std::size_t max_intervals = 10000);

// log of \int_a^b e^{G(r)} dr, peak-normalized: the integrand is shifted by
// `shift` (typically max G over its critical points) before integration.
double log_integrate_exp(const std::function<double(double)>& G, double a,
                         double b, double shift, double rel_tol = 1e-12);

// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights);

// Streaming log-sum-exp accumulator for sums of exp(log-terms).
class LogSumExp {
public:
    void add(double log_term) {
        if (std::isinf(log_term) && log_term < 0) return;
        if (log_term > max_) {
            if (!empty_) sum_ = sum_ * std::exp(max_ - log_term) + 1.0;
            else sum_ = 1.0;
            max_ = log_term;
        } else {
            sum_ += std::exp(log_term - max_);
        }
        empty_ = false;
    }
    bool empty() const { return empty_; }
    double log_sum() const {
        if (empty_) return -std::numeric_limits<double>::infinity();
        return max_ + std::log(sum_);
    }

private:
    double max_ = -std::numeric_limits<double>::infinity();
    double sum_ = 0.0;
    bool empty_ = true;
};

// Run fn(i) for i in [0, count) on the available hardware threads.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                  int threads = 0);

}  // namespace coulombgap
