#include "coulombgap/specfun.hpp"

#include <cmath>
#include <stdexcept>

#include "coulombgap/errors.hpp"
#include "coulombgap/numeric.hpp"

namespace coulombgap {

namespace {
const double kPi = std::acos(-1.0);
}

double erfc(double t) { return std::erfc(t); }

namespace {

// Symmetric truncation of the theta series: choose L so that the first
// neglected term e^{2 pi |Im z| L - pi T L^2} is below e^{-40}.
long theta_terms(double im_z, double im_tau) {
    if (!(im_tau > 0.0))
        throw std::domain_error("jacobi_theta: Im tau must be positive");
    const double b = 2.0 * kPi * std::fabs(im_z);
    const double a = kPi * im_tau;
    const double L = (b + std::sqrt(b * b + 4.0 * a * 40.0)) / (2.0 * a) + 2.0;
    if (L > 1e6)
        throw ConvergenceFailure("jacobi_theta: Im tau pathologically small");
    return static_cast<long>(std::ceil(L));
}

}  // namespace

Complex jacobi_theta(Complex z, double im_tau) {
    const long L = theta_terms(z.imag(), im_tau);
    Complex sum = 1.0;  // l = 0
    for (long l = 1; l <= L; ++l) {
        const double gauss = std::exp(-kPi * im_tau * l * l);
        const Complex phase = std::exp(Complex(0, 2.0 * kPi * l) * z);
        sum += gauss * (phase + 1.0 / phase);
    }
    return sum;
}

Complex jacobi_theta_dz(Complex z, double im_tau) {
    const long L = theta_terms(z.imag(), im_tau);
    Complex sum = 0.0;
    for (long l = 1; l <= L; ++l) {
        const double gauss = std::exp(-kPi * im_tau * l * l);
        const Complex phase = std::exp(Complex(0, 2.0 * kPi * l) * z);
        sum += gauss * Complex(0, 2.0 * kPi * l) * (phase - 1.0 / phase);
    }
    return sum;
}

Complex log_theta_prime(Complex z, double im_tau) {
    const Complex th = jacobi_theta(z, im_tau);
    if (std::abs(th) < 1e-300)
        throw PoleError("log_theta_prime: theta vanishes");
    return jacobi_theta_dz(z, im_tau) / th;
}

double modified_theta(double x, double rho, double a) {
    if (!(rho > 0.0 && rho < 1.0 && a > 0.0))
        throw std::domain_error("modified_theta: need 0 < rho < 1, a > 0");
    const double log_rho = std::log(rho);
    double sum = x * (x - 1.0) * log_rho + x * std::log(a);
    for (long j = 0;; ++j) {
        const double t1 = a * std::pow(rho, 2.0 * (j + x));
        const double t2 = std::pow(rho, 2.0 * (j + 1.0 - x)) / a;
        sum += std::log1p(t1) + std::log1p(t2);
        if (t1 < 1e-16 && t2 < 1e-16) break;
        if (j > 1000000)
            throw ConvergenceFailure("modified_theta: series stalled");
    }
    return sum;
}

double modified_theta_dx(double x, double rho, double a) {
    const double log_rho = std::log(rho);
    double sum = (2.0 * x - 1.0) * log_rho + std::log(a);
    for (long j = 0;; ++j) {
        const double t1 = a * std::pow(rho, 2.0 * (j + x));
        const double t2 = std::pow(rho, 2.0 * (j + 1.0 - x)) / a;
        sum += 2.0 * log_rho * (t1 / (1.0 + t1) - t2 / (1.0 + t2));
        if (t1 < 1e-16 && t2 < 1e-16) break;
        if (j > 1000000)
            throw ConvergenceFailure("modified_theta_dx: series stalled");
    }
    return sum;
}

Complex xi_series(double x, double phi, double rho, double a) {
    if (!(rho > 0.0 && rho < 1.0 && a > 0.0))
        throw std::domain_error("xi_series: need 0 < rho < 1, a > 0");
    Complex sum = 0.0;
    for (long l = 0;; ++l) {
        // 1/(1 + rho^{-(2l-2x+1)}/a) decays like a rho^{2l-2x+1}
        const double denom = 1.0 + std::pow(rho, -(2.0 * l - 2.0 * x + 1.0)) / a;
        const double term = 1.0 / denom;
        sum += std::exp(Complex(0, phi * l)) * term;
        if (term < 1e-16) break;
    }
    for (long l = -1;; --l) {
        const double denom = 1.0 + a * std::pow(rho, 2.0 * l - 2.0 * x + 1.0);
        const double term = 1.0 / denom;
        sum -= std::exp(Complex(0, phi * l)) * term;
        if (term < 1e-16) break;
    }
    return sum;
}

DiscreteGaussian::DiscreteGaussian(double alpha, double u)
    : alpha_(alpha), u_(u) {
    if (!(u > 0.0 && u < 1.0))
        throw std::domain_error("DiscreteGaussian: u must be in (0,1)");
    const double log_u = std::log(u_);
    LogSumExp acc;
    const long k0 = static_cast<long>(std::llround(alpha_));
    const long K = half_range();
    for (long k = k0 - K; k <= k0 + K; ++k) {
        const double d = static_cast<double>(k) - alpha_;
        acc.add(0.5 * d * d * log_u);
    }
    log_I_ = acc.log_sum();
}

long DiscreteGaussian::half_range(double drift) const {
    // Smallest K with (log(1/u)/2) K^2 - |drift| K > 45, floor of 40.
    const double L = -std::log(u_);
    const double d = std::fabs(drift);
    const double K = (d + std::sqrt(d * d + 2.0 * L * 45.0)) / L;
    return std::max(40L, static_cast<long>(std::ceil(K)) + 5);
}

double DiscreteGaussian::pmf(long k) const {
    const double d = static_cast<double>(k) - alpha_;
    return std::exp(0.5 * d * d * std::log(u_) - log_I_);
}

double DiscreteGaussian::mean() const {
    const long k0 = static_cast<long>(std::llround(alpha_));
    const long K = half_range();
    double m = 0.0;
    for (long k = k0 - K; k <= k0 + K; ++k)
        m += static_cast<double>(k) * pmf(k);
    return m;
}

double DiscreteGaussian::variance() const {
    const double m = mean();
    const long k0 = static_cast<long>(std::llround(alpha_));
    const long K = half_range();
    double v = 0.0;
    for (long k = k0 - K; k <= k0 + K; ++k) {
        const double d = static_cast<double>(k) - m;
        v += d * d * pmf(k);
    }
    return v;
}

double DiscreteGaussian::cgf_Y(double c, double t) const {
    const double log_u = std::log(u_);
    const long k0 = static_cast<long>(std::llround(alpha_));
    const long K = half_range(t * c);
    LogSumExp acc;
    for (long k = k0 - K; k <= k0 + K; ++k) {
        const double d = static_cast<double>(k) - alpha_;
        acc.add(0.5 * d * d * log_u + t * c * d);
    }
    return acc.log_sum() - log_I_;
}

}  // namespace coulombgap
