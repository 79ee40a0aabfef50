#include <doctest.h>

#include <cmath>
#include <complex>

#include "coulombgap/specfun.hpp"

using namespace coulombgap;

namespace {
const double kPi = std::acos(-1.0);

// Direct, independently coded theta sum in long double.
Complex theta_direct(double x, double im_tau) {
    long double re = 0.0L, im = 0.0L;
    for (int l = -60; l <= 60; ++l) {
        const long double mag = std::exp(-kPi * (long double)l * l * im_tau);
        re += mag * std::cos(2.0L * kPi * l * x);
        im += mag * std::sin(2.0L * kPi * l * x);
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}
}  // namespace

TEST_CASE("erfc: frozen value, limits, reflection") {
    CHECK(coulombgap::erfc(1.0) ==
          doctest::Approx(0.15729920705028513).epsilon(1e-14));
    CHECK(coulombgap::erfc(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(coulombgap::erfc(-1.0) + coulombgap::erfc(1.0) ==
          doctest::Approx(2.0).epsilon(1e-14));
    CHECK(coulombgap::erfc(10.0) < 1e-44);
}

TEST_CASE("jacobi theta matches the direct series") {
    for (double x : {0.0, 0.3, 0.97})
        for (double T : {0.5, 1.0, 2.0}) {
            const Complex got = jacobi_theta(Complex(x, 0.0), T);
            const Complex want = theta_direct(x, T);
            CHECK(std::abs(got - want) <= 1e-14 * std::abs(want) + 1e-300);
        }
}

TEST_CASE("theta periodicity, evenness, and derivative") {
    const Complex z(0.37, 0.05);
    const double T = 0.8;
    CHECK(std::abs(jacobi_theta(z + 1.0, T) - jacobi_theta(z, T)) < 1e-13);
    CHECK(std::abs(jacobi_theta(-z, T) - jacobi_theta(z, T)) < 1e-13);
    const double h = 1e-6;
    const Complex fd =
        (jacobi_theta(z + h, T) - jacobi_theta(z - h, T)) / (2.0 * h);
    CHECK(std::abs(jacobi_theta_dz(z, T) - fd) < 1e-7);
    CHECK(std::abs(log_theta_prime(z, T) -
                   jacobi_theta_dz(z, T) / jacobi_theta(z, T)) < 1e-12);
    // theta' is odd, so it vanishes at z = 0 and z = 1/2.
    CHECK(std::abs(jacobi_theta_dz(Complex(0.0, 0.0), T)) < 1e-13);
    CHECK(std::abs(jacobi_theta_dz(Complex(0.5, 0.0), T)) < 1e-13);
}

TEST_CASE("modular transform theta(z/tau; -1/tau)") {
    for (double t : {0.4, 1.0, 3.0}) {
        const Complex z(0.23, 0.04);
        const Complex tau(0.0, t);
        const Complex lhs = jacobi_theta(z / tau, 1.0 / t);
        const Complex rhs = std::exp(Complex(0.0, kPi) * z * z / tau) *
                            std::sqrt(t) * jacobi_theta(z, t);
        CHECK(std::abs(lhs - rhs) < 1e-11 * std::abs(rhs));
    }
}

TEST_CASE("modified theta reduces to jacobi theta") {
    for (double x : {0.2, 0.6})
        for (double rho : {0.4, 0.7})
            for (double a : {0.5, 2.0}) {
                const double L = -std::log(rho);
                double tail = 0.0;
                for (int j = 1; j < 200; ++j)
                    tail += std::log1p(-std::pow(rho, 2.0 * j));
                const double arg =
                    x + std::log(a * rho) / (2.0 * std::log(rho));
                const double rhs =
                    0.5 * std::log(kPi * a / (std::sqrt(rho) * L)) +
                    std::log(a) * std::log(a) / (4.0 * L) - tail +
                    std::log(std::abs(
                        jacobi_theta(Complex(arg, 0.0), kPi / L)));
                CHECK(modified_theta(x, rho, a) ==
                      doctest::Approx(rhs).epsilon(1e-12));
            }
}

TEST_CASE("modified theta derivative matches finite differences") {
    const double h = 1e-6;
    for (double x : {0.25, 0.8}) {
        const double fd =
            (modified_theta(x + h, 0.5, 1.3) -
             modified_theta(x - h, 0.5, 1.3)) /
            (2.0 * h);
        CHECK(modified_theta_dx(x, 0.5, 1.3) ==
              doctest::Approx(fd).epsilon(1e-7));
    }
}

TEST_CASE("Xi series at phi = 0: closed form in log theta'") {
    for (double x : {0.15, 0.5, 0.9})
        for (double rho : {0.35, 0.7})
            for (double a : {0.6, 1.8}) {
                const double L = -std::log(rho);
                const double arg = x + std::log(a) / (2.0 * L);
                const double rhs =
                    (log_theta_prime(Complex(arg, 0.0), kPi / L).real() +
                     2.0 * x * L + std::log(a)) /
                    (2.0 * L);
                const Complex xi = xi_series(x, 0.0, rho, a);
                CHECK(std::fabs(xi.imag()) < 1e-13);
                CHECK(xi.real() == doctest::Approx(rhs).epsilon(1e-11));
            }
}

TEST_CASE("Xi series at nonzero phase is a genuine complex value") {
    const Complex xi = xi_series(0.4, 1.0, 0.5, 1.0);
    CHECK(std::abs(xi) > 0.0);
    // Conjugation symmetry: Xi(-phi) = conj(Xi(phi)) for real parameters.
    const Complex xim = xi_series(0.4, -1.0, 0.5, 1.0);
    CHECK(std::abs(xim - std::conj(xi)) < 1e-13);
}

TEST_CASE("discrete Gaussian: normalization, moments, CGF") {
    const DiscreteGaussian d(0.37, 0.45);
    double z = 0.0, m1 = 0.0, m2 = 0.0;
    for (long k = -50; k <= 50; ++k) {
        const double p = d.pmf(k);
        z += p;
        m1 += k * p;
        m2 += k * k * p;
    }
    CHECK(z == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(d.mean() == doctest::Approx(m1).epsilon(1e-12));
    CHECK(d.variance() == doctest::Approx(m2 - m1 * m1).epsilon(1e-10));

    // CGF of Y = c (X - alpha) against brute force.
    const double c = 0.8, t = 1.3;
    double num = 0.0;
    for (long k = -50; k <= 50; ++k)
        num += d.pmf(k) * std::exp(t * c * (k - d.alpha()));
    CHECK(d.cgf_Y(c, t) == doctest::Approx(std::log(num)).epsilon(1e-11));
    CHECK(d.cgf_Y(c, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("discrete Gaussian CGF matches the theta closed form") {
    const double L = 0.9;
    const double u = std::exp(-2.0 * L);
    const DiscreteGaussian d(0.7, u);
    const double c = -0.5, t = 2.0;
    const double th1 = std::abs(
        jacobi_theta(Complex(0.7 + t * c / (2.0 * L), 0.0), kPi / L));
    const double th0 = std::abs(jacobi_theta(Complex(0.7, 0.0), kPi / L));
    const double closed =
        t * t * c * c / (4.0 * L) + std::log(th1) - std::log(th0);
    CHECK(d.cgf_Y(c, t) == doctest::Approx(closed).epsilon(1e-11));
}
