#pragma once

#include <complex>

namespace coulombgap {

using Complex = std::complex<double>;

// (2/sqrt(pi)) int_t^inf e^{-s^2} ds.
double erfc(double t);

// Jacobi theta: sum_l e^{2 pi i l z} e^{-pi l^2 im_tau}, tau = i * im_tau.
Complex jacobi_theta(Complex z, double im_tau);

// d/dz of the theta series at the same truncation.
Complex jacobi_theta_dz(Complex z, double im_tau);

// theta'(z; tau)/theta(z; tau).
Complex log_theta_prime(Complex z, double im_tau);

// Modified theta:
//   x(x-1) log rho + x log a
//   + sum_{j>=0} log(1 + a rho^{2(j+x)}) + sum_{j>=0} log(1 + rho^{2(j+1-x)}/a).
double modified_theta(double x, double rho, double a);

// d/dx of modified_theta, by the term-wise differentiated series.
double modified_theta_dx(double x, double rho, double a);

// Xi(x, phi; rho, a) =
//   sum_{l>=0} e^{i phi l}/(1 + rho^{-(2l-2x+1)}/a)
//   - sum_{l<=-1} e^{i phi l}/(1 + a rho^{2l-2x+1}).
Complex xi_series(double x, double phi, double rho, double a);

// Integer-valued law with pmf(k) proportional to u^{(k-alpha)^2/2}.
class DiscreteGaussian {
public:
    DiscreteGaussian(double alpha, double u);

    double alpha() const { return alpha_; }
    double u() const { return u_; }
    double log_normalizer() const { return log_I_; }

    double pmf(long k) const;
    double mean() const;
    double variance() const;

    // log E exp(t c (X - alpha)), the CGF of Y = c (X - alpha).
    double cgf_Y(double c, double t) const;

private:
    long half_range(double drift = 0.0) const;
    double alpha_, u_, log_I_;
};

}  // namespace coulombgap
