#pragma once

#include <memory>
#include <vector>

namespace coulombgap {

// Radially symmetric external potential Q(z) = q(|z|).
//
// The canonical representation is a polynomial in r^2,
//   q(r) = sum_{k=1..K} c_k r^{2k},
// whose derivatives are computed from the coefficients. A tabulated general
// profile is also accepted (reduced precision: 5-point stencil derivatives).
class RadialPotential {
public:
    // Coefficients in ascending powers of r^2: {c1, c2, ...}.
    explicit RadialPotential(std::vector<double> coeffs);

    // Tabulated profile on a uniform grid r in [0, r_max].
    static RadialPotential tabulated(std::vector<double> values, double r_max);

    bool is_polynomial() const { return tabulated_values_.empty(); }
    bool reduced_precision() const { return !is_polynomial(); }
    const std::vector<double>& coefficients() const { return coeffs_; }

    double q(double r) const;    // throws std::domain_error for r <= 0
    double dq(double r) const;
    double d2q(double r) const;
    double d3q(double r) const;
    double d4q(double r) const;

    // Quarter-Laplacian DQ(r) = (q'(r)/r + q''(r)) / 4.
    double laplacian(double r) const;
    // d/dr DQ(r) = (q''/r - q'/r^2 + q''') / 4.
    double laplacian_radial_derivative(double r) const;

    // F(r) = r q'(r) / 2, the cumulative equilibrium mass where DQ > 0.
    double cumulative_mass_function(double r) const;

    // q(0); needed at the origin where the public q() is undefined.
    double q_at_origin() const;

    // q(R) - 2 log R must dominate at large R for the equilibrium problem
    // to be well posed. Checked at R = 10 * outer_scale.
    bool growth_ok(double outer_scale) const;

private:
    RadialPotential() = default;
    double table_value(double r, int deriv) const;

    std::vector<double> coeffs_;
    std::vector<double> tabulated_values_;
    double table_rmax_ = 0.0;
};

// Radial test function with two continuous derivatives, supported in
// [r_lo, r_hi].
class RadialTestFunction {
public:
    // C^infinity bump exp(1 - 1/(1-u^2)) on the support, scaled by `amplitude`.
    static RadialTestFunction bump(double r_lo, double r_hi,
                                   double amplitude = 1.0);

    // Piecewise-quintic trapezoid: rises 0 -> amplitude on [r_lo, p_lo],
    // flat on [p_lo, p_hi], falls back to 0 on [p_hi, r_hi]. C^2 throughout.
    static RadialTestFunction plateau(double r_lo, double p_lo, double p_hi,
                                      double r_hi, double amplitude = 1.0);

    // Identically zero.
    static RadialTestFunction zero();

    double value(double r) const;
    double deriv(double r) const;
    double second_deriv(double r) const;

    double support_lo() const { return r_lo_; }
    double support_hi() const { return r_hi_; }
    bool is_zero() const { return kind_ == Kind::Zero; }

private:
    enum class Kind { Zero, Bump, Plateau };
    Kind kind_ = Kind::Zero;
    double r_lo_ = 0.0, r_hi_ = 0.0, p_lo_ = 0.0, p_hi_ = 0.0, amp_ = 0.0;
};

// Q(z) - s lambda(|z|) / n.
class PerturbedPotential {
public:
    PerturbedPotential(RadialPotential base, RadialTestFunction bump, double s,
                       int n);

    double value(double r) const;        // q(r) - s lambda(r) / n
    double deriv(double r) const;
    double value_at_origin() const;

    const RadialPotential& base() const { return base_; }
    const RadialTestFunction& test_function() const { return bump_; }
    double s() const { return s_; }
    int n() const { return n_; }

private:
    RadialPotential base_;
    RadialTestFunction bump_;
    double s_;
    int n_;
};

}  // namespace coulombgap
