#include "coulombgap/asymptotics.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "coulombgap/errors.hpp"
#include "coulombgap/numeric.hpp"
#include "coulombgap/specfun.hpp"

namespace coulombgap {

namespace {

const double kPi = std::acos(-1.0);

void check_t_window(double t, int n, const char* who) {
    if (!(std::fabs(t) <= std::log(static_cast<double>(n))))
        throw OutOfWindow(std::string(who) + ": |t| exceeds log n");
}

double delta_n(int n) {
    return std::log(static_cast<double>(n)) / std::sqrt(n);
}

// Real part of (log theta)'(x; i pi / L) at real x, the only case the edge
// formulas need.
double log_theta_prime_real(double x, double im_tau) {
    return log_theta_prime(Complex(x, 0.0), im_tau).real();
}

EdgePrediction assemble(double leading, double pref,
                        EdgePrediction::Components c) {
    EdgePrediction ep;
    ep.leading = leading;
    ep.components.lambda = pref * c.lambda;
    ep.components.curvature = pref * c.curvature;
    ep.components.dn_laplacian = pref * c.dn_laplacian;
    ep.components.alpha_shift = pref * c.alpha_shift;
    ep.components.theta = pref * c.theta;
    ep.subleading = ep.components.lambda + ep.components.curvature +
                    ep.components.dn_laplacian + ep.components.alpha_shift +
                    ep.components.theta;
    ep.total = ep.leading + ep.subleading;
    return ep;
}

}  // namespace

EdgePrediction predict_density_gap_inner(const RadialPotential& p,
                                         const GapParams& gp,
                                         const NDependentGapState& state,
                                         double t, double s,
                                         const RadialTestFunction& lambda) {
    check_t_window(t, state.n, "predict_density_gap_inner");
    const double n = state.n;
    const double L = gp.log_ratio();
    const double c = lambda.value(gp.r1) - lambda.value(gp.r2);
    const double gt = std::exp(-t * t);
    const double pref = std::sqrt(n * gp.dq1) / (std::sqrt(2.0 * kPi) * gp.r1);

    EdgePrediction::Components b;
    b.lambda = gt * 0.5 * s * (gp.r1 * lambda.deriv(gp.r1) + c / L);
    b.curvature = gt * (t * t - 2.0) / 6.0;
    // e^{-t^2} * (sqrt(pi)/2 t erfc(t) e^{t^2} - (2t^2+5)/12) folded together
    // so the e^{t^2} factor never overflows for t << 0.
    const double dn_dq = p.laplacian_radial_derivative(gp.r1);
    b.dn_laplacian = gp.r1 * (dn_dq / gp.dq1) *
                     (0.5 * std::sqrt(kPi) * t * erfc(t) -
                      gt * (2.0 * t * t + 5.0) / 12.0);
    b.alpha_shift = gt * gp.alpha_shift();
    const double arg = state.x + gp.alpha_shift() + s * c / (2.0 * L);
    b.theta = gt * log_theta_prime_real(arg, kPi / L) / (2.0 * L);

    return assemble(n * gp.dq1 * 0.5 * erfc(t), pref, b);
}

EdgePrediction predict_density_gap_outer_edge(const RadialPotential& p,
                                              const GapParams& gp,
                                              const NDependentGapState& state,
                                              double t, double s,
                                              const RadialTestFunction& lambda) {
    check_t_window(t, state.n, "predict_density_gap_outer_edge");
    const double n = state.n;
    const double L = gp.log_ratio();
    const double c = lambda.value(gp.r1) - lambda.value(gp.r2);
    const double gt = std::exp(-t * t);
    const double pref = std::sqrt(n * gp.dq2) / (std::sqrt(2.0 * kPi) * gp.r2);

    EdgePrediction::Components b;
    b.lambda = -gt * 0.5 * s * (gp.r2 * lambda.deriv(gp.r2) + c / L);
    b.curvature = gt * (2.0 - t * t) / 6.0;
    // The normal-derivative factor is the radial derivative here as well:
    // validated against the exact kernel, the residual at r2 decays with n
    // for dn = +d/dr and grows like sqrt(n) for dn = -d/dr.
    const double dn_dq = p.laplacian_radial_derivative(gp.r2);
    b.dn_laplacian = gp.r2 * (dn_dq / gp.dq2) *
                     (0.5 * std::sqrt(kPi) * t * erfc(-t) +
                      gt * (2.0 * t * t + 5.0) / 12.0);
    b.alpha_shift = -gt * gp.alpha_shift();
    const double arg = state.x + gp.alpha_shift() + s * c / (2.0 * L);
    b.theta = -gt * log_theta_prime_real(arg, kPi / L) / (2.0 * L);

    return assemble(n * gp.dq2 * 0.5 * erfc(-t), pref, b);
}

EdgePrediction predict_density_outer_boundary(const DropletGeometry& g,
                                              const RadialPotential& p,
                                              double t, int n) {
    check_t_window(t, n, "predict_density_outer_boundary");
    const double bN = g.outer_radius;
    const double dq = p.laplacian(bN);
    const double gt = std::exp(-t * t);
    const double pref =
        std::sqrt(static_cast<double>(n) * dq) / (std::sqrt(2.0 * kPi) * bN);

    EdgePrediction::Components b;
    b.curvature = gt * (t * t - 2.0) / 6.0;
    const double dn_dq = p.laplacian_radial_derivative(bN);
    b.dn_laplacian = bN * (dn_dq / dq) *
                     (0.5 * std::sqrt(kPi) * t * erfc(t) -
                      gt * (2.0 * t * t + 5.0) / 12.0);
    return assemble(n * dq * 0.5 * erfc(t), pref, b);
}

double predict_bulk(const RadialPotential& p, const DropletGeometry& g,
                    Complex z, int n, double s,
                    const RadialTestFunction& lambda) {
    const double r = std::abs(z);
    const double d = delta_n(n);
    bool inside = false;
    for (const auto& [a, bb] : g.annuli) {
        const double lo = (a == 0.0) ? 0.0 : a + d;
        if (r >= lo && r <= bb - d) inside = true;
    }
    if (!inside)
        throw OutOfWindow("predict_bulk: z within delta_n of the boundary");

    const double re = std::max(r, 1e-7);  // DQ is smooth through 0
    const double dq = p.laplacian(re);
    if (!(dq > 0.0))
        throw NonPositiveLaplacian("predict_bulk: DQ <= 0 at z");
    const double ddq = p.laplacian_radial_derivative(re);
    // (DQ)'' = (q'''/r - 2 q''/r^2 + 2 q'/r^3 + q'''')/4
    const double d2dq = 0.25 * (p.d3q(re) / re - 2.0 * p.d2q(re) / (re * re) +
                                2.0 * p.dq(re) / (re * re * re) + p.d4q(re));
    const double lap_log_dq =
        0.25 * ((d2dq * dq - ddq * ddq) / (dq * dq) + ddq / (re * dq));
    const double lap_lambda =
        0.25 * (lambda.second_deriv(re) + lambda.deriv(re) / re);
    return n * dq + 0.5 * lap_log_dq - s * lap_lambda;
}

namespace {

// Interior-branch series of the gap kernel, accumulated in log magnitude.
Complex szego_interior(const GapParams& gp, double x, Complex prod) {
    const double P = std::abs(prod);
    if (!(P > gp.r1 * gp.r1 && P < gp.r2 * gp.r2))
        throw Divergence("szego_gap: |z conj(w)| outside (r1^2, r2^2)");
    const double logP = std::log(P);
    const double phi = std::arg(prod);
    const double l1 = std::log(gp.r1), l2 = std::log(gp.r2);
    const double h1 = -0.5 * std::log(gp.dq1), h2 = -0.5 * std::log(gp.dq2);

    auto log_term = [&](double l) {
        const double a = (2.0 * l + 1.0 - 2.0 * x) * l1 + h1;
        const double b = (2.0 * l + 1.0 - 2.0 * x) * l2 + h2;
        const double m = std::max(a, b);
        const double log_denom = m + std::log1p(std::exp(std::min(a, b) - m));
        return l * logP - log_denom;
    };

    Complex sum = 0.0;
    double peak = log_term(0.0);
    for (long l = 0;; ++l) {
        const double lm = log_term(static_cast<double>(l));
        peak = std::max(peak, lm);
        sum += std::exp(lm) * std::exp(Complex(0, phi * l));
        if (lm < peak - 40.0) break;
        if (l > 10000000)
            throw ConvergenceFailure("szego_gap: series stalled (upper)");
    }
    peak = log_term(-1.0);
    for (long l = -1;; --l) {
        const double lm = log_term(static_cast<double>(l));
        peak = std::max(peak, lm);
        sum += std::exp(lm) * std::exp(Complex(0, phi * l));
        if (lm < peak - 40.0) break;
        if (l < -10000000)
            throw ConvergenceFailure("szego_gap: series stalled (lower)");
    }
    return sum / (2.0 * kPi);
}

// Abel-summed branch on |z| = |w| = r1.
Complex szego_circle(const GapParams& gp, double x, double dtheta) {
    const Complex e = std::exp(Complex(0, dtheta));
    if (std::abs(e - 1.0) < 1e-12)
        throw AngleCoincidence("szego_gap: theta1 = theta2 on the circle");
    const Complex pole = 1.0 / (e - 1.0);
    const Complex xi = xi_series(x, dtheta, gp.rho, gp.a0);
    return (std::sqrt(gp.dq1) / gp.r1) * std::pow(gp.r1, 2.0 * x) *
           (pole + xi) / (2.0 * kPi);
}

}  // namespace

Complex szego_gap(const GapParams& gp, const NDependentGapState& state,
                  Complex z, Complex w) {
    const double rz = std::abs(z), rw = std::abs(w);
    const double tol = 1e-9 * gp.r1;
    if (std::fabs(rz - gp.r1) < tol && std::fabs(rw - gp.r1) < tol)
        return szego_circle(gp, state.x, std::arg(z) - std::arg(w));
    return szego_interior(gp, state.x, z * std::conj(w));
}

Complex predict_two_point(const RadialPotential& p, const GapParams& gp,
                          const NDependentGapState& state, Complex z, Complex w,
                          TwoPointMode mode) {
    const double n = state.n;
    const double rz = std::abs(z), rw = std::abs(w);
    const double width = gp.r2 - gp.r1;
    const double pref = std::sqrt(2.0 * kPi * n);
    const double dth = std::arg(z) - std::arg(w);

    switch (mode) {
        case TwoPointMode::General: {
            const double d = delta_n(state.n);
            if (std::fabs(rz - rw) < 0.05 * width)
                throw ModeMismatch("predict_two_point: |z|, |w| too close for "
                                   "the general regime");
            if (rz < gp.r1 - d || rz > gp.r2 + d || rw < gp.r1 - d ||
                rw > gp.r2 + d)
                throw ModeMismatch("predict_two_point: points must lie in "
                                   "N(G, delta_n)");
            const Complex S = szego_interior(gp, state.x, z * std::conj(w));
            const double log_gauge =
                state.m * (std::log(rz) + std::log(rw)) -
                0.5 * gp.B * n * (std::log(gp.r1) + std::log(gp.r2)) +
                0.5 * n * (p.q(gp.r1) - p.q(rz)) +
                0.5 * n * (p.q(gp.r2) - p.q(rw));
            return pref * S * std::exp(log_gauge) *
                   std::exp(Complex(0, state.m * dth));
        }
        case TwoPointMode::R1R2: {
            if (std::fabs(rz - gp.r1) > 0.25 * width ||
                std::fabs(rw - gp.r2) > 0.25 * width)
                throw ModeMismatch("predict_two_point: r1-r2 regime needs z "
                                   "near r1 and w near r2");
            const double t = (rz - gp.r1) * std::sqrt(2.0 * n * gp.dq1);
            const double s = (rw - gp.r2) * std::sqrt(2.0 * n * gp.dq2);
            const Complex S = szego_interior(gp, state.x, z * std::conj(w));
            return pref * S * std::exp(Complex(0, state.m * dth)) *
                   std::pow(gp.r1 * gp.r2, -state.x) *
                   std::exp(-0.5 * (t * t + s * s));
        }
        case TwoPointMode::R1R1: {
            if (std::fabs(rz - gp.r1) > 0.25 * width ||
                std::fabs(rw - gp.r1) > 0.25 * width)
                throw ModeMismatch("predict_two_point: r1-r1 regime needs "
                                   "both points near r1");
            const double t = (rz - gp.r1) * std::sqrt(2.0 * n * gp.dq1);
            const double s = (rw - gp.r1) * std::sqrt(2.0 * n * gp.dq1);
            const Complex S = szego_circle(gp, state.x, dth);
            return pref * std::exp(-0.5 * (t * t + s * s)) *
                   std::exp(Complex(0, state.m * dth)) *
                   std::pow(gp.r1, -2.0 * state.x) * S;
        }
    }
    throw std::logic_error("predict_two_point: bad mode");
}

namespace {

// Angular average over the circle of radius r: a 64-point trapezoid, exact
// for radial integrands but ready for angular dependence.
double circle_mean(const std::function<double(double, double)>& f, double r) {
    const int kAngles = 64;
    double acc = 0.0;
    for (int k = 0; k < kAngles; ++k) {
        const double th = 2.0 * kPi * k / kAngles;
        acc += f(r, th);
    }
    return acc / kAngles;
}

double lap_log_dq_at(const RadialPotential& p, double r) {
    const double dq = p.laplacian(r);
    const double ddq = p.laplacian_radial_derivative(r);
    const double d2dq = 0.25 * (p.d3q(r) / r - 2.0 * p.d2q(r) / (r * r) +
                                2.0 * p.dq(r) / (r * r * r) + p.d4q(r));
    return 0.25 * ((d2dq * dq - ddq * ddq) / (dq * dq) + ddq / (r * dq));
}

}  // namespace

CgfPrediction cgf_coefficients_analytic(const RadialTestFunction& f,
                                        const DropletGeometry& g,
                                        const RadialPotential& p) {
    CgfPrediction out;
    if (f.is_zero()) return out;
    const double flo = f.support_lo(), fhi = f.support_hi();

    double e = 0.0, v = 0.0;
    for (const auto& [a, b] : g.annuli) {
        const double lo = std::max(a, std::max(flo, 1e-9 * b));
        const double hi = std::min(b, fhi);
        if (hi > lo) {
            // (1/2) int f Dlog DQ dA, dA = 2 r dr on radial data
            e += integrate(
                     [&](double r) {
                         return f.value(r) * lap_log_dq_at(p, r) * r;
                     },
                     lo, hi, 1e-10, 1e-12)
                     .value;
            // v_f = -int f Df dA = -(1/2) int f (f'' r + f') dr
            v -= 0.5 *
                 integrate(
                     [&](double r) {
                         return f.value(r) *
                                (f.second_deriv(r) * r + f.deriv(r));
                     },
                     lo, hi, 1e-10, 1e-12)
                     .value;
        }
        // Boundary circles; outward normal of S is -d/dr at inner radii a > 0
        // and +d/dr at outer radii b.
        auto boundary = [&](double r, double sign) {
            const double fb =
                circle_mean([&](double rr, double) { return f.value(rr); }, r);
            const double dfb =
                circle_mean([&](double rr, double) { return f.deriv(rr); }, r);
            const double dn_ratio =
                sign * p.laplacian_radial_derivative(r) / p.laplacian(r);
            e += 0.25 * r * (sign * dfb - fb * dn_ratio);
        };
        if (a > 0.0) boundary(a, -1.0);
        boundary(b, +1.0);
    }
    out.e = e;
    out.v = v;
    return out;
}

double cgf_variance_green(const RadialTestFunction& f) {
    if (f.is_zero()) return 0.0;
    return 0.5 * integrate(
                     [&](double r) {
                         const double d = f.deriv(r);
                         return d * d * r;
                     },
                     f.support_lo(), f.support_hi(), 1e-10, 1e-12)
                     .value;
}

double cgf_osc_discrete(const RadialTestFunction& lambda, const GapParams& gp,
                        const NDependentGapState& state, double t) {
    const double c = lambda.value(gp.r1) - lambda.value(gp.r2);
    if (c == 0.0) return 0.0;
    return DiscreteGaussian(state.alpha, gp.u).cgf_Y(c, t);
}

double cgf_osc_theta(const RadialTestFunction& lambda, const GapParams& gp,
                     const NDependentGapState& state, double t) {
    const double c = lambda.value(gp.r1) - lambda.value(gp.r2);
    if (c == 0.0) return 0.0;
    const double L = gp.log_ratio();
    const double base = state.x + gp.alpha_shift();  // Bn/2 reduced mod 1
    const double im_tau = kPi / L;
    const double th1 =
        std::abs(jacobi_theta(Complex(base + t * c / (2.0 * L), 0.0), im_tau));
    const double th0 = std::abs(jacobi_theta(Complex(base, 0.0), im_tau));
    return t * t * c * c / (4.0 * L) + std::log(th1) - std::log(th0);
}

double cgf_predict_radial(const RadialTestFunction& lambda,
                          const DropletGeometry& g, const RadialPotential& p,
                          const GapParams& gp, const NDependentGapState& state,
                          double t) {
    check_t_window(t, state.n, "cgf_predict_radial");
    const CgfPrediction base = cgf_coefficients_analytic(lambda, g, p);
    const double c = lambda.value(gp.r1) - lambda.value(gp.r2);
    const double e_hat = c * gp.alpha_shift();
    const double v_hat = 0.5 * (gp.r1 * lambda.value(gp.r1) *
                                    lambda.deriv(gp.r1) -
                                gp.r2 * lambda.value(gp.r2) *
                                    lambda.deriv(gp.r2));
    return t * (base.e + e_hat) + 0.5 * t * t * (base.v + v_hat) +
           cgf_osc_discrete(lambda, gp, state, t);
}

}  // namespace coulombgap
