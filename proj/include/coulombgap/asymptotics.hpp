#pragma once

#include <complex>

#include "coulombgap/droplet.hpp"
#include "coulombgap/potential.hpp"

namespace coulombgap {

using Complex = std::complex<double>;

// Closed-form edge density at order n + sqrt(n), with the sqrt(n) bracket
// broken out term by term. Every component already carries its prefactor,
// so total = leading + subleading and subleading = sum of the bracket parts.
struct EdgePrediction {
    double leading = 0.0;     // n DQ(r_k) erfc(+-t)/2
    double subleading = 0.0;  // sqrt(n DQ)/(sqrt(2 pi) r_k) * bracket
    double total = 0.0;

    struct Components {
        double lambda = 0.0;     // s-dependent test-function term
        double curvature = 0.0;  // (t^2 - 2)/6 (sign per edge)
        double dn_laplacian = 0.0;
        double alpha_shift = 0.0;
        double theta = 0.0;
    } components;
};

// Inner gap edge |z| = r1 + t / sqrt(2 n DQ(r1)).
EdgePrediction predict_density_gap_inner(const RadialPotential& p,
                                         const GapParams& gp,
                                         const NDependentGapState& state,
                                         double t, double s,
                                         const RadialTestFunction& lambda);

// Outer gap edge |z| = r2 + t / sqrt(2 n DQ(r2)); mirror signs.
EdgePrediction predict_density_gap_outer_edge(const RadialPotential& p,
                                              const GapParams& gp,
                                              const NDependentGapState& state,
                                              double t, double s,
                                              const RadialTestFunction& lambda);

// Outer droplet boundary |z| = b_N + t / sqrt(2 n DQ(b_N)); no theta term.
EdgePrediction predict_density_outer_boundary(const DropletGeometry& g,
                                              const RadialPotential& p,
                                              double t, int n);

// Bulk density n DQ(z) + (1/2) Dlog DQ(z) - s Dlambda(z); requires
// dist(z, boundary of S) >= delta_n = log n / sqrt(n).
double predict_bulk(const RadialPotential& p, const DropletGeometry& g,
                    Complex z, int n, double s,
                    const RadialTestFunction& lambda);

// Weighted Hardy-space kernel on the gap,
//   S(z, w) = (1/2pi) sum_l (z conj(w))^l
//             / (r1^{2l+1-2x}/sqrt(DQ(r1)) + r2^{2l+1-2x}/sqrt(DQ(r2))),
// for r1^2 < |z conj(w)| < r2^2; on |z| = |w| = r1 with distinct angles the
// Abel-summed closed form (pole + two-sided tail series) is used instead.
Complex szego_gap(const GapParams& gp, const NDependentGapState& state,
                  Complex z, Complex w);

enum class TwoPointMode { General, R1R2, R1R1 };

// Off-diagonal kernel prediction sqrt(2 pi n) S(z, w) times the gauge factor
// of the requested regime.
Complex predict_two_point(const RadialPotential& p, const GapParams& gp,
                          const NDependentGapState& state, Complex z, Complex w,
                          TwoPointMode mode);

struct CgfPrediction {
    double e = 0.0;  // mean coefficient
    double v = 0.0;  // variance coefficient
    int n = 0;
};

// Smooth CLT coefficients of a radial test function:
//   e_f = (1/2) int_S f Dlog DQ dA + (1/8pi) int_bdry dn f |dz|
//         - (1/8pi) int_bdry f (dn DQ / DQ) |dz|,
//   v_f = - int_S f Df dA,
// reduced to radial quadratures (dA = 2 r dr on radial integrands).
CgfPrediction cgf_coefficients_analytic(const RadialTestFunction& f,
                                        const DropletGeometry& g,
                                        const RadialPotential& p);

// Alternative variance via Green's theorem: (1/2) int f'(r)^2 r dr.
double cgf_variance_green(const RadialTestFunction& f);

// Oscillatory CGF component F_n(t) = log E exp(t c (X - alpha)) of the
// discrete-Gaussian X ~ dN(alpha, u), c = lambda(r1) - lambda(r2);
// evaluated by direct summation.
double cgf_osc_discrete(const RadialTestFunction& lambda, const GapParams& gp,
                        const NDependentGapState& state, double t);

// Same quantity through the theta-function closed form
//   t^2 c^2 / (4 L) + log theta(x + shift + t c/(2L); i pi / L) - log theta(x
//   + shift; i pi / L),   L = log(r2/r1).
double cgf_osc_theta(const RadialTestFunction& lambda, const GapParams& gp,
                     const NDependentGapState& state, double t);

// Full CGF prediction t (e + e_hat) + t^2/2 (v + v_hat) + F_n(t);
// |t| <= log n required.
double cgf_predict_radial(const RadialTestFunction& lambda,
                          const DropletGeometry& g, const RadialPotential& p,
                          const GapParams& gp, const NDependentGapState& state,
                          double t);

}  // namespace coulombgap
