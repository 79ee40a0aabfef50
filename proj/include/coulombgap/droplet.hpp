#pragma once

#include <vector>

#include "coulombgap/potential.hpp"

namespace coulombgap {

// Constants attached to one annular spectral gap {r1 < |z| < r2}.
struct GapParams {
    double r1 = 0.0, r2 = 0.0;
    double B = 0.0;        // r1 q'(r1) = r2 q'(r2) = (q(r2)-q(r1))/log(r2/r1)
    double A = 0.0;        // q(r1) - B log r1
    double rho = 0.0;      // r1 / r2
    double u = 0.0;        // rho^2
    double C_lemma = 0.0;  // (1/(r1^2 DQ(r1)) - 1/(r2^2 DQ(r2))) / 2
    double dq1 = 0.0;      // DQ(r1)
    double dq2 = 0.0;      // DQ(r2)
    double a0 = 0.0;       // sqrt(DQ(r2)/DQ(r1))

    double log_ratio() const;           // log(r2/r1)
    double alpha_shift() const;         // log(DQ(r2)/DQ(r1)) / (4 log(r2/r1))
};

// n-dependent quantities derived from B.
struct NDependentGapState {
    int n = 0;
    long m = 0;           // floor(Bn/2)
    double x = 0.0;       // frac(Bn/2)
    double alpha = 0.0;   // x + log(DQ(r2)/DQ(r1)) / (4 log(r2/r1))
};

struct DropletGeometry {
    std::vector<std::pair<double, double>> annuli;  // (a_j, b_j), interlacing
    double outer_radius = 0.0;                      // b_N
    std::vector<GapParams> gaps;
    double robin_gamma = 0.0;
};

// Solve the droplet of a radially symmetric potential whose droplet is a
// finite union of annuli with at most one bounded gap.
//
// F(r) = r q'(r)/2 is the cumulative mass function; the outer radius solves
// F = 1 on an increasing branch, and the gap endpoints solve the system
// r1 q'(r1) = r2 q'(r2), B log(r2/r1) = q(r2) - q(r1).
DropletGeometry solve_droplet(const RadialPotential& p);

// sigma({|z| <= r}), by adaptive quadrature of 2 r DQ(r) over S.
double equilibrium_mass(const DropletGeometry& g, const RadialPotential& p,
                        double r);

// Obstacle function V(r) = A + B log r on [r1, r2].
double obstacle_in_gap(const GapParams& gp, double r);

NDependentGapState gap_state(const GapParams& gp, int n);

// Logarithmic potential of the equilibrium measure at radius r:
// U(r) = -int log(max(r, s)) dmu(s), mu the modulus distribution of sigma.
double log_potential(const DropletGeometry& g, const RadialPotential& p,
                     double r);

// Obstacle function gamma - 2 U(r) everywhere (equals Q on S).
double obstacle(const DropletGeometry& g, const RadialPotential& p, double r);

}  // namespace coulombgap
