#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "coulombgap/droplet.hpp"
#include "coulombgap/potential.hpp"

namespace coulombgap {

using Complex = std::complex<double>;

// log of I(tau(j)) = 2 int_0^inf r^{2j+1} e^{-n q(r) + s lambda(r)} dr,
// peak-normalized adaptive quadrature.
double log_norm(const PerturbedPotential& pp, int j);

// The two roots of g_j'(r) = q'(r) - 2 tau / r = 0 nearest r1 and r2.
std::pair<double, double> peak_points(const PerturbedPotential& pp,
                                      const GapParams& gp, int j);

struct WeightTableOptions {
    double window_C = 6.0;
    int threads = 0;  // 0 = hardware concurrency
};

// Per-index norms and, inside the gap window |tau - B/2| <= C delta_n,
// peak points and Laplace coefficients. Immutable after build.
class WeightTable {
public:
    struct PeakData {
        int j = 0;
        double r1j = 0.0, r2j = 0.0;
        double log_c1 = 0.0, log_c2 = 0.0;  // log of 2 h / sqrt(g'') e^{-n g}
    };

    static WeightTable build(const PerturbedPotential& pp,
                             const GapParams* gap = nullptr,
                             WeightTableOptions opts = {});

    int n() const { return n_; }
    double log_norm(int j) const { return log_norms_.at(j); }
    double window_C() const { return window_C_; }
    double delta_n() const { return delta_n_; }
    bool has_gap() const { return gap_.has_value(); }
    const GapParams& gap() const { return *gap_; }
    bool in_window(int j) const;
    const std::vector<PeakData>& peaks() const { return peaks_; }
    const PeakData* peak_for(int j) const;

private:
    int n_ = 0;
    double window_C_ = 0.0, delta_n_ = 0.0;
    std::optional<GapParams> gap_;
    std::vector<double> log_norms_;
    std::vector<PeakData> peaks_;
};

struct KernelEvaluation {
    Complex z, w;
    Complex value;      // kernel is value * exp(log_scale)
    double log_scale = 0.0;
    int n = 0;
    double s = 0.0;

    Complex full() const { return value * std::exp(log_scale); }
};

// R_n(z) = K_n(z, z), accumulated in shifted log space.
double one_point(const PerturbedPotential& pp, const WeightTable& table,
                 Complex z);

// K_n(z, w) in the canonical monomial gauge.
KernelEvaluation two_point(const PerturbedPotential& pp,
                           const WeightTable& table, Complex z, Complex w);

// The sum restricted to the gap window; z must lie within delta_n of G.
double truncated_gap_one_point(const PerturbedPotential& pp,
                               const WeightTable& table, Complex z);

// Smallest C in {4, 6, 8, 10} for which doubling C changes the truncated
// 1-point function at |z| = r1 by less than 1e-10 relative.
double calibrate_window_C(const PerturbedPotential& pp, const GapParams& gp);

}  // namespace coulombgap
