#include "coulombgap/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "coulombgap/asymptotics.hpp"
#include "coulombgap/kernel.hpp"
#include "coulombgap/numeric.hpp"
#include "coulombgap/specfun.hpp"

namespace coulombgap {

namespace {

const double kPi = std::acos(-1.0);

CheckResult make(const std::string& name, double residual, double bound,
                 int n = 0) {
    return {name, n, residual, bound, residual <= bound};
}

// Right-hand side of the modified-theta reduction.
double theta_reduction_rhs(double x, double rho, double a) {
    const double L = -std::log(rho);  // log(1/rho)
    double tail = 0.0;
    for (int j = 1;; ++j) {
        const double t = std::pow(rho, 2.0 * j);
        tail += std::log1p(-t);
        if (t < 1e-17) break;
    }
    const double arg = x + std::log(a * rho) / (2.0 * std::log(rho));
    return 0.5 * std::log(kPi * a / (std::sqrt(rho) * L)) +
           std::log(a) * std::log(a) / (4.0 * L) - tail +
           std::log(std::abs(jacobi_theta(Complex(arg, 0.0), kPi / L)));
}

}  // namespace

std::vector<CheckResult> verify_specfun() {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(271828);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    // Periodicity and evenness over random arguments.
    {
        double worst_p = 0.0, worst_e = 0.0;
        for (int i = 0; i < 50; ++i) {
            const Complex z(2.0 * unif(rng) - 1.0, 0.4 * unif(rng));
            const double T = 0.4 + 3.0 * unif(rng);
            const double scale = std::abs(jacobi_theta(z, T));
            worst_p = std::max(
                worst_p,
                std::abs(jacobi_theta(z + 1.0, T) - jacobi_theta(z, T)) / scale);
            worst_e = std::max(
                worst_e,
                std::abs(jacobi_theta(-z, T) - jacobi_theta(z, T)) / scale);
        }
        out.push_back(make("theta_periodicity", worst_p, 1e-12));
        out.push_back(make("theta_evenness", worst_e, 1e-13));
    }
    out.push_back(
        make("theta_large_tau", std::abs(jacobi_theta(0.0, 10.0) - 1.0),
             1e-13));

    // Modular transform theta(z/tau; -1/tau) = e^{pi i z^2/tau} sqrt(-i tau)
    // theta(z; tau) for tau = i t.
    {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double t = 0.3 + 4.7 * unif(rng);
            const Complex z(unif(rng) - 0.5, 0.2 * (unif(rng) - 0.5));
            const Complex tau(0.0, t);
            const Complex lhs = jacobi_theta(z / tau, 1.0 / t);
            const Complex rhs = std::exp(Complex(0, kPi) * z * z / tau) *
                                std::sqrt(t) * jacobi_theta(z, t);
            worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
        }
        out.push_back(make("theta_modular", worst, 1e-10));
    }

    // Modified-theta reduction to Jacobi theta on a 5x5x5 grid.
    {
        double worst = 0.0;
        for (double x : {0.1, 0.3, 0.5, 0.7, 0.9})
            for (double rho : {0.3, 0.5, 0.6, 0.75, 0.9})
                for (double a : {0.2, 0.5, 1.0, 2.0, 5.0})
                    worst = std::max(worst,
                                     std::fabs(modified_theta(x, rho, a) -
                                               theta_reduction_rhs(x, rho, a)));
        out.push_back(make("modified_theta_reduction", worst, 1e-10));
    }

    // Xi identity at phi = 0.
    {
        double worst = 0.0;
        for (double x : {0.1, 0.35, 0.6, 0.85})
            for (double rho : {0.35, 0.55, 0.8})
                for (double a : {0.4, 1.0, 2.5}) {
                    // Xi(x, 0) in closed form, derived by matching the series
                    // against d/du of the modified theta at u = 1/2 - x and
                    // reducing through the Jacobi-theta representation.
                    const double L = -std::log(rho);
                    const double arg = x + std::log(a) / (2.0 * L);
                    const double rhs =
                        (log_theta_prime(Complex(arg, 0.0), kPi / L).real() +
                         2.0 * x * L + std::log(a)) /
                        (2.0 * L);
                    worst = std::max(
                        worst, std::abs(xi_series(x, 0.0, rho, a) - rhs));
                }
        out.push_back(make("xi_phi0_identity", worst, 1e-10));
    }

    // Discrete-Gaussian CGF against the theta closed form, u = e^{-2L}.
    {
        double worst = 0.0;
        for (int i = 0; i < 60; ++i) {
            const double L = 0.2 + 1.8 * unif(rng);
            const double alpha = 3.0 * unif(rng) - 1.0;
            const double c = 2.0 * unif(rng) - 1.0;
            const double t = 3.0 * unif(rng) - 1.5;
            const double u = std::exp(-2.0 * L);
            const double direct = DiscreteGaussian(alpha, u).cgf_Y(c, t);
            const double th1 = std::abs(jacobi_theta(
                Complex(alpha + t * c / (2.0 * L), 0.0), kPi / L));
            const double th0 =
                std::abs(jacobi_theta(Complex(alpha, 0.0), kPi / L));
            const double closed =
                t * t * c * c / (4.0 * L) + std::log(th1) - std::log(th0);
            worst = std::max(worst, std::fabs(direct - closed));
        }
        out.push_back(make("dn_cgf_vs_theta", worst, 1e-9));
    }

    // pmf normalization.
    {
        const DiscreteGaussian d(0.37, 0.45);
        double s = 0.0;
        for (long k = -40; k <= 40; ++k) s += d.pmf(k);
        out.push_back(make("dn_pmf_normalization", std::fabs(s - 1.0), 1e-12));
    }

    // erfc against the defining integral (tail integrated to 8, remainder
    // below 1e-28).
    {
        const double quad =
            2.0 / std::sqrt(kPi) *
            integrate([](double s) { return std::exp(-s * s); }, 1.0, 8.0,
                      1e-14)
                .value;
        out.push_back(make("erfc_integral", std::fabs(erfc(1.0) - quad), 1e-13));
    }
    return out;
}

std::vector<CheckResult> verify_geometry(const RadialPotential& p) {
    std::vector<CheckResult> out;
    const DropletGeometry g = solve_droplet(p);

    double mass = 0.0;
    for (const auto& [a, b] : g.annuli) {
        const double lo = std::max(a, 1e-10 * b);
        mass += 2.0 *
                integrate([&](double r) { return p.laplacian(r) * r; }, lo, b,
                          1e-12)
                    .value;
    }
    out.push_back(make("total_mass", std::fabs(mass - 1.0), 1e-10));

    if (!g.gaps.empty()) {
        const GapParams& gp = g.gaps.front();
        out.push_back(make("gap_B_match",
                           std::fabs(gp.r1 * p.dq(gp.r1) - gp.r2 * p.dq(gp.r2)),
                           1e-10));
        out.push_back(make(
            "gap_obstacle_match",
            std::fabs(gp.B * gp.log_ratio() - (p.q(gp.r2) - p.q(gp.r1))),
            1e-10));
        out.push_back(make(
            "mass_identity",
            std::fabs(2.0 * equilibrium_mass(g, p, gp.r1) - gp.B), 1e-8));
        // Strict obstacle inequality in the gap interior.
        double min_margin = 1e300;
        for (int i = 1; i < 64; ++i) {
            const double r = gp.r1 + (gp.r2 - gp.r1) * i / 64.0;
            min_margin = std::min(min_margin, p.q(r) - obstacle_in_gap(gp, r));
        }
        out.push_back({"gap_strict_inequality", 0, -min_margin, 0.0,
                       min_margin > 0.0});
    }

    // Frostman margin off S and equality on S, via the log-potential.
    {
        double worst_off = 0.0, worst_on = 0.0;
        const double rmax = 1.2 * g.outer_radius;
        for (int i = 1; i <= 500; ++i) {
            const double r = rmax * i / 500.0;
            const double margin = p.q(r) - obstacle(g, p, r);
            bool in_s = false;
            for (const auto& [a, b] : g.annuli)
                if (r >= a + 1e-9 && r <= b - 1e-9) in_s = true;
            if (in_s)
                worst_on = std::max(worst_on, std::fabs(margin));
            else
                worst_off = std::max(worst_off, std::max(0.0, -margin));
        }
        out.push_back(make("frostman_off_droplet", worst_off, 1e-8));
        out.push_back(make("frostman_on_droplet", worst_on, 1e-7));
    }
    return out;
}

std::vector<EdgeSeriesPoint> edge_series(const RadialPotential& p,
                                         const DropletGeometry& g,
                                         EdgeKind kind,
                                         const std::vector<int>& ns,
                                         int threads) {
    const RadialTestFunction zero = RadialTestFunction::zero();
    std::vector<EdgeSeriesPoint> out(ns.size());
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const int n = ns[i];
        const PerturbedPotential pp(p, zero, 0.0, n);
        WeightTableOptions opts;
        opts.threads = threads;
        const WeightTable table = WeightTable::build(pp, nullptr, opts);

        double r = 0.0, dq = 0.0;
        EdgePrediction pred;
        if (kind == EdgeKind::Outer) {
            r = g.outer_radius;
            dq = p.laplacian(r);
            pred = predict_density_outer_boundary(g, p, 0.0, n);
        } else {
            const GapParams& gp = g.gaps.front();
            const NDependentGapState st = gap_state(gp, n);
            if (kind == EdgeKind::GapInner) {
                r = gp.r1;
                dq = gp.dq1;
                pred = predict_density_gap_inner(p, gp, st, 0.0, 0.0, zero);
            } else {
                r = gp.r2;
                dq = gp.dq2;
                pred =
                    predict_density_gap_outer_edge(p, gp, st, 0.0, 0.0, zero);
            }
        }
        EdgeSeriesPoint pt;
        pt.n = n;
        pt.exact = one_point(pp, table, Complex(r, 0.0));
        pt.leading = 0.5 * n * dq;
        pt.predicted = pred.total;
        pt.raw_normalized = (pt.exact - pt.leading) / std::sqrt(n * dq);
        pt.post_residual = pt.exact - pt.predicted;
        out[i] = pt;
    }
    return out;
}

std::vector<CheckResult> verify_edge_band(const std::vector<EdgeSeriesPoint>& s,
                                          const std::string& label,
                                          int fit_max) {
    std::vector<CheckResult> out;
    double band = 0.0, worst_late = 0.0, raw_amp = 0.0;
    for (const auto& pt : s) {
        raw_amp = std::max(raw_amp, std::fabs(pt.raw_normalized));
        if (pt.n <= fit_max)
            band = std::max(band, std::fabs(pt.post_residual));
        else
            worst_late = std::max(worst_late, std::fabs(pt.post_residual));
    }
    out.push_back(make(label + "_residual_band", worst_late, 1.5 * band,
                       s.empty() ? 0 : s.back().n));
    out.push_back({label + "_raw_amplitude", s.empty() ? 0 : s.back().n,
                   raw_amp, 10.0, raw_amp > 0.02 && raw_amp < 10.0});
    return out;
}

}  // namespace coulombgap
