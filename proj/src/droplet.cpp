#include "coulombgap/droplet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coulombgap/errors.hpp"
#include "coulombgap/numeric.hpp"

namespace coulombgap {

double GapParams::log_ratio() const { return std::log(r2 / r1); }

double GapParams::alpha_shift() const {
    return std::log(dq2 / dq1) / (4.0 * log_ratio());
}

namespace {

constexpr int kScanPoints = 2048;

// Roots of DQ on (r_lo, r_hi), located from sign changes on a log-spaced
// scan grid (F' = 2 r DQ, so these are exactly the fold points of F).
std::vector<double> laplacian_roots(const RadialPotential& p, double r_lo,
                                    double r_hi) {
    std::vector<double> roots;
    const double llo = std::log(r_lo), lhi = std::log(r_hi);
    double prev_r = r_lo, prev_v = p.laplacian(r_lo);
    for (int i = 1; i <= kScanPoints; ++i) {
        const double r = std::exp(llo + (lhi - llo) * i / kScanPoints);
        const double v = p.laplacian(r);
        if ((prev_v > 0) != (v > 0)) {
            roots.push_back(find_root([&](double s) { return p.laplacian(s); },
                                      prev_r, r));
        }
        prev_r = r;
        prev_v = v;
    }
    return roots;
}

double mass_over_annulus(const RadialPotential& p, double a, double b) {
    if (b <= a) return 0.0;
    return integrate([&](double s) { return 2.0 * s * p.laplacian(s); }, a, b,
                     1e-12)
        .value;
}

GapParams make_gap(const RadialPotential& p, double r1, double r2) {
    GapParams gp;
    gp.r1 = r1;
    gp.r2 = r2;
    gp.B = r1 * p.dq(r1);
    gp.A = p.q(r1) - gp.B * std::log(r1);
    gp.rho = r1 / r2;
    gp.u = gp.rho * gp.rho;
    gp.dq1 = p.laplacian(r1);
    gp.dq2 = p.laplacian(r2);
    gp.C_lemma = 0.5 * (1.0 / (r1 * r1 * gp.dq1) - 1.0 / (r2 * r2 * gp.dq2));
    gp.a0 = std::sqrt(gp.dq2 / gp.dq1);
    return gp;
}

void frostman_check(const DropletGeometry& g, const RadialPotential& p) {
    const double r_max = 1.5 * g.outer_radius;
    for (int i = 1; i <= 1000; ++i) {
        const double r = r_max * i / 1000.0;
        const double gap_margin = p.q(r) - obstacle(g, p, r);
        if (gap_margin < -1e-8)
            throw FrostmanViolation("Q < obstacle at r=" + std::to_string(r));
    }
}

}  // namespace

DropletGeometry solve_droplet(const RadialPotential& p) {
    // Locate the outer scale: smallest power of two R with F(R) > 1.2 and
    // DQ(R) > 0.
    double r_hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        if (p.cumulative_mass_function(r_hi) > 1.2 && p.laplacian(r_hi) > 0.0)
            break;
        r_hi *= 2.0;
        if (it == 199)
            throw RootNotFound("solve_droplet: mass never reaches 1");
    }
    if (!p.growth_ok(r_hi))
        throw std::invalid_argument("solve_droplet: growth condition fails");

    auto F = [&](double r) { return p.cumulative_mass_function(r); };
    auto solve_outer = [&](double lo, double hi) {
        const double b = find_root([&](double r) { return F(r) - 1.0; }, lo, hi,
                                   1e-6, 1e-13,
                                   [&](double r) { return 2 * r * p.laplacian(r); });
        if (p.laplacian(b) <= 0.0)
            throw NonPositiveLaplacian("DQ <= 0 at outer radius");
        return b;
    };

    const std::vector<double> folds = laplacian_roots(p, 1e-4 * r_hi, r_hi);

    DropletGeometry g;
    const bool monotone = folds.empty();
    if (!monotone && folds.size() != 2)
        throw MultiGapUnsupported(
            "droplet has more than one bounded gap candidate (" +
            std::to_string(folds.size()) + " DQ sign changes)");

    if (monotone || F(folds[0]) >= 1.0) {
        // Single disk: mass 1 is reached while F is still increasing.
        const double hi = monotone ? r_hi : folds[0];
        const double b = solve_outer(1e-8 * r_hi, hi);
        g.annuli = {{0.0, b}};
        g.outer_radius = b;
        g.robin_gamma = p.q(b) - 2.0 * std::log(b);
        frostman_check(g, p);
        return g;
    }

    const double s1 = folds[0], s2 = folds[1];
    const double f_max = F(s1);
    // F may dip below zero between the folds; the admissible gap levels are
    // the positive ones below the local maximum (and below total mass 1).
    const double f_min = std::max(F(s2), 0.0);
    if (!(f_max > f_min))
        throw MultiGapUnsupported(
            "unsupported droplet class: no admissible gap level");

    // Gap system, nested as a 1D problem in r1: given r1 on the first
    // ascending branch, r2(r1) solves F(r2) = F(r1) on the branch past s2,
    // and the closure function is B log(r2/r1) - (q(r2) - q(r1)).
    auto r2_of_r1 = [&](double r1) {
        const double target = F(r1);
        double hi = s2;
        while (F(hi) < target) hi *= 1.5;
        return find_root([&](double r) { return F(r) - target; }, s2, hi);
    };
    auto closure = [&](double r1) {
        const double r2 = r2_of_r1(r1);
        return 2.0 * F(r1) * std::log(r2 / r1) - (p.q(r2) - p.q(r1));
    };

    // r1 ranges over F(r1) in (f_min, f_max); bracket the closure root by a
    // linear scan in F-level.
    const double lvl_lo = f_min + 1e-10 * (f_max - f_min);
    const double lvl_hi = f_max - 1e-10 * (f_max - f_min);
    auto r1_of_level = [&](double lvl) {
        return find_root([&](double r) { return F(r) - lvl; }, 1e-8 * r_hi, s1);
    };
    double prev_r1 = r1_of_level(lvl_lo), prev_c = closure(prev_r1);
    double root_r1 = -1.0;
    const int kLevels = 64;
    for (int i = 1; i <= kLevels; ++i) {
        const double lvl = lvl_lo + (lvl_hi - lvl_lo) * i / kLevels;
        const double r1 = r1_of_level(lvl);
        const double c = closure(r1);
        if ((prev_c > 0) != (c > 0)) {
            root_r1 = find_root(closure, prev_r1, r1);
            break;
        }
        prev_r1 = r1;
        prev_c = c;
    }
    if (root_r1 < 0.0)
        throw RootNotFound("solve_droplet: gap system has no solution");

    const double r1 = root_r1;
    const double r2 = r2_of_r1(r1);
    GapParams gp = make_gap(p, r1, r2);

    if (gp.B / 2.0 >= 1.0) {
        // All of the mass fits inside the inner component; no gap materializes.
        const double b = solve_outer(1e-8 * r_hi, s1);
        g.annuli = {{0.0, b}};
        g.outer_radius = b;
        g.robin_gamma = p.q(b) - 2.0 * std::log(b);
        frostman_check(g, p);
        return g;
    }
    if (gp.dq1 <= 0.0 || gp.dq2 <= 0.0)
        throw NonPositiveLaplacian("DQ <= 0 at gap boundary");

    const double b_n = solve_outer(r2, r_hi);
    g.annuli = {{0.0, r1}, {r2, b_n}};
    g.outer_radius = b_n;
    g.gaps = {gp};
    g.robin_gamma = p.q(b_n) - 2.0 * std::log(b_n);
    frostman_check(g, p);
    return g;
}

double equilibrium_mass(const DropletGeometry& g, const RadialPotential& p,
                        double r) {
    if (r < 0.0) throw std::domain_error("equilibrium_mass: r < 0");
    double mass = 0.0;
    for (const auto& [a, b] : g.annuli) {
        if (r <= a) break;
        mass += mass_over_annulus(p, std::max(a, 1e-300), std::min(r, b));
    }
    if (mass > 1.0 + 1e-8)
        throw QuadratureFailure("equilibrium_mass: overshoot beyond 1");
    return std::clamp(mass, 0.0, 1.0);
}

double obstacle_in_gap(const GapParams& gp, double r) {
    if (!(r >= gp.r1 && r <= gp.r2))
        throw std::domain_error("obstacle_in_gap: r outside [r1, r2]");
    return gp.A + gp.B * std::log(r);
}

NDependentGapState gap_state(const GapParams& gp, int n) {
    if (n < 1) throw std::invalid_argument("gap_state: n must be >= 1");
    NDependentGapState st;
    st.n = n;
    const double half_bn = 0.5 * gp.B * n;
    st.m = static_cast<long>(std::floor(half_bn));
    st.x = half_bn - static_cast<double>(st.m);
    st.alpha = st.x + gp.alpha_shift();
    return st;
}

double log_potential(const DropletGeometry& g, const RadialPotential& p,
                     double r) {
    double acc = 0.0;
    auto piece = [&](double lo, double hi) {
        if (hi <= lo) return 0.0;
        return integrate(
                   [&](double s) {
                       return std::log(std::max(r, s)) * 2.0 * s *
                              p.laplacian(s);
                   },
                   lo, hi, 1e-12)
            .value;
    };
    for (const auto& [a, b] : g.annuli) {
        const double lo = std::max(a, 1e-300);
        if (b <= lo) continue;
        // split at the kink of log(max(r, s))
        if (r > lo && r < b) {
            acc -= piece(lo, r) + piece(r, b);
        } else {
            acc -= piece(lo, b);
        }
    }
    return acc;
}

double obstacle(const DropletGeometry& g, const RadialPotential& p, double r) {
    return g.robin_gamma - 2.0 * log_potential(g, p, r);
}

}  // namespace coulombgap
