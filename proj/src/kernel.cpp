#include "coulombgap/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "coulombgap/errors.hpp"
#include "coulombgap/numeric.hpp"

namespace coulombgap {

namespace {

// Log-integrand of the squared norm: G(r) = log 2 + (2j+1) log r - n q(r)
// + s lambda(r).
struct NormIntegrand {
    const PerturbedPotential* pp;
    int j;

    double G(double r) const {
        const double n = pp->n();
        return std::log(2.0) + (2.0 * j + 1.0) * std::log(r) -
               n * pp->base().q(r) +
               pp->s() * pp->test_function().value(r);
    }
    double dG(double r) const {
        const double n = pp->n();
        return (2.0 * j + 1.0) / r - n * pp->base().dq(r) +
               pp->s() * pp->test_function().deriv(r);
    }
};

// Locate global max of G and the decay cutoffs G > max - 60.
struct Profile {
    double peak_log = 0.0;
    double lo = 0.0, hi = 0.0;
    std::vector<double> criticals;
    std::vector<double> maxima;
};

Profile profile_integrand(const NormIntegrand& f) {
    // Outer range: double until the integrand has clearly decayed past the
    // running maximum.
    double r_hi = 1.0, running_max = -1e308;
    for (int it = 0; it < 200; ++it) {
        running_max = std::max(running_max, f.G(r_hi));
        if (f.G(r_hi) < running_max - 100.0 && f.dG(r_hi) < 0.0) break;
        r_hi *= 2.0;
    }
    const double r_lo = 1e-9 * r_hi;

    const int kGrid = 512;
    const double llo = std::log(r_lo), lhi = std::log(r_hi);
    Profile prof;
    double prev_r = r_lo, prev_d = f.dG(r_lo), max_g = f.G(r_lo);
    double max_r = r_lo;
    for (int i = 1; i <= kGrid; ++i) {
        const double r = std::exp(llo + (lhi - llo) * i / kGrid);
        const double d = f.dG(r);
        if ((prev_d > 0) != (d > 0)) {
            const double rc =
                find_root([&](double s) { return f.dG(s); }, prev_r, r);
            prof.criticals.push_back(rc);
            if (prev_d > 0 && d < 0) prof.maxima.push_back(rc);
            const double g = f.G(rc);
            if (g > max_g) {
                max_g = g;
                max_r = rc;
            }
        }
        const double g = f.G(r);
        if (g > max_g) {
            max_g = g;
            max_r = r;
        }
        prev_r = r;
        prev_d = d;
    }
    prof.peak_log = max_g;

    // Cutoffs where G = max - 60 outside the first/last local maximum. The
    // bracket endpoints must flank *all* maxima: for a bimodal integrand the
    // valley between the peaks can dip below the cutoff level, and a bracket
    // anchored at the global maximum alone would clip the other peak.
    auto drop = [&](double r) { return f.G(r) - (max_g - 60.0); };
    double first_max = max_r, last_max = max_r;
    for (double rm : prof.maxima) {
        if (drop(rm) < 0) continue;  // peak entirely below the cutoff level
        first_max = std::min(first_max, rm);
        last_max = std::max(last_max, rm);
    }
    double lo = r_lo;
    if (drop(r_lo) <= 0) lo = find_root(drop, r_lo, first_max, 1e-6 * max_r);
    double hi = r_hi;
    if (drop(r_hi) < 0) hi = find_root(drop, last_max, r_hi, 1e-6 * max_r);
    prof.lo = lo;
    prof.hi = hi;
    return prof;
}

double log_norm_impl(const PerturbedPotential& pp, int j) {
    NormIntegrand f{&pp, j};
    const Profile prof = profile_integrand(f);

    // Integrate e^{G - peak} over [lo, hi], splitting panels at the peaks.
    std::vector<double> cuts{prof.lo};
    for (double rc : prof.criticals)
        if (rc > prof.lo && rc < prof.hi) cuts.push_back(rc);
    cuts.push_back(prof.hi);
    std::sort(cuts.begin(), cuts.end());

    auto integrand = [&](double r) { return std::exp(f.G(r) - prof.peak_log); };
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        total += integrate(integrand, cuts[i], cuts[i + 1], 1e-12).value;
    if (!(total > 0.0))
        throw QuadratureFailure("log_norm: vanishing integral");
    return prof.peak_log + std::log(total);
}

double g_tau(const RadialPotential& p, double tau, double r) {
    return p.q(r) - 2.0 * tau * std::log(r);
}
double g_tau_d2(const RadialPotential& p, double tau, double r) {
    return p.d2q(r) + 2.0 * tau / (r * r);
}

}  // namespace

double log_norm(const PerturbedPotential& pp, int j) {
    if (j < 0 || j >= pp.n())
        throw std::out_of_range("log_norm: j outside [0, n)");
    return log_norm_impl(pp, j);
}

std::pair<double, double> peak_points(const PerturbedPotential& pp,
                                      const GapParams& gp, int j) {
    const double tau = static_cast<double>(j) / pp.n();
    const auto& p = pp.base();
    auto dg = [&](double r) { return p.dq(r) - 2.0 * tau / r; };
    const double w = 0.2 * (gp.r2 - gp.r1);
    auto solve_near = [&](double rk) {
        const double lo = std::max(rk - w, 0.05 * rk), hi = rk + w;
        if ((dg(lo) > 0) == (dg(hi) > 0))
            throw RootNotFound("peak_points: no sign change near r=" +
                               std::to_string(rk));
        return find_root(dg, lo, hi, 1e-6, 1e-13,
                         [&](double r) { return g_tau_d2(p, tau, r); });
    };
    return {solve_near(gp.r1), solve_near(gp.r2)};
}

WeightTable WeightTable::build(const PerturbedPotential& pp,
                               const GapParams* gap, WeightTableOptions opts) {
    WeightTable t;
    t.n_ = pp.n();
    t.window_C_ = opts.window_C;
    t.delta_n_ = std::log(static_cast<double>(t.n_)) / std::sqrt(t.n_);
    if (gap) t.gap_ = *gap;
    t.log_norms_.assign(t.n_, 0.0);
    parallel_for(
        static_cast<std::size_t>(t.n_),
        [&](std::size_t j) {
            t.log_norms_[j] = log_norm_impl(pp, static_cast<int>(j));
        },
        opts.threads);

    if (gap) {
        const auto& p = pp.base();
        for (int j = 0; j < t.n_; ++j) {
            if (!t.in_window(j)) continue;
            PeakData pd;
            pd.j = j;
            try {
                std::tie(pd.r1j, pd.r2j) = peak_points(pp, *gap, j);
            } catch (const RootNotFound&) {
                // At desk-scale n the index window can reach tau values
                // whose weight no longer has two critical points; such
                // indices contribute to the truncated sum through their
                // norms only.
                continue;
            }
            const double tau = static_cast<double>(j) / t.n_;
            auto log_c = [&](double rkj) {
                const double h_log = std::log(rkj) +
                                     pp.s() * pp.test_function().value(rkj);
                return std::log(2.0) + h_log -
                       0.5 * std::log(g_tau_d2(p, tau, rkj)) -
                       t.n_ * g_tau(p, tau, rkj);
            };
            pd.log_c1 = log_c(pd.r1j);
            pd.log_c2 = log_c(pd.r2j);
            t.peaks_.push_back(pd);
        }
    }
    return t;
}

bool WeightTable::in_window(int j) const {
    if (!gap_) return false;
    const double tau = static_cast<double>(j) / n_;
    return std::fabs(tau - 0.5 * gap_->B) <= window_C_ * delta_n_;
}

const WeightTable::PeakData* WeightTable::peak_for(int j) const {
    for (const auto& pd : peaks_)
        if (pd.j == j) return &pd;
    return nullptr;
}

namespace {

double log_term_diag(const PerturbedPotential& pp, const WeightTable& table,
                     double r, int j) {
    const double n = pp.n();
    const double qt = (r == 0.0) ? pp.value_at_origin() : pp.value(r);
    if (r == 0.0)
        return (j == 0) ? -n * qt - table.log_norm(0)
                        : -std::numeric_limits<double>::infinity();
    return 2.0 * j * std::log(r) - n * qt - table.log_norm(j);
}

}  // namespace

double one_point(const PerturbedPotential& pp, const WeightTable& table,
                 Complex z) {
    const double r = std::abs(z);
    LogSumExp acc;
    for (int j = 0; j < table.n(); ++j) acc.add(log_term_diag(pp, table, r, j));
    return std::exp(acc.log_sum());
}

KernelEvaluation two_point(const PerturbedPotential& pp,
                           const WeightTable& table, Complex z, Complex w) {
    const double rz = std::abs(z), rw = std::abs(w);
    const double n = pp.n();
    const double qz = (rz == 0.0) ? pp.value_at_origin() : pp.value(rz);
    const double qw = (rw == 0.0) ? pp.value_at_origin() : pp.value(rw);
    const double dphi = std::arg(z) - std::arg(w);

    std::vector<double> logmag(table.n(),
                               -std::numeric_limits<double>::infinity());
    double log_max = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < table.n(); ++j) {
        if ((rz == 0.0 || rw == 0.0) && j > 0) break;
        const double lm = (j > 0 ? j * (std::log(rz) + std::log(rw)) : 0.0) -
                          0.5 * n * (qz + qw) - table.log_norm(j);
        logmag[j] = lm;
        log_max = std::max(log_max, lm);
    }
    Complex sum = 0.0;
    for (int j = 0; j < table.n(); ++j) {
        if (std::isinf(logmag[j])) continue;
        sum += std::exp(logmag[j] - log_max) *
               std::exp(Complex(0, j * dphi));
    }
    KernelEvaluation ev;
    ev.z = z;
    ev.w = w;
    ev.value = sum;
    ev.log_scale = log_max;
    ev.n = pp.n();
    ev.s = pp.s();
    return ev;
}

double truncated_gap_one_point(const PerturbedPotential& pp,
                               const WeightTable& table, Complex z) {
    if (!table.has_gap())
        throw std::logic_error("truncated_gap_one_point: table has no gap");
    const double r = std::abs(z);
    const GapParams& gp = table.gap();
    if (r < gp.r1 - table.delta_n() || r > gp.r2 + table.delta_n())
        throw OutOfWindow("truncated_gap_one_point: z outside N(G, delta_n)");
    LogSumExp acc;
    for (int j = 0; j < table.n(); ++j) {
        if (!table.in_window(j)) continue;
        acc.add(log_term_diag(pp, table, r, j));
    }
    return std::exp(acc.log_sum());
}

double calibrate_window_C(const PerturbedPotential& pp, const GapParams& gp) {
    const Complex z(gp.r1, 0.0);
    for (double c : {4.0, 6.0, 8.0}) {
        WeightTableOptions o1, o2;
        o1.window_C = c;
        o2.window_C = 2.0 * c;
        WeightTable t1 = WeightTable::build(pp, &gp, o1);
        WeightTable t2 = WeightTable::build(pp, &gp, o2);
        const double v1 = truncated_gap_one_point(pp, t1, z);
        const double v2 = truncated_gap_one_point(pp, t2, z);
        if (std::fabs(v1 - v2) < 1e-10 * std::fabs(v2)) return c;
    }
    return 10.0;
}

}  // namespace coulombgap
