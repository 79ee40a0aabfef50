// Acceptance suite: eight end-to-end criteria, one pass/fail line each.
// Exit code 0 iff every criterion passes.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include "coulombgap/asymptotics.hpp"
#include "coulombgap/droplet.hpp"
#include "coulombgap/kernel.hpp"
#include "coulombgap/numeric.hpp"
#include "coulombgap/potential.hpp"
#include "coulombgap/specfun.hpp"
#include "coulombgap/statistics.hpp"
#include "coulombgap/verify.hpp"

using namespace coulombgap;

namespace {

int g_failures = 0;

void report(int idx, const std::string& label, bool pass,
            const std::string& detail) {
    std::printf("criterion %d (%s): %s%s%s\n", idx, label.c_str(),
                pass ? "PASS" : "FAIL", detail.empty() ? "" : " -- ",
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), f, a, b, c);
    return buf;
}

const RadialPotential kSextic({1.8, -0.8, 0.1});
const RadialTestFunction kZero = RadialTestFunction::zero();

// ---------------------------------------------------------------------------
void criterion1_geometry(const DropletGeometry& g) {
    const GapParams& gp = g.gaps.front();
    const double b_err = std::fabs(gp.B - 2.0 * 4.9735 / 30.0);
    const double mass_err =
        std::fabs(2.0 * equilibrium_mass(g, kSextic, gp.r1) - gp.B);
    report(1, "gap geometry", b_err < 1e-3 && mass_err < 1e-8,
           fmt("|B - 0.33157| = %.2e, mass identity residual = %.2e", b_err,
               mass_err));
}

// ---------------------------------------------------------------------------
void criterion2_twin_peaks(const DropletGeometry& g) {
    const GapParams& gp = g.gaps.front();
    const int n = 30, j = 5;
    const double tau = static_cast<double>(j) / n;
    const PerturbedPotential pp(kSextic, kZero, 0.0, n);

    auto logw = [&](double r) {
        return 2.0 * j * std::log(r) - n * kSextic.q(r);
    };
    // Strict local maxima of the weighted wavefunction on a fine grid.
    std::vector<double> maxima;
    const int N = 6000;
    for (int i = 2; i < N; ++i) {
        const double r0 = 3.0 * (i - 1) / N, r1 = 3.0 * i / N,
                     r2 = 3.0 * (i + 1) / N;
        if (logw(r1) > logw(r0) && logw(r1) > logw(r2)) maxima.push_back(r1);
    }
    bool ok = maxima.size() == 2;
    double loc_err = 1e300, env_c = -1.0;
    if (ok) {
        // Peak locations solve F(r) = tau; they deviate from the gap radii
        // by O(tau - B/2).
        const auto [p1, p2] = peak_points(pp, gp, j);
        loc_err = std::max(std::fabs(maxima[0] - p1),
                           std::fabs(maxima[1] - p2));
        ok = ok && loc_err < 5e-3;
        const double dev = tau - 0.5 * gp.B;
        ok = ok && std::fabs(p1 - gp.r1) < 10.0 * std::fabs(dev) + 1e-6;
        ok = ok && std::fabs(p2 - gp.r2) < 10.0 * std::fabs(dev) + 1e-6;

        // Sub-Gaussian envelope: away from both peaks the wavefunction is
        // bounded by exp(-c n dist^2) with a fitted c > 0.
        const double peak_log = std::max(logw(p1), logw(p2));
        env_c = 1e300;
        for (int i = 1; i <= 600; ++i) {
            const double r = 3.0 * i / 600.0;
            const double d =
                std::min(std::fabs(r - p1), std::fabs(r - p2));
            if (d < 0.05) continue;
            env_c = std::min(env_c, (peak_log - logw(r)) / (n * d * d));
        }
        ok = ok && env_c > 0.0;
    }
    report(2, "twin peaks", ok,
           fmt("maxima = %g, location error = %.2e, envelope c = %.3f",
               static_cast<double>(maxima.size()), loc_err, env_c));
}

// ---------------------------------------------------------------------------
void criterion3_edge_bands(const DropletGeometry& g) {
    std::vector<int> ns;
    for (int n = 30; n <= 200; n += 10) ns.push_back(n);
    bool all = true;
    std::string detail;
    for (auto [kind, label] :
         {std::pair{EdgeKind::GapInner, "r1"},
          std::pair{EdgeKind::GapOuter, "r2"},
          std::pair{EdgeKind::Outer, "outer"}}) {
        const auto series = edge_series(kSextic, g, kind, ns, 0);
        const auto checks = verify_edge_band(series, label, 60);
        for (const auto& c : checks) {
            all = all && c.pass;
            detail += c.check + (c.pass ? " ok; " : " FAIL; ");
        }
    }
    report(3, "edge-density expansion", all, detail);
}

// ---------------------------------------------------------------------------
void criterion4_theta_identities() {
    bool all = true;
    double worst = 0.0;
    for (const auto& c : verify_specfun()) {
        all = all && c.pass;
        worst = std::max(worst, c.residual / std::max(c.bound, 1e-300));
    }
    report(4, "theta/CGF identities", all,
           fmt("worst residual/bound = %.2e", worst));
}

// ---------------------------------------------------------------------------
void criterion5_cgf(const DropletGeometry& g) {
    const GapParams& gp = g.gaps.front();
    const RadialTestFunction lam = RadialTestFunction::bump(0.05, 0.55, 1.0);
    // lambda separates the gap endpoints.
    bool ok = std::fabs(lam.value(gp.r1) - lam.value(gp.r2)) > 0.5;

    double worst_rel = 0.0;
    for (int n : {25, 50, 100}) {
        const double t = 0.5;
        const double prod = exact_cgf_product(lam, kSextic, g, n, t);
        const double ward = exact_cgf_ward(lam, kSextic, g, n, t);
        worst_rel = std::max(worst_rel,
                             std::fabs(prod - ward) / std::fabs(prod));
    }
    ok = ok && worst_rel < 1e-6;

    // Envelope: |exact - predicted| decreasing in n and below the fitted
    // kappa log^5 n / sqrt(n) bound.
    const std::vector<int> ns{50, 100, 200, 400};
    bool decreasing = true, enveloped = true;
    double kappa = 0.0;
    for (double t : {0.5, 1.0}) {
        std::vector<double> errs;
        for (int n : ns) {
            const double exact = exact_cgf_product(lam, kSextic, g, n, t);
            const double pred = cgf_predict_radial(lam, g, kSextic, gp,
                                                   gap_state(gp, n), t);
            errs.push_back(std::fabs(exact - pred));
        }
        auto env = [](int n) {
            const double l = std::log(static_cast<double>(n));
            return l * l * l * l * l / std::sqrt(static_cast<double>(n));
        };
        const double k = errs[0] / env(ns[0]);
        kappa = std::max(kappa, k);
        for (std::size_t i = 1; i < ns.size(); ++i) {
            decreasing = decreasing && errs[i] < errs[i - 1];
            enveloped = enveloped && errs[i] <= k * env(ns[i]);
        }
    }
    ok = ok && decreasing && enveloped;
    report(5, "fluctuation CGF", ok,
           fmt("route mismatch = %.2e, kappa = %.3g", worst_rel, kappa) +
               (decreasing ? "" : ", error not decreasing") +
               (enveloped ? "" : ", envelope violated"));
}

// ---------------------------------------------------------------------------
void criterion6_two_point(const DropletGeometry& g) {
    const GapParams& gp = g.gaps.front();
    const double th1 = 0.0, th2 = 0.4;
    std::vector<double> rel_errs, phase_errs;
    for (int n : {100, 200, 400}) {
        const PerturbedPotential pp(kSextic, kZero, 0.0, n);
        const WeightTable table = WeightTable::build(pp);
        const NDependentGapState st = gap_state(gp, n);
        const Complex z = std::polar(gp.r1, th1), w = std::polar(gp.r2, th2);
        const Complex exact = two_point(pp, table, z, w).full();
        const Complex pred =
            predict_two_point(kSextic, gp, st, z, w, TwoPointMode::R1R2);
        rel_errs.push_back(
            std::fabs(std::abs(exact) - std::abs(pred)) / std::abs(pred));
        phase_errs.push_back(std::fabs(std::arg(exact / pred)));
    }
    const bool decay =
        rel_errs[1] < rel_errs[0] && rel_errs[2] < rel_errs[1];
    const bool phase = phase_errs.back() < 1e-2;
    report(6, "two-point asymptotics", decay && phase,
           fmt("|K| rel err %.3g -> %.3g -> %.3g", rel_errs[0], rel_errs[1],
               rel_errs[2]) +
               fmt(", phase err at n=400: %.2e rad", phase_errs.back()));
}

// ---------------------------------------------------------------------------
void criterion7_sampler(const DropletGeometry& g) {
    const GapParams& gp = g.gaps.front();
    const int n = 100, count = 10000;
    const RadialTestFunction lam = RadialTestFunction::bump(0.05, 0.55, 1.0);
    const SampleBatch batch = sample(kSextic, g, n, count, 20260824);

    // Fluctuation mean against the exact CGF derivative at 0.
    const std::vector<double> fl = empirical_fluct(batch, lam, kSextic, g);
    double mean = 0.0;
    for (double v : fl) mean += v;
    mean /= count;
    double var = 0.0;
    for (double v : fl) var += (v - mean) * (v - mean);
    var /= count - 1;
    const double se = std::sqrt(var / count);
    const double h = 0.02;
    const double exact_mean =
        (exact_cgf_product(lam, kSextic, g, n, h) -
         exact_cgf_product(lam, kSextic, g, n, -h)) /
        (2.0 * h);
    const bool fluct_ok = std::fabs(mean - exact_mean) < 3.0 * se + 1e-4;

    // Inner-disk count mean against n B / 2. The equilibrium value is an
    // n -> infinity constant, so the comparison scale is the count's own
    // standard deviation (order one), within which the finite-n mean sits.
    double cmean = 0.0, csq = 0.0;
    for (int i = 0; i < count; ++i) {
        int k = 0;
        for (int j = 0; j < n; ++j)
            if (batch.modulus(i, j) <= gp.r1) ++k;
        cmean += k;
        csq += static_cast<double>(k) * k;
    }
    cmean /= count;
    const double csd = std::sqrt(csq / count - cmean * cmean);
    const bool count_ok = std::fabs(cmean - 0.5 * n * gp.B) < 3.0 * csd;

    report(7, "sampler statistics", fluct_ok && count_ok,
           fmt("fluct mean %.4f vs exact %.4f (se %.4f)", mean, exact_mean,
               se) +
               fmt(", disk count %.3f vs nB/2 %.3f (sd %.3f)", cmean,
                   0.5 * n * gp.B, csd));
}

// ---------------------------------------------------------------------------
void criterion8_kernel_sanity(const DropletGeometry& g) {
    const GapParams& gp = g.gaps.front();
    const int n = 200;
    const PerturbedPotential pp(kSextic, kZero, 0.0, n);
    const WeightTable plain = WeightTable::build(pp);

    // Total mass of the 1-point function.
    const double mass =
        integrate(
            [&](double r) {
                return 2.0 * r * one_point(pp, plain, Complex(r, 0.0));
            },
            1e-6, 3.2, 1e-9)
            .value;
    const bool mass_ok = std::fabs(mass - n) < 1e-6 * n;

    // Hermiticity and Cauchy-Schwarz at a generic placement.
    const Complex z(0.25, 0.1), w(1.9, -0.4);
    const Complex kzw = two_point(pp, plain, z, w).full();
    const Complex kwz = two_point(pp, plain, w, z).full();
    const bool herm_ok =
        std::abs(kzw - std::conj(kwz)) < 1e-12 * std::abs(kzw) + 1e-300;
    const bool cs_ok = std::norm(kzw) <= one_point(pp, plain, z) *
                                             one_point(pp, plain, w) *
                                             (1.0 + 1e-12);

    // Truncation ratio on the gap boundary.
    const WeightTable gapped = WeightTable::build(pp, &gp);
    const double full = one_point(pp, gapped, Complex(gp.r1, 0.0));
    const double trunc =
        truncated_gap_one_point(pp, gapped, Complex(gp.r1, 0.0));
    const bool trunc_ok = std::fabs(trunc / full - 1.0) < 1e-3;

    report(8, "kernel sanity", mass_ok && herm_ok && cs_ok && trunc_ok,
           fmt("mass err %.2e, truncation err %.2e", std::fabs(mass - n),
               std::fabs(trunc / full - 1.0)) +
               (herm_ok ? "" : ", Hermiticity FAIL") +
               (cs_ok ? "" : ", Cauchy-Schwarz FAIL"));
}

}  // namespace

int main() {
    const DropletGeometry g = solve_droplet(kSextic);
    criterion1_geometry(g);
    criterion2_twin_peaks(g);
    criterion3_edge_bands(g);
    criterion4_theta_identities();
    criterion5_cgf(g);
    criterion6_two_point(g);
    criterion7_sampler(g);
    criterion8_kernel_sanity(g);
    if (g_failures) std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures ? 1 : 0;
}
