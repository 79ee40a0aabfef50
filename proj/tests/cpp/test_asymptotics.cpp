#include <doctest.h>

#include <cmath>
#include <complex>

#include "coulombgap/asymptotics.hpp"
#include "coulombgap/errors.hpp"
#include "coulombgap/kernel.hpp"
#include "coulombgap/potential.hpp"
#include "coulombgap/specfun.hpp"

using namespace coulombgap;

namespace {
const RadialPotential kSextic({1.8, -0.8, 0.1});
const RadialTestFunction kZero = RadialTestFunction::zero();
}  // namespace

TEST_CASE("edge prediction decomposition is internally consistent") {
    const DropletGeometry g = solve_droplet(kSextic);
    const GapParams& gp = g.gaps.front();
    const NDependentGapState st = gap_state(gp, 100);
    const EdgePrediction e =
        predict_density_gap_inner(kSextic, gp, st, 0.4, 0.0, kZero);
    CHECK(e.total == doctest::Approx(e.leading + e.subleading).epsilon(1e-14));
    const double parts = e.components.lambda + e.components.curvature +
                         e.components.dn_laplacian +
                         e.components.alpha_shift + e.components.theta;
    CHECK(e.subleading == doctest::Approx(parts).epsilon(1e-12));
    // Leading term is n DQ(r1) erfc(t)/2.
    CHECK(e.leading ==
          doctest::Approx(100.0 * gp.dq1 * coulombgap::erfc(0.4) / 2.0).epsilon(1e-13));
    // With s = 0 the test-function component vanishes.
    CHECK(e.components.lambda == 0.0);
}

TEST_CASE("microscopic window is enforced") {
    const DropletGeometry g = solve_droplet(kSextic);
    const GapParams& gp = g.gaps.front();
    const NDependentGapState st = gap_state(gp, 50);
    const double too_far = std::log(50.0) + 0.5;
    CHECK_THROWS_AS(
        predict_density_gap_inner(kSextic, gp, st, too_far, 0.0, kZero),
        OutOfWindow);
    CHECK_THROWS_AS(
        predict_density_gap_outer_edge(kSextic, gp, st, -too_far, 0.0, kZero),
        OutOfWindow);
    CHECK_THROWS_AS(predict_density_outer_boundary(g, kSextic, too_far, 50),
                    OutOfWindow);
}

TEST_CASE("Ginibre bulk density: prediction matches the exact kernel") {
    const RadialPotential p({1.0});
    const DropletGeometry g = solve_droplet(p);
    const int n = 100;
    const PerturbedPotential pp(p, kZero, 0.0, n);
    const WeightTable table = WeightTable::build(pp);
    const Complex z(0.5, 0.0);
    const double exact = one_point(pp, table, z);
    const double pred = predict_bulk(p, g, z, n, 0.0, kZero);
    // DQ = 1, Dlog DQ = 0: the prediction is exactly n and the exact value
    // deviates only by an exponentially small edge effect.
    CHECK(pred == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(std::fabs(exact - pred) < 1e-3);
    // Bulk formula refuses points in the edge collar.
    CHECK_THROWS_AS(predict_bulk(p, g, Complex(0.999, 0.0), n, 0.0, kZero),
                    OutOfWindow);
}

TEST_CASE("Ginibre outer edge follows the erfc profile with correction") {
    const RadialPotential p({1.0});
    const DropletGeometry g = solve_droplet(p);
    const int n = 100;
    const PerturbedPotential pp(p, kZero, 0.0, n);
    const WeightTable table = WeightTable::build(pp);
    for (double t : {-1.0, 0.0, 1.0}) {
        const double r = 1.0 + t / std::sqrt(2.0 * n);
        const double exact = one_point(pp, table, Complex(r, 0.0));
        const EdgePrediction e = predict_density_outer_boundary(g, p, t, n);
        const double raw = exact - 0.5 * n * coulombgap::erfc(t);
        // The sqrt(n) correction captures most of the raw gap ...
        CHECK(std::fabs(exact - e.total) < 0.35 * std::fabs(raw) + 0.05);
        // ... and the residual is o(sqrt(n)).
        CHECK(std::fabs(exact - e.total) / std::sqrt(1.0 * n) < 0.05);
    }
}

TEST_CASE("sextic gap edges: exact kernel vs full prediction at n = 100") {
    const DropletGeometry g = solve_droplet(kSextic);
    const GapParams& gp = g.gaps.front();
    const int n = 100;
    const NDependentGapState st = gap_state(gp, n);
    const PerturbedPotential pp(kSextic, kZero, 0.0, n);
    const WeightTable table = WeightTable::build(pp);
    // Moderate |t| only: on the droplet side the bracket carries an e^{t^2}
    // amplification, so desk-scale n resolves the formula for |t| <~ 1/2.
    for (double t : {-0.5, 0.0, 0.5}) {
        const double r1t = gp.r1 + t / std::sqrt(2.0 * n * gp.dq1);
        const double exact1 = one_point(pp, table, Complex(r1t, 0.0));
        const EdgePrediction e1 =
            predict_density_gap_inner(kSextic, gp, st, t, 0.0, kZero);
        CHECK(std::fabs(exact1 - e1.total) / std::sqrt(n * gp.dq1) < 0.3);

        // At r2 the droplet lies at t > 0, where the e^{t^2}-amplified
        // normal-derivative term converges more slowly; test the gap side.
        if (t <= 0.0) {
            const double r2t = gp.r2 + t / std::sqrt(2.0 * n * gp.dq2);
            const double exact2 = one_point(pp, table, Complex(r2t, 0.0));
            const EdgePrediction e2 = predict_density_gap_outer_edge(
                kSextic, gp, st, t, 0.0, kZero);
            CHECK(std::fabs(exact2 - e2.total) / std::sqrt(n * gp.dq2) < 0.45);
        }
    }
}

TEST_CASE("weighted Szego kernel: Hermiticity and positive diagonal") {
    const DropletGeometry g = solve_droplet(kSextic);
    const GapParams& gp = g.gaps.front();
    const NDependentGapState st = gap_state(gp, 80);
    const Complex z(0.8, 0.3), w(1.1, -0.2);
    const Complex szw = szego_gap(gp, st, z, w);
    const Complex swz = szego_gap(gp, st, w, z);
    CHECK(std::abs(szw - std::conj(swz)) < 1e-12 * std::abs(szw));
    const Complex diag = szego_gap(gp, st, Complex(0.9, 0.0), Complex(0.9, 0.0));
    CHECK(diag.real() > 0.0);
    CHECK(std::fabs(diag.imag()) < 1e-14 * diag.real());
    // Equal-radius, equal-angle placement on |z| = r1 is a pole.
    const Complex on1(gp.r1, 0.0);
    CHECK_THROWS_AS(szego_gap(gp, st, on1, on1), AngleCoincidence);
}

TEST_CASE("two-point mode geometry checks") {
    const DropletGeometry g = solve_droplet(kSextic);
    const GapParams& gp = g.gaps.front();
    const NDependentGapState st = gap_state(gp, 100);
    // General mode rejects nearly equal moduli.
    CHECK_THROWS_AS(predict_two_point(kSextic, gp, st, Complex(0.9, 0.0),
                                      Complex(0.9001, 0.1),
                                      TwoPointMode::General),
                    ModeMismatch);
    // R1R2 mode rejects points far from the gap circles.
    CHECK_THROWS_AS(predict_two_point(kSextic, gp, st, Complex(1.0, 0.0),
                                      Complex(1.2, 0.0), TwoPointMode::R1R2),
                    ModeMismatch);
}

TEST_CASE("two-point prediction tracks the exact kernel across the gap") {
    const DropletGeometry g = solve_droplet(kSextic);
    const GapParams& gp = g.gaps.front();
    const int n = 100;
    const NDependentGapState st = gap_state(gp, n);
    const PerturbedPotential pp(kSextic, kZero, 0.0, n);
    const WeightTable table = WeightTable::build(pp);
    const Complex z = std::polar(gp.r1, 0.0), w = std::polar(gp.r2, 0.4);
    const Complex exact = two_point(pp, table, z, w).full();
    const Complex pred =
        predict_two_point(kSextic, gp, st, z, w, TwoPointMode::R1R2);
    CHECK(std::abs(std::abs(exact) / std::abs(pred) - 1.0) < 0.2);
    // Phases agree after gauge fixing (up to a small asymptotic error).
    const double dphase =
        std::arg(exact / pred);
    CHECK(std::fabs(dphase) < 0.05);
}

TEST_CASE("smooth CLT coefficients: interior bump, Green's identity") {
    const DropletGeometry g = solve_droplet(kSextic);
    // Bump strictly inside the outer annulus [r2, b_N] ~ [1.946, 2.014]:
    // boundary terms vanish and the two variance routes coincide.
    const RadialTestFunction f2 = RadialTestFunction::bump(1.95, 2.01, 1.0);
    const CgfPrediction c = cgf_coefficients_analytic(f2, g, kSextic);
    CHECK(c.v == doctest::Approx(cgf_variance_green(f2)).epsilon(1e-7));

    // Ginibre with an interior bump: Dlog DQ = 0, so e vanishes.
    const RadialPotential gin({1.0});
    const DropletGeometry gd = solve_droplet(gin);
    const RadialTestFunction fb = RadialTestFunction::bump(0.2, 0.8, 1.0);
    const CgfPrediction cg = cgf_coefficients_analytic(fb, gd, gin);
    CHECK(std::fabs(cg.e) < 1e-9);
    CHECK(cg.v == doctest::Approx(cgf_variance_green(fb)).epsilon(1e-7));
}

TEST_CASE("oscillatory CGF: discrete sum equals the theta closed form") {
    const DropletGeometry g = solve_droplet(kSextic);
    const GapParams& gp = g.gaps.front();
    const NDependentGapState st = gap_state(gp, 30);
    const RadialTestFunction lam = RadialTestFunction::bump(0.1, 0.5, 1.0);
    for (double t : {-1.5, -0.3, 0.0, 0.7, 2.0}) {
        CHECK(cgf_osc_discrete(lam, gp, st, t) ==
              doctest::Approx(cgf_osc_theta(lam, gp, st, t)).epsilon(1e-10));
    }
}

TEST_CASE("full radial CGF prediction vanishes at t = 0") {
    const DropletGeometry g = solve_droplet(kSextic);
    const GapParams& gp = g.gaps.front();
    const RadialTestFunction lam = RadialTestFunction::bump(0.1, 0.5, 1.0);
    CHECK(cgf_predict_radial(lam, g, kSextic, gp, gap_state(gp, 50), 0.0) ==
          doctest::Approx(0.0));
}
