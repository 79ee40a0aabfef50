// Command-line harness for the annular-gap Coulomb gas toolkit.
//
// Subcommands: analyze, density, kernel2pt, cgf, sample, verify.
// Exit codes: 0 ok, 1 verification failure, 2 usage/config error,
// 3 numerical failure.

#include <complex>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coulombgap/asymptotics.hpp"
#include "coulombgap/droplet.hpp"
#include "coulombgap/errors.hpp"
#include "coulombgap/io.hpp"
#include "coulombgap/kernel.hpp"
#include "coulombgap/potential.hpp"
#include "coulombgap/specfun.hpp"
#include "coulombgap/statistics.hpp"
#include "coulombgap/verify.hpp"

namespace cg = coulombgap;

namespace {

struct GlobalOpts {
    std::string config_path;
    std::string out_dir = ".";
    int threads = 0;
    bool svg = false;
};

std::string out_path(const GlobalOpts& g, const std::string& name) {
    std::filesystem::create_directories(g.out_dir);
    return (std::filesystem::path(g.out_dir) / name).string();
}

cg::Config load_config(const GlobalOpts& g) {
    if (g.config_path.empty())
        throw cg::ConfigError("--config is required for this subcommand");
    return cg::Config::parse_file(g.config_path);
}

std::vector<int> n_list_from(const cg::Config& cfg) {
    std::vector<int> ns;
    for (double v : cfg.get_list("n.list")) {
        const int n = static_cast<int>(std::lround(v));
        if (n < 10) throw cg::ConfigError("n.list entries must be >= 10");
        ns.push_back(n);
    }
    return ns;
}

int cmd_analyze(const GlobalOpts& g) {
    const cg::Config cfg = load_config(g);
    const cg::RadialPotential p = cg::potential_from_config(cfg);
    const cg::DropletGeometry geom = cg::solve_droplet(p);

    cg::CsvWriter csv(out_path(g, "geometry.csv"), {"quantity", "value"});
    auto put = [&](const std::string& k, double v) {
        csv.add_row_mixed({k, cg::CsvWriter::format(v)});
    };
    for (std::size_t i = 0; i < geom.annuli.size(); ++i) {
        put("annulus" + std::to_string(i) + ".inner", geom.annuli[i].first);
        put("annulus" + std::to_string(i) + ".outer", geom.annuli[i].second);
    }
    put("outer_radius", geom.outer_radius);
    put("robin_gamma", geom.robin_gamma);
    if (geom.gaps.empty()) {
        std::puts("no gap: droplet has no bounded complement component");
    } else {
        const cg::GapParams& gp = geom.gaps.front();
        put("gap.r1", gp.r1);
        put("gap.r2", gp.r2);
        put("gap.B", gp.B);
        put("gap.A", gp.A);
        put("gap.rho", gp.rho);
        put("gap.u", gp.u);
        put("gap.C_lemma", gp.C_lemma);
        put("gap.dq1", gp.dq1);
        put("gap.dq2", gp.dq2);
        put("gap.a0", gp.a0);
        if (cfg.has("n.list")) {
            for (int n : n_list_from(cfg)) {
                const cg::NDependentGapState st = cg::gap_state(gp, n);
                put("n" + std::to_string(n) + ".m", st.m);
                put("n" + std::to_string(n) + ".x", st.x);
                put("n" + std::to_string(n) + ".alpha", st.alpha);
            }
        }
    }
    csv.close();
    std::printf("wrote %s\n", out_path(g, "geometry.csv").c_str());
    return 0;
}

int cmd_density(const GlobalOpts& g, const std::string& edge,
                const std::string& mode, int n_flag,
                const std::string& t_grid_flag) {
    const cg::Config cfg = load_config(g);
    const cg::RadialPotential p = cg::potential_from_config(cfg);
    const cg::RadialTestFunction lam = cg::lambda_from_config(cfg);
    const double s = cfg.get_double("s", 0.0);
    const cg::DropletGeometry geom = cg::solve_droplet(p);
    const int n = n_flag > 0 ? n_flag
                             : static_cast<int>(cfg.get_int("n", 100));
    const std::vector<double> ts = cg::parse_grid(
        !t_grid_flag.empty() ? t_grid_flag
                             : cfg.get_string("t.grid", "-3:3:0.25"));
    if ((edge == "r1" || edge == "r2") && geom.gaps.empty())
        throw cg::ConfigError("potential has no gap; edge must be 'outer'");

    double r0 = 0.0, dq = 0.0;
    if (edge == "outer") {
        r0 = geom.outer_radius;
        dq = p.laplacian(r0);
    } else {
        const cg::GapParams& gp = geom.gaps.front();
        r0 = (edge == "r1") ? gp.r1 : gp.r2;
        dq = (edge == "r1") ? gp.dq1 : gp.dq2;
    }

    const bool want_exact = (mode == "exact" || mode == "both");
    const bool want_pred = (mode == "predicted" || mode == "both");

    cg::WeightTable table;
    cg::PerturbedPotential pp(p, lam, s, n);
    if (want_exact) {
        cg::WeightTableOptions opts;
        opts.threads = g.threads;
        table = cg::WeightTable::build(pp, nullptr, opts);
    }

    cg::CsvWriter csv(out_path(g, "density.csv"),
                      {"t", "z", "exact", "predicted", "residual"});
    std::vector<double> xs, ex, pr;
    for (double t : ts) {
        const double z = r0 + t / std::sqrt(2.0 * n * dq);
        double exact = 0.0, pred = 0.0;
        if (want_exact) exact = cg::one_point(pp, table, cg::Complex(z, 0.0));
        if (want_pred) {
            if (edge == "outer") {
                pred = cg::predict_density_outer_boundary(geom, p, t, n).total;
            } else {
                const cg::GapParams& gp = geom.gaps.front();
                const cg::NDependentGapState st = cg::gap_state(gp, n);
                pred = (edge == "r1")
                           ? cg::predict_density_gap_inner(p, gp, st, t, s, lam)
                                 .total
                           : cg::predict_density_gap_outer_edge(p, gp, st, t,
                                                                s, lam)
                                 .total;
            }
        }
        csv.add_row({t, z, exact, pred, exact - pred});
        xs.push_back(t);
        ex.push_back(exact);
        pr.push_back(pred);
    }
    csv.close();
    if (g.svg) {
        std::vector<cg::SvgSeries> series;
        if (want_exact) series.push_back({"exact", xs, ex});
        if (want_pred) series.push_back({"predicted", xs, pr});
        cg::write_svg_plot(out_path(g, "density.svg"),
                           "edge density, n=" + std::to_string(n), "t", "R_n",
                           series);
    }
    std::printf("wrote %s\n", out_path(g, "density.csv").c_str());
    return 0;
}

int cmd_kernel2pt(const GlobalOpts& g, const std::string& mode, int n_flag,
                  double t, double s_place, double th1, double th2) {
    const cg::Config cfg = load_config(g);
    const cg::RadialPotential p = cg::potential_from_config(cfg);
    const cg::DropletGeometry geom = cg::solve_droplet(p);
    if (geom.gaps.empty())
        throw cg::ConfigError("kernel2pt needs a potential with a gap");
    const cg::GapParams& gp = geom.gaps.front();
    const int n = n_flag > 0 ? n_flag
                             : static_cast<int>(cfg.get_int("n", 100));
    const cg::NDependentGapState st = cg::gap_state(gp, n);

    const double rz = gp.r1 + t / std::sqrt(2.0 * n * gp.dq1);
    const double rw = gp.r2 + s_place / std::sqrt(2.0 * n * gp.dq2);
    const cg::Complex z = std::polar(rz, th1), w = std::polar(rw, th2);

    cg::Complex exact = 0.0, pred = 0.0;
    if (mode == "exact" || mode == "both") {
        const cg::PerturbedPotential pp(p, cg::RadialTestFunction::zero(), 0.0,
                                        n);
        cg::WeightTableOptions opts;
        opts.threads = g.threads;
        const cg::WeightTable table = cg::WeightTable::build(pp, &gp, opts);
        exact = cg::two_point(pp, table, z, w).full();
    }
    if (mode == "predicted" || mode == "both")
        pred = cg::predict_two_point(p, gp, st, z, w, cg::TwoPointMode::R1R2);

    cg::CsvWriter csv(out_path(g, "kernel2pt.csv"),
                      {"t", "s", "theta1", "theta2", "exact_re", "exact_im",
                       "predicted_re", "predicted_im", "abs_residual"});
    csv.add_row({t, s_place, th1, th2, exact.real(), exact.imag(), pred.real(),
                 pred.imag(), std::abs(exact) - std::abs(pred)});
    csv.close();
    std::printf("wrote %s\n", out_path(g, "kernel2pt.csv").c_str());
    return 0;
}

int cmd_cgf(const GlobalOpts& g, int n_flag, const std::string& t_spec,
            const std::string& routes) {
    const cg::Config cfg = load_config(g);
    const cg::RadialPotential p = cg::potential_from_config(cfg);
    const cg::RadialTestFunction lam = cg::lambda_from_config(cfg);
    const cg::DropletGeometry geom = cg::solve_droplet(p);
    const int n = n_flag > 0 ? n_flag
                             : static_cast<int>(cfg.get_int("n", 100));
    const std::vector<double> ts = cg::parse_grid(
        !t_spec.empty() ? t_spec : cfg.get_string("t.grid", "-1:1:0.25"));

    const bool want_product = routes.find("product") != std::string::npos;
    const bool want_ward = routes.find("ward") != std::string::npos;
    const bool want_pred = routes.find("predicted") != std::string::npos;
    if (want_pred && geom.gaps.empty())
        throw cg::ConfigError("predicted CGF route needs a gap");

    cg::CsvWriter csv(out_path(g, "cgf.csv"),
                      {"t", "product", "ward", "predicted"});
    for (double t : ts) {
        double a = 0.0, b = 0.0, c = 0.0;
        if (want_product) a = cg::exact_cgf_product(lam, p, geom, n, t);
        if (want_ward) b = cg::exact_cgf_ward(lam, p, geom, n, t);
        if (want_pred) {
            const cg::GapParams& gp = geom.gaps.front();
            c = cg::cgf_predict_radial(lam, geom, p, gp, cg::gap_state(gp, n),
                                       t);
        }
        csv.add_row({t, a, b, c});
    }
    csv.close();
    std::printf("wrote %s\n", out_path(g, "cgf.csv").c_str());
    return 0;
}

int cmd_sample(const GlobalOpts& g, int n_flag, int count,
               std::uint64_t seed) {
    const cg::Config cfg = load_config(g);
    const cg::RadialPotential p = cg::potential_from_config(cfg);
    const cg::RadialTestFunction lam = cg::lambda_from_config(cfg);
    const cg::DropletGeometry geom = cg::solve_droplet(p);
    const int n = n_flag > 0 ? n_flag
                             : static_cast<int>(cfg.get_int("n", 100));

    const cg::SampleBatch batch = cg::sample(p, geom, n, count, seed,
                                             g.threads);
    const std::vector<double> fl = cg::empirical_fluct(batch, lam, p, geom);
    cg::CsvWriter csv(out_path(g, "fluct.csv"), {"sample", "fluct"});
    for (std::size_t i = 0; i < fl.size(); ++i)
        csv.add_row({static_cast<double>(i), fl[i]});
    csv.close();
    std::printf("wrote %s\n", out_path(g, "fluct.csv").c_str());
    return 0;
}

int cmd_verify(const GlobalOpts& g) {
    const cg::Config cfg = load_config(g);
    const cg::RadialPotential p = cg::potential_from_config(cfg);

    std::vector<int> ns;
    if (cfg.has("n.list"))
        ns = n_list_from(cfg);
    else
        for (int n = 30; n <= 120; n += 10) ns.push_back(n);
    if (ns.empty()) throw cg::ConfigError("verify: empty n list");

    std::vector<cg::CheckResult> checks = cg::verify_specfun();
    for (auto& c : cg::verify_geometry(p)) checks.push_back(c);

    const cg::DropletGeometry geom = cg::solve_droplet(p);
    std::vector<cg::EdgeSeriesPoint> series;
    if (!geom.gaps.empty()) {
        series = cg::edge_series(p, geom, cg::EdgeKind::GapInner, ns,
                                 g.threads);
        const int fit_max = ns.front() + (ns.back() - ns.front()) / 3;
        for (auto& c : cg::verify_edge_band(series, "edge_r1", fit_max))
            checks.push_back(c);

        cg::CsvWriter fig(out_path(g, "edge_series.csv"),
                          {"n", "exact", "leading", "predicted",
                           "raw_normalized", "post_residual"});
        std::vector<double> xs, raw, post;
        for (const auto& pt : series) {
            fig.add_row({static_cast<double>(pt.n), pt.exact, pt.leading,
                         pt.predicted, pt.raw_normalized, pt.post_residual});
            xs.push_back(pt.n);
            raw.push_back(pt.raw_normalized);
            post.push_back(pt.post_residual);
        }
        fig.close();
        if (g.svg) {
            cg::write_svg_plot(out_path(g, "edge_series.svg"),
                               "inner-edge density residuals", "n", "residual",
                               {{"(R_n - n DQ/2)/sqrt(n DQ)", xs, raw},
                                {"R_n - prediction", xs, post}});
        }
    }

    cg::CsvWriter csv(out_path(g, "verify.csv"),
                      {"check", "n", "residual", "bound", "pass"});
    bool all_pass = true;
    for (const auto& c : checks) {
        csv.add_row_mixed({c.check, std::to_string(c.n),
                           cg::CsvWriter::format(c.residual),
                           cg::CsvWriter::format(c.bound),
                           c.pass ? "1" : "0"});
        std::printf("%-32s residual=%-12.3g bound=%-12.3g %s\n",
                    c.check.c_str(), c.residual, c.bound,
                    c.pass ? "PASS" : "FAIL");
        all_pass = all_pass && c.pass;
    }
    csv.close();
    std::printf("wrote %s\n", out_path(g, "verify.csv").c_str());
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Exact and asymptotic statistics of the 2D Coulomb gas with an "
        "annular spectral gap.\n"
        "CSV schemas: analyze -> geometry.csv (quantity,value); density -> "
        "density.csv (t,z,exact,predicted,residual); kernel2pt -> "
        "kernel2pt.csv (t,s,theta1,theta2,exact_re,exact_im,predicted_re,"
        "predicted_im,abs_residual); cgf -> cgf.csv (t,product,ward,"
        "predicted); sample -> fluct.csv (sample,fluct); verify -> verify.csv "
        "(check,n,residual,bound,pass). Numbers use 17 significant digits."};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--config", g.config_path, "Run-configuration file");
    app.add_option("--out", g.out_dir, "Output directory");
    app.add_option("--threads", g.threads, "Worker threads (0 = hardware)");
    app.add_flag("--svg", g.svg, "Also emit SVG plots");

    auto* analyze = app.add_subcommand("analyze", "Solve droplet geometry");

    std::string edge = "r1", mode = "both", t_grid, routes = "product,predicted";
    int n = 0, count = 1000;
    double t2 = 0.0, s2 = 0.0, th1 = 0.0, th2 = 1.0;
    std::uint64_t seed = 1;

    auto* density = app.add_subcommand("density", "Edge density profile");
    density->add_option("--edge", edge, "r1|r2|outer");
    density->add_option("--mode", mode, "exact|predicted|both");
    density->add_option("--n", n, "Particle number");
    density->add_option("--t-grid", t_grid, "a:b:step microscopic grid");

    auto* kernel2pt =
        app.add_subcommand("kernel2pt", "Two-point kernel at an edge pair");
    kernel2pt->add_option("--mode", mode, "exact|predicted|both");
    kernel2pt->add_option("--n", n, "Particle number");
    kernel2pt->add_option("--t", t2, "Microscopic offset at r1");
    kernel2pt->add_option("--s", s2, "Microscopic offset at r2");
    kernel2pt->add_option("--theta1", th1, "Angle of z");
    kernel2pt->add_option("--theta2", th2, "Angle of w");

    auto* cgf = app.add_subcommand("cgf", "Fluctuation CGF routes");
    cgf->add_option("--n", n, "Particle number");
    cgf->add_option("--t", t_grid, "a:b:step grid");
    cgf->add_option("--routes", routes, "comma list: product,ward,predicted");

    auto* sampler = app.add_subcommand("sample", "Draw exact samples");
    sampler->add_option("--n", n, "Particle number");
    sampler->add_option("--count", count, "Number of samples");
    sampler->add_option("--seed", seed, "RNG seed");

    auto* verify = app.add_subcommand("verify", "Run the verification suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) return cmd_analyze(g);
        if (density->parsed()) return cmd_density(g, edge, mode, n, t_grid);
        if (kernel2pt->parsed())
            return cmd_kernel2pt(g, mode, n, t2, s2, th1, th2);
        if (cgf->parsed()) return cmd_cgf(g, n, t_grid, routes);
        if (sampler->parsed()) return cmd_sample(g, n, count, seed);
        if (verify->parsed()) return cmd_verify(g);
    } catch (const cg::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    }
    return 2;
}
