#include "coulombgap/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "coulombgap/errors.hpp"
#include "coulombgap/kernel.hpp"
#include "coulombgap/numeric.hpp"

namespace coulombgap {

namespace {
const double kTwoPi = 2.0 * std::acos(-1.0);
}

double sigma_lambda(const RadialTestFunction& lambda,
                    const DropletGeometry& g, const RadialPotential& p) {
    if (lambda.is_zero()) return 0.0;
    double acc = 0.0;
    for (const auto& [a, b] : g.annuli) {
        const double lo = std::max({a, lambda.support_lo(), 1e-12 * b});
        const double hi = std::min(b, lambda.support_hi());
        if (hi <= lo) continue;
        acc += 2.0 *
               integrate(
                   [&](double r) {
                       return lambda.value(r) * p.laplacian(r) * r;
                   },
                   lo, hi, 1e-10, 1e-14)
                   .value;
    }
    return acc;
}

double exact_cgf_product(const RadialTestFunction& lambda,
                         const RadialPotential& p, const DropletGeometry& g,
                         int n, double t) {
    if (t == 0.0 || lambda.is_zero()) return 0.0;
    const PerturbedPotential pp0(p, lambda, 0.0, n);
    const PerturbedPotential ppt(p, lambda, t, n);
    std::vector<double> diff(n, 0.0);
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t j) {
        const int jj = static_cast<int>(j);
        diff[j] = log_norm(ppt, jj) - log_norm(pp0, jj);
    });
    double sum = 0.0;
    for (double d : diff) sum += d;
    return sum - t * n * sigma_lambda(lambda, g, p);
}

double exact_cgf_ward(const RadialTestFunction& lambda,
                      const RadialPotential& p, const DropletGeometry& g,
                      int n, double t, int s_steps) {
    if (t == 0.0 || lambda.is_zero()) return 0.0;
    if (s_steps < 8)
        throw std::invalid_argument("exact_cgf_ward: s_steps must be >= 8");

    // Split the support of lambda at droplet boundaries so the indicator of
    // S never sits inside a quadrature panel.
    std::vector<double> cuts{lambda.support_lo(), lambda.support_hi()};
    for (const auto& [a, b] : g.annuli) {
        for (double r : {a, b})
            if (r > cuts.front() && r < cuts.back()) cuts.push_back(r);
    }
    std::sort(cuts.begin(), cuts.end());
    auto in_droplet = [&](double r) {
        for (const auto& [a, b] : g.annuli)
            if (r >= a && r <= b) return true;
        return false;
    };

    std::vector<double> nodes, weights;
    gauss_legendre(s_steps, nodes, weights);

    double total = 0.0;
    for (int k = 0; k < s_steps; ++k) {
        const double s = 0.5 * t * (nodes[k] + 1.0);
        const double w = 0.5 * t * weights[k];
        const PerturbedPotential pp(p, lambda, s, n);
        const WeightTable table = WeightTable::build(pp);
        double inner = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            const double lo = std::max(cuts[i], 1e-12 * cuts.back());
            const double hi = cuts[i + 1];
            if (hi <= lo) continue;
            const bool droplet = in_droplet(0.5 * (lo + hi));
            inner += integrate(
                         [&](double r) {
                             double d = one_point(pp, table, Complex(r, 0.0));
                             if (droplet) d -= n * p.laplacian(r);
                             return lambda.value(r) * d * 2.0 * r;
                         },
                         lo, hi, 1e-9, 1e-10)
                         .value;
        }
        total += w * inner;
    }
    return total;
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t table_key(const RadialPotential& p, int n, int nodes) {
    // FNV-1a over the coefficient bytes plus (n, nodes).
    std::uint64_t h = 1469598103934665603ULL;
    auto mix_bytes = [&](const void* data, std::size_t len) {
        const unsigned char* b = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= b[i];
            h *= 1099511628211ULL;
        }
    };
    for (double c : p.coefficients()) mix_bytes(&c, sizeof(c));
    mix_bytes(&n, sizeof(n));
    mix_bytes(&nodes, sizeof(nodes));
    return h;
}

constexpr std::uint64_t kTableMagic = 0x434F554C47415031ULL;  // "COULGAP1"

bool load_tables(const std::filesystem::path& file, int n, int nodes,
                 ModulusTables& t) {
    std::ifstream in(file, std::ios::binary);
    if (!in) return false;
    std::uint64_t magic = 0;
    int fn = 0, fnodes = 0;
    in.read(reinterpret_cast<char*>(&magic), sizeof(magic));
    in.read(reinterpret_cast<char*>(&fn), sizeof(fn));
    in.read(reinterpret_cast<char*>(&fnodes), sizeof(fnodes));
    if (!in || magic != kTableMagic || fn != n || fnodes != nodes) return false;
    t.n = n;
    t.nodes = nodes;
    t.r_lo.resize(n);
    t.r_hi.resize(n);
    t.cdf.resize(static_cast<std::size_t>(n) * nodes);
    in.read(reinterpret_cast<char*>(t.r_lo.data()), n * sizeof(double));
    in.read(reinterpret_cast<char*>(t.r_hi.data()), n * sizeof(double));
    in.read(reinterpret_cast<char*>(t.cdf.data()),
            static_cast<std::streamsize>(t.cdf.size() * sizeof(double)));
    return static_cast<bool>(in);
}

void store_tables(const std::filesystem::path& file, const ModulusTables& t) {
    const std::filesystem::path tmp = file.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) return;
        out.write(reinterpret_cast<const char*>(&kTableMagic),
                  sizeof(kTableMagic));
        out.write(reinterpret_cast<const char*>(&t.n), sizeof(t.n));
        out.write(reinterpret_cast<const char*>(&t.nodes), sizeof(t.nodes));
        out.write(reinterpret_cast<const char*>(t.r_lo.data()),
                  t.n * sizeof(double));
        out.write(reinterpret_cast<const char*>(t.r_hi.data()),
                  t.n * sizeof(double));
        out.write(reinterpret_cast<const char*>(t.cdf.data()),
                  static_cast<std::streamsize>(t.cdf.size() * sizeof(double)));
        if (!out) return;
    }
    std::error_code ec;
    std::filesystem::rename(tmp, file, ec);
}

void build_row(const RadialPotential& p, int n, int j, int nodes,
               double* r_lo, double* r_hi, double* cdf) {
    auto G = [&](double r) { return (2.0 * j + 1.0) * std::log(r) - n * p.q(r); };
    auto dG = [&](double r) { return (2.0 * j + 1.0) / r - n * p.dq(r); };

    double hi = 1.0, running = -1e308;
    for (int it = 0; it < 200; ++it) {
        running = std::max(running, G(hi));
        if (G(hi) < running - 80.0 && dG(hi) < 0.0) break;
        hi *= 2.0;
    }
    const double lo0 = 1e-9 * hi;
    // Locate the maximum on a log grid, then tighten the domain where the
    // density retains mass above e^{-45} of the peak.
    const int kGrid = 1024;
    const double llo = std::log(lo0), lhi = std::log(hi);
    std::vector<double> grid_r(kGrid + 1), grid_g(kGrid + 1);
    double max_g = -1e308;
    for (int i = 0; i <= kGrid; ++i) {
        grid_r[i] = std::exp(llo + (lhi - llo) * i / kGrid);
        grid_g[i] = G(grid_r[i]);
        max_g = std::max(max_g, grid_g[i]);
    }
    // The law can be bimodal (gap-window indices have twin peaks), so the
    // cutoffs must be the outermost crossings of the max - 45 level, not
    // whichever crossing a bisection happens to land on.
    auto drop = [&](double r) { return G(r) - (max_g - 45.0); };
    double a = lo0, b = hi;
    int first = 0;
    while (first <= kGrid && grid_g[first] < max_g - 45.0) ++first;
    int last = kGrid;
    while (last >= 0 && grid_g[last] < max_g - 45.0) --last;
    if (first > last) throw TableBuildFailure("sampler table: empty support");
    if (first > 0)
        a = find_root(drop, grid_r[first - 1], grid_r[first],
                      1e-9 * grid_r[first]);
    if (last < kGrid)
        b = find_root(drop, grid_r[last], grid_r[last + 1],
                      1e-9 * grid_r[last + 1]);
    if (!(b > a)) throw TableBuildFailure("sampler table: empty support");

    *r_lo = a;
    *r_hi = b;
    const double h = (b - a) / (nodes - 1);
    double acc = 0.0, prev = std::exp(G(a) - max_g);
    cdf[0] = 0.0;
    for (int i = 1; i < nodes; ++i) {
        const double cur = std::exp(G(a + i * h) - max_g);
        acc += 0.5 * (prev + cur) * h;
        cdf[i] = acc;
        prev = cur;
    }
    if (!(acc > 0.0)) throw TableBuildFailure("sampler table: zero mass");
    for (int i = 0; i < nodes; ++i) cdf[i] /= acc;
}

}  // namespace

double ModulusTables::invert(int j, double u) const {
    const double* row = cdf.data() + static_cast<std::size_t>(j) * nodes;
    const double* it = std::upper_bound(row, row + nodes, u);
    long i = it - row;
    if (i <= 0) i = 1;
    if (i >= nodes) i = nodes - 1;
    const double c0 = row[i - 1], c1 = row[i];
    const double f = (c1 > c0) ? (u - c0) / (c1 - c0) : 0.5;
    const double h = (r_hi[j] - r_lo[j]) / (nodes - 1);
    return r_lo[j] + (static_cast<double>(i - 1) + f) * h;
}

ModulusTables build_modulus_tables(const RadialPotential& p, int n,
                                   int nodes) {
    if (n < 1 || nodes < 16)
        throw std::invalid_argument("build_modulus_tables: bad n or nodes");

    std::filesystem::path cache_file;
    if (const char* dir = std::getenv("COULOMBGAP_CACHE");
        dir && *dir && p.is_polynomial()) {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        char name[64];
        std::snprintf(name, sizeof(name), "modtab-%016llx.bin",
                      static_cast<unsigned long long>(table_key(p, n, nodes)));
        cache_file = std::filesystem::path(dir) / name;
        ModulusTables t;
        if (load_tables(cache_file, n, nodes, t)) return t;
    }

    ModulusTables t;
    t.n = n;
    t.nodes = nodes;
    t.r_lo.assign(n, 0.0);
    t.r_hi.assign(n, 0.0);
    t.cdf.assign(static_cast<std::size_t>(n) * nodes, 0.0);
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t j) {
        build_row(p, n, static_cast<int>(j), nodes, &t.r_lo[j], &t.r_hi[j],
                  t.cdf.data() + j * nodes);
    });
    if (!cache_file.empty()) store_tables(cache_file, t);
    return t;
}

SampleBatch sample(const RadialPotential& p, const DropletGeometry&, int n,
                   int count, std::uint64_t seed, int threads) {
    if (n < 1 || count < 1)
        throw std::invalid_argument("sample: n and count must be >= 1");
    const ModulusTables tables = build_modulus_tables(p, n);

    SampleBatch batch;
    batch.n = n;
    batch.count = count;
    batch.seed = seed;
    batch.moduli.assign(static_cast<std::size_t>(count) * n, 0.0);
    batch.angles.assign(static_cast<std::size_t>(count) * n, 0.0);

    parallel_for(
        static_cast<std::size_t>(count),
        [&](std::size_t i) {
            // One RNG stream per sample: thread-count independent.
            std::mt19937_64 rng(
                splitmix64(seed ^ (0xA0761D6478BD642FULL * (i + 1))));
            std::uniform_real_distribution<double> unif(0.0, 1.0);
            double* mod = batch.moduli.data() + i * n;
            double* ang = batch.angles.data() + i * n;
            for (int j = 0; j < n; ++j) {
                mod[j] = tables.invert(j, unif(rng));
                ang[j] = kTwoPi * unif(rng);
            }
        },
        threads);
    return batch;
}

std::vector<double> empirical_fluct(const SampleBatch& batch,
                                    const RadialTestFunction& lambda,
                                    const RadialPotential& p,
                                    const DropletGeometry& g) {
    const double mean = batch.n * sigma_lambda(lambda, g, p);
    std::vector<double> out(batch.count, 0.0);
    for (int i = 0; i < batch.count; ++i) {
        double s = 0.0;
        for (int j = 0; j < batch.n; ++j) s += lambda.value(batch.modulus(i, j));
        out[i] = s - mean;
    }
    return out;
}

double empirical_cgf(const std::vector<double>& fluct, double t) {
    if (fluct.empty())
        throw std::invalid_argument("empirical_cgf: empty batch");
    LogSumExp acc;
    for (double f : fluct) acc.add(t * f);
    return acc.log_sum() - std::log(static_cast<double>(fluct.size()));
}

}  // namespace coulombgap
