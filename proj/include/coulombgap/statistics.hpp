#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coulombgap/droplet.hpp"
#include "coulombgap/potential.hpp"

namespace coulombgap {

// sigma(lambda) = 2 int_S lambda(r) DQ(r) r dr.
double sigma_lambda(const RadialTestFunction& lambda,
                    const DropletGeometry& g, const RadialPotential& p);

// Exact CGF of fluct_n lambda via the product structure of the moduli:
//   sum_j log( I_j(t) / I_j(0) ) - t n sigma(lambda),
// where I_j(t) = int r^{2j+1} e^{-n q + t lambda} dr.
double exact_cgf_product(const RadialTestFunction& lambda,
                         const RadialPotential& p, const DropletGeometry& g,
                         int n, double t);

// Exact CGF through the perturbed 1-point function:
//   int_0^t ds int lambda(r) (R_{n,s lambda}(r) - n DQ(r) 1_S(r)) 2 r dr,
// outer integral by s_steps-point Gauss-Legendre, fresh norm table per node.
double exact_cgf_ward(const RadialTestFunction& lambda,
                      const RadialPotential& p, const DropletGeometry& g,
                      int n, double t, int s_steps = 12);

struct SampleBatch {
    int n = 0;
    int count = 0;
    std::uint64_t seed = 0;
    std::vector<double> moduli;  // count x n, row-major
    std::vector<double> angles;  // count x n, in [0, 2 pi)

    double modulus(int sample, int j) const {
        return moduli[static_cast<std::size_t>(sample) * n + j];
    }
    double angle(int sample, int j) const {
        return angles[static_cast<std::size_t>(sample) * n + j];
    }
};

// Per-index inverse-CDF table for the modulus law ~ r^{2j+1} e^{-n q(r)}.
struct ModulusTables {
    int n = 0;
    int nodes = 0;
    std::vector<double> r_lo, r_hi;  // per j
    std::vector<double> cdf;         // n x nodes, row-major, monotone 0..1

    double invert(int j, double u) const;
};

// Build (or load from the cache directory COULOMBGAP_CACHE, if set) the
// per-index tables for (p, n).
ModulusTables build_modulus_tables(const RadialPotential& p, int n,
                                   int nodes = 4096);

// Exact sampler: moduli are independent with the per-index law above,
// angles i.i.d. uniform. Sample i uses an RNG stream derived from
// (seed, i) by splitmix64, so batches are reproducible and thread-count
// independent.
SampleBatch sample(const RadialPotential& p, const DropletGeometry& g, int n,
                   int count, std::uint64_t seed, int threads = 0);

// Per-sample fluct_n lambda = sum_j lambda(r_j) - n sigma(lambda).
std::vector<double> empirical_fluct(const SampleBatch& batch,
                                    const RadialTestFunction& lambda,
                                    const RadialPotential& p,
                                    const DropletGeometry& g);

// log of the empirical mean of e^{t fluct} over a batch of fluctuations.
double empirical_cgf(const std::vector<double>& fluct, double t);

enum class CgfRoute { Product, Ward, Predicted, Empirical };

struct CgfCurve {
    std::vector<double> t_grid;
    std::vector<double> values;
    CgfRoute route = CgfRoute::Product;
};

}  // namespace coulombgap
