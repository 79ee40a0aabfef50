#pragma once

#include <string>
#include <vector>

#include "coulombgap/droplet.hpp"
#include "coulombgap/potential.hpp"

namespace coulombgap {

struct CheckResult {
    std::string check;
    int n = 0;          // 0 when not n-specific
    double residual = 0.0;
    double bound = 0.0;
    bool pass = false;
};

// Special-function identity suite: theta periodicity/evenness/modular
// transform, the modified-theta reduction, the Xi identity at phi = 0, and
// the two oscillatory-CGF implementations against each other.
std::vector<CheckResult> verify_specfun();

// Gap-constant identities, the mass identity, and the Frostman grid check
// for a solved droplet.
std::vector<CheckResult> verify_geometry(const RadialPotential& p);

enum class EdgeKind { GapInner, GapOuter, Outer };

// One edge point: exact 1-point function at the edge radius against the
// order-(n + sqrt n) prediction (s = 0).
struct EdgeSeriesPoint {
    int n = 0;
    double exact = 0.0;
    double leading = 0.0;         // n DQ(r_k)/2
    double predicted = 0.0;       // full prediction
    double raw_normalized = 0.0;  // (exact - leading)/sqrt(n DQ)
    double post_residual = 0.0;   // exact - predicted
};

std::vector<EdgeSeriesPoint> edge_series(const RadialPotential& p,
                                         const DropletGeometry& g,
                                         EdgeKind kind,
                                         const std::vector<int>& ns,
                                         int threads = 0);

// Band checks over an edge series: the post-prediction residuals at large n
// must stay within 1.5x the band fitted on the small-n prefix (n <= fit_max),
// and the raw normalized series must have order-one amplitude.
std::vector<CheckResult> verify_edge_band(const std::vector<EdgeSeriesPoint>& s,
                                          const std::string& label,
                                          int fit_max);

}  // namespace coulombgap
