#include "coulombgap/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace coulombgap {

RadialPotential::RadialPotential(std::vector<double> coeffs)
    : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty())
        throw std::invalid_argument("RadialPotential: empty coefficient list");
}

RadialPotential RadialPotential::tabulated(std::vector<double> values,
                                           double r_max) {
    if (values.size() < 8 || r_max <= 0.0)
        throw std::invalid_argument("RadialPotential::tabulated: bad table");
    RadialPotential p;
    p.tabulated_values_ = std::move(values);
    p.table_rmax_ = r_max;
    return p;
}

namespace {
void require_positive(double r) {
    if (!(r > 0.0))
        throw std::domain_error("RadialPotential: r must be positive");
}
}  // namespace

double RadialPotential::q(double r) const {
    require_positive(r);
    if (!is_polynomial()) return table_value(r, 0);
    const double r2 = r * r;
    double acc = 0.0;
    for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * r2 + coeffs_[k];
    return acc * r2;
}

double RadialPotential::dq(double r) const {
    require_positive(r);
    if (!is_polynomial()) return table_value(r, 1);
    // q'(r) = sum 2k c_k r^{2k-1}
    const double r2 = r * r;
    double acc = 0.0;
    for (std::size_t k = coeffs_.size(); k-- > 0;)
        acc = acc * r2 + 2.0 * static_cast<double>(k + 1) * coeffs_[k];
    return acc * r;
}

double RadialPotential::d2q(double r) const {
    require_positive(r);
    if (!is_polynomial()) return table_value(r, 2);
    // q''(r) = sum 2k(2k-1) c_k r^{2k-2}
    const double r2 = r * r;
    double acc = 0.0;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        const double tk = 2.0 * static_cast<double>(k + 1);
        acc = acc * r2 + tk * (tk - 1.0) * coeffs_[k];
    }
    return acc;
}

double RadialPotential::d3q(double r) const {
    require_positive(r);
    if (!is_polynomial()) return table_value(r, 3);
    // q'''(r) = sum 2k(2k-1)(2k-2) c_k r^{2k-3}, k >= 2 terms only
    const double r2 = r * r;
    double acc = 0.0;
    for (std::size_t k = coeffs_.size(); k-- > 1;) {
        const double tk = 2.0 * static_cast<double>(k + 1);
        acc = acc * r2 + tk * (tk - 1.0) * (tk - 2.0) * coeffs_[k];
    }
    return acc * r;
}

double RadialPotential::d4q(double r) const {
    require_positive(r);
    if (!is_polynomial()) return table_value(r, 4);
    // q''''(r) = sum 2k(2k-1)(2k-2)(2k-3) c_k r^{2k-4}, k >= 2 terms only
    const double r2 = r * r;
    double acc = 0.0;
    for (std::size_t k = coeffs_.size(); k-- > 1;) {
        const double tk = 2.0 * static_cast<double>(k + 1);
        acc = acc * r2 + tk * (tk - 1.0) * (tk - 2.0) * (tk - 3.0) * coeffs_[k];
    }
    return acc;
}

double RadialPotential::laplacian(double r) const {
    return 0.25 * (dq(r) / r + d2q(r));
}

double RadialPotential::laplacian_radial_derivative(double r) const {
    return 0.25 * (d2q(r) / r - dq(r) / (r * r) + d3q(r));
}

double RadialPotential::cumulative_mass_function(double r) const {
    return 0.5 * r * dq(r);
}

double RadialPotential::q_at_origin() const {
    if (is_polynomial()) return 0.0;
    return tabulated_values_.front();
}

bool RadialPotential::growth_ok(double outer_scale) const {
    const double r0 = outer_scale, R = 10.0 * outer_scale;
    if (!is_polynomial() && R > table_rmax_) return false;
    return q(R) - 2.0 * std::log(R) > q(r0) - 2.0 * std::log(r0) + 1.0;
}

double RadialPotential::table_value(double r, int deriv) const {
    const std::size_t n = tabulated_values_.size();
    const double h = table_rmax_ / static_cast<double>(n - 1);
    double u = r / h;
    // clamp the 5-point stencil inside the table
    long i = std::lround(u);
    if (i < 2) i = 2;
    if (i > static_cast<long>(n) - 3) i = static_cast<long>(n) - 3;
    const double* v = tabulated_values_.data() + i;
    const double d = u - static_cast<double>(i);
    switch (deriv) {
        case 0: {
            // 4th-order interpolation through the 5 nearest samples
            double c0 = v[0];
            double c1 = (v[1] - v[-1]) / 2.0;
            double c2 = (v[1] - 2 * v[0] + v[-1]) / 2.0;
            double c3 = (v[2] - 2 * v[1] + 2 * v[-1] - v[-2]) / 12.0;
            double c4 = (v[2] - 4 * v[1] + 6 * v[0] - 4 * v[-1] + v[-2]) / 24.0;
            return c0 + d * (c1 + d * (c2 + d * (c3 + d * c4)));
        }
        case 1:
            return (8 * (v[1] - v[-1]) - (v[2] - v[-2])) / (12.0 * h);
        case 2:
            return (-v[2] + 16 * v[1] - 30 * v[0] + 16 * v[-1] - v[-2]) /
                   (12.0 * h * h);
        default:
            return (v[2] - 2 * v[1] + 2 * v[-1] - v[-2]) / (2.0 * h * h * h);
    }
}

RadialTestFunction RadialTestFunction::bump(double r_lo, double r_hi,
                                            double amplitude) {
    if (!(r_hi > r_lo))
        throw std::invalid_argument("RadialTestFunction::bump: empty support");
    RadialTestFunction f;
    f.kind_ = Kind::Bump;
    f.r_lo_ = r_lo;
    f.r_hi_ = r_hi;
    f.amp_ = amplitude;
    return f;
}

RadialTestFunction RadialTestFunction::plateau(double r_lo, double p_lo,
                                               double p_hi, double r_hi,
                                               double amplitude) {
    if (!(r_lo < p_lo && p_lo <= p_hi && p_hi < r_hi))
        throw std::invalid_argument(
            "RadialTestFunction::plateau: need r_lo < p_lo <= p_hi < r_hi");
    RadialTestFunction f;
    f.kind_ = Kind::Plateau;
    f.r_lo_ = r_lo;
    f.r_hi_ = r_hi;
    f.p_lo_ = p_lo;
    f.p_hi_ = p_hi;
    f.amp_ = amplitude;
    return f;
}

RadialTestFunction RadialTestFunction::zero() { return RadialTestFunction(); }

namespace {
// Quintic smoothstep: s(0)=0, s(1)=1, s' = s'' = 0 at both ends.
inline double smooth5(double u) { return u * u * u * (10 + u * (-15 + 6 * u)); }
inline double smooth5_d(double u) { return 30 * u * u * (1 + u * (-2 + u)); }
inline double smooth5_d2(double u) { return 60 * u * (1 + u * (-3 + 2 * u)); }
}  // namespace

double RadialTestFunction::value(double r) const {
    if (kind_ == Kind::Zero || r <= r_lo_ || r >= r_hi_) return 0.0;
    if (kind_ == Kind::Bump) {
        const double u = (2 * r - (r_lo_ + r_hi_)) / (r_hi_ - r_lo_);
        return amp_ * std::exp(1.0 - 1.0 / (1.0 - u * u));
    }
    if (r < p_lo_) return amp_ * smooth5((r - r_lo_) / (p_lo_ - r_lo_));
    if (r > p_hi_) return amp_ * smooth5((r_hi_ - r) / (r_hi_ - p_hi_));
    return amp_;
}

double RadialTestFunction::deriv(double r) const {
    if (kind_ == Kind::Zero || r <= r_lo_ || r >= r_hi_) return 0.0;
    if (kind_ == Kind::Bump) {
        const double w = r_hi_ - r_lo_;
        const double u = (2 * r - (r_lo_ + r_hi_)) / w;
        const double g = 1.0 - u * u;
        return value(r) * (-2.0 * u / (g * g)) * (2.0 / w);
    }
    if (r < p_lo_) {
        const double w = p_lo_ - r_lo_;
        return amp_ * smooth5_d((r - r_lo_) / w) / w;
    }
    if (r > p_hi_) {
        const double w = r_hi_ - p_hi_;
        return -amp_ * smooth5_d((r_hi_ - r) / w) / w;
    }
    return 0.0;
}

double RadialTestFunction::second_deriv(double r) const {
    if (kind_ == Kind::Zero || r <= r_lo_ || r >= r_hi_) return 0.0;
    if (kind_ == Kind::Bump) {
        const double w = r_hi_ - r_lo_;
        const double u = (2 * r - (r_lo_ + r_hi_)) / w;
        const double g = 1.0 - u * u;
        const double phi = -2.0 * u / (g * g);           // d/du of log-bump
        const double dphi = (-2.0 * g - 8.0 * u * u) / (g * g * g);
        const double du = 2.0 / w;
        return value(r) * (phi * phi + dphi) * du * du;
    }
    if (r < p_lo_) {
        const double w = p_lo_ - r_lo_;
        return amp_ * smooth5_d2((r - r_lo_) / w) / (w * w);
    }
    if (r > p_hi_) {
        const double w = r_hi_ - p_hi_;
        return amp_ * smooth5_d2((r_hi_ - r) / w) / (w * w);
    }
    return 0.0;
}

PerturbedPotential::PerturbedPotential(RadialPotential base,
                                       RadialTestFunction bump, double s, int n)
    : base_(std::move(base)), bump_(std::move(bump)), s_(s), n_(n) {
    if (n < 1)
        throw std::invalid_argument("PerturbedPotential: n must be >= 1");
}

double PerturbedPotential::value(double r) const {
    return base_.q(r) - s_ * bump_.value(r) / static_cast<double>(n_);
}

double PerturbedPotential::deriv(double r) const {
    return base_.dq(r) - s_ * bump_.deriv(r) / static_cast<double>(n_);
}

double PerturbedPotential::value_at_origin() const {
    return base_.q_at_origin();
}

}  // namespace coulombgap
