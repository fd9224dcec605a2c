#include "dlab/phi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dlab/grid.hpp"
#include "dlab/quadrature.hpp"

namespace dlab {

namespace {

constexpr double kTableMin = 1e-6;
constexpr double kTableMax = 1e12;
constexpr int kPointsPerDecade = 64;

double integrand_value(const std::function<double(double)>& eta_bar, double C, double y) {
    double v = eta_bar(kPi * std::pow(y, -0.25));
    if (!(v >= 0.0)) throw std::runtime_error("build_phi_integral: eta_bar must be >= 0");
    return C * std::sqrt(v);
}

}  // namespace

double PhiFunction::operator()(double x) const {
    if (x < 0.0) throw std::invalid_argument("PhiFunction: x must be >= 0");
    if (kind_ == Kind::kLogForm) {
        const double e2 = std::exp(2.0);
        double phi1 = x > e2 ? C_ * x / std::pow(std::log(x), 0.25)
                             : ext_a_ * x - ext_b_ * x * x;
        return (L_ + 1.0) * phi1;
    }
    if (x == 0.0) return 0.0;
    if (x <= xs_.front()) return ys_.front() * (x / xs_.front());
    if (x > xs_.back()) throw std::out_of_range("PhiFunction: x beyond table range");
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    std::size_t hi = static_cast<std::size_t>(it - xs_.begin());
    std::size_t lo = hi - 1;
    if (x == xs_[lo]) return ys_[lo];
    // Integrate the remainder of the segment; the table only anchors nodes.
    double tol = 1e-13 * std::max(C_ * (x - xs_[lo]), 1e-300);
    return ys_[lo] + adaptive_simpson(integrand_, xs_[lo], x, tol);
}

double PhiFunction::inverse(double y) const {
    if (y < 0.0) throw std::out_of_range("PhiFunction::inverse: y must be >= 0");
    if (y == 0.0) return 0.0;
    double lo = 0.0, hi;
    if (kind_ == Kind::kLogForm) {
        hi = 1.0;
        while ((*this)(hi) < y) {
            hi *= 2.0;
            if (hi > 1e300) throw std::out_of_range("PhiFunction::inverse: y unreachable");
        }
    } else {
        if (y > ys_.back()) throw std::out_of_range("PhiFunction::inverse: y beyond table range");
        auto it = std::lower_bound(ys_.begin(), ys_.end(), y);
        std::size_t hi_idx = static_cast<std::size_t>(it - ys_.begin());
        hi = xs_[hi_idx];
        lo = hi_idx > 0 ? xs_[hi_idx - 1] : 0.0;
    }
    // Bisection to 1e-10 relative.
    for (int iter = 0; iter < 200 && (hi - lo) > 1e-10 * std::max(1e-300, hi); ++iter) {
        double mid = 0.5 * (lo + hi);
        if ((*this)(mid) < y)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

PhiFunction build_phi_integral(const std::function<double(double)>& eta_bar, double C) {
    if (!(C > 0.0)) throw std::invalid_argument("build_phi_integral: C must be > 0");
    PhiFunction phi;
    phi.kind_ = PhiFunction::Kind::kIntegralForm;
    phi.C_ = C;
    phi.integrand_ = [eta_bar, C](double y) { return integrand_value(eta_bar, C, y); };

    const int decades = static_cast<int>(std::round(std::log10(kTableMax / kTableMin)));
    const int npts = decades * kPointsPerDecade + 1;
    phi.xs_.resize(npts);
    phi.ys_.resize(npts);
    for (int i = 0; i < npts; ++i)
        phi.xs_[i] = kTableMin * std::pow(10.0, static_cast<double>(i) / kPointsPerDecade);

    // [0, x_0] via y = u^8; the u^7 Jacobian absorbs any integrable endpoint
    // growth of the integrand (eta_bar may grow like r near infinity).
    auto head = [&](double u) {
        if (u == 0.0) return 0.0;
        return 8.0 * std::pow(u, 7.0) * integrand_value(eta_bar, C, std::pow(u, 8.0));
    };
    double acc = adaptive_simpson(head, 0.0, std::pow(phi.xs_[0], 0.125), 1e-16 * C);
    if (!std::isfinite(acc)) throw std::runtime_error("build_phi_integral: quadrature failed");
    phi.ys_[0] = acc;

    auto f = [&](double y) { return integrand_value(eta_bar, C, y); };
    for (int i = 1; i < npts; ++i) {
        double a = phi.xs_[i - 1], b = phi.xs_[i];
        double rough = 0.5 * (f(a) + f(b)) * (b - a);
        double seg = adaptive_simpson(f, a, b, 1e-13 * std::max(std::abs(rough), C * (b - a)));
        if (!std::isfinite(seg)) throw std::runtime_error("build_phi_integral: quadrature failed");
        acc += seg;
        phi.ys_[i] = acc;
    }

    for (int i = 1; i < npts; ++i)
        if (!(phi.ys_[i] > phi.ys_[i - 1]))
            throw std::runtime_error("build_phi_integral: table not strictly increasing");
    return phi;
}

PhiFunction build_phi_log(double C, double C_P) {
    if (!(C > 0.0 && C_P > 0.0)) throw std::invalid_argument("build_phi_log: constants must be > 0");
    PhiFunction phi;
    phi.kind_ = PhiFunction::Kind::kLogForm;
    phi.C_ = C;
    phi.C_P_ = C_P;

    const double e2 = std::exp(2.0);
    const double r4 = std::pow(2.0, 0.25);  // (log e^2)^{1/4}
    double value = C * e2 / r4;             // Phi1(e^2)
    double slope = C * (1.0 / r4) * (1.0 - 0.125);  // Phi1'(e^2) = C 2^{-1/4} (7/8)
    // a x - b x^2 matching value and slope at e^2.
    phi.ext_b_ = (value - slope * e2) / (e2 * e2);
    phi.ext_a_ = slope + 2.0 * phi.ext_b_ * e2;
    if (!(phi.ext_a_ - 2.0 * phi.ext_b_ * e2 > 0.0) || !(phi.ext_b_ > 0.0))
        throw std::runtime_error("build_phi_log: extension not increasing/concave");
    phi.L_ = (C_P * e2 * e2) / value;

    // Samples for table-level predicates.
    const int npts = 18 * kPointsPerDecade + 1;
    phi.xs_.resize(npts);
    phi.ys_.resize(npts);
    for (int i = 0; i < npts; ++i) {
        phi.xs_[i] = kTableMin * std::pow(10.0, static_cast<double>(i) / kPointsPerDecade);
        phi.ys_[i] = phi(phi.xs_[i]);
    }
    return phi;
}

std::function<double(double)> build_upsilon(const PhiFunction& phi) {
    if (phi.table_y().size() < 2 || !(phi.table_y().back() > phi.table_y().front()))
        throw std::invalid_argument("build_upsilon: phi must be strictly increasing");
    return [phi](double x) {
        double v = phi.inverse(x);
        return v * v;
    };
}

}  // namespace dlab
