#include "dlab/radial.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "dlab/quadrature.hpp"

namespace dlab {

double bessel_i0_scaled(double x) {
    if (x < 0.0) throw std::invalid_argument("bessel_i0_scaled: x must be >= 0");
    if (x < 20.0) {
        double q = 0.25 * x * x;
        double term = 1.0, sum = 1.0;
        for (int k = 1; k < 200; ++k) {
            term *= q / (static_cast<double>(k) * k);
            sum += term;
            if (term < 1e-18 * sum) break;
        }
        return sum * std::exp(-x);
    }
    // e^{-x} I0(x) ~ (2 pi x)^{-1/2} sum_k a_k / x^k, a_{k+1} = a_k (2k+1)^2 / (8(k+1)).
    double a = 1.0, sum = 1.0, prev = 1.0;
    for (int k = 0; k < 16; ++k) {
        a *= static_cast<double>((2 * k + 1) * (2 * k + 1)) / (8.0 * (k + 1));
        double term = a / std::pow(x, k + 1);
        if (std::abs(term) > std::abs(prev)) break;  // past optimal truncation
        sum += term;
        prev = term;
    }
    return sum / std::sqrt(kTwoPi * x);
}

double bessel_i0(double x) { return bessel_i0_scaled(x) * std::exp(x); }

RadialProfile RadialProfile::tabulate(const std::function<double(double)>& f, double r_max,
                                      int n_nodes, double support_radius) {
    if (n_nodes < 2 || !(r_max > 0.0))
        throw std::invalid_argument("RadialProfile::tabulate: bad grid");
    RadialProfile p;
    p.r_nodes.resize(n_nodes);
    p.values.resize(n_nodes);
    p.weights.resize(n_nodes);
    double h = r_max / (n_nodes - 1);
    for (int i = 0; i < n_nodes; ++i) {
        p.r_nodes[i] = i * h;
        p.values[i] = f(p.r_nodes[i]);
        p.weights[i] = (i == 0 || i == n_nodes - 1) ? 0.5 * h : h;
    }
    p.analytic = f;
    p.support_radius = support_radius;
    return p;
}

double RadialProfile::radial_moment(int power) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < r_nodes.size(); ++i)
        acc += weights[i] * std::pow(r_nodes[i], power) * values[i];
    return acc;
}

double RadialProfile::l1_plane() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < r_nodes.size(); ++i)
        acc += weights[i] * r_nodes[i] * std::abs(values[i]);
    return kTwoPi * acc;
}

double RadialProfile::l2_plane_sq() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < r_nodes.size(); ++i)
        acc += weights[i] * r_nodes[i] * values[i] * values[i];
    return kTwoPi * acc;
}

namespace {

// C^inf bump on (a, b): exp(-s/(1-u^2)) with u the affine map onto (-1,1).
double bump(double x, double a, double b, double s) {
    double u = 2.0 * (x - a) / (b - a) - 1.0;
    if (u <= -1.0 || u >= 1.0) return 0.0;
    return std::exp(-s / (1.0 - u * u));
}

}  // namespace

RadialProfile make_annular_profile(const AnnularSpec& spec) {
    if (!(0.0 < spec.r_inner && spec.r_inner < spec.r_mid && spec.r_mid < spec.r_outer))
        throw std::invalid_argument("make_annular_profile: need 0 < r_inner < r_mid < r_outer");
    if (!(spec.smoothness > 0.0))
        throw std::invalid_argument("make_annular_profile: smoothness must be > 0");

    auto b1 = [&](double x) { return bump(x, spec.r_inner, spec.r_mid, spec.smoothness); };
    auto b2 = [&](double x) { return bump(x, spec.r_mid, spec.r_outer, spec.smoothness); };
    double i1 = adaptive_simpson([&](double x) { return x * b1(x); }, spec.r_inner, spec.r_mid,
                                 1e-14);
    double i2 = adaptive_simpson([&](double x) { return x * b2(x); }, spec.r_mid, spec.r_outer,
                                 1e-14);
    if (!(i1 > 0.0 && i2 > 0.0))
        throw std::invalid_argument("make_annular_profile: degenerate bump intervals");
    // a1 int s B1 = a2 int s B2 = 1/(4 pi): zero net moment, total mass 1/(2 pi).
    double a1 = 1.0 / (4.0 * kPi * i1);
    double a2 = 1.0 / (4.0 * kPi * i2);
    auto phi = [=](double x) { return a1 * bump(x, spec.r_inner, spec.r_mid, spec.smoothness) -
                                      a2 * bump(x, spec.r_mid, spec.r_outer, spec.smoothness); };
    return RadialProfile::tabulate(phi, spec.r_outer, spec.n_nodes, spec.r_outer);
}

namespace {

// omega(r, t) for viscosity nu from the analytic initial profile.
double heat_kernel_eval(const RadialProfile& profile, double nu, double t, double r) {
    const double d = 2.0 * nu * t;  // kernel scale
    auto f = profile.analytic;
    if (!f) throw std::invalid_argument("radial heat: profile has no analytic form");
    double lo = 0.0, hi = profile.support_radius;
    // Split into segments no wider than the Gaussian width so the adaptive
    // rule cannot step over a narrow kernel peak.
    double width = std::sqrt(2.0 * d);
    int pieces = std::clamp(static_cast<int>(std::ceil((hi - lo) / std::max(width, 1e-12))), 1,
                            4000);
    auto integrand = [&](double s) {
        double z = (r - s);
        return (s / d) * std::exp(-z * z / (2.0 * d)) * bessel_i0_scaled(r * s / d) * f(s);
    };
    double h = (hi - lo) / pieces;
    // The kernel integrates to ~1 over s, so the result is bounded by
    // sup |f|; pin the per-segment tolerance to that scale.
    double f_scale = 0.0;
    for (int p = 0; p < pieces; ++p)
        f_scale = std::max(f_scale, std::abs(f(lo + (p + 0.5) * h)));
    double tol = 1e-12 * std::max(f_scale, 1e-300) * std::max(h / (hi - lo), 1e-4);
    double acc = 0.0;
    for (int p = 0; p < pieces; ++p) {
        double a = lo + p * h, b = lo + (p + 1) * h;
        // Skip segments far outside the kernel reach.
        double dist = (r < a) ? a - r : (r > b ? r - b : 0.0);
        if (dist * dist / (2.0 * d) > 60.0) continue;
        acc += adaptive_simpson(integrand, a, b, tol, 24);
    }
    if (!std::isfinite(acc)) throw std::runtime_error("radial heat: quadrature failed");
    return acc;
}

}  // namespace

RadialProfile radial_heat_evolve(const RadialProfile& profile, double nu, double t, int n_nodes,
                                 double r_max) {
    if (!(nu > 0.0 && t > 0.0))
        throw std::invalid_argument("radial_heat_evolve: need nu > 0 and t > 0");
    if (r_max <= 0.0) r_max = profile.support_radius + 8.0 * std::sqrt(nu * t);
    RadialProfile out;
    out.r_nodes.resize(n_nodes);
    out.values.resize(n_nodes);
    out.weights.resize(n_nodes);
    double h = r_max / (n_nodes - 1);
    for (int i = 0; i < n_nodes; ++i) {
        out.r_nodes[i] = i * h;
        out.values[i] = heat_kernel_eval(profile, nu, t, out.r_nodes[i]);
        out.weights[i] = (i == 0 || i == n_nodes - 1) ? 0.5 * h : h;
    }
    out.support_radius = r_max;
    return out;
}

std::function<double(double)> radial_velocity(const RadialProfile& profile) {
    // Cumulative trapezoid of s * omega(s) on the profile nodes.
    auto cum = std::make_shared<std::vector<double>>(profile.r_nodes.size(), 0.0);
    for (std::size_t i = 1; i < profile.r_nodes.size(); ++i) {
        double a = profile.r_nodes[i - 1], b = profile.r_nodes[i];
        (*cum)[i] = (*cum)[i - 1] +
                    0.5 * (a * profile.values[i - 1] + b * profile.values[i]) * (b - a);
    }
    auto nodes = std::make_shared<std::vector<double>>(profile.r_nodes);
    return [cum, nodes](double r) -> double {
        if (r <= 0.0) return 0.0;
        const auto& rs = *nodes;
        const auto& cs = *cum;
        double circ;
        if (r >= rs.back())
            circ = cs.back();
        else {
            auto it = std::upper_bound(rs.begin(), rs.end(), r);
            std::size_t hi = static_cast<std::size_t>(it - rs.begin());
            std::size_t lo = hi - 1;
            double w = (r - rs[lo]) / (rs[hi] - rs[lo]);
            circ = cs[lo] + w * (cs[hi] - cs[lo]);
        }
        return circ / r;
    };
}

double radial_l2_plane_sq_at(const RadialProfile& profile, double nu, double tau) {
    if (tau == 0.0) {
        if (!profile.analytic) return profile.l2_plane_sq();
        auto f = profile.analytic;
        return kTwoPi * adaptive_simpson([&](double r) { return r * f(r) * f(r); }, 0.0,
                                         profile.support_radius, 1e-13);
    }
    // Composite Simpson on a uniform tabulation of the evolved field; the
    // field is smooth at scale min(data features, sqrt(2 nu tau)).
    double reach = profile.support_radius + 8.0 * std::sqrt(nu * tau);
    const int n = 512;  // segments (even)
    double h = reach / n;
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        double r = i * h;
        double w = heat_kernel_eval(profile, nu, tau, r);
        double weight = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += weight * r * w * w;
    }
    return kTwoPi * acc * h / 3.0;
}

namespace {

// Plane Hankel transform F0(k) = 2 pi int_0^inf s phi(s) J0(ks) ds.
double hankel_transform(const RadialProfile& profile, double k) {
    auto f = profile.analytic;
    if (!f) throw std::invalid_argument("hankel_transform: analytic profile required");
    // Composite Simpson; the integrand oscillates at scale 1/k, well above
    // the grid spacing for the k range used below.
    double hi = profile.support_radius;
    const int n = 512;
    double h = hi / n, acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        double s = i * h;
        double weight = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += weight * s * f(s) * std::cyl_bessel_j(0.0, k * s);
    }
    return kTwoPi * acc * h / 3.0;
}

// (1/4pi) int_0^kmax (|F0(k)|^2 / k) damp(k) dk; with damp = 1 this is
// int_0^inf ||Omega(tau)||^2 dtau by Plancherel for the unit-viscosity heat
// semigroup (|F0|^2 e^{-2 k^2 tau} integrated exactly in tau).
double spectral_time_integral(const RadialProfile& profile,
                              const std::function<double(double)>& damp) {
    const double k_max = 120.0;
    const int n = 1200;  // Simpson segments
    double h = k_max / n, acc = 0.0;
    for (int i = 1; i <= n; ++i) {  // integrand -> 0 at k = 0 (zero total mass)
        double k = i * h;
        double f0 = hankel_transform(profile, k);
        double weight = (i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += weight * (f0 * f0 / k) * damp(k);
    }
    return acc * h / 3.0 / (4.0 * kPi);
}

}  // namespace

double anomalous_dissipation(const RadialProfile& profile, double nu, double T) {
    if (!(nu > 0.0 && T > 0.0))
        throw std::invalid_argument("anomalous_dissipation: need nu > 0, T > 0");
    // Rescaling identity: zeta^nu(T) = int_0^{T/nu} ||Omega(tau)||^2 dtau
    // with Omega the unit-viscosity evolution of phi; the tau integral is
    // carried out in closed form under the Hankel transform.
    double c = 2.0 * T / nu;
    return spectral_time_integral(profile,
                                  [c](double k) { return -std::expm1(-c * k * k); });
}

double anomalous_dissipation_direct(const RadialProfile& profile, double nu, double T) {
    if (!profile.analytic)
        throw std::invalid_argument("anomalous_dissipation_direct: analytic profile required");
    auto phi = profile.analytic;
    double inv_nu = 1.0 / nu;
    auto scaled = [phi, inv_nu](double r) { return inv_nu * inv_nu * phi(r * inv_nu); };
    RadialProfile data;
    data.analytic = scaled;
    data.support_radius = profile.support_radius * nu;
    auto g = [&](double t) { return radial_l2_plane_sq_at(data, nu, t); };
    // The decay time scale of the scaled data is ~ nu, so split there.
    double split = std::min(nu, T);
    double scale = g(0.0);
    double acc = adaptive_simpson(g, 0.0, split, 3e-6 * scale * split, 12);
    if (T > split) acc += adaptive_simpson(g, split, T, 3e-6 * scale * split, 12);
    return nu * acc;
}

double anomalous_dissipation_limit(const RadialProfile& profile) {
    return spectral_time_integral(profile, [](double) { return 1.0; });
}

SpectralField shear_mode_field(const GridSpec& grid, int k, double nu, double t) {
    if (k < 1) throw std::invalid_argument("shear_mode_field: k must be >= 1");
    double amp = std::exp(-nu * k * k * t);
    return SpectralField::from_function(
        grid, [k, amp](double x1, double) { return amp * std::cos(k * x1); });
}

double shear_mode_zeta(int k, double nu, double T) {
    return kPi * kPi * (1.0 - std::exp(-2.0 * nu * k * k * T)) / (static_cast<double>(k) * k);
}

}  // namespace dlab
