#pragma once

#include <functional>
#include <vector>

#include "dlab/field.hpp"

namespace dlab {

// Exponentially scaled modified Bessel function e^{-x} I_0(x), x >= 0.
// Power series below x = 20, scaled asymptotic expansion above.
double bessel_i0_scaled(double x);
double bessel_i0(double x);

/// A radial function r -> omega(r) tabulated on a uniform grid over
/// [0, r_max], with trapezoid weights and (when available) the analytic
/// profile it samples.
struct RadialProfile {
    std::vector<double> r_nodes;
    std::vector<double> values;
    std::vector<double> weights;
    std::function<double(double)> analytic;  // may be empty
    double support_radius = 0.0;             // outer radius of the initial support

    static RadialProfile tabulate(const std::function<double(double)>& f, double r_max,
                                  int n_nodes, double support_radius);

    // int_0^rmax r^power * omega(r) dr by the stored weights.
    double radial_moment(int power) const;
    // 2 pi int r |omega| dr  (the planar L1 norm of the radial field)
    double l1_plane() const;
    // 2 pi int r omega^2 dr  (squared planar L2 norm)
    double l2_plane_sq() const;
};

/// Two-bump annular profile phi = a1 B1 - a2 B2 with C^inf bumps on
/// [r_inner, r_mid] and [r_mid, r_outer]; a1, a2 are solved so that
/// int s phi ds = 0 and int s |phi| ds = 1/(2 pi).
struct AnnularSpec {
    double r_inner = 0.5;
    double r_mid = 1.0;
    double r_outer = 1.5;
    double smoothness = 1.0;  // exponent scale of exp(-s/(1-u^2))
    int n_nodes = 4096;
};
RadialProfile make_annular_profile(const AnnularSpec& spec);

// Heat evolution of a radial profile on the plane at viscosity nu, time t,
// via the radial heat kernel (s/(2 nu t)) exp(-(r-s)^2/(4 nu t)) I0e(rs/(2 nu t)).
// The output is tabulated on [0, r_max] (default: support + 8 sqrt(nu t)).
RadialProfile radial_heat_evolve(const RadialProfile& profile, double nu, double t,
                                 int n_nodes = 2048, double r_max = 0.0);

// Azimuthal speed u_theta(r) = (1/r) int_0^r s omega(s) ds.
std::function<double(double)> radial_velocity(const RadialProfile& profile);

// ||Omega(tau)||^2_{L2(R2)} for the unit-viscosity heat evolution of phi.
double radial_l2_plane_sq_at(const RadialProfile& profile, double nu, double tau);

// zeta^nu(T) for the scaled data nu^{-2} phi(./nu) via the rescaling
// identity zeta^nu(T) = int_0^{T/nu} ||Omega(tau)||^2 dtau (unit-viscosity
// evolution of phi).
double anomalous_dissipation(const RadialProfile& profile, double nu, double T);

// Same quantity by direct time quadrature of the viscosity-nu evolution of
// the scaled data; cross-check for the rescaling route.
double anomalous_dissipation_direct(const RadialProfile& profile, double nu, double T);

// int_0^inf ||Omega(tau)||^2 dtau, the small-viscosity limit constant.
double anomalous_dissipation_limit(const RadialProfile& profile);

// Shear-mode exact solution omega(x, t) = e^{-nu k^2 t} cos(k x1).
SpectralField shear_mode_field(const GridSpec& grid, int k, double nu, double t);
double shear_mode_zeta(int k, double nu, double T);

}  // namespace dlab
