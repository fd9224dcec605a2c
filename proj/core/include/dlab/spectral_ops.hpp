#pragma once

#include "dlab/field.hpp"

namespace dlab {

// 1D Dirichlet kernel d_N(z) = sum_{|k|<=N} e^{ikz} = sin((2N+1)z/2)/sin(z/2),
// with the removable singularity at z = 0 (value 2N+1).
double dirichlet_kernel_1d(int N, double z);

// Square kernel D_N(z1,z2) = d_N(z1) d_N(z2).
double dirichlet_kernel_2d(int N, double z1, double z2);

// int_{T^2} D_N^2 by the spectral Plancherel sum; equals [2pi(2N+1)]^2.
double dirichlet_l2_mass(int N);

// int_rho^pi d_N^2(x) dx by adaptive quadrature, 0 < rho < pi.
// Bounded by pi^2/rho.
double dirichlet_tail_mass(int N, double rho);

// Zeroes all coefficients with |k|_inf >= N. Requires N <= n/3 so the
// retained band is dealias-safe. Satisfies P_N f = (2pi)^{-2} f * D_{N-1}.
SpectralField project_low_modes(const SpectralField& f, int N);

// Zeroes |k|_inf > n/3 (the 2/3 rule).
SpectralField dealias(const SpectralField& f);

// Velocity from mean-free vorticity: uhat = -i k_perp what / |k|^2 with
// k_perp = (-k2, k1), so that curl u = d1 u2 - d2 u1 = omega.
VelocityField biot_savart(const SpectralField& omega);

// Spectral curl of a velocity field.
SpectralField curl(const VelocityField& u);

SpectralField derivative(const SpectralField& f, int axis);

double l2_norm(const SpectralField& f);
double gradient_l2(const SpectralField& f);

// Torus convolution (f * g)(x) = int f(x-y) g(y) dy, evaluated as the
// rectangle-rule sum (exact circular convolution of the grid samples).
SpectralField torus_convolve(const SpectralField& f, const SpectralField& g);

}  // namespace dlab
