#pragma once

#include <complex>
#include <vector>

#include "dlab/grid.hpp"

namespace dlab::fft {

// Forward: spec(k) = (1/n^2) sum_j phys(x_j) exp(-i k.x_j), with the grid
// offset x_j = -pi + j h folded in, so spec(k) is the true Fourier
// coefficient under the convention fhat(k) = (2pi)^{-2} int f exp(-ik.x).
// Output layout matches the physical layout: index (i1,i2) -> wavenumber
// (grid.wavenumber(i1), grid.wavenumber(i2)).
void forward(const GridSpec& grid, const double* phys, std::complex<double>* spec);

// Inverse of forward(); imaginary parts of the reconstruction are dropped.
void inverse(const GridSpec& grid, const std::complex<double>* spec, double* phys);

// Raw unnormalized c2c transforms (no 1/n^2, no grid phase). Used for
// discrete circular convolutions.
void raw_forward(const GridSpec& grid, const std::complex<double>* in, std::complex<double>* out);
void raw_inverse(const GridSpec& grid, const std::complex<double>* in, std::complex<double>* out);

// Discrete circular convolution c(z) = sum_j a(j) b(z - j), indices mod n.
std::vector<double> circular_convolution(const GridSpec& grid,
                                         const std::vector<double>& a,
                                         const std::vector<double>& b);

}  // namespace dlab::fft
