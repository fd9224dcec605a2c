#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "dlab/grid.hpp"

namespace dlab {

/// A real scalar field on the torus with synchronized physical and Fourier
/// representations. Fields are immutable after construction; mutating
/// operations return new fields.
///
/// Convention: fhat(k) = (2pi)^{-2} int f exp(-ik.x); Plancherel then reads
/// int |f|^2 = (2pi)^2 sum_k |fhat(k)|^2.
class SpectralField {
  public:
    static SpectralField from_physical(const GridSpec& grid, std::vector<double> phys);
    static SpectralField from_spectral(const GridSpec& grid, std::vector<std::complex<double>> spec);
    static SpectralField from_function(const GridSpec& grid,
                                       const std::function<double(double, double)>& f);
    static SpectralField zero(const GridSpec& grid);

    const GridSpec& grid() const { return grid_; }
    const std::vector<double>& physical() const { return physical_; }
    const std::vector<std::complex<double>>& spectral() const { return spectral_; }

    // Coefficient at signed wavenumbers (k1, k2), |k_i| <= n/2.
    std::complex<double> coeff(int k1, int k2) const;

    double mean() const;
    bool is_mean_free(double rel_tol = 1e-12) const;
    SpectralField subtract_mean() const;

    SpectralField operator+(const SpectralField& other) const;
    SpectralField operator-(const SpectralField& other) const;
    SpectralField operator*(double scale) const;

    // Pointwise physical product (not dealiased).
    SpectralField pointwise_times(const SpectralField& other) const;
    SpectralField abs() const;

  private:
    SpectralField(const GridSpec& grid, std::vector<double> phys,
                  std::vector<std::complex<double>> spec)
        : grid_(grid), physical_(std::move(phys)), spectral_(std::move(spec)) {}

    GridSpec grid_;
    std::vector<double> physical_;
    std::vector<std::complex<double>> spectral_;
};

/// Divergence-free velocity field as two scalar components.
struct VelocityField {
    SpectralField u1;
    SpectralField u2;

    // max_k |k.uhat(k)| relative to max |uhat|.
    double divergence_linf_rel() const;
    double max_speed() const;
};

}  // namespace dlab
