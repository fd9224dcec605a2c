#include "dlab/spectral_ops.hpp"

#include <cmath>
#include <stdexcept>

#include "dlab/fft.hpp"
#include "dlab/quadrature.hpp"

namespace dlab {

double dirichlet_kernel_1d(int N, double z) {
    if (N < 0) throw std::invalid_argument("dirichlet_kernel_1d: N must be >= 0");
    if (std::abs(z) < 1e-6) {
        // Direct sum near the removable singularity.
        double s = 1.0;
        for (int k = 1; k <= N; ++k) s += 2.0 * std::cos(k * z);
        return s;
    }
    return std::sin((2 * N + 1) * 0.5 * z) / std::sin(0.5 * z);
}

double dirichlet_kernel_2d(int N, double z1, double z2) {
    return dirichlet_kernel_1d(N, z1) * dirichlet_kernel_1d(N, z2);
}

double dirichlet_l2_mass(int N) {
    if (N < 0) throw std::invalid_argument("dirichlet_l2_mass: N must be >= 0");
    // D_N has unit Fourier coefficients on |k|_inf <= N; Plancherel gives
    // (2pi)^2 * (2N+1)^2.
    double sum = 0.0;
    for (int k1 = -N; k1 <= N; ++k1)
        for (int k2 = -N; k2 <= N; ++k2) sum += 1.0;
    return kTwoPi * kTwoPi * sum;
}

double dirichlet_tail_mass(int N, double rho) {
    if (!(rho > 0.0 && rho < kPi))
        throw std::invalid_argument("dirichlet_tail_mass: rho must be in (0,pi)");
    if (N < 0) throw std::invalid_argument("dirichlet_tail_mass: N must be >= 0");
    // Split at the oscillation scale so the adaptive rule sees each lobe.
    auto integrand = [N](double x) {
        double d = dirichlet_kernel_1d(N, x);
        return d * d;
    };
    int pieces = std::max(4, 4 * (N + 1));
    double h = (kPi - rho) / pieces;
    double total = 0.0;
    for (int p = 0; p < pieces; ++p)
        total += adaptive_simpson(integrand, rho + p * h, rho + (p + 1) * h, 1e-12);
    return total;
}

SpectralField project_low_modes(const SpectralField& f, int N) {
    const GridSpec& g = f.grid();
    if (N > g.dealias_cutoff)
        throw std::invalid_argument("project_low_modes: N beyond resolved band (n/3)");
    if (N < 0) throw std::invalid_argument("project_low_modes: N must be >= 0");
    auto spec = f.spectral();
    for (int i1 = 0; i1 < g.n; ++i1)
        for (int i2 = 0; i2 < g.n; ++i2) {
            int k1 = g.wavenumber(i1), k2 = g.wavenumber(i2);
            if (std::max(std::abs(k1), std::abs(k2)) >= N) spec[g.index(i1, i2)] = 0.0;
        }
    return SpectralField::from_spectral(g, std::move(spec));
}

SpectralField dealias(const SpectralField& f) {
    const GridSpec& g = f.grid();
    auto spec = f.spectral();
    for (int i1 = 0; i1 < g.n; ++i1)
        for (int i2 = 0; i2 < g.n; ++i2) {
            int k1 = g.wavenumber(i1), k2 = g.wavenumber(i2);
            if (std::max(std::abs(k1), std::abs(k2)) > g.dealias_cutoff)
                spec[g.index(i1, i2)] = 0.0;
        }
    return SpectralField::from_spectral(g, std::move(spec));
}

VelocityField biot_savart(const SpectralField& omega) {
    if (!omega.is_mean_free(1e-10))
        throw std::invalid_argument("biot_savart: vorticity must be mean-free");
    const GridSpec& g = omega.grid();
    std::vector<std::complex<double>> s1(g.size(), 0.0), s2(g.size(), 0.0);
    const std::complex<double> I(0.0, 1.0);
    for (int i1 = 0; i1 < g.n; ++i1)
        for (int i2 = 0; i2 < g.n; ++i2) {
            int k1 = g.wavenumber(i1), k2 = g.wavenumber(i2);
            double k_sq = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
            if (k_sq == 0.0) continue;
            std::size_t m = g.index(i1, i2);
            std::complex<double> w = omega.spectral()[m];
            // uhat = -i k_perp what / |k|^2, k_perp = (-k2, k1)
            s1[m] = -I * (-static_cast<double>(k2)) * w / k_sq;
            s2[m] = -I * (static_cast<double>(k1)) * w / k_sq;
        }
    return VelocityField{SpectralField::from_spectral(g, std::move(s1)),
                         SpectralField::from_spectral(g, std::move(s2))};
}

SpectralField curl(const VelocityField& u) {
    return derivative(u.u2, 0) - derivative(u.u1, 1);
}

SpectralField derivative(const SpectralField& f, int axis) {
    if (axis != 0 && axis != 1) throw std::invalid_argument("derivative: axis must be 0 or 1");
    const GridSpec& g = f.grid();
    auto spec = f.spectral();
    const std::complex<double> I(0.0, 1.0);
    for (int i1 = 0; i1 < g.n; ++i1)
        for (int i2 = 0; i2 < g.n; ++i2) {
            double k = axis == 0 ? g.wavenumber(i1) : g.wavenumber(i2);
            spec[g.index(i1, i2)] *= I * k;
        }
    return SpectralField::from_spectral(g, std::move(spec));
}

double l2_norm(const SpectralField& f) {
    double sum = 0.0;
    for (const auto& c : f.spectral()) sum += std::norm(c);
    return std::sqrt(kTwoPi * kTwoPi * sum);
}

double gradient_l2(const SpectralField& f) {
    const GridSpec& g = f.grid();
    double sum = 0.0;
    for (int i1 = 0; i1 < g.n; ++i1)
        for (int i2 = 0; i2 < g.n; ++i2) {
            double k1 = g.wavenumber(i1), k2 = g.wavenumber(i2);
            sum += (k1 * k1 + k2 * k2) * std::norm(f.spectral()[g.index(i1, i2)]);
        }
    return std::sqrt(kTwoPi * kTwoPi * sum);
}

SpectralField torus_convolve(const SpectralField& f, const SpectralField& g) {
    if (!(f.grid() == g.grid())) throw std::invalid_argument("torus_convolve: grid mismatch");
    auto conv = fft::circular_convolution(f.grid(), f.physical(), g.physical());
    const GridSpec& grid = f.grid();
    const double h2 = grid.cell_area();
    // Index convolution realizes (f * g)(x - (pi, pi)) because the grid
    // origin sits at -pi; undo the half-period shift.
    std::vector<double> out(grid.size());
    const int half = grid.n / 2;
    for (int i = 0; i < grid.n; ++i)
        for (int j = 0; j < grid.n; ++j)
            out[grid.index(i, j)] =
                conv[grid.index((i + half) % grid.n, (j + half) % grid.n)] * h2;
    return SpectralField::from_physical(grid, std::move(out));
}

}  // namespace dlab
