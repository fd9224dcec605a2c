#pragma once

#include <cstddef>
#include <numbers>
#include <stdexcept>

namespace dlab {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Uniform periodic collocation grid on [-pi,pi]^2.
///
/// Collocation points sit at cell corners x_j = -pi + j*spacing; all
/// physical-space integrals are rectangle-rule sums over the n*n cells.
struct GridSpec {
    int n = 0;               // points per axis, power of two, >= 8
    double spacing = 0.0;    // 2*pi/n
    int dealias_cutoff = 0;  // floor(n/3), the 2/3-rule mode bound

    explicit GridSpec(int n_points) : n(n_points) {
        if (n < 8 || (n & (n - 1)) != 0)
            throw std::invalid_argument("GridSpec: n must be a power of two >= 8");
        spacing = kTwoPi / n;
        dealias_cutoff = n / 3;
    }

    double cell_area() const { return spacing * spacing; }
    std::size_t size() const { return static_cast<std::size_t>(n) * n; }

    // x1 = -pi + i*spacing, x2 = -pi + j*spacing; row-major, x2 fastest.
    double x1(int i) const { return -kPi + i * spacing; }
    double x2(int j) const { return -kPi + j * spacing; }
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n + j; }

    // FFT index -> signed wavenumber in [-n/2, n/2).
    int wavenumber(int idx) const { return idx <= n / 2 - 1 ? idx : idx - n; }

    // Minimal periodic displacement of a signed coordinate difference.
    static double periodic_delta(double d) {
        while (d > kPi) d -= kTwoPi;
        while (d < -kPi) d += kTwoPi;
        return d;
    }

    bool operator==(const GridSpec& o) const { return n == o.n; }
};

}  // namespace dlab
