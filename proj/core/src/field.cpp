#include "dlab/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dlab/fft.hpp"

namespace dlab {

SpectralField SpectralField::from_physical(const GridSpec& grid, std::vector<double> phys) {
    if (phys.size() != grid.size())
        throw std::invalid_argument("SpectralField: physical size mismatch");
    std::vector<std::complex<double>> spec(grid.size());
    fft::forward(grid, phys.data(), spec.data());
    return SpectralField(grid, std::move(phys), std::move(spec));
}

SpectralField SpectralField::from_spectral(const GridSpec& grid,
                                           std::vector<std::complex<double>> spec) {
    if (spec.size() != grid.size())
        throw std::invalid_argument("SpectralField: spectral size mismatch");
    std::vector<double> phys(grid.size());
    fft::inverse(grid, spec.data(), phys.data());
    return SpectralField(grid, std::move(phys), std::move(spec));
}

SpectralField SpectralField::from_function(const GridSpec& grid,
                                           const std::function<double(double, double)>& f) {
    std::vector<double> phys(grid.size());
    for (int i = 0; i < grid.n; ++i)
        for (int j = 0; j < grid.n; ++j)
            phys[grid.index(i, j)] = f(grid.x1(i), grid.x2(j));
    return from_physical(grid, std::move(phys));
}

SpectralField SpectralField::zero(const GridSpec& grid) {
    return SpectralField(grid, std::vector<double>(grid.size(), 0.0),
                         std::vector<std::complex<double>>(grid.size(), 0.0));
}

std::complex<double> SpectralField::coeff(int k1, int k2) const {
    const int n = grid_.n;
    if (k1 < -n / 2 || k1 >= n / 2 || k2 < -n / 2 || k2 >= n / 2)
        throw std::out_of_range("SpectralField::coeff: wavenumber out of range");
    int i1 = k1 >= 0 ? k1 : k1 + n;
    int i2 = k2 >= 0 ? k2 : k2 + n;
    return spectral_[grid_.index(i1, i2)];
}

double SpectralField::mean() const { return spectral_[0].real(); }

bool SpectralField::is_mean_free(double rel_tol) const {
    double max_abs = 0.0;
    for (const auto& c : spectral_) max_abs = std::max(max_abs, std::abs(c));
    if (max_abs == 0.0) return true;
    return std::abs(spectral_[0]) <= rel_tol * max_abs;
}

SpectralField SpectralField::subtract_mean() const {
    auto spec = spectral_;
    spec[0] = 0.0;
    return from_spectral(grid_, std::move(spec));
}

SpectralField SpectralField::operator+(const SpectralField& other) const {
    if (!(grid_ == other.grid_)) throw std::invalid_argument("field grid mismatch");
    auto spec = spectral_;
    for (std::size_t m = 0; m < spec.size(); ++m) spec[m] += other.spectral_[m];
    return from_spectral(grid_, std::move(spec));
}

SpectralField SpectralField::operator-(const SpectralField& other) const {
    if (!(grid_ == other.grid_)) throw std::invalid_argument("field grid mismatch");
    auto spec = spectral_;
    for (std::size_t m = 0; m < spec.size(); ++m) spec[m] -= other.spectral_[m];
    return from_spectral(grid_, std::move(spec));
}

SpectralField SpectralField::operator*(double scale) const {
    auto spec = spectral_;
    for (auto& c : spec) c *= scale;
    return from_spectral(grid_, std::move(spec));
}

SpectralField SpectralField::pointwise_times(const SpectralField& other) const {
    if (!(grid_ == other.grid_)) throw std::invalid_argument("field grid mismatch");
    auto phys = physical_;
    for (std::size_t m = 0; m < phys.size(); ++m) phys[m] *= other.physical_[m];
    return from_physical(grid_, std::move(phys));
}

SpectralField SpectralField::abs() const {
    auto phys = physical_;
    for (auto& v : phys) v = std::abs(v);
    return from_physical(grid_, std::move(phys));
}

double VelocityField::divergence_linf_rel() const {
    const GridSpec& g = u1.grid();
    double max_div = 0.0, max_u = 0.0;
    for (int i1 = 0; i1 < g.n; ++i1)
        for (int i2 = 0; i2 < g.n; ++i2) {
            std::size_t m = g.index(i1, i2);
            double k1 = g.wavenumber(i1), k2 = g.wavenumber(i2);
            std::complex<double> div =
                k1 * u1.spectral()[m] + k2 * u2.spectral()[m];
            max_div = std::max(max_div, std::abs(div));
            max_u = std::max({max_u, std::abs(u1.spectral()[m]), std::abs(u2.spectral()[m])});
        }
    return max_u > 0.0 ? max_div / max_u : 0.0;
}

double VelocityField::max_speed() const {
    double m = 0.0;
    for (std::size_t i = 0; i < u1.physical().size(); ++i) {
        double s = std::hypot(u1.physical()[i], u2.physical()[i]);
        m = std::max(m, s);
    }
    return m;
}

}  // namespace dlab
