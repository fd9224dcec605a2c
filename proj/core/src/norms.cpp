#include "dlab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dlab {

double lp_norm(const SpectralField& f, double p) {
    if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : f.physical()) m = std::max(m, std::abs(v));
        return m;
    }
    double sum = 0.0;
    for (double v : f.physical()) sum += std::pow(std::abs(v), p);
    return std::pow(sum * f.grid().cell_area(), 1.0 / p);
}

double h_minus1_norm(const SpectralField& f) {
    if (!f.is_mean_free(1e-10))
        throw std::invalid_argument("h_minus1_norm: field must be mean-free");
    const GridSpec& g = f.grid();
    double sum = 0.0;
    for (int i1 = 0; i1 < g.n; ++i1)
        for (int i2 = 0; i2 < g.n; ++i2) {
            double k1 = g.wavenumber(i1), k2 = g.wavenumber(i2);
            double k_sq = k1 * k1 + k2 * k2;
            if (k_sq == 0.0) continue;
            sum += std::norm(f.spectral()[g.index(i1, i2)]) / k_sq;
        }
    return std::sqrt(kTwoPi * kTwoPi * sum);
}

}  // namespace dlab
