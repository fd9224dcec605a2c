#include "dlab/inequality.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "dlab/norms.hpp"
#include "dlab/spectral_ops.hpp"

namespace dlab {

InequalityReport InequalityReport::make(std::string name, double lhs, double rhs,
                                        std::map<std::string, double> params, int resolution) {
    InequalityReport r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs_without_constant = rhs;
    r.ratio = (lhs == 0.0 && rhs == 0.0) ? 0.0 : lhs / rhs;
    if (!std::isfinite(r.ratio) || r.ratio < 0.0)
        throw std::runtime_error("InequalityReport: ratio must be finite and >= 0");
    r.params = std::move(params);
    r.resolution = resolution;
    return r;
}

std::string InequalityReport::to_json() const {
    std::ostringstream os;
    os.precision(17);
    os << "{\"name\":\"" << name << "\",\"lhs\":" << lhs
       << ",\"rhs\":" << rhs_without_constant << ",\"ratio\":" << ratio << ",\"params\":{";
    bool first = true;
    for (const auto& [k, v] : params) {
        if (!first) os << ",";
        os << "\"" << k << "\":" << v;
        first = false;
    }
    os << "},\"resolution\":" << resolution << "}";
    return os.str();
}

InequalityReport check_convolution_bound(const SpectralField& f, const SpectralField& g,
                                         double ball_radius) {
    if (!(ball_radius > 0.0 && ball_radius <= kPi))
        throw std::invalid_argument("check_convolution_bound: radius in (0, pi] required");
    const GridSpec& grid = f.grid();
    // Mask g to the disk about the origin (periodic distance).
    auto phys = g.physical();
    for (int i = 0; i < grid.n; ++i)
        for (int j = 0; j < grid.n; ++j) {
            double d1 = grid.x1(i), d2 = grid.x2(j);
            if (d1 * d1 + d2 * d2 >= ball_radius * ball_radius) phys[grid.index(i, j)] = 0.0;
        }
    SpectralField g_masked = SpectralField::from_physical(grid, std::move(phys));

    double lhs = l2_norm(torus_convolve(f, g_masked));
    double g2 = l2_norm(g_masked);
    double rhs = std::sqrt(l1_norm(f) * concentration(f, ball_radius)) * g2;
    return InequalityReport::make("convolution_bound", lhs, rhs,
                                  {{"ball_radius", ball_radius}}, grid.n);
}

InequalityReport check_refined_projection(const SpectralField& f, double alpha, double epsilon,
                                          int N) {
    if (!(alpha > 0.0 && alpha < 0.5))
        throw std::invalid_argument("check_refined_projection: need 0 < alpha < 1/2");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("check_refined_projection: need 0 < epsilon < 1");
    if (N <= 0) throw std::invalid_argument("check_refined_projection: need N > 0");
    if (!f.is_mean_free(1e-10))
        throw std::invalid_argument("check_refined_projection: f must be mean-free");

    double ea = std::pow(epsilon, alpha);
    double l1 = l1_norm(f);
    double conc = concentration_linf(f, std::min(ea, kPi));
    double grad = gradient_l2(f);
    double lhs = l2_norm(f);
    lhs *= lhs;
    double rhs = static_cast<double>(N) * N * l1 * (conc + l1 / (N * ea)) + grad * grad / (static_cast<double>(N) * N);
    return InequalityReport::make(
        "refined_projection", lhs, rhs,
        {{"alpha", alpha}, {"epsilon", epsilon}, {"N", static_cast<double>(N)}}, f.grid().n);
}

InequalityReport check_refined_projection_preset(const SpectralField& f, double alpha,
                                                 EpsilonPreset preset, const EtaFunction* eta) {
    double grad = gradient_l2(f);
    double eps;
    switch (preset) {
        case EpsilonPreset::kLogGrad:
            if (!(grad > std::exp(2.0)))
                throw std::invalid_argument("preset kLogGrad: requires ||grad f|| > e^2");
            eps = 1.0 / (grad * std::pow(std::log(grad * grad), 0.25));
            break;
        case EpsilonPreset::kEtaGrad: {
            if (!eta) throw std::invalid_argument("preset kEtaGrad: eta required");
            if (!(grad > 1.0))
                throw std::invalid_argument("preset kEtaGrad: requires ||grad f|| > 1");
            eps = std::sqrt((*eta)(std::pow(grad, -0.25))) / grad;
            break;
        }
        default:
            throw std::invalid_argument("unknown epsilon preset");
    }
    int N = static_cast<int>(std::ceil(1.0 / std::sqrt(eps)));
    return check_refined_projection(f, alpha, eps, N);
}

InequalityReport check_refined_nash(const SpectralField& f, const EtaFunction& eta) {
    double grad = gradient_l2(f);
    if (!(grad > 1.0))
        throw std::invalid_argument("check_refined_nash: requires ||grad f||_2 > 1");
    double K = eta.mass_bound();
    double lhs = l2_norm(f);
    lhs *= lhs;
    double rhs = (K * K + 1.0) * grad * std::sqrt(eta(std::pow(grad, -0.25)));
    return InequalityReport::make("refined_nash", lhs, rhs, {{"K", K}, {"grad_l2", grad}},
                                  f.grid().n);
}

InequalityReport check_measure_refined(const MeasureDecomposition& dec) {
    SpectralField f = dec.sum();
    double grad = gradient_l2(f);
    const double e2 = std::exp(2.0);
    if (!(grad > e2))
        throw std::invalid_argument("check_measure_refined: requires ||grad f||_2 > e^2");
    double l1 = l1_norm(f);
    double lhs = l2_norm(f);
    lhs *= lhs;
    double rhs = (l1 * (dec.mu_hminus1 + dec.w_lp + l1) + 1.0) * grad /
                 std::pow(std::log(grad), 0.25);
    return InequalityReport::make("measure_refined", lhs, rhs,
                                  {{"p", dec.p},
                                   {"mu_hminus1", dec.mu_hminus1},
                                   {"w_lp", dec.w_lp},
                                   {"grad_l2", grad}},
                                  f.grid().n);
}

double classical_nash_ratio(const SpectralField& f) {
    double l2 = l2_norm(f);
    double l1 = l1_norm(f);
    double grad = gradient_l2(f);
    if (l2 == 0.0 || l1 == 0.0 || grad == 0.0)
        throw std::invalid_argument("classical_nash_ratio: zero field");
    return (l2 * l2 * l2 * l2) / (l1 * l1 * grad * grad);
}

}  // namespace dlab
