#include "dlab/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "dlab/fft.hpp"
#include "dlab/norms.hpp"

namespace dlab {

namespace {

// max_z sum_j |f(j)| K(z-j) * cell_area, via discrete circular convolution.
double kernel_concentration(const SpectralField& f, const std::function<bool(double, double)>& inside) {
    const GridSpec& g = f.grid();
    std::vector<double> absf(g.size());
    for (std::size_t m = 0; m < g.size(); ++m) absf[m] = std::abs(f.physical()[m]);
    std::vector<double> kernel(g.size(), 0.0);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            double d1 = GridSpec::periodic_delta(i * g.spacing);
            double d2 = GridSpec::periodic_delta(j * g.spacing);
            if (inside(d1, d2)) kernel[g.index(i, j)] = 1.0;
        }
    auto conv = fft::circular_convolution(g, absf, kernel);
    double m = *std::max_element(conv.begin(), conv.end());
    return std::max(0.0, m) * g.cell_area();
}

}  // namespace

double concentration(const SpectralField& f, double r) {
    if (!(r > 0.0 && r <= kPi))
        throw std::invalid_argument("concentration: r must be in (0, pi]");
    double r_sq = r * r;
    return kernel_concentration(
        f, [r_sq](double d1, double d2) { return d1 * d1 + d2 * d2 < r_sq; });
}

double concentration_linf(const SpectralField& f, double half_width) {
    if (!(half_width > 0.0 && half_width <= kPi))
        throw std::invalid_argument("concentration_linf: half_width must be in (0, pi]");
    return kernel_concentration(f, [half_width](double d1, double d2) {
        return std::abs(d1) < half_width && std::abs(d2) < half_width;
    });
}

double concentration_time_avg(const std::vector<std::pair<double, SpectralField>>& trajectory,
                              double r, double t1, double t2) {
    if (!(t1 < t2)) throw std::invalid_argument("concentration_time_avg: need t1 < t2");
    std::vector<std::pair<double, double>> samples;
    for (const auto& [t, f] : trajectory)
        if (t >= t1 - 1e-12 && t <= t2 + 1e-12) samples.emplace_back(t, concentration(f, r));
    if (samples.empty())
        throw std::invalid_argument("concentration_time_avg: empty snapshot range");
    if (samples.size() == 1) return (t2 - t1) * samples[0].second;
    double acc = 0.0;
    for (std::size_t i = 1; i < samples.size(); ++i)
        acc += 0.5 * (samples[i].second + samples[i - 1].second) *
               (samples[i].first - samples[i - 1].first);
    return acc;
}

void ConcentrationProfile::validate() const {
    if (radii.empty() || radii.size() != values.size())
        throw std::invalid_argument("ConcentrationProfile: empty or mismatched table");
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (radii[i] <= radii[i - 1])
            throw std::invalid_argument("ConcentrationProfile: radii must increase");
    if (!(radii.front() > 0.0 && radii.back() <= kPi + 1e-12))
        throw std::invalid_argument("ConcentrationProfile: radii must lie in (0, pi]");
    if (mass_bound <= 0.0)
        throw std::invalid_argument("ConcentrationProfile: mass_bound must be positive");
}

ConcentrationProfile profile_family(const std::vector<SpectralField>& family,
                                    const std::vector<double>& radii) {
    if (family.empty()) throw std::invalid_argument("profile_family: empty family");
    ConcentrationProfile p;
    p.radii = radii;
    p.values.resize(radii.size(), 0.0);
    double K = 0.0;
    for (const auto& f : family) K = std::max(K, l1_norm(f));
    p.mass_bound = K;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        double v = 0.0;
        for (const auto& f : family) v = std::max(v, concentration(f, radii[i]));
        p.values[i] = v;
    }
    return p;
}

EtaFunction::EtaFunction(ConcentrationProfile profile) : profile_(std::move(profile)) {
    profile_.validate();
    // Enforce monotonicity of the tabulated sup-values (concentration is
    // monotone in r; guard against quadrature jitter).
    for (std::size_t i = 1; i < profile_.values.size(); ++i)
        profile_.values[i] = std::max(profile_.values[i], profile_.values[i - 1]);
}

double EtaFunction::operator()(double r) const {
    if (r < 0.0) throw std::invalid_argument("EtaFunction: r must be >= 0");
    if (r > kPi) return 1.0;
    const auto& rs = profile_.radii;
    const auto& vs = profile_.values;
    double sup;
    if (r <= rs.front()) {
        // Inside the first tabulated radius interpolate down to 0 at r = 0.
        sup = vs.front() * (r / rs.front());
    } else if (r >= rs.back()) {
        sup = vs.back();
    } else {
        auto it = std::upper_bound(rs.begin(), rs.end(), r);
        std::size_t hi = static_cast<std::size_t>(it - rs.begin());
        std::size_t lo = hi - 1;
        double w = (r - rs[lo]) / (rs[hi] - rs[lo]);
        sup = vs[lo] + w * (vs[hi] - vs[lo]);
    }
    double eta = std::max(sup / profile_.mass_bound, r / kPi);
    return std::min(eta, 1.0);
}

double maximal_function(const SpectralField& f, double s) {
    const double area = kTwoPi * kTwoPi;
    if (!(s > 0.0 && s <= area + 1e-12))
        throw std::invalid_argument("maximal_function: s out of range (0, (2pi)^2]");
    std::vector<double> vals(f.physical().size());
    for (std::size_t m = 0; m < vals.size(); ++m) vals[m] = std::abs(f.physical()[m]);
    std::sort(vals.begin(), vals.end(), std::greater<>());
    const double cell = f.grid().cell_area();
    double acc = 0.0, used = 0.0;
    for (double v : vals) {
        if (used + cell >= s) {
            acc += v * (s - used);
            return acc;
        }
        acc += v * cell;
        used += cell;
    }
    return acc;
}

double disk_mass_log_ratio(const SpectralField& mu, double rho) {
    if (!(rho > 0.0 && rho < 0.5))
        throw std::invalid_argument("disk_mass_log_ratio: rho must be in (0, 1/2)");
    double h = h_minus1_norm(mu.is_mean_free(1e-10) ? mu : mu.subtract_mean());
    if (h == 0.0) throw std::invalid_argument("disk_mass_log_ratio: zero field");
    return concentration(mu, rho) * std::sqrt(std::abs(std::log(rho))) / h;
}

MeasureDecomposition MeasureDecomposition::make(SpectralField mu, SpectralField w, double p) {
    if (p <= 1.0) throw std::invalid_argument("MeasureDecomposition: p must be > 1");
    double max_mu = linf_norm(mu);
    for (double v : mu.physical())
        if (v < -1e-12 * std::max(1.0, max_mu))
            throw std::invalid_argument("MeasureDecomposition: mu must be nonnegative");
    MeasureDecomposition d{std::move(mu), std::move(w), p};
    d.mu_l1 = l1_norm(d.mu);
    d.mu_hminus1 = h_minus1_norm(d.mu.is_mean_free(1e-10) ? d.mu : d.mu.subtract_mean());
    d.w_lp = lp_norm(d.w, p);
    return d;
}

void write_profile_csv(const std::string& path, const std::string& id, int resolution,
                       const std::vector<double>& xs, const std::vector<double>& ys) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_profile_csv: cannot open " + path);
    out << "# " << id << ", n=" << resolution << "\n";
    out << "r_or_s,value\n";
    out.precision(17);
    for (std::size_t i = 0; i < xs.size(); ++i) out << xs[i] << "," << ys[i] << "\n";
}

}  // namespace dlab
