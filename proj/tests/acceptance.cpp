// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "dlab/concentration.hpp"
#include "dlab/inequality.hpp"
#include "dlab/norms.hpp"
#include "dlab/phi.hpp"
#include "dlab/radial.hpp"
#include "dlab/solver.hpp"
#include "dlab/spectral_ops.hpp"
#include "dlab/sweep.hpp"

using namespace dlab;

namespace {

bool g_current_ok = true;
std::string g_detail;

void require(bool cond, const std::string& what) {
    if (!cond) {
        g_current_ok = false;
        if (g_detail.empty()) g_detail = what;
    }
}

SpectralField random_band_limited(const GridSpec& grid, std::uint64_t seed, int k_max) {
    GaussianStream rng(seed);
    struct Mode {
        int k1, k2;
        double a, b;
    };
    std::vector<Mode> modes;
    for (int k1 = 0; k1 <= k_max; ++k1)
        for (int k2 = -k_max; k2 <= k_max; ++k2) {
            if (k1 == 0 && k2 <= 0) continue;
            modes.push_back({k1, k2, rng.next(), rng.next()});
        }
    return SpectralField::from_function(grid, [modes](double x1, double x2) {
        double acc = 0.0;
        for (const auto& m : modes)
            acc += m.a * std::cos(m.k1 * x1 + m.k2 * x2) + m.b * std::sin(m.k1 * x1 + m.k2 * x2);
        return acc;
    });
}

SpectralField gaussian_bump(const GridSpec& grid, double width, double mass) {
    return SpectralField::from_function(grid, [=](double x1, double x2) {
        double q = 0.5 * (x1 * x1 + x2 * x2) / (width * width);
        return q < 40.0 ? mass * std::exp(-q) / (kTwoPi * width * width) : 0.0;
    });
}

std::vector<SpectralField> dilated_bump_corpus(const GridSpec& grid, int count) {
    std::vector<SpectralField> corpus;
    for (int i = 0; i < count; ++i) {
        double width = 0.5 * std::pow(2.0, -i / 6.0);
        corpus.push_back(gaussian_bump(grid, width, 1.0).subtract_mean());
    }
    return corpus;
}

EtaFunction eta_for(const std::vector<SpectralField>& family) {
    std::vector<double> radii;
    for (double r = 0.02; r < kPi; r *= 1.4) radii.push_back(r);
    radii.push_back(kPi);
    return build_eta(profile_family(family, radii));
}

// Richardson-extrapolated one-sided derivative (second-order base stencil).
double side_derivative(const std::function<double(double)>& f, double x, double h, int sign) {
    auto d = [&](double step) {
        double s = sign * step;
        return (3.0 * f(x) - 4.0 * f(x - s) + f(x - 2.0 * s)) / (2.0 * s);
    };
    return (4.0 * d(h / 2.0) - d(h)) / 3.0;
}

// Crank-Nicolson oracle for d_t w = nu (w_rr + w_r/r) on [0, R]; symmetry at
// r = 0, homogeneous Dirichlet at R, Thomas tridiagonal solve per step.
class RadialHeatCN {
  public:
    RadialHeatCN(const std::function<double(double)>& init, double nu, double R, int cells,
                 double dt)
        : nu_(nu), dt_(dt), h_(R / cells), w_(cells + 1) {
        for (int i = 0; i <= cells; ++i) w_[i] = init(i * h_);
        w_.back() = 0.0;
    }

    void advance_to(double t_target) {
        while (t_ < t_target - 1e-12) {
            double dt = std::min(dt_, t_target - t_);
            step(dt);
            t_ += dt;
        }
    }

    double value(int i) const { return w_[i]; }

  private:
    void step(double dt) {
        int m = static_cast<int>(w_.size()) - 1;
        double c = 0.5 * nu_ * dt;
        std::vector<double> rhs(w_.size());
        rhs[0] = w_[0] + c * 4.0 * (w_[1] - w_[0]) / (h_ * h_);
        for (int i = 1; i < m; ++i) {
            double r = i * h_;
            double lap = (w_[i + 1] - 2.0 * w_[i] + w_[i - 1]) / (h_ * h_) +
                         (w_[i + 1] - w_[i - 1]) / (2.0 * h_ * r);
            rhs[i] = w_[i] + c * lap;
        }
        rhs[m] = 0.0;

        std::vector<double> a(w_.size(), 0.0), b(w_.size(), 0.0), d(w_.size(), 0.0);
        b[0] = 1.0 + 4.0 * c / (h_ * h_);
        d[0] = -4.0 * c / (h_ * h_);
        for (int i = 1; i < m; ++i) {
            double r = i * h_;
            a[i] = -c * (1.0 / (h_ * h_) - 1.0 / (2.0 * h_ * r));
            b[i] = 1.0 + 2.0 * c / (h_ * h_);
            d[i] = -c * (1.0 / (h_ * h_) + 1.0 / (2.0 * h_ * r));
        }
        b[m] = 1.0;
        for (int i = 1; i <= m; ++i) {
            double f = a[i] / b[i - 1];
            b[i] -= f * d[i - 1];
            rhs[i] -= f * rhs[i - 1];
        }
        w_[m] = rhs[m] / b[m];
        for (int i = m - 1; i >= 0; --i) w_[i] = (rhs[i] - d[i] * w_[i + 1]) / b[i];
    }

    double nu_;
    double dt_;
    double h_;
    double t_ = 0.0;
    std::vector<double> w_;
};

// ---------------------------------------------------------------- criteria

void criterion_1_kernel_mass() {
    for (int N : {0, 1, 4, 16}) {
        double exact = kTwoPi * (2 * N + 1) * kTwoPi * (2 * N + 1);
        require(std::abs(dirichlet_l2_mass(N) - exact) <= 1e-10 * exact,
                "L2 mass deviates for N=" + std::to_string(N));
    }
    for (int N = 4; N <= 64; ++N) {
        double ratio = dirichlet_l2_mass(N) / (static_cast<double>(N) * N);
        require(ratio <= 4.0 * kTwoPi * kTwoPi * 1.27, "mass/N^2 unbounded at N=" + std::to_string(N));
    }
}

void criterion_2_tail_bound() {
    int violations = 0;
    for (int N = 1; N <= 64; ++N)
        for (double rho = 0.05; rho < kPi; rho *= 2.0)
            if (dirichlet_tail_mass(N, rho) > kPi * kPi / rho) ++violations;
    require(violations == 0, std::to_string(violations) + " tail-bound violations");
}

void criterion_3_convolution() {
    GridSpec grid(256);
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 100; ++i) {
        auto f = random_band_limited(grid, 1000 + i, 8);
        double r = 0.1 + 0.05 * static_cast<double>(i % 10);
        auto g = gaussian_bump(grid, r / 4.0, 1.0);
        worst = std::max(worst, check_convolution_bound(f, g, r).ratio);
    }
    require(worst <= 1.05, "max convolution ratio " + std::to_string(worst));
}

void criterion_4_constant_stability() {
    auto constants = [](int n) {
        GridSpec grid(n);
        auto corpus = dilated_bump_corpus(grid, 20);
        auto eta = eta_for(corpus);
        double c_proj = 0.0, c_nash = 0.0;
        for (const auto& f : corpus) {
            double grad = gradient_l2(f);
            if (grad > std::exp(2.0))
                c_proj = std::max(
                    c_proj,
                    check_refined_projection_preset(f, 0.25, EpsilonPreset::kLogGrad, nullptr)
                        .ratio);
            if (grad > 1.0) c_nash = std::max(c_nash, check_refined_nash(f, eta).ratio);
        }
        return std::pair<double, double>{c_proj, c_nash};
    };
    auto [p256, n256] = constants(256);
    auto [p512, n512] = constants(512);
    require(p256 > 0.0 && n256 > 0.0, "empty calibration corpus");
    require(std::abs(p512 - p256) <= 0.20 * p256, "projection constant drifts across resolutions");
    require(std::abs(n512 - n256) <= 0.20 * n256, "nash constant drifts across resolutions");
}

void criterion_5_phi_upsilon() {
    auto flat = build_phi_integral([](double) { return 1.0; }, 2.0);
    for (double x : {1e-4, 1.0, 1e3, 1e9})
        require(std::abs(flat(x) - 2.0 * x) <= 1e-10 * 2.0 * x, "flat-eta majorant is not Cx");

    auto lin = build_phi_integral([](double r) { return r / kPi; }, 1.0);
    for (double x : {1e-3, 0.5, 10.0, 1e6}) {
        double exact = (8.0 / 7.0) * std::pow(x, 7.0 / 8.0);
        require(std::abs(lin(x) - exact) <= 1e-8 * exact, "power-law majorant deviates");
    }

    auto ups = build_upsilon(lin);
    const auto& xs = lin.table_x();
    for (std::size_t i = 0; i < xs.size(); i += 61) {
        double x = xs[i];
        require(std::abs(ups(lin(x)) - x * x) <= 1e-8 * x * x, "inverse round trip fails");
    }

    GridSpec grid(128);
    auto corpus = dilated_bump_corpus(grid, 8);
    auto eta = eta_for(corpus);
    double c_star = 0.0;
    for (const auto& f : corpus)
        if (gradient_l2(f) > 1.0) c_star = std::max(c_star, check_refined_nash(f, eta).ratio);
    double c_eff = c_star * (eta.mass_bound() * eta.mass_bound() + 1.0);
    auto phi = build_phi_integral([&eta](double r) { return eta(r); }, c_eff);
    auto closure = build_upsilon(phi);
    int violations = 0;
    for (const auto& f : corpus) {
        double grad = gradient_l2(f);
        if (grad <= 1.0) continue;
        double l2 = l2_norm(f);
        if (closure(l2 * l2) > grad * grad * (1.0 + 1e-6)) ++violations;
    }
    require(violations == 0, std::to_string(violations) + " calibrated closure violations");
}

void criterion_6_log_majorant() {
    auto phi = build_phi_log(1.0, 1.0);
    double e2 = std::exp(2.0);
    double L = phi.log_matching_factor();
    require(std::abs(L - 8.787) <= 1e-3, "matching factor L = " + std::to_string(L));

    auto eval = [&phi](double x) { return phi(x); };
    double left = side_derivative(eval, e2, 1e-3, +1);
    double right = side_derivative(eval, e2, 1e-3, -1);
    require(std::abs(left - right) <= 1e-8 * std::abs(left), "slope mismatch at the junction");

    for (int i = 1; i <= 1000; ++i) {
        double x = e2 * i / 1000.0;
        double phi1 = phi(x) / (L + 1.0);
        require(x * x <= L * phi1 * (1.0 + 1e-9), "quadratic branch exceeds L * linear branch");
    }
    for (double x = std::exp(4.0); x <= 1e12; x *= 10.0)
        require(phi(x) * std::pow(std::log(x), 0.25) / x <= (L + 1.0) * (1.0 + 1e-12),
                "log-form majorant grows too fast");
}

void criterion_7_solver_oracles() {
    GridSpec grid(64);
    double nu = 0.01, T = 1.0;
    auto tg = SpectralField::from_function(
        grid, [](double x1, double x2) { return std::cos(x1) + std::cos(x2); });
    VorticitySolver stationary(tg, nu);
    stationary.advance_to(T);
    double rel = l2_norm(stationary.omega() - tg * std::exp(-nu * T)) / l2_norm(tg);
    require(rel < 1e-8, "cosine-sum rel error " + std::to_string(rel));

    VorticitySolver shear(shear_mode_field(grid, 1, nu, 0.0), nu);
    shear.advance_to(T);
    double zeta = shear.dissipation(0.0, T);
    double exact = shear_mode_zeta(1, nu, T);
    require(std::abs(zeta - exact) <= 1e-6 * exact, "shear dissipation deviates");

    GridSpec fine(128);
    DataSpec spec;
    spec.kind = DataKind::kRandomSmooth;
    spec.seed = 21;
    VorticitySolver::Options opts;
    opts.dt_max = 1e-3;
    VorticitySolver run(generate_initial_data(spec, MollificationRule{}, fine, nu).omega, nu,
                        nullptr, opts);
    run.advance_to(2.0);
    double energy0 = run.history().front().energy;
    require(run.energy_balance_residual(2.0) < 1e-6 * energy0, "energy balance residual too large");
}

void criterion_8_radial_counterexample() {
    auto phi = make_annular_profile(AnnularSpec{});
    double c_inf = anomalous_dissipation_limit(phi);
    require(c_inf > 0.0, "limit constant must be positive");
    for (double nu : {0.04, 0.02, 0.01, 0.005}) {
        double zeta = anomalous_dissipation(phi, nu, 1.0);
        require(std::abs(zeta - c_inf) <= 0.10 * c_inf,
                "zeta(nu=" + std::to_string(nu) + ") leaves the 10% band");
    }
    double direct = anomalous_dissipation_direct(phi, 0.1, 1.0);
    double rescaled = anomalous_dissipation(phi, 0.1, 1.0);
    require(std::abs(direct - rescaled) <= 1e-3 * rescaled,
            "direct and rescaling routes disagree");
}

void criterion_9_sheet_sweep() {
    auto config = SweepConfig::parse(
        "schema_version = 1\n"
        "grid_n = 256\n"
        "T = 1.0\n"
        "delta = 0.1\n"
        "nu_list = 1e-2, 5e-3, 2.5e-3, 1.25e-3\n"
        "data = sheet\n"
        "data_seed = 1\n"
        "moll_mode = coupled\n"
        "moll_coefficient = 1.0\n");
    auto records = run_sweep(config);
    for (const auto& rec : records)
        require(!rec.failed, "run at nu=" + std::to_string(rec.nu) + " failed: " + rec.error);
    for (std::size_t i = 1; i < records.size(); ++i)
        require(records[i].zeta_delta <= records[i - 1].zeta_delta * 1.05,
                "zeta_delta grows by more than 5% under viscosity halving");
    auto fit = fit_log_rate(records, config.effective_delta());
    require(fit.slope > 0.0, "rate fit slope is not positive");
    require(fit.r_squared >= 0.9, "rate fit r^2 = " + std::to_string(fit.r_squared));
}

void criterion_10_maximal_propagation() {
    GridSpec grid(128);
    double nu = 0.02, T = 1.0;
    DataSpec spec;
    spec.kind = DataKind::kRandomSmooth;
    spec.seed = 5;
    auto omega0 = generate_initial_data(spec, MollificationRule{}, grid, nu).omega;
    ForcingSpec fspec;
    fspec.kind = ForcingKind::kRotatingBlob;
    auto forcing = make_forcing(fspec, grid);

    VorticitySolver solver(omega0, nu, forcing);
    std::vector<double> times;
    for (int i = 1; i <= 10; ++i) times.push_back(0.1 * i);
    solver.request_snapshots(times);
    solver.advance_to(T);

    // cumulative L1 of the vorticity forcing, fine trapezoid in time
    auto forcing_l1 = [&](double t) { return l1_norm(forcing(t)); };
    int steps = 200;
    std::vector<double> cumulative(steps + 1, 0.0);
    for (int i = 1; i <= steps; ++i) {
        double t0 = T * (i - 1) / steps, t1 = T * i / steps;
        cumulative[i] = cumulative[i - 1] + 0.5 * (forcing_l1(t0) + forcing_l1(t1)) * (t1 - t0);
    }

    double area = kTwoPi * kTwoPi;
    for (double s : {0.01 * area, 0.1 * area, area}) {
        double m0 = maximal_function(omega0, s);
        for (const auto& [t, field] : solver.snapshots()) {
            double budget = m0 + cumulative[static_cast<int>(std::round(t / T * steps))];
            require(maximal_function(field, s) <= 1.05 * budget,
                    "maximal bound exceeded at t=" + std::to_string(t));
        }
    }
}

void criterion_11_bessel_vs_crank_nicolson() {
    auto phi = make_annular_profile(AnnularSpec{});
    double nu = 1.0, R = 12.0;
    RadialHeatCN cn(phi.analytic, nu, R, 4800, 2.5e-4);
    int stride = 20;
    for (double t : {0.01, 0.1, 1.0}) {
        cn.advance_to(t);
        auto evolved = radial_heat_evolve(phi, nu, t, 241, R);
        double sup_val = 0.0, sup_err = 0.0;
        for (int i = 0; i < 241; ++i) {
            sup_val = std::max(sup_val, std::abs(evolved.values[i]));
            sup_err = std::max(sup_err, std::abs(evolved.values[i] - cn.value(i * stride)));
        }
        require(sup_err < 1e-4 * sup_val, "oracle disagreement at t=" + std::to_string(t));
    }
}

}  // namespace

int main() {
    struct Criterion {
        const char* label;
        std::function<void()> run;
    };
    const std::vector<Criterion> criteria = {
        {"1. Dirichlet kernel L2 mass identity", criterion_1_kernel_mass},
        {"2. Dirichlet kernel tail bound", criterion_2_tail_bound},
        {"3. localized convolution inequality", criterion_3_convolution},
        {"4. empirical constants stable across resolutions", criterion_4_constant_stability},
        {"5. concave majorant and convex inverse contracts", criterion_5_phi_upsilon},
        {"6. logarithmic majorant construction", criterion_6_log_majorant},
        {"7. solver exact-solution and energy-balance oracles", criterion_7_solver_oracles},
        {"8. radial dissipation counterexample", criterion_8_radial_counterexample},
        {"9. mollified-sheet viscosity sweep", criterion_9_sheet_sweep},
        {"10. rearrangement maximal bound propagation", criterion_10_maximal_propagation},
        {"11. Bessel-kernel vs Crank-Nicolson heat oracle", criterion_11_bessel_vs_crank_nicolson},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        g_current_ok = true;
        g_detail.clear();
        try {
            c.run();
        } catch (const std::exception& e) {
            g_current_ok = false;
            g_detail = std::string("exception: ") + e.what();
        }
        if (g_current_ok) {
            std::printf("PASS: %s\n", c.label);
        } else {
            std::printf("FAIL: %s (%s)\n", c.label, g_detail.c_str());
            ++failures;
        }
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
