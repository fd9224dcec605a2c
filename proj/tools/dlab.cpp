// Command-line laboratory: inequality verification suites, single NS runs,
// viscosity sweeps, the radial dissipation oracle, and rate fits.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dlab/concentration.hpp"
#include "dlab/inequality.hpp"
#include "dlab/io.hpp"
#include "dlab/norms.hpp"
#include "dlab/phi.hpp"
#include "dlab/radial.hpp"
#include "dlab/solver.hpp"
#include "dlab/spectral_ops.hpp"
#include "dlab/sweep.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitContract = 2;

std::vector<dlab::SpectralField> bump_corpus(const dlab::GridSpec& grid, int families) {
    std::vector<dlab::SpectralField> fields;
    for (int i = 0; i < families; ++i) {
        double scale = std::pow(2.0, -i / 2.0);
        double w = 0.8 * scale;
        fields.push_back(dlab::SpectralField::from_function(grid, [w](double x1, double x2) {
            double q = (x1 * x1 + x2 * x2) / (2.0 * w * w);
            return q < 40.0 ? std::exp(-q) / (dlab::kTwoPi * w * w) : 0.0;
        }));
    }
    return fields;
}

int cmd_verify(const std::string& out_dir, std::uint64_t seed) {
    dlab::GridSpec grid(128);
    auto corpus = bump_corpus(grid, 10);
    std::vector<double> radii;
    for (double r = 0.02; r < dlab::kPi; r *= 1.5) radii.push_back(r);
    radii.push_back(dlab::kPi);
    auto eta = dlab::build_eta(dlab::profile_family(corpus, radii));

    std::vector<dlab::InequalityReport> reports;
    bool violated = false;
    (void)seed;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& f = corpus[i];
        double r_ball = 0.3 + 0.05 * static_cast<double>(i % 4);
        auto g = dlab::SpectralField::from_function(grid, [r_ball](double x1, double x2) {
            double d2 = x1 * x1 + x2 * x2;
            return d2 < r_ball * r_ball ? 1.0 - d2 / (r_ball * r_ball) : 0.0;
        });
        auto conv = dlab::check_convolution_bound(f, g, r_ball);
        if (conv.ratio > 1.05) violated = true;
        reports.push_back(conv);

        auto fm = f.subtract_mean();
        reports.push_back(dlab::check_refined_projection_preset(
            fm, 0.25, dlab::EpsilonPreset::kLogGrad, nullptr));
        if (dlab::gradient_l2(fm) > 1.0) {
            auto nash = dlab::check_refined_nash(fm, eta);
            reports.push_back(nash);
        }
    }

    fs::create_directories(out_dir);
    dlab::write_reports_jsonl((fs::path(out_dir) / "inequality_reports.jsonl").string(), reports);
    std::cout << "wrote " << reports.size() << " reports to " << out_dir << "\n";
    return violated ? kExitContract : kExitOk;
}

int cmd_solve(const dlab::SweepConfig& config, const std::string& out_dir) {
    dlab::GridSpec grid(config.grid_n);
    double nu = config.nu_list.front();
    auto data = dlab::generate_initial_data(config.data, config.mollification, grid, nu);
    dlab::VorticitySolver solver(data.omega, nu, dlab::make_forcing(config.forcing, grid));
    solver.request_snapshots(config.snapshot_times);
    solver.advance_to(config.T);

    fs::create_directories(out_dir);
    dlab::write_diagnostics_csv((fs::path(out_dir) / "diagnostics.csv").string(),
                                solver.history());
    dlab::write_snapshot((fs::path(out_dir) / "final.field").string(), solver.omega(), config.T,
                         nu);
    for (const auto& [t, field] : solver.snapshots()) {
        char name[64];
        std::snprintf(name, sizeof name, "snapshot_t%.6g.field", t);
        dlab::write_snapshot((fs::path(out_dir) / name).string(), field, t, nu);
    }
    std::cout << "zeta_total=" << solver.dissipation(0.0, config.T)
              << " energy_residual=" << solver.energy_balance_residual(config.T) << "\n";
    return kExitOk;
}

int cmd_sweep(dlab::SweepConfig config, const std::string& out_dir, int workers) {
    if (!out_dir.empty()) config.output_dir = out_dir;
    if (workers > 0) config.workers = workers;
    auto records = dlab::run_sweep(config);
    bool any_failed = false;
    for (const auto& r : records) {
        if (r.failed) {
            any_failed = true;
            std::cerr << "run nu=" << r.nu << " failed: " << r.error << "\n";
            continue;
        }
        std::cout << "nu=" << r.nu << " zeta_total=" << r.zeta_total
                  << " zeta_delta=" << r.zeta_delta << " residual=" << r.balance_residual << "\n";
    }
    return any_failed ? kExitContract : kExitOk;
}

int cmd_radial(const std::string& out_dir) {
    auto phi = dlab::make_annular_profile({});
    double c_inf = dlab::anomalous_dissipation_limit(phi);
    std::vector<dlab::ZetaRow> rows;
    bool violated = false;
    for (double nu : {0.04, 0.02, 0.01, 0.005}) {
        double z = dlab::anomalous_dissipation(phi, nu, 1.0);
        rows.push_back({nu, z, "rescaled"});
        if (std::abs(z - c_inf) > 0.10 * c_inf) violated = true;
    }
    double z_res = dlab::anomalous_dissipation(phi, 0.1, 1.0);
    double z_dir = dlab::anomalous_dissipation_direct(phi, 0.1, 1.0);
    rows.push_back({0.1, z_res, "rescaled"});
    rows.push_back({0.1, z_dir, "direct"});
    if (std::abs(z_res - z_dir) > 1e-3 * z_res) violated = true;

    fs::create_directories(out_dir);
    dlab::write_zeta_csv((fs::path(out_dir) / "zeta_vs_nu.csv").string(), rows);
    dlab::write_pairs_csv((fs::path(out_dir) / "initial_profile.csv").string(), "r", "value",
                          phi.r_nodes, phi.values);
    std::cout << "C_inf=" << c_inf << " cross_check_rel="
              << std::abs(z_res - z_dir) / z_res << "\n";
    return violated ? kExitContract : kExitOk;
}

int cmd_fit(const std::string& csv_path, const std::string& out_dir) {
    std::ifstream in(csv_path);
    if (!in) throw std::runtime_error("cannot open sweep CSV: " + csv_path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty sweep CSV");
    std::vector<double> nus, zetas;
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(std::stod(cell));
        if (cells.size() < 5) throw std::runtime_error("sweep CSV row too short");
        nus.push_back(cells[0]);
        zetas.push_back(cells[4]);  // zeta_delta column
    }
    auto fit = dlab::fit_log_rate(nus, zetas);
    std::cout << "slope=" << fit.slope << " intercept=" << fit.intercept
              << " r_squared=" << fit.r_squared << " origin_slope=" << fit.origin_slope << "\n";
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        dlab::write_pairs_csv((fs::path(out_dir) / "rate_fit.csv").string(), "x_lognu", "zeta",
                              fit.x_values, fit.y_values);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dissipation laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    int workers = 0;
    std::uint64_t seed = 1;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* opt = sub->add_option("--config", config_path, "config file path");
        if (needs_config) opt->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--workers", workers, "concurrent runs");
        sub->add_option("--seed", seed, "random seed override");
    };

    auto* verify = app.add_subcommand("verify", "run inequality suites on built-in corpora");
    add_common(verify, false);
    auto* solve = app.add_subcommand("solve", "single solver run");
    add_common(solve, true);
    auto* sweep = app.add_subcommand("sweep", "viscosity sweep");
    add_common(sweep, true);
    auto* radial = app.add_subcommand("radial", "radial dissipation oracle");
    add_common(radial, false);
    auto* fit = app.add_subcommand("fit", "rate fit on an existing sweep summary CSV");
    add_common(fit, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) return cmd_verify(out_dir, seed);
        if (radial->parsed()) return cmd_radial(out_dir);
        if (fit->parsed()) return cmd_fit(config_path, out_dir);

        auto config = dlab::SweepConfig::load(config_path);
        if (seed != 1) config.data.seed = seed;
        if (solve->parsed()) return cmd_solve(config, out_dir);
        if (sweep->parsed()) return cmd_sweep(config, out_dir, workers);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
