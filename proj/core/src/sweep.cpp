#include "dlab/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "dlab/concentration.hpp"
#include "dlab/io.hpp"
#include "dlab/norms.hpp"

namespace dlab {

double GaussianStream::uniform() {
    // splitmix64; maps to (0, 1).
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return (static_cast<double>(z >> 11) + 0.5) * 0x1.0p-53;
}

double GaussianStream::next() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    double rad = std::sqrt(-2.0 * std::log(u1));
    spare_ = rad * std::sin(kTwoPi * u2);
    have_spare_ = true;
    return rad * std::cos(kTwoPi * u2);
}

double MollificationRule::width_for(double nu) const {
    double w = coupled ? coefficient * std::sqrt(nu) : width;
    if (!(w > 0.0)) throw std::invalid_argument("mollification width must be positive");
    return w;
}

namespace {

// Periodized Gaussian of standard deviation w, unit integral over one period.
double periodic_gaussian(double z, double w) {
    z = GridSpec::periodic_delta(z);
    double acc = 0.0;
    for (int m = -3; m <= 3; ++m) {
        double d = z + kTwoPi * m;
        acc += std::exp(-0.5 * d * d / (w * w));
    }
    return acc / (std::sqrt(kTwoPi) * w);
}

// Mollified indicator of [-1, 1] along one axis.
double segment_profile(double x, double w) {
    x = GridSpec::periodic_delta(x);
    double s = w * std::numbers::sqrt2;
    return 0.5 * (std::erf((x + 1.0) / s) - std::erf((x - 1.0) / s));
}

SpectralField sheet_field(const GridSpec& grid, double strength, double w) {
    double line_density = strength / 2.0;  // segment length 2, total mass = strength
    return SpectralField::from_function(grid, [=](double x1, double x2) {
        return line_density * segment_profile(x1, w) * periodic_gaussian(x2, w);
    });
}

SpectralField random_smooth_field(const GridSpec& grid, std::uint64_t seed, double amplitude) {
    constexpr int kMax = 8;
    constexpr double kDecay = 3.0;
    GaussianStream rng(seed);
    struct Mode {
        int k1, k2;
        double a, b;
    };
    std::vector<Mode> modes;
    for (int k1 = 0; k1 <= kMax; ++k1)
        for (int k2 = -kMax; k2 <= kMax; ++k2) {
            if (k1 == 0 && k2 <= 0) continue;
            double amp = amplitude * std::exp(-(k1 * k1 + k2 * k2) / (2.0 * kDecay * kDecay));
            modes.push_back({k1, k2, amp * rng.next(), amp * rng.next()});
        }
    return SpectralField::from_function(grid, [modes](double x1, double x2) {
        double acc = 0.0;
        for (const auto& m : modes) {
            double ph = m.k1 * x1 + m.k2 * x2;
            acc += m.a * std::cos(ph) + m.b * std::sin(ph);
        }
        return acc;
    });
}

SpectralField blob_field(const GridSpec& grid, std::uint64_t seed, int count, double w,
                         double strength) {
    if (count < 1) throw std::invalid_argument("l1_blobs: count must be >= 1");
    GaussianStream rng(seed);
    struct Blob {
        double c1, c2, mass;
    };
    std::vector<Blob> blobs;
    double mass = strength / count;
    for (int i = 0; i < count; ++i) {
        // Gaussian draws folded onto the torus give seeded centers.
        double c1 = GridSpec::periodic_delta(kPi * rng.next());
        double c2 = GridSpec::periodic_delta(kPi * rng.next());
        blobs.push_back({c1, c2, (i % 2 == 0 ? mass : -mass)});
    }
    return SpectralField::from_function(grid, [blobs, w](double x1, double x2) {
        double acc = 0.0;
        for (const auto& b : blobs)
            acc += b.mass * periodic_gaussian(x1 - b.c1, w) * periodic_gaussian(x2 - b.c2, w);
        return acc;
    });
}

}  // namespace

GeneratedData generate_initial_data(const DataSpec& spec, const MollificationRule& rule,
                                    const GridSpec& grid, double nu) {
    GeneratedData out{SpectralField::zero(grid), 0.0, 0.0};
    switch (spec.kind) {
        case DataKind::kShear: {
            int k = spec.shear_k;
            if (k < 1) throw std::invalid_argument("shear: k must be >= 1");
            out.omega = SpectralField::from_function(
                grid, [k](double x1, double) { return std::cos(k * x1); });
            break;
        }
        case DataKind::kTaylorGreen:
            out.omega = SpectralField::from_function(
                grid, [](double x1, double x2) { return std::cos(x1) + std::cos(x2); });
            break;
        case DataKind::kRandomSmooth:
            out.omega = random_smooth_field(grid, spec.seed, spec.strength);
            break;
        case DataKind::kL1Blobs:
            out.omega = blob_field(grid, spec.seed, spec.blob_count, spec.blob_width,
                                   spec.strength);
            break;
        case DataKind::kSheet:
            out.omega = sheet_field(grid, spec.strength, rule.width_for(nu));
            break;
        case DataKind::kMeasurePlusLp: {
            SpectralField mu = sheet_field(grid, spec.strength, rule.width_for(nu));
            out.omega = mu + random_smooth_field(grid, spec.seed, spec.lp_amplitude);
            out.l1_measure = l1_norm(mu);
            break;
        }
    }
    if (spec.kind == DataKind::kSheet) out.l1_measure = l1_norm(out.omega);
    out.mean_correction = out.omega.mean();
    out.omega = out.omega.subtract_mean();
    return out;
}

VorticitySolver::Forcing make_forcing(const ForcingSpec& spec, const GridSpec& grid) {
    if (spec.kind == ForcingKind::kNone) return nullptr;
    double amp = spec.amplitude, w = spec.width, rad = spec.radius, speed = spec.angular_speed;
    return [=](double t) {
        double c1 = rad * std::cos(speed * t);
        double c2 = rad * std::sin(speed * t);
        auto g = SpectralField::from_function(grid, [=](double x1, double x2) {
            return amp * periodic_gaussian(x1 - c1, w) * periodic_gaussian(x2 - c2, w);
        });
        return g.subtract_mean();
    };
}

void SweepConfig::validate() const {
    GridSpec check(grid_n);  // throws on bad n
    (void)check;
    if (!(T > 0.0)) throw std::invalid_argument("config: T must be positive");
    if (effective_delta() >= T) throw std::invalid_argument("config: delta must be < T");
    if (nu_list.empty()) throw std::invalid_argument("config: nu_list is empty");
    for (std::size_t i = 0; i < nu_list.size(); ++i) {
        if (!(nu_list[i] > 0.0)) throw std::invalid_argument("config: nu must be positive");
        if (i > 0 && !(nu_list[i] < nu_list[i - 1]))
            throw std::invalid_argument("config: nu_list must be strictly decreasing");
    }
    if (workers < 1) throw std::invalid_argument("config: workers must be >= 1");
    for (double r : r_list)
        if (!(r > 0.0 && r <= kPi))
            throw std::invalid_argument("config: concentration radii must lie in (0, pi]");
}

namespace {

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

}  // namespace

SweepConfig SweepConfig::parse(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty() || !kv.emplace(key, val).second)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": empty or duplicate key '" + key + "'");
    }

    auto take = [&kv](const std::string& key) {
        auto it = kv.find(key);
        if (it == kv.end()) return std::pair<bool, std::string>{false, ""};
        std::string v = it->second;
        kv.erase(it);
        return std::pair<bool, std::string>{true, v};
    };

    auto [has_schema, schema] = take("schema_version");
    if (!has_schema || std::stoi(schema) != 1)
        throw std::invalid_argument("config: schema_version = 1 is required");

    SweepConfig c;
    if (auto [ok, v] = take("grid_n"); ok) c.grid_n = std::stoi(v);
    if (auto [ok, v] = take("T"); ok) c.T = std::stod(v);
    if (auto [ok, v] = take("delta"); ok) c.delta = std::stod(v);
    if (auto [ok, v] = take("nu_list"); ok) c.nu_list = parse_list(v);
    if (auto [ok, v] = take("workers"); ok) c.workers = std::stoi(v);
    if (auto [ok, v] = take("output_dir"); ok) c.output_dir = v;
    if (auto [ok, v] = take("snapshot_times"); ok) c.snapshot_times = parse_list(v);
    if (auto [ok, v] = take("r_list"); ok) c.r_list = parse_list(v);

    if (auto [ok, v] = take("data"); ok) {
        if (v == "shear")
            c.data.kind = DataKind::kShear;
        else if (v == "taylor_green")
            c.data.kind = DataKind::kTaylorGreen;
        else if (v == "random_smooth")
            c.data.kind = DataKind::kRandomSmooth;
        else if (v == "l1_blobs")
            c.data.kind = DataKind::kL1Blobs;
        else if (v == "sheet")
            c.data.kind = DataKind::kSheet;
        else if (v == "measure_plus_lp")
            c.data.kind = DataKind::kMeasurePlusLp;
        else
            throw std::invalid_argument("config: unknown data kind '" + v + "'");
    }
    if (auto [ok, v] = take("data_k"); ok) c.data.shear_k = std::stoi(v);
    if (auto [ok, v] = take("data_seed"); ok) c.data.seed = std::stoull(v);
    if (auto [ok, v] = take("data_count"); ok) c.data.blob_count = std::stoi(v);
    if (auto [ok, v] = take("data_width"); ok) c.data.blob_width = std::stod(v);
    if (auto [ok, v] = take("data_strength"); ok) c.data.strength = std::stod(v);
    if (auto [ok, v] = take("data_lp_amplitude"); ok) c.data.lp_amplitude = std::stod(v);

    if (auto [ok, v] = take("moll_mode"); ok) {
        if (v == "fixed")
            c.mollification.coupled = false;
        else if (v == "coupled")
            c.mollification.coupled = true;
        else
            throw std::invalid_argument("config: moll_mode must be fixed or coupled");
    }
    if (auto [ok, v] = take("moll_width"); ok) c.mollification.width = std::stod(v);
    if (auto [ok, v] = take("moll_coefficient"); ok) c.mollification.coefficient = std::stod(v);

    if (auto [ok, v] = take("forcing"); ok) {
        if (v == "none")
            c.forcing.kind = ForcingKind::kNone;
        else if (v == "rotating_blob")
            c.forcing.kind = ForcingKind::kRotatingBlob;
        else
            throw std::invalid_argument("config: unknown forcing kind '" + v + "'");
    }
    if (auto [ok, v] = take("forcing_amplitude"); ok) c.forcing.amplitude = std::stod(v);
    if (auto [ok, v] = take("forcing_width"); ok) c.forcing.width = std::stod(v);
    if (auto [ok, v] = take("forcing_radius"); ok) c.forcing.radius = std::stod(v);
    if (auto [ok, v] = take("forcing_speed"); ok) c.forcing.angular_speed = std::stod(v);

    if (!kv.empty())
        throw std::invalid_argument("config: unknown key '" + kv.begin()->first + "'");
    c.validate();
    return c;
}

SweepConfig SweepConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

namespace {

SweepRecord run_one(const SweepConfig& config, double nu) {
    SweepRecord rec;
    rec.nu = nu;
    rec.T = config.T;
    rec.delta = config.effective_delta();
    rec.r_list = config.r_list;
    auto start = std::chrono::steady_clock::now();
    try {
        GridSpec grid(config.grid_n);
        auto data = generate_initial_data(config.data, config.mollification, grid, nu);
        rec.mean_correction = data.mean_correction;
        VorticitySolver solver(data.omega, nu, make_forcing(config.forcing, grid));
        std::vector<double> snaps = config.snapshot_times;
        if (std::find(snaps.begin(), snaps.end(), config.T) == snaps.end())
            snaps.push_back(config.T);
        solver.request_snapshots(snaps);
        solver.advance_to(config.T);

        rec.zeta_total = solver.dissipation(0.0, config.T);
        rec.zeta_delta = solver.dissipation(rec.delta, config.T);
        rec.energy0 = solver.history().front().energy;
        rec.energyT = solver.history().back().energy;
        rec.balance_residual = solver.energy_balance_residual(config.T);
        for (const auto& s : solver.history()) {
            rec.max_enstrophy = std::max(rec.max_enstrophy, s.enstrophy);
            rec.decay_constant = std::max(rec.decay_constant, s.t * nu * s.enstrophy);
        }
        for (const auto& [t, field] : solver.snapshots()) {
            rec.snapshot_times.push_back(t);
            std::vector<double> row;
            row.reserve(config.r_list.size());
            for (double r : config.r_list) row.push_back(concentration(field, r));
            rec.concentration.push_back(std::move(row));
        }
        if (!config.output_dir.empty()) {
            char name[64];
            std::snprintf(name, sizeof name, "run_nu_%.6g.csv", nu);
            write_diagnostics_csv((std::filesystem::path(config.output_dir) / name).string(),
                                  solver.history());
        }
    } catch (const std::exception& e) {
        rec.failed = true;
        rec.error = e.what();
    }
    rec.wallclock_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

}  // namespace

std::vector<SweepRecord> run_sweep(const SweepConfig& config) {
    config.validate();
    if (!config.output_dir.empty()) std::filesystem::create_directories(config.output_dir);

    std::vector<SweepRecord> records(config.nu_list.size());
    int workers = std::min<int>(config.workers, static_cast<int>(config.nu_list.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < config.nu_list.size(); ++i)
            records[i] = run_one(config, config.nu_list[i]);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < records.size();
                     i = next.fetch_add(1))
                    records[i] = run_one(config, config.nu_list[i]);
            });
        for (auto& t : pool) t.join();
    }

    if (!config.output_dir.empty()) {
        std::vector<SweepSummaryRow> rows;
        for (const auto& r : records) {
            if (r.failed) continue;
            rows.push_back({r.nu, r.T, r.delta, r.zeta_total, r.zeta_delta, r.energy0, r.energyT,
                            r.balance_residual, r.max_enstrophy, r.wallclock_s});
        }
        write_sweep_summary_csv(
            (std::filesystem::path(config.output_dir) / "sweep_summary.csv").string(), rows);
    }
    return records;
}

RateFit fit_log_rate(const std::vector<double>& nus, const std::vector<double>& zetas) {
    if (nus.size() != zetas.size() || nus.size() < 3)
        throw std::invalid_argument("fit_log_rate: need at least 3 (nu, zeta) pairs");
    RateFit fit;
    for (std::size_t i = 0; i < nus.size(); ++i) {
        if (!(nus[i] > 0.0) || nus[i] == 1.0)
            throw std::invalid_argument("fit_log_rate: nu must be positive and != 1");
        fit.x_values.push_back(std::pow(std::abs(std::log(nus[i])), -0.25));
        fit.y_values.push_back(zetas[i]);
    }
    double xmin = *std::min_element(fit.x_values.begin(), fit.x_values.end());
    double xmax = *std::max_element(fit.x_values.begin(), fit.x_values.end());
    if (!(xmax - xmin > 1e-12 * xmax))
        throw std::invalid_argument("fit_log_rate: degenerate x spread");

    std::size_t m = fit.x_values.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        double x = fit.x_values[i], y = fit.y_values[i];
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    double denom = m * sxx - sx * sx;
    fit.slope = (m * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / m;
    fit.origin_slope = sxy / sxx;

    double ss_res = 0.0, ss_tot = 0.0, ybar = sy / m;
    for (std::size_t i = 0; i < m; ++i) {
        double e = fit.y_values[i] - (fit.slope * fit.x_values[i] + fit.intercept);
        ss_res += e * e;
        ss_tot += (fit.y_values[i] - ybar) * (fit.y_values[i] - ybar);
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

RateFit fit_log_rate(const std::vector<SweepRecord>& records, double delta) {
    std::vector<double> nus, zetas;
    for (const auto& r : records) {
        if (r.failed) continue;
        if (std::abs(r.delta - delta) > 1e-12 * std::max(1.0, delta))
            throw std::invalid_argument("fit_log_rate: records use a different delta");
        nus.push_back(r.nu);
        zetas.push_back(r.zeta_delta);
    }
    return fit_log_rate(nus, zetas);
}

DiracReport verify_no_diracs(const std::vector<SweepRecord>& records,
                             const std::vector<double>& r_list, double threshold) {
    DiracReport rep;
    rep.r_list = r_list;
    rep.sup_mass.assign(r_list.size(), 0.0);
    rep.threshold = threshold;
    for (const auto& rec : records) {
        if (rec.failed) continue;
        if (rec.r_list.size() != r_list.size())
            throw std::invalid_argument("verify_no_diracs: records sampled a different r_list");
        for (const auto& row : rec.concentration)
            for (std::size_t j = 0; j < r_list.size(); ++j)
                rep.sup_mass[j] = std::max(rep.sup_mass[j], row[j]);
    }
    std::size_t j_min = static_cast<std::size_t>(
        std::min_element(r_list.begin(), r_list.end()) - r_list.begin());
    rep.smallest_r_value = rep.sup_mass.empty() ? 0.0 : rep.sup_mass[j_min];
    rep.flagged = rep.smallest_r_value > threshold;
    return rep;
}

}  // namespace dlab
