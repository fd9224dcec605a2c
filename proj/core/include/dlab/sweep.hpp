#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dlab/field.hpp"
#include "dlab/solver.hpp"

namespace dlab {

enum class DataKind {
    kShear,
    kTaylorGreen,
    kRandomSmooth,
    kL1Blobs,
    kSheet,
    kMeasurePlusLp,
};

struct DataSpec {
    DataKind kind = DataKind::kTaylorGreen;
    int shear_k = 1;
    std::uint64_t seed = 1;
    int blob_count = 4;
    double blob_width = 0.3;
    double strength = 1.0;      // total L1 mass of the measure part
    double lp_amplitude = 0.5;  // smooth L^p summand of measure_plus_lp
};

/// Mollification width as a function of viscosity: a fixed width by
/// default, optionally coupled as c * sqrt(nu).
struct MollificationRule {
    bool coupled = false;
    double width = 0.1;      // fixed mode
    double coefficient = 1.0;  // coupled mode: c * sqrt(nu)

    double width_for(double nu) const;
};

enum class ForcingKind { kNone, kRotatingBlob };

/// rotating_blob: curl F(x, t) is a mollified blob of the given amplitude
/// and width whose center moves on a circle of the given radius at the
/// given angular speed.
struct ForcingSpec {
    ForcingKind kind = ForcingKind::kNone;
    double amplitude = 1.0;
    double width = 0.4;
    double radius = 1.5;
    double angular_speed = 1.0;
};

struct SweepConfig {
    int grid_n = 128;
    double T = 1.0;
    double delta = -1.0;  // negative means the default T/10
    std::vector<double> nu_list;
    DataSpec data;
    MollificationRule mollification;
    ForcingSpec forcing;
    std::string output_dir;
    std::vector<double> snapshot_times;
    std::vector<double> r_list;  // concentration radii sampled per snapshot
    int workers = 1;

    double effective_delta() const { return delta < 0.0 ? T / 10.0 : delta; }
    void validate() const;

    // Flat key = value text with '#' comments; schema_version = 1 required,
    // unknown keys rejected.
    static SweepConfig parse(const std::string& text);
    static SweepConfig load(const std::string& path);
};

/// Mean-free vorticity plus the bookkeeping the generators produce.
struct GeneratedData {
    SpectralField omega;
    double mean_correction = 0.0;  // constant subtracted for mean-freeness
    double l1_measure = 0.0;       // L1 mass of the measure part before correction
};

GeneratedData generate_initial_data(const DataSpec& spec, const MollificationRule& rule,
                                    const GridSpec& grid, double nu);

// curl F supplier for the solver; identity nullptr for kNone.
VorticitySolver::Forcing make_forcing(const ForcingSpec& spec, const GridSpec& grid);

struct SweepRecord {
    double nu = 0.0;
    double T = 0.0;
    double delta = 0.0;
    double zeta_total = 0.0;  // nu int_0^T ||omega||_2^2
    double zeta_delta = 0.0;  // nu int_delta^T
    double energy0 = 0.0;
    double energyT = 0.0;
    double balance_residual = 0.0;
    double max_enstrophy = 0.0;
    double decay_constant = 0.0;  // sup over samples of t * nu * ||omega||^2
    double mean_correction = 0.0;
    double wallclock_s = 0.0;
    bool failed = false;
    std::string error;
    std::vector<double> snapshot_times;
    // concentration[i][j] = sup-disk mass at snapshot i, radius r_list[j]
    std::vector<std::vector<double>> concentration;
    std::vector<double> r_list;
};

// One solver run per nu (descending); per-run failures are recorded and the
// sweep continues. When output_dir is set, per-run diagnostics CSVs and the
// summary CSV are emitted there.
std::vector<SweepRecord> run_sweep(const SweepConfig& config);

/// Least-squares fit of zeta_delta against x = |log nu|^{-1/4}.
struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double origin_slope = 0.0;  // fit through the origin
    std::vector<double> x_values;
    std::vector<double> y_values;
};

RateFit fit_log_rate(const std::vector<SweepRecord>& records, double delta);
RateFit fit_log_rate(const std::vector<double>& nus, const std::vector<double>& zetas);

/// Triple-sup concentration table: per radius, sup over runs, times, centers.
struct DiracReport {
    std::vector<double> r_list;
    std::vector<double> sup_mass;    // aligned with r_list
    double smallest_r_value = 0.0;
    double threshold = 0.0;
    bool flagged = false;  // smallest-r value exceeds the threshold
};

DiracReport verify_no_diracs(const std::vector<SweepRecord>& records,
                             const std::vector<double>& r_list, double threshold);

/// Deterministic standard normals: splitmix64 stream through Box-Muller.
class GaussianStream {
  public:
    explicit GaussianStream(std::uint64_t seed) : state_(seed) {}
    double next();

  private:
    double uniform();
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace dlab
