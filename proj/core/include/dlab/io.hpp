#pragma once

#include <string>
#include <vector>

#include "dlab/field.hpp"
#include "dlab/inequality.hpp"
#include "dlab/solver.hpp"

namespace dlab {

/// Field snapshot with its time stamp and viscosity, as stored on disk.
struct Snapshot {
    double time = 0.0;
    double nu = 0.0;
    SpectralField field;
};

// Binary snapshot format: magic "ADLB", version u32 = 1, nx u32, ny u32,
// time f64, nu f64, then nx*ny little-endian f64 physical values in
// row-major order (x2 fastest). The reader rejects wrong magic or version.
void write_snapshot(const std::string& path, const SpectralField& field, double time, double nu);
Snapshot read_snapshot(const std::string& path);

// Per-run diagnostics CSV: t, l2_omega_sq, l1_omega, energy, dt.
void write_diagnostics_csv(const std::string& path, const std::vector<DiagnosticsSample>& samples);

struct SweepSummaryRow {
    double nu = 0.0;
    double T = 0.0;
    double delta = 0.0;
    double zeta_total = 0.0;
    double zeta_delta = 0.0;
    double energy0 = 0.0;
    double energyT = 0.0;
    double balance_residual = 0.0;
    double max_enstrophy = 0.0;
    double wallclock_s = 0.0;
};
void write_sweep_summary_csv(const std::string& path, const std::vector<SweepSummaryRow>& rows);

// One JSON object per line.
void write_reports_jsonl(const std::string& path, const std::vector<InequalityReport>& reports);

struct ZetaRow {
    double nu = 0.0;
    double zeta = 0.0;
    std::string method;
};
void write_zeta_csv(const std::string& path, const std::vector<ZetaRow>& rows);

// Two-column CSV (r_or_s, value) for radial or concentration profiles.
void write_pairs_csv(const std::string& path, const std::string& x_name,
                     const std::string& y_name, const std::vector<double>& xs,
                     const std::vector<double>& ys);

}  // namespace dlab
