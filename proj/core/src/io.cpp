#include "dlab/io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace dlab {

namespace {

constexpr char kMagic[4] = {'A', 'D', 'L', 'B'};
constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "snapshot io assumes a little-endian host");

template <typename T>
void put(std::ofstream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::ifstream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!in) throw std::runtime_error("snapshot read: truncated file");
    return v;
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
    std::ofstream out(path, mode);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

}  // namespace

void write_snapshot(const std::string& path, const SpectralField& field, double time, double nu) {
    auto out = open_out(path, std::ios::binary);
    out.write(kMagic, 4);
    put(out, kVersion);
    put(out, static_cast<std::uint32_t>(field.grid().n));
    put(out, static_cast<std::uint32_t>(field.grid().n));
    put(out, time);
    put(out, nu);
    const auto& phys = field.physical();
    out.write(reinterpret_cast<const char*>(phys.data()),
              static_cast<std::streamsize>(phys.size() * sizeof(double)));
    if (!out) throw std::runtime_error("snapshot write failed: " + path);
}

Snapshot read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("snapshot read: bad magic in " + path);
    auto version = get<std::uint32_t>(in);
    if (version != kVersion)
        throw std::runtime_error("snapshot read: unsupported version " + std::to_string(version));
    auto nx = get<std::uint32_t>(in);
    auto ny = get<std::uint32_t>(in);
    if (nx != ny) throw std::runtime_error("snapshot read: non-square grid unsupported");
    double time = get<double>(in);
    double nu = get<double>(in);
    GridSpec grid(static_cast<int>(nx));
    std::vector<double> phys(static_cast<std::size_t>(nx) * ny);
    in.read(reinterpret_cast<char*>(phys.data()),
            static_cast<std::streamsize>(phys.size() * sizeof(double)));
    if (!in) throw std::runtime_error("snapshot read: truncated payload in " + path);
    return Snapshot{time, nu, SpectralField::from_physical(grid, std::move(phys))};
}

namespace {

void write_csv_row(std::ofstream& out, const std::vector<double>& vals) {
    char buf[32];
    for (std::size_t i = 0; i < vals.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", vals[i]);
        out << (i ? "," : "") << buf;
    }
    out << "\n";
}

}  // namespace

void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsSample>& samples) {
    auto out = open_out(path);
    out << "t,l2_omega_sq,l1_omega,energy,dt\n";
    for (const auto& s : samples)
        write_csv_row(out, {s.t, s.enstrophy, s.l1, s.energy, s.dt});
}

void write_sweep_summary_csv(const std::string& path, const std::vector<SweepSummaryRow>& rows) {
    auto out = open_out(path);
    out << "nu,T,delta,zeta_total,zeta_delta,energy0,energyT,balance_residual,"
           "max_enstrophy,wallclock_s\n";
    for (const auto& r : rows)
        write_csv_row(out, {r.nu, r.T, r.delta, r.zeta_total, r.zeta_delta, r.energy0, r.energyT,
                            r.balance_residual, r.max_enstrophy, r.wallclock_s});
}

void write_reports_jsonl(const std::string& path, const std::vector<InequalityReport>& reports) {
    auto out = open_out(path);
    for (const auto& r : reports) out << r.to_json() << "\n";
}

void write_zeta_csv(const std::string& path, const std::vector<ZetaRow>& rows) {
    auto out = open_out(path);
    out << "nu,zeta,method\n";
    char buf[32];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g", r.nu);
        out << buf << ",";
        std::snprintf(buf, sizeof buf, "%.17g", r.zeta);
        out << buf << "," << r.method << "\n";
    }
}

void write_pairs_csv(const std::string& path, const std::string& x_name,
                     const std::string& y_name, const std::vector<double>& xs,
                     const std::vector<double>& ys) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("write_pairs_csv: length mismatch");
    auto out = open_out(path);
    out << x_name << "," << y_name << "\n";
    for (std::size_t i = 0; i < xs.size(); ++i) write_csv_row(out, {xs[i], ys[i]});
}

}  // namespace dlab
