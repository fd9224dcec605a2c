#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "dlab/norms.hpp"
#include "dlab/radial.hpp"
#include "dlab/spectral_ops.hpp"
#include "dlab/sweep.hpp"

using namespace dlab;

namespace {

std::string shear_config(const std::string& extra = "") {
    return "schema_version = 1\n"
           "grid_n = 64\n"
           "T = 1.0\n"
           "nu_list = 0.1, 0.05\n"
           "data = shear\n"
           "data_k = 1\n" +
           extra;
}

}  // namespace

TEST_CASE("config parsing round trip") {
    auto c = SweepConfig::parse(
        "# comment line\n"
        "schema_version = 1\n"
        "grid_n = 128\n"
        "T = 2.0\n"
        "delta = 0.25\n"
        "nu_list = 1e-2, 5e-3, 2.5e-3\n"
        "workers = 2\n"
        "data = sheet\n"
        "data_seed = 42\n"
        "data_strength = 1.5\n"
        "moll_mode = coupled\n"
        "moll_coefficient = 0.7\n"
        "forcing = rotating_blob\n"
        "forcing_amplitude = 0.3\n"
        "snapshot_times = 0.5, 1.0\n"
        "r_list = 0.05, 0.1\n"
        "output_dir = /tmp/sweep_out\n");
    CHECK(c.grid_n == 128);
    CHECK(c.T == 2.0);
    CHECK(c.effective_delta() == 0.25);
    REQUIRE(c.nu_list.size() == 3);
    CHECK(c.nu_list[1] == 5e-3);
    CHECK(c.workers == 2);
    CHECK(c.data.kind == DataKind::kSheet);
    CHECK(c.data.seed == 42);
    CHECK(c.data.strength == 1.5);
    CHECK(c.mollification.coupled);
    CHECK(c.mollification.coefficient == 0.7);
    CHECK(c.forcing.kind == ForcingKind::kRotatingBlob);
    CHECK(c.forcing.amplitude == 0.3);
    CHECK(c.snapshot_times == std::vector<double>{0.5, 1.0});
    CHECK(c.r_list == std::vector<double>{0.05, 0.1});
    CHECK(c.output_dir == "/tmp/sweep_out");
    c.validate();

    CHECK(SweepConfig::parse(shear_config()).effective_delta() == doctest::Approx(0.1));
}

TEST_CASE("config rejection paths") {
    CHECK_THROWS_AS(SweepConfig::parse("grid_n = 64\n"), std::invalid_argument);  // no schema
    CHECK_THROWS_AS(SweepConfig::parse("schema_version = 2\n"), std::invalid_argument);
    CHECK_THROWS_AS(SweepConfig::parse(shear_config("mystery_key = 3\n")), std::invalid_argument);
    CHECK_THROWS_AS(SweepConfig::parse(shear_config("grid_n = 32\n")), std::invalid_argument);
    CHECK_THROWS_AS(SweepConfig::parse("schema_version = 1\nT 2.0\n"), std::invalid_argument);

    // parse() validates, so the malformed configs throw immediately
    CHECK_THROWS_AS(SweepConfig::parse("schema_version = 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(SweepConfig::parse("schema_version = 1\n"
                                       "nu_list = 0.05, 0.1\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(SweepConfig::parse("schema_version = 1\n"
                                       "nu_list = 0.1\n"
                                       "T = 1.0\n"
                                       "delta = 1.0\n"),
                    std::invalid_argument);
}

TEST_CASE("initial data generators") {
    GridSpec grid(64);
    DataSpec shear;
    shear.kind = DataKind::kShear;
    shear.shear_k = 2;
    auto gen = generate_initial_data(shear, MollificationRule{}, grid, 1e-2);
    CHECK(l2_norm(gen.omega - shear_mode_field(grid, 2, 1.0, 0.0)) <= 1e-12);
    CHECK(std::abs(gen.mean_correction) <= 1e-12);

    DataSpec sheet;
    sheet.kind = DataKind::kSheet;
    sheet.strength = 1.5;
    auto s = generate_initial_data(sheet, MollificationRule{}, grid, 1e-2);
    CHECK(s.omega.is_mean_free(1e-10));
    auto raw = s.omega + SpectralField::from_function(grid, [&](double, double) {
                   return s.mean_correction;
               });
    CHECK(l1_norm(raw) == doctest::Approx(1.5).epsilon(1e-6));
    CHECK(linf_norm(raw) == doctest::Approx(linf_norm(raw.abs())).epsilon(1e-12));
    for (double v : raw.physical()) CHECK(v >= -1e-10);

    DataSpec rnd;
    rnd.kind = DataKind::kRandomSmooth;
    rnd.seed = 9;
    auto a = generate_initial_data(rnd, MollificationRule{}, grid, 1e-2);
    auto b = generate_initial_data(rnd, MollificationRule{}, grid, 1e-2);
    CHECK(a.omega.physical() == b.omega.physical());  // bit-deterministic
    rnd.seed = 10;
    auto c = generate_initial_data(rnd, MollificationRule{}, grid, 1e-2);
    CHECK(l2_norm(a.omega - c.omega) > 0.0);
}

TEST_CASE("shear sweep reproduces the closed-form dissipation") {
    auto config = SweepConfig::parse(
        "schema_version = 1\n"
        "grid_n = 64\n"
        "T = 1.0\n"
        "nu_list = 0.1, 0.05, 1e-3\n"
        "data = shear\n"
        "data_k = 1\n");
    auto records = run_sweep(config);
    REQUIRE(records.size() == 3);
    for (const auto& rec : records) {
        CHECK(!rec.failed);
        CHECK(rec.zeta_total ==
              doctest::Approx(shear_mode_zeta(1, rec.nu, 1.0)).epsilon(1e-6));
        CHECK(rec.zeta_delta <= rec.zeta_total);
        CHECK(rec.balance_residual < 1e-6);  // trapezoid-in-time accuracy at dt_max
        CHECK(rec.max_enstrophy == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-10));
    }
    // vanishing-viscosity behaviour: zeta/nu approaches 2 pi^2 T / k^2
    CHECK(records.back().zeta_total / records.back().nu ==
          doctest::Approx(2.0 * kPi * kPi).epsilon(0.05));
}

TEST_CASE("duplicate keys are rejected") {
    CHECK_THROWS_AS(SweepConfig::parse(shear_config("nu_list = 0.2\n")), std::invalid_argument);
}

TEST_CASE("parallel sweep matches the serial one") {
    std::string body =
        "schema_version = 1\n"
        "grid_n = 64\n"
        "T = 0.5\n"
        "nu_list = 0.1, 0.05\n"
        "data = random_smooth\n"
        "data_seed = 4\n";
    auto serial = SweepConfig::parse(body);
    auto parallel = SweepConfig::parse(body + "workers = 2\n");
    auto r1 = run_sweep(serial);
    auto r2 = run_sweep(parallel);
    REQUIRE(r1.size() == r2.size());
    for (std::size_t i = 0; i < r1.size(); ++i) {
        CHECK(r1[i].nu == r2[i].nu);
        CHECK(r1[i].zeta_total == r2[i].zeta_total);  // bitwise: same work, same order
        CHECK(r1[i].energyT == r2[i].energyT);
    }
}

TEST_CASE("sweep output files") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "dlab_sweep_test";
    fs::remove_all(dir);
    auto config = SweepConfig::parse(shear_config("output_dir = " + dir.string() + "\n"));
    auto records = run_sweep(config);
    CHECK(fs::exists(dir / "sweep_summary.csv"));
    CHECK(fs::exists(dir / "run_nu_0.1.csv"));
    CHECK(fs::exists(dir / "run_nu_0.05.csv"));

    std::ifstream in(dir / "sweep_summary.csv");
    std::string header, row;
    std::getline(in, header);
    CHECK(header.find("nu") == 0);
    CHECK(header.find("zeta_delta") != std::string::npos);
    std::getline(in, row);
    CHECK(std::stod(row) == doctest::Approx(0.1));
    fs::remove_all(dir);
}

TEST_CASE("rate fit on synthetic data") {
    std::vector<double> nus = {1e-2, 5e-3, 2.5e-3, 1.25e-3};
    std::vector<double> zetas;
    for (double nu : nus) zetas.push_back(3.0 * std::pow(std::abs(std::log(nu)), -0.25));
    auto fit = fit_log_rate(nus, zetas);
    CHECK(fit.slope == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.origin_slope == doctest::Approx(3.0).epsilon(1e-12));

    CHECK_THROWS_AS(fit_log_rate({0.1, 0.05}, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(fit_log_rate({0.1, 1.0, 0.05}, {1.0, 2.0, 3.0}), std::invalid_argument);
    CHECK_THROWS_AS(fit_log_rate({0.1, 0.1, 0.1}, {1.0, 1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("dirac detection over sweep records") {
    std::vector<double> r_list = {0.05, 0.2, 0.8};
    auto make_record = [&](std::vector<double> conc) {
        SweepRecord rec;
        rec.nu = 0.01;
        rec.r_list = r_list;
        rec.snapshot_times = {0.5};
        rec.concentration = {std::move(conc)};
        return rec;
    };

    auto flat = verify_no_diracs({make_record({0.01, 0.05, 0.3})}, r_list, 0.1);
    CHECK(!flat.flagged);
    CHECK(flat.smallest_r_value == doctest::Approx(0.01));
    CHECK(flat.sup_mass == std::vector<double>{0.01, 0.05, 0.3});

    auto spike = verify_no_diracs(
        {make_record({0.01, 0.05, 0.3}), make_record({0.4, 0.45, 0.5})}, r_list, 0.1);
    CHECK(spike.flagged);
    CHECK(spike.smallest_r_value == doctest::Approx(0.4));
    CHECK(spike.sup_mass[2] == doctest::Approx(0.5));

    SweepRecord bad = make_record({0.1});
    bad.r_list = {0.05};
    CHECK_THROWS_AS(verify_no_diracs({bad}, r_list, 0.1), std::invalid_argument);
}

TEST_CASE("sweep concentration columns bound a smooth run") {
    auto config = SweepConfig::parse(
        "schema_version = 1\n"
        "grid_n = 64\n"
        "T = 0.5\n"
        "nu_list = 0.05\n"
        "data = random_smooth\n"
        "data_seed = 2\n"
        "snapshot_times = 0.25, 0.5\n"
        "r_list = 0.05, 0.5\n");
    auto records = run_sweep(config);
    REQUIRE(records.size() == 1);
    REQUIRE(records[0].concentration.size() == 2);
    auto rep = verify_no_diracs(records, {0.05, 0.5}, 0.5);
    CHECK(!rep.flagged);
    // small disks capture little of a smooth field's mass
    CHECK(rep.smallest_r_value < 0.1 * l1_norm(
        generate_initial_data(config.data, config.mollification, GridSpec(64), 0.05).omega));
}
