#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "dlimit/io.hpp"
#include "oracle.hpp"

using namespace dlimit;

namespace {

std::filesystem::path temp_dir() {
    auto dir = std::filesystem::temp_directory_path() / "dlimit_io_test";
    std::filesystem::create_directories(dir);
    return dir;
}

std::vector<std::uint8_t> slurp(const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("pgm encoding of a 2x2 raster") {
    SetRaster r{GridSpec{0, 2, 0, 2, 2, 2}, {1, 0, 1, 0}, {}};
    const auto bytes = encode_pgm(r);
    const std::string header = "P5\n2 2\n255\n";
    REQUIRE(bytes.size() == header.size() + 4);
    CHECK(std::equal(header.begin(), header.end(), bytes.begin()));
    CHECK(bytes[header.size() + 0] == 0x00);
    CHECK(bytes[header.size() + 1] == 0xFF);
    CHECK(bytes[header.size() + 2] == 0x00);
    CHECK(bytes[header.size() + 3] == 0xFF);
}

TEST_CASE("pgm round trip is bit exact") {
    std::mt19937 rng(808);
    std::uniform_int_distribution<int> dims(1, 40);
    for (int trial = 0; trial < 50; ++trial) {
        const int nx = dims(rng), ny = dims(rng);
        const GridSpec g{0.0, double(nx), 0.0, double(ny), nx, ny};
        const auto r = oracle::random_raster(rng, g, 0.5);
        const auto decoded = decode_pgm(encode_pgm(r));
        CHECK(decoded.width == nx);
        CHECK(decoded.height == ny);
        CHECK(decoded.mask == r.mask);
    }
}

TEST_CASE("pgm parse errors carry byte offsets") {
    CHECK_THROWS_AS(decode_pgm({'P', '4', '\n'}), PgmParseError);
    try {
        decode_pgm({'P', '5', '\n', '2', ' ', '2', '\n', '2', '5', '5', '\n', 0x00, 0xFF});
        FAIL("expected truncation error");
    } catch (const PgmParseError& e) {
        CHECK(std::string(e.what()).find("expected 4") != std::string::npos);
        CHECK(std::string(e.what()).find("got 2") != std::string::npos);
        CHECK(e.byte_offset == 11);
    }
    CHECK_THROWS_AS(decode_pgm({'P', '5', '\n', 'x'}), PgmParseError);
}

TEST_CASE("raster file round trip with sidecar") {
    const auto dir = temp_dir();
    const GridSpec g{-1.6, 1.6, -1.6, 1.6, 48, 48};
    const auto r = filled_julia_raster(PerturbedPower{4, {0.5, 0}, {0.01, -0.02}}, g, {0.0, 64});
    const auto path = dir / "roundtrip.pgm";
    write_raster_pgm(r, path);
    CHECK(std::filesystem::exists(path));
    CHECK(std::filesystem::exists(dir / "roundtrip.pgm.meta"));

    const auto back = read_raster_pgm(path);
    CHECK(back.mask == r.mask);
    CHECK(back.grid == r.grid);
    REQUIRE(back.meta.family.has_value());
    const auto* fam = std::get_if<PerturbedPower>(&*back.meta.family);
    REQUIRE(fam != nullptr);
    CHECK(fam->n == 4);
    CHECK(std::abs(fam->c - Complex{0.5, 0}) < 1e-15);
    CHECK(std::abs(fam->a - Complex{0.01, -0.02}) < 1e-15);
    CHECK(back.meta.spec.max_iter == 64);
}

TEST_CASE("complex literals") {
    CHECK(parse_complex("1.5") == Complex{1.5, 0});
    CHECK(parse_complex("-2") == Complex{-2, 0});
    CHECK(parse_complex("0.5+0i") == Complex{0.5, 0});
    CHECK(parse_complex("0.0157+0.072i") == Complex{0.0157, 0.072});
    CHECK(parse_complex("-0.9-0.25i") == Complex{-0.9, -0.25});
    CHECK(parse_complex("1e-2-3.5e1i") == Complex{0.01, -35});
    CHECK(parse_complex("2i") == Complex{0, 2});
    CHECK(parse_complex("-0.5i") == Complex{0, -0.5});
    CHECK_THROWS_AS(parse_complex(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_complex("1+2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_complex("foo"), std::invalid_argument);
    CHECK_THROWS_AS(parse_complex("1+2i3"), std::invalid_argument);

    for (const Complex z : {Complex{0.25, -1.5}, Complex{-3e-7, 2e8}, Complex{0, 0}})
        CHECK(parse_complex(format_complex(z)) == z);
}

TEST_CASE("sweep csv layout") {
    const std::vector<ConvergenceRow> rows{{5, 0.25, 0.5, 0.5, 1234, 17.5}};
    CHECK(sweep_csv(rows) ==
          "sweep_value,d_a_to_b,d_b_to_a,d_h,set_cells,elapsed_ms\n5,0.25,0.5,0.5,1234,0\n");
    CHECK(sweep_csv(rows, true) ==
          "sweep_value,d_a_to_b,d_b_to_a,d_h,set_cells,elapsed_ms\n5,0.25,0.5,0.5,1234,17.5\n");
}

TEST_CASE("centers and solutions csv") {
    const auto centers = std::vector<CenterReport>{verify_center_dynamics(8, 0),
                                                   verify_center_dynamics(8, 1)};
    const auto csv = centers_csv(8, centers);
    CHECK(csv.rfind("n,k,re_w,im_w,re_a,im_a,residual,sector_theta_low,sector_theta_high\n", 0) ==
          0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);

    const auto sols = critical_fixed_solutions(5, {1.5, 0});
    const auto scsv = solutions_csv(5, sols);
    CHECK(std::count(scsv.begin(), scsv.end(), '\n') == 6);
}

TEST_CASE("config precedence: flags beat file beats defaults") {
    const SweepConfig defaults;
    CHECK(defaults.max_iter == 0);
    CHECK(defaults.grid.nx == 512);

    nlohmann::json j = {{"kind", "mset"},
                        {"family", "P"},
                        {"values", {5.0, 10.0}},
                        {"max_iter", 300},
                        {"grid", {{"x_min", -1.6}, {"x_max", 1.6}, {"y_min", -1.6},
                                  {"y_max", 1.6}, {"nx", 64}, {"ny", 64}}}};
    SweepConfig cfg = sweep_config_from_json(j);
    CHECK(cfg.max_iter == 300);          // file overrides default
    CHECK(cfg.grid.nx == 64);
    CHECK(cfg.boundary_samples == 4096); // untouched default

    apply_overrides(cfg, SweepOverrides{.max_iter = 200});
    CHECK(cfg.max_iter == 200);          // flag overrides file

    const auto echo = sweep_config_from_json(sweep_config_to_json(cfg));
    CHECK(echo.max_iter == cfg.max_iter);
    CHECK(echo.values == cfg.values);
    CHECK(echo.grid == cfg.grid);
}

TEST_CASE("sweep runs are byte deterministic") {
    const auto dir = temp_dir();
    SweepConfig cfg;
    cfg.kind = "mset";
    cfg.family = "P";
    cfg.values = {3, 6};
    cfg.grid = {-1.6, 1.6, -1.6, 1.6, 64, 64};
    cfg.max_iter = 64;
    cfg.out_csv = (dir / "a.csv").string();
    cfg.out_manifest = (dir / "a.json").string();
    cfg.out_raster_dir = (dir / "a_rasters").string();
    run_sweep(cfg);

    SweepConfig cfg2 = cfg;
    cfg2.out_csv = (dir / "b.csv").string();
    cfg2.out_manifest = (dir / "b.json").string();
    cfg2.out_raster_dir = (dir / "b_rasters").string();
    run_sweep(cfg2);

    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
    CHECK(slurp(dir / "a_rasters/mset_P_3.pgm") == slurp(dir / "b_rasters/mset_P_3.pgm"));
    CHECK(slurp(dir / "a_rasters/mset_P_6.pgm") == slurp(dir / "b_rasters/mset_P_6.pgm"));
    CHECK(!slurp(dir / "a.csv").empty());

    const auto manifest = nlohmann::json::parse(slurp(dir / "a.json"));
    CHECK(manifest["kind"] == "mset");
    CHECK(manifest["max_iter"] == 64);
    CHECK(manifest.contains("target"));
}

TEST_CASE("hausdorff report json") {
    HausdorffReport rep{0.5, 0.25, 0.5, 0.01, 10, 20};
    const auto j = report_json(rep, GridSpec{-2, 2, -2, 2, 64, 64}, "a.pgm", "circle:1");
    CHECK(j["d_h"] == 0.5);
    CHECK(j["d_a_to_b"] == 0.5);
    CHECK(j["d_b_to_a"] == 0.25);
    CHECK(j["cell_diag"] == 0.01);
    CHECK(j["grid"]["nx"] == 64);
    CHECK(j["meta"]["b"] == "circle:1");
}

TEST_CASE("atomic write replaces the file completely") {
    const auto dir = temp_dir();
    const auto path = dir / "atomic.txt";
    write_text_atomic(path, "first");
    write_text_atomic(path, "second");
    const auto bytes = slurp(path);
    CHECK(std::string(bytes.begin(), bytes.end()) == "second");
    CHECK(!std::filesystem::exists(path.string() + ".tmp"));
}
