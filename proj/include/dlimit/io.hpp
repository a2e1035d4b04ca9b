#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "dlimit/experiments.hpp"

namespace dlimit {

struct PgmParseError : std::runtime_error {
    std::size_t byte_offset;
    PgmParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what), byte_offset(offset) {}
};

/// Binary PGM (P5, maxval 255): set cells black (0), unset white (255),
/// rows written top-down (y_max first). decode(encode(r)) reproduces the
/// mask bit-exactly.
std::vector<std::uint8_t> encode_pgm(const SetRaster& r);

struct DecodedPgm {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> mask;  // SetRaster layout: row-major from y_min
};

DecodedPgm decode_pgm(const std::vector<std::uint8_t>& bytes);

/// Raster from PGM payload; grid defaults to [0,w]x[0,h] when absent.
SetRaster raster_from_pgm(const std::vector<std::uint8_t>& bytes,
                          const std::optional<GridSpec>& grid = std::nullopt,
                          const std::optional<RasterMeta>& meta = std::nullopt);

/// key = value sidecar: family, n, t, c, a, grid bounds, nx, ny, radius,
/// maxIter (plus kind and mode so the raster can be regenerated).
std::string sidecar_text(const SetRaster& r);
void parse_sidecar(const std::string& text, GridSpec& grid, RasterMeta& meta);

void write_file_atomic(const std::filesystem::path& path, const void* data, std::size_t size);
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

/// Writes the PGM plus a "<path>.meta" sidecar, both atomically.
void write_raster_pgm(const SetRaster& r, const std::filesystem::path& path);
SetRaster read_raster_pgm(const std::filesystem::path& path);

/// "a", "a+bi", "a-bi" or "bi"; scientific notation allowed in both parts.
Complex parse_complex(const std::string& text);
std::string format_complex(Complex z);

std::string sweep_csv(const std::vector<ConvergenceRow>& rows, bool with_timing = false);
std::string centers_csv(int n, const std::vector<CenterReport>& reports);
std::string solutions_csv(int n, const std::vector<SectorSolution>& solutions);

nlohmann::json report_json(const HausdorffReport& rep, const GridSpec& grid,
                           const std::string& subject, const std::string& reference);

/// One sweep run as configured by the CLI: JSON config file mirroring these
/// fields in snake_case, flags overriding the file, file overriding
/// defaults.
struct SweepConfig {
    std::string kind = "mset";   // "julia" | "mset"
    std::string family = "P";    // julia: P | F | R; mset: P | F | R0 | Rc
    std::string which_set = "K";
    std::string mode = "one";
    Complex c{};
    Complex a{};
    std::vector<double> values;
    GridSpec grid{-2.0, 2.0, -2.0, 2.0, 512, 512};
    double radius = 0;  // 0: per-value certified radius
    int max_iter = 0;   // 0: kind default (512 julia, 256 mset)
    int boundary_samples = 4096;
    std::string out_csv;
    std::string out_manifest;
    std::string out_raster_dir;
    bool timing = false;
};

SweepConfig sweep_config_from_json(const nlohmann::json& j);
nlohmann::json sweep_config_to_json(const SweepConfig& cfg);

struct SweepOverrides {
    std::optional<int> max_iter;
    std::optional<double> radius;
    std::optional<std::string> out_csv;
    std::optional<std::string> out_manifest;
    std::optional<std::string> out_raster_dir;
    std::optional<bool> timing;
};

void apply_overrides(SweepConfig& cfg, const SweepOverrides& o);

/// Executes the sweep, writing CSV, manifest and per-value PGMs as
/// configured. Returns the rows.
std::vector<ConvergenceRow> run_sweep(const SweepConfig& cfg);

}  // namespace dlimit
