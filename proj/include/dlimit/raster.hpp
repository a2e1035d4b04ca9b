#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dlimit/dynamics.hpp"

namespace dlimit {

struct GridSpec {
    double x_min, x_max, y_min, y_max;
    int nx, ny;

    double dx() const { return (x_max - x_min) / nx; }
    double dy() const { return (y_max - y_min) / ny; }
    /// Discretization-error bound: the diagonal of one cell.
    double cell_diag() const { return std::hypot(dx(), dy()); }
    Complex center(int i, int j) const {
        return {x_min + (i + 0.5) * dx(), y_min + (j + 0.5) * dy()};
    }
    bool contains(Complex z) const {
        return z.real() >= x_min && z.real() <= x_max && z.imag() >= y_min && z.imag() <= y_max;
    }
    /// Cell indices nearest to z, clamped onto the grid.
    std::pair<int, int> nearest_cell(Complex z) const;
    bool origin_symmetric() const;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

void validate(const GridSpec& g);

enum class RasterKind { Julia, Boundary, Parameter, Synthetic };
enum class ParamMode { One, Both };

const char* to_string(RasterKind k);
const char* to_string(ParamMode m);

struct RasterMeta {
    RasterKind kind = RasterKind::Synthetic;
    std::optional<MapFamily> family;  // julia: the map; parameter: the template
    EscapeSpec spec{};
    std::optional<ParamMode> mode;
};

/// Grid-aligned bitmask of a discretized compact set. mask is row-major,
/// index j*nx + i, j counting up from y_min.
struct SetRaster {
    GridSpec grid{};
    std::vector<std::uint8_t> mask;
    RasterMeta meta{};

    bool test(int i, int j) const { return mask[std::size_t(j) * grid.nx + i] != 0; }
    std::size_t count() const;
};

/// Cell set iff the orbit of its center stays within the escape radius for
/// spec.max_iter steps. The effective radius is raised to escape_radius(f)
/// when the given one is smaller.
SetRaster filled_julia_raster(const MapFamily& f, const GridSpec& grid, const EscapeSpec& spec);

/// Cell set iff set in r with at least one of its 8 neighbors unset; set
/// cells on the grid edge count as boundary.
SetRaster boundary_raster(const SetRaster& r);

/// Sweeps the grid cell centers over the family's free parameter: c for
/// PowerPoly/RealPower (orbit of 0), a for PerturbedPower (critical-value
/// orbits; the a = 0 cell is excluded). With c = 0 only v+ is iterated;
/// check_r0_symmetry also runs v- and raises NumericalError on any
/// disagreement. mode distinguishes M^1/M^2 for PerturbedPower with c != 0.
SetRaster parameter_raster(const MapFamily& family_template, const GridSpec& grid,
                           const EscapeSpec& spec, ParamMode mode = ParamMode::One,
                           bool check_r0_symmetry = false);

/// Cell set iff its center rotated by -angle lands in a set cell of r
/// (nearest-cell lookup). Requires a grid symmetric about the origin.
SetRaster rotate_raster(const SetRaster& r, double angle);

/// Worker cap: DLIMIT_THREADS when set, otherwise the hardware default.
int worker_count();

}  // namespace dlimit
