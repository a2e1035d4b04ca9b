#include "dlimit/raster.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dlimit {

using detail::overloaded;

std::pair<int, int> GridSpec::nearest_cell(Complex z) const {
    int i = int(std::floor((z.real() - x_min) / dx()));
    int j = int(std::floor((z.imag() - y_min) / dy()));
    i = std::clamp(i, 0, nx - 1);
    j = std::clamp(j, 0, ny - 1);
    return {i, j};
}

bool GridSpec::origin_symmetric() const {
    const double sx = (x_max - x_min) * 1e-12;
    const double sy = (y_max - y_min) * 1e-12;
    return std::abs(x_min + x_max) <= sx && std::abs(y_min + y_max) <= sy;
}

void validate(const GridSpec& g) {
    if (!(g.x_min < g.x_max) || !(g.y_min < g.y_max))
        throw std::invalid_argument("GridSpec: bounds must satisfy min < max");
    if (g.nx < 1 || g.ny < 1) throw std::invalid_argument("GridSpec: nx, ny must be positive");
    if (!std::isfinite(g.x_min) || !std::isfinite(g.x_max) || !std::isfinite(g.y_min) ||
        !std::isfinite(g.y_max))
        throw std::invalid_argument("GridSpec: bounds must be finite");
}

const char* to_string(RasterKind k) {
    switch (k) {
        case RasterKind::Julia: return "julia";
        case RasterKind::Boundary: return "boundary";
        case RasterKind::Parameter: return "parameter";
        case RasterKind::Synthetic: return "synthetic";
    }
    return "?";
}

const char* to_string(ParamMode m) {
    return m == ParamMode::One ? "one" : "both";
}

std::size_t SetRaster::count() const {
    std::size_t n = 0;
    for (auto b : mask) n += b != 0;
    return n;
}

int worker_count() {
    if (const char* env = std::getenv("DLIMIT_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

SetRaster filled_julia_raster(const MapFamily& f, const GridSpec& grid, const EscapeSpec& spec) {
    validate(f);
    validate(grid);
    if (spec.max_iter < 0) throw std::invalid_argument("filled_julia_raster: max_iter must be >= 0");

    SetRaster out;
    out.grid = grid;
    out.mask.assign(std::size_t(grid.nx) * grid.ny, 0);
    out.meta = {RasterKind::Julia, f, spec, std::nullopt};

    const double radius = std::max(spec.radius, escape_radius(f));
    const int threads = worker_count();
    std::visit(
        [&](const auto& fam) {
            const auto step = detail::make_step(fam);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
            for (int j = 0; j < grid.ny; ++j) {
                const std::size_t row = std::size_t(j) * grid.nx;
                for (int i = 0; i < grid.nx; ++i) {
                    const auto outcome =
                        detail::run_orbit(grid.center(i, j), radius, spec.max_iter, step);
                    out.mask[row + i] = outcome.escaped() ? 0 : 1;
                }
            }
        },
        f);
    return out;
}

SetRaster boundary_raster(const SetRaster& r) {
    SetRaster out;
    out.grid = r.grid;
    out.mask.assign(r.mask.size(), 0);
    out.meta = r.meta;
    out.meta.kind = RasterKind::Boundary;

    const int nx = r.grid.nx, ny = r.grid.ny;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            if (!r.test(i, j)) continue;
            bool edge = false;
            for (int dj = -1; dj <= 1 && !edge; ++dj)
                for (int di = -1; di <= 1 && !edge; ++di) {
                    if (di == 0 && dj == 0) continue;
                    const int ni = i + di, nj = j + dj;
                    if (ni < 0 || ni >= nx || nj < 0 || nj >= ny)
                        edge = true;  // grid edge counts as boundary
                    else if (!r.test(ni, nj))
                        edge = true;
                }
            out.mask[std::size_t(j) * nx + i] = edge ? 1 : 0;
        }
    return out;
}

namespace {

template <class MakeFam, class Member>
void sweep_cells(SetRaster& out, const GridSpec& grid, const MakeFam& make_fam,
                 const Member& member) {
    const int threads = worker_count();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (int j = 0; j < grid.ny; ++j) {
        const std::size_t row = std::size_t(j) * grid.nx;
        for (int i = 0; i < grid.nx; ++i) {
            const Complex p = grid.center(i, j);
            out.mask[row + i] = member(make_fam(p), p) ? 1 : 0;
        }
    }
}

}  // namespace

SetRaster parameter_raster(const MapFamily& family_template, const GridSpec& grid,
                           const EscapeSpec& spec, ParamMode mode, bool check_r0_symmetry) {
    validate(family_template);
    validate(grid);
    if (spec.max_iter < 0) throw std::invalid_argument("parameter_raster: max_iter must be >= 0");

    SetRaster out;
    out.grid = grid;
    out.mask.assign(std::size_t(grid.nx) * grid.ny, 0);
    out.meta = {RasterKind::Parameter, family_template, spec, mode};

    std::atomic<long> symmetry_mismatches{0};

    std::visit(
        overloaded{
            [&](const PowerPoly& base) {
                sweep_cells(out, grid,
                            [&](Complex c) { return PowerPoly{base.n, c}; },
                            [&](const PowerPoly& fam, Complex) {
                                const double radius =
                                    std::max(spec.radius, escape_radius(MapFamily{fam}));
                                return !detail::run_orbit(Complex{}, radius, spec.max_iter,
                                                          detail::make_step(fam))
                                            .escaped();
                            });
            },
            [&](const RealPower& base) {
                sweep_cells(out, grid,
                            [&](Complex c) { return RealPower{base.t, c}; },
                            [&](const RealPower& fam, Complex) {
                                const double radius =
                                    std::max(spec.radius, escape_radius(MapFamily{fam}));
                                return !detail::run_orbit(Complex{}, radius, spec.max_iter,
                                                          detail::make_step(fam))
                                            .escaped();
                            });
            },
            [&](const PerturbedPower& base) {
                const bool c_zero = base.c == Complex{};
                sweep_cells(
                    out, grid, [&](Complex a) { return PerturbedPower{base.n, base.c, a}; },
                    [&](const PerturbedPower& fam, Complex a) {
                        if (a == Complex{}) return false;  // excluded: domain is C*
                        const double radius =
                            std::max(spec.radius, escape_radius(MapFamily{fam}));
                        const auto step = detail::make_step(fam);
                        const Complex sa = std::sqrt(a);
                        const Complex v_plus = fam.c + 2.0 * sa;
                        const bool plus_bounded =
                            !detail::run_orbit(v_plus, radius, spec.max_iter, step).escaped();
                        if (c_zero) {
                            if (check_r0_symmetry) {
                                const bool minus_bounded =
                                    !detail::run_orbit(fam.c - 2.0 * sa, radius, spec.max_iter,
                                                       step)
                                         .escaped();
                                if (minus_bounded != plus_bounded) ++symmetry_mismatches;
                            }
                            return plus_bounded;
                        }
                        const Complex v_minus = fam.c - 2.0 * sa;
                        if (mode == ParamMode::One) {
                            return plus_bounded ||
                                   !detail::run_orbit(v_minus, radius, spec.max_iter, step)
                                        .escaped();
                        }
                        return plus_bounded &&
                               !detail::run_orbit(v_minus, radius, spec.max_iter, step).escaped();
                    });
            }},
        family_template);

    if (symmetry_mismatches.load() != 0)
        throw NumericalError("parameter_raster: v+ and v- outcomes disagree for c = 0 on " +
                             std::to_string(symmetry_mismatches.load()) + " cells");
    return out;
}

SetRaster rotate_raster(const SetRaster& r, double angle) {
    if (!r.grid.origin_symmetric())
        throw std::invalid_argument("rotate_raster: grid must be symmetric about the origin");

    SetRaster out;
    out.grid = r.grid;
    out.mask.assign(r.mask.size(), 0);
    out.meta = r.meta;

    const double ca = std::cos(angle), sa = std::sin(angle);
    const int nx = r.grid.nx, ny = r.grid.ny;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const Complex z = r.grid.center(i, j);
            // preimage of this cell center under the rotation
            const Complex src{z.real() * ca + z.imag() * sa, -z.real() * sa + z.imag() * ca};
            if (!r.grid.contains(src)) continue;
            const auto [si, sj] = r.grid.nearest_cell(src);
            out.mask[std::size_t(j) * nx + i] = r.test(si, sj) ? 1 : 0;
        }
    return out;
}

}  // namespace dlimit
