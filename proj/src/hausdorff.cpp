#include "dlimit/hausdorff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dlimit {

using detail::overloaded;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// 1D lower envelope of parabolas f[q] + (x - q*step)^2 sampled at x = i*step.
// site[i] receives the argmin q, or -1 when every f is infinite.
void dt1d(const double* f, int n, double step, int* site) {
    std::vector<int> v(n);         // parabola sites on the hull
    std::vector<double> z(n + 1);  // hull cell boundaries
    int k = -1;
    for (int q = 0; q < n; ++q) {
        if (f[q] == inf) continue;
        const double xq = q * step;
        const double fq = f[q];
        while (k >= 0) {
            const double xp = v[k] * step;
            const double fp = f[v[k]];
            const double s = ((fq + xq * xq) - (fp + xp * xp)) / (2.0 * (xq - xp));
            if (k >= 1 && s <= z[k])
                --k;
            else {
                z[k + 1] = s;
                break;
            }
        }
        if (k < 0) {
            k = 0;
            v[0] = q;
        } else {
            ++k;
            v[k] = q;
        }
        z[k + 1] = inf;
    }
    if (k < 0) {
        std::fill_n(site, n, -1);
        return;
    }
    int j = 0;
    for (int i = 0; i < n; ++i) {
        const double x = i * step;
        while (j < k && z[j + 1] < x) ++j;
        site[i] = v[j];
    }
}

}  // namespace

std::vector<double> squared_distance_field(const SetRaster& r) {
    const int nx = r.grid.nx, ny = r.grid.ny;
    const double dx = r.grid.dx(), dy = r.grid.dy();
    const double dx2 = dx * dx, dy2 = dy * dy;

    // pass 1: per column, nearest set row; store the squared vertical
    // distance recomputed from the site so later arithmetic stays exact
    std::vector<double> g(std::size_t(nx) * ny, inf);
    std::vector<int> src_j(std::size_t(nx) * ny, -1);
    std::vector<double> col(ny);
    std::vector<int> csite(ny);
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) col[j] = r.test(i, j) ? 0.0 : inf;
        dt1d(col.data(), ny, dy, csite.data());
        for (int j = 0; j < ny; ++j) {
            const int s = csite[j];
            if (s < 0) continue;
            const double dj = double(j - s);
            g[std::size_t(j) * nx + i] = dy2 * (dj * dj);
            src_j[std::size_t(j) * nx + i] = s;
        }
    }

    // pass 2: per row over the column minima
    std::vector<double> d(std::size_t(nx) * ny, inf);
    std::vector<int> rsite(nx);
    for (int j = 0; j < ny; ++j) {
        const std::size_t row = std::size_t(j) * nx;
        dt1d(g.data() + row, nx, dx, rsite.data());
        for (int i = 0; i < nx; ++i) {
            const int si = rsite[i];
            if (si < 0) continue;
            const int sj = src_j[row + si];
            const double di = double(i - si);
            const double dj = double(j - sj);
            d[row + i] = dx2 * (di * di) + dy2 * (dj * dj);
        }
    }
    return d;
}

double directed_raster_distance(const SetRaster& a, const SetRaster& b) {
    if (!(a.grid == b.grid))
        throw std::invalid_argument("directed_raster_distance: rasters must share one grid");
    if (a.count() == 0)
        throw std::invalid_argument("directed_raster_distance: distance from an empty set is undefined");
    if (b.count() == 0) return inf;

    const auto d2 = squared_distance_field(b);
    double worst = 0.0;
    for (std::size_t idx = 0; idx < a.mask.size(); ++idx)
        if (a.mask[idx]) worst = std::max(worst, d2[idx]);
    return std::sqrt(worst);
}

namespace {

HausdorffReport make_report(const SetRaster& a, double dab, double dba, std::size_t cb) {
    HausdorffReport rep;
    rep.d_a_to_b = dab;
    rep.d_b_to_a = dba;
    rep.d_h = std::max(dab, dba);
    rep.cell_diag = a.grid.cell_diag();
    rep.count_a = a.count();
    rep.count_b = cb;
    return rep;
}

}  // namespace

HausdorffReport hausdorff_raster(const SetRaster& a, const SetRaster& b) {
    return make_report(a, directed_raster_distance(a, b), directed_raster_distance(b, a),
                       b.count());
}

namespace {

// Distance from an arbitrary point to A's nearest set cell, read off the
// transform at the nearest grid cell. Points are expected inside the grid;
// out-of-grid points add their offset to the clamped cell as slack.
double point_to_raster(Complex p, const SetRaster& a, const std::vector<double>& d2) {
    const auto [i, j] = a.grid.nearest_cell(p);
    double base = std::sqrt(d2[std::size_t(j) * a.grid.nx + i]);
    if (!a.grid.contains(p)) base += std::abs(p - a.grid.center(i, j));
    return base;
}

}  // namespace

HausdorffReport hausdorff_to_target(const SetRaster& a, const TargetSet& target,
                                    int boundary_samples) {
    if (boundary_samples < 1024)
        throw std::invalid_argument("hausdorff_to_target: boundary_samples must be >= 1024");
    if (a.count() == 0) throw std::invalid_argument("hausdorff_to_target: raster is empty");

    double dab = 0.0;
    for (int j = 0; j < a.grid.ny; ++j)
        for (int i = 0; i < a.grid.nx; ++i)
            if (a.test(i, j)) dab = std::max(dab, distance_to_target(a.grid.center(i, j), target));

    const auto d2 = squared_distance_field(a);
    double dba = 0.0;
    std::size_t samples = 0;

    auto sample_boundary = [&](auto&& point_at) {
        for (int k = 0; k < boundary_samples; ++k) {
            const double theta = 2.0 * M_PI * k / boundary_samples;
            dba = std::max(dba, point_to_raster(point_at(theta), a, d2));
        }
        samples = std::size_t(boundary_samples);
    };
    auto sample_area = [&](auto&& inside) {
        for (int j = 0; j < a.grid.ny; ++j)
            for (int i = 0; i < a.grid.nx; ++i) {
                if (!inside(a.grid.center(i, j))) continue;
                dba = std::max(dba, std::sqrt(d2[std::size_t(j) * a.grid.nx + i]));
                ++samples;
            }
    };

    std::visit(overloaded{
                   [&](const Circle& s) {
                       sample_boundary([&](double t) { return std::polar(s.r, t); });
                   },
                   [&](const Limacon& s) {
                       sample_boundary([&](double t) { return limacon_point(s.c, t); });
                   },
                   [&](const ClosedDisk& s) {
                       sample_area([&](Complex z) { return std::abs(z) <= s.r; });
                   },
                   [&](const ClosedAnnulus& s) {
                       sample_area([&](Complex z) {
                           const double r = std::abs(z);
                           return r >= s.r_inner && r <= s.r_outer;
                       });
                   }},
               target);

    if (samples == 0)
        throw NumericalError("hausdorff_to_target: target does not meet the raster grid");
    return make_report(a, dab, dba, samples);
}

}  // namespace dlimit
