#include "dlimit/experiments.hpp"

#include <chrono>
#include <cmath>

namespace dlimit {

namespace {

int as_degree(double value) {
    const int n = int(std::lround(value));
    if (n < 2 || std::abs(value - n) > 1e-9)
        throw std::invalid_argument("sweep: degree values must be integers >= 2");
    return n;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

}  // namespace

MapFamily julia_family(const JuliaSweepParams& p, double value) {
    switch (p.family) {
        case 'P': return PowerPoly{as_degree(value), p.c};
        case 'F': return RealPower{value, p.c};
        case 'R': return PerturbedPower{as_degree(value), p.c, p.a};
        default: throw std::invalid_argument("julia sweep: family must be P, F or R");
    }
}

MapFamily mset_template(const MsetSweepParams& p, double value) {
    switch (p.kind) {
        case MsetKind::P: return PowerPoly{as_degree(value), Complex{}};
        case MsetKind::F: return RealPower{value, Complex{}};
        case MsetKind::R0: return PerturbedPower{as_degree(value), Complex{}, Complex{1.0, 0.0}};
        case MsetKind::Rc: return PerturbedPower{as_degree(value), p.c, Complex{1.0, 0.0}};
    }
    throw std::invalid_argument("mset sweep: unknown kind");
}

TargetSet julia_target(const JuliaSweepParams& p) {
    if (p.which == JuliaSet::J) return Circle{1.0};
    if (p.family == 'R') return Circle{1.0};
    return std::abs(p.c) > 1.0 ? TargetSet{Circle{1.0}} : TargetSet{ClosedDisk{1.0}};
}

TargetSet mset_target(const MsetSweepParams& p) {
    switch (p.kind) {
        case MsetKind::P:
        case MsetKind::F: return ClosedDisk{1.0};
        case MsetKind::R0: return Circle{0.25};
        case MsetKind::Rc: return Limacon{p.c};
    }
    throw std::invalid_argument("mset sweep: unknown kind");
}

std::pair<SetRaster, SetRaster> julia_raster_pair(const MapFamily& f, const GridSpec& grid,
                                                  const EscapeSpec& spec) {
    SetRaster filled = filled_julia_raster(f, grid, spec);
    SetRaster boundary = boundary_raster(filled);
    return {std::move(filled), std::move(boundary)};
}

std::vector<ConvergenceRow> julia_convergence_sweep(const JuliaSweepParams& p,
                                                    const GridSpec& grid, const EscapeSpec& spec,
                                                    int boundary_samples, const RasterSink& sink) {
    const TargetSet target = julia_target(p);
    std::vector<ConvergenceRow> rows;
    rows.reserve(p.values.size());
    for (double value : p.values) {
        const auto t0 = std::chrono::steady_clock::now();
        const MapFamily f = julia_family(p, value);
        auto [filled, boundary] = julia_raster_pair(f, grid, spec);
        const SetRaster& chosen = p.which == JuliaSet::K ? filled : boundary;
        const HausdorffReport rep = hausdorff_to_target(chosen, target, boundary_samples);
        rows.push_back(
            {value, rep.d_a_to_b, rep.d_b_to_a, rep.d_h, chosen.count(), ms_since(t0)});
        if (sink) sink(value, chosen);
    }
    return rows;
}

std::vector<ConvergenceRow> mandelbrot_convergence_sweep(const MsetSweepParams& p,
                                                         const GridSpec& grid,
                                                         const EscapeSpec& spec,
                                                         int boundary_samples,
                                                         const RasterSink& sink) {
    const TargetSet target = mset_target(p);
    std::vector<ConvergenceRow> rows;
    rows.reserve(p.values.size());
    for (double value : p.values) {
        const auto t0 = std::chrono::steady_clock::now();
        const SetRaster raster =
            parameter_raster(mset_template(p, value), grid, spec, p.mode);
        const HausdorffReport rep = hausdorff_to_target(raster, target, boundary_samples);
        rows.push_back(
            {value, rep.d_a_to_b, rep.d_b_to_a, rep.d_h, raster.count(), ms_since(t0)});
        if (sink) sink(value, raster);
    }
    return rows;
}

bool decreasing_trend(const std::vector<ConvergenceRow>& rows, double jitter) {
    if (rows.size() < 2) return false;
    if (!(rows.back().d_h < rows.front().d_h)) return false;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].d_h > rows[i - 1].d_h + jitter) return false;
    return true;
}

ContainmentProbe annulus_containment_probe(const RasterProducer& produce, const TargetSet& region,
                                           double epsilon, const std::vector<double>& values,
                                           double slack) {
    if (epsilon < 0) throw std::invalid_argument("containment probe: epsilon must be >= 0");
    ContainmentProbe probe;
    probe.rows.reserve(values.size());
    for (double value : values) {
        const SetRaster raster = produce(value);
        ContainmentRow row;
        row.sweep_value = value;
        for (int j = 0; j < raster.grid.ny; ++j)
            for (int i = 0; i < raster.grid.nx; ++i) {
                if (!raster.test(i, j)) continue;
                const double excess =
                    distance_to_target(raster.grid.center(i, j), region) - epsilon;
                if (excess > slack) {
                    ++row.violations;
                    row.worst_excess = std::max(row.worst_excess, excess);
                }
            }
        row.contained = row.violations == 0;
        probe.rows.push_back(row);
    }
    for (auto it = probe.rows.rbegin(); it != probe.rows.rend(); ++it) {
        if (!it->contained) break;
        probe.contained_from = it->sweep_value;
    }
    return probe;
}

TargetSet pnc_annulus_region(Complex c, double eta) {
    const double limit = std::abs(std::abs(c) - 1.0);
    if (!(eta > 0) || eta > limit + 1e-12)
        throw std::invalid_argument("pnc_annulus_region: eta must lie in (0, ||c|-1|]");
    return ClosedAnnulus{1.0 - eta / 2.0, 1.0 + eta / 2.0};
}

std::vector<BoundaryCircleRow> boundary_circle_probe(Complex c, const std::vector<int>& n_values,
                                                     const EscapeSpec& spec) {
    if (std::abs(std::abs(c) - 1.0) >= 1e-12)
        throw std::invalid_argument("boundary_circle_probe: |c| must equal 1");
    std::vector<BoundaryCircleRow> rows;
    rows.reserve(n_values.size());
    for (int n : n_values) {
        const MapFamily f = PowerPoly{n, c};
        const EscapeSpec eff{std::max(spec.radius, escape_radius(f)), spec.max_iter};
        BoundaryCircleRow row;
        row.n = n;
        row.member = !iterate_orbit(f, Complex{}, eff).escaped();
        row.certified = std::abs(ipow(c, n) + c) < 1e-12;
        rows.push_back(row);
    }
    return rows;
}

EmptinessProbe m2_emptiness_probe(Complex c, const std::vector<int>& n_values,
                                  const GridSpec& grid, const EscapeSpec& spec) {
    if (!(std::abs(c) > 1.0))
        throw std::invalid_argument("m2_emptiness_probe: requires |c| > 1");
    EmptinessProbe probe;
    probe.rows.reserve(n_values.size());
    for (int n : n_values) {
        const SetRaster raster = parameter_raster(PerturbedPower{n, c, Complex{1.0, 0.0}}, grid,
                                                  spec, ParamMode::Both);
        probe.rows.push_back({n, raster.count()});
    }
    for (auto it = probe.rows.rbegin(); it != probe.rows.rend(); ++it) {
        if (it->set_cells != 0) break;
        probe.empty_from = it->n;
    }
    return probe;
}

}  // namespace dlimit
