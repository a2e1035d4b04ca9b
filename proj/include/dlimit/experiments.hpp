#pragma once

#include <functional>

#include "dlimit/hausdorff.hpp"

namespace dlimit {

struct ConvergenceRow {
    double sweep_value = 0;
    double d_a_to_b = 0;
    double d_b_to_a = 0;
    double d_h = 0;
    std::size_t set_cells = 0;
    double elapsed_ms = 0;
};

enum class JuliaSet { K, J };

struct JuliaSweepParams {
    char family = 'P';  // 'P' (z^n+c), 'F' (z^t+c), 'R' (z^n+c+a/z^n)
    Complex c{};
    Complex a{};                 // R only
    std::vector<double> values;  // n values (P, R) or t values (F)
    JuliaSet which = JuliaSet::K;
};

enum class MsetKind { P, F, R0, Rc };

struct MsetSweepParams {
    MsetKind kind = MsetKind::P;
    Complex c{};                 // Rc: the fixed c
    std::vector<double> values;  // n values (t for F)
    ParamMode mode = ParamMode::One;
};

using RasterSink = std::function<void(double sweep_value, const SetRaster&)>;

MapFamily julia_family(const JuliaSweepParams& p, double value);
MapFamily mset_template(const MsetSweepParams& p, double value);

/// J -> S^1 always; K -> S^1 for |c| > 1 (and for the R family), the closed
/// unit disk otherwise. |c| = 1 rows are report-only: produced, asserted on
/// by nobody.
TargetSet julia_target(const JuliaSweepParams& p);
TargetSet mset_target(const MsetSweepParams& p);

/// K raster and its boundary raster (the Julia raster) for one map.
std::pair<SetRaster, SetRaster> julia_raster_pair(const MapFamily& f, const GridSpec& grid,
                                                  const EscapeSpec& spec);

std::vector<ConvergenceRow> julia_convergence_sweep(const JuliaSweepParams& p,
                                                    const GridSpec& grid, const EscapeSpec& spec,
                                                    int boundary_samples = 4096,
                                                    const RasterSink& sink = {});

std::vector<ConvergenceRow> mandelbrot_convergence_sweep(const MsetSweepParams& p,
                                                         const GridSpec& grid,
                                                         const EscapeSpec& spec,
                                                         int boundary_samples = 4096,
                                                         const RasterSink& sink = {});

/// Trend check used by every sweep assertion: last d_h below the first and
/// no consecutive rise above jitter (raster noise floor, 2 cell diagonals).
bool decreasing_trend(const std::vector<ConvergenceRow>& rows, double jitter);

struct ContainmentRow {
    double sweep_value = 0;
    bool contained = false;
    std::size_t violations = 0;
    double worst_excess = 0;  // largest distance beyond the region over set cells
};

struct ContainmentProbe {
    std::vector<ContainmentRow> rows;
    std::optional<double> contained_from;  // smallest value contained onward
};

using RasterProducer = std::function<SetRaster(double sweep_value)>;

/// For each sweep value, checks that every set cell of the produced raster
/// lies within distance epsilon (+ slack) of the region.
ContainmentProbe annulus_containment_probe(const RasterProducer& produce, const TargetSet& region,
                                           double epsilon, const std::vector<double>& values,
                                           double slack);

/// A(1 - eta/2, 1 + eta/2) with the corollary's admissibility check
/// eta <= ||c| - 1|.
TargetSet pnc_annulus_region(Complex c, double eta);

struct BoundaryCircleRow {
    int n = 0;
    bool member = false;     // orbit of 0 bounded through spec.max_iter
    bool certified = false;  // c^n + c = 0 to 1e-12: membership is exact
};

/// Membership sequence of a unit-circle c across n; requires ||c|-1| < 1e-12.
std::vector<BoundaryCircleRow> boundary_circle_probe(Complex c, const std::vector<int>& n_values,
                                                     const EscapeSpec& spec);

struct EmptinessRow {
    int n = 0;
    std::size_t set_cells = 0;
};

struct EmptinessProbe {
    std::vector<EmptinessRow> rows;
    std::optional<int> empty_from;  // smallest n with zero cells onward
};

/// Counts mode-"both" parameter cells for R_c across n; requires |c| > 1.
EmptinessProbe m2_emptiness_probe(Complex c, const std::vector<int>& n_values,
                                  const GridSpec& grid, const EscapeSpec& spec);

}  // namespace dlimit
