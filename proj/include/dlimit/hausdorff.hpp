#pragma once

#include "dlimit/geometry.hpp"
#include "dlimit/raster.hpp"

namespace dlimit {

struct HausdorffReport {
    double d_a_to_b = 0;
    double d_b_to_a = 0;
    double d_h = 0;
    double cell_diag = 0;
    std::size_t count_a = 0;  // set cells of A
    std::size_t count_b = 0;  // set cells of B, or target samples
};

/// Exact squared Euclidean distance (between cell centers) from every cell
/// to the nearest set cell of r, by the two-pass lower-envelope transform
/// (columns then rows). Empty rasters give +infinity everywhere.
std::vector<double> squared_distance_field(const SetRaster& r);

/// max over set cells of A of the distance to the nearest set cell of B.
/// A empty is an error; B empty returns +infinity.
double directed_raster_distance(const SetRaster& a, const SetRaster& b);

HausdorffReport hausdorff_raster(const SetRaster& a, const SetRaster& b);

/// A's set cells against the analytic target. The target->raster direction
/// samples circle/limacon boundaries at boundary_samples angles and disk/
/// annulus areas on A's own grid.
HausdorffReport hausdorff_to_target(const SetRaster& a, const TargetSet& target,
                                    int boundary_samples = 4096);

}  // namespace dlimit
