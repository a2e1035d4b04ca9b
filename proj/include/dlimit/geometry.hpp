#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dlimit/dynamics.hpp"

namespace dlimit {

struct Circle {
    double r;
};
struct ClosedDisk {
    double r;
};
struct ClosedAnnulus {
    double r_inner;
    double r_outer;
};
struct Limacon {
    Complex c;
};

using TargetSet = std::variant<Circle, ClosedDisk, ClosedAnnulus, Limacon>;

std::string describe(const TargetSet& t);

/// Euclidean distance from z to the target set. Circle/disk/annulus are
/// closed-form; the limacon is sampled at 4096 angles and each local minimum
/// refined by golden section.
double distance_to_target(Complex z, const TargetSet& target);

/// ((e^{i theta} + c)/2)^2 -- the locus of a with |c +- 2 sqrt(a)| = 1.
Complex limacon_point(Complex c, double theta);

/// a_n^k = 2^{-2n/(n-1)} e^{2 pi i k/(n-1)}, n >= 3, 0 <= k <= n-2.
Complex superattracting_center(int n, int k);

struct CenterReport {
    std::string case_tag;  // "even-even", "even-odd", "odd-even", "odd-odd"
    double residual_plus;
    double residual_minus;
    Complex a;
    Complex v_plus;
    Complex v_minus;
};

/// Checks the finite critical-orbit relations of R_{n,0,a_n^k}: per parity
/// of (n, k), R(v+-) must land on the critical value the case table names.
CenterReport verify_center_dynamics(int n, int k);

/// The n-1 solutions of c^{n-1} = -1; each satisfies c^n + c = 0.
std::vector<Complex> roots_of_minus_one(int n);

struct AnnulusBounds {
    double lower;  // (1-|c|)^2 / 4
    double upper;  // (1+|c|)^2 / 4
};

AnnulusBounds annulus_bounds(double c_abs);

struct RadialRootBundle {
    int n = 0;
    double c_abs = 0;
    double u = 0;  // unique positive root of r^n + r/2 - |c|/2
    double v = 0;  // unique positive root of r^n - r/2 - |c|/2
    // Present when h(r) = r^n - r/2 + |c|/2 dips negative (|c| < 1, n large
    // enough); then u < |c| < x < y.
    std::optional<double> x, y;
};

/// Bracketing bisection to 1e-13 on f, g, h above. c_abs must be positive.
RadialRootBundle radial_roots(int n, double c_abs);

struct SectorBounds {
    double theta_low = 0;
    double theta_high = 0;
    double r_low = 0;
    double r_high = 0;
};

struct SectorSolution {
    std::optional<int> k;  // empty: the small-modulus root below the T band
    Complex w;
    Complex a;        // w^{2n}
    double residual;  // |2 w^n - w + c|
    SectorBounds sector{};
    bool on_sector_boundary = false;
};

/// All n roots of 2 w^n - w + c (Durand-Kerner plus Newton polish, residual
/// < 1e-10), each assigned to its Rouche sector: S_{n,k} about
/// Arg(-c)/n + 2k pi/n for |c| >= 1, T_{n,k} about 2k pi/(n-1) for |c| < 1
/// (where the small root reports no sector). Duplicate occupancy or a
/// modulus outside the u..v band raises NumericalError.
std::vector<SectorSolution> critical_fixed_solutions(int n, Complex c);

}  // namespace dlimit
