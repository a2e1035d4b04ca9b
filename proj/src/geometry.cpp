#include "dlimit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dlimit {

using detail::overloaded;

namespace {

constexpr double two_pi = 2.0 * M_PI;

// Golden-section minimum of f on [lo, hi].
template <class F>
double golden_min(const F& f, double lo, double hi, double tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return std::min(f1, f2);
}

double limacon_distance(Complex z, Complex c) {
    constexpr int samples = 4096;
    const double step = two_pi / samples;
    std::vector<double> d(samples);
    for (int k = 0; k < samples; ++k) d[k] = std::abs(z - limacon_point(c, k * step));
    // refine every cyclic local minimum; the nearest-point problem has no
    // closed form for the offset limacon
    double best = std::numeric_limits<double>::infinity();
    auto dist = [&](double theta) { return std::abs(z - limacon_point(c, theta)); };
    for (int k = 0; k < samples; ++k) {
        const double prev = d[(k + samples - 1) % samples];
        const double next = d[(k + 1) % samples];
        if (d[k] <= prev && d[k] <= next)
            best = std::min(best, golden_min(dist, (k - 1) * step, (k + 1) * step, 1e-9));
    }
    return best;
}

double wrap_angle(double a) {
    a = std::fmod(a, two_pi);
    if (a <= -M_PI) a += two_pi;
    if (a > M_PI) a -= two_pi;
    return a;
}

// Bisection on [lo, hi]; requires a sign change. Tolerance on the bracket.
template <class F>
double bisect(const F& f, double lo, double hi, double tol) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0)) throw NumericalError("bisect: no sign change in bracket");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (fhi > 0)) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

// All roots of the monic w^n - w/2 + c/2 by Durand-Kerner, Newton-polished.
std::vector<Complex> all_roots(int n, Complex c) {
    auto q = [&](Complex w) { return ipow(w, n) - 0.5 * w + 0.5 * c; };
    auto dq = [&](Complex w) { return double(n) * ipow(w, n - 1) - Complex{0.5, 0.0}; };

    std::vector<Complex> w(n);
    const Complex seed{0.4, 0.9};
    w[0] = seed;
    for (int i = 1; i < n; ++i) w[i] = w[i - 1] * seed;

    bool converged = false;
    for (int sweep = 0; sweep < 800 && !converged; ++sweep) {
        double max_move = 0.0;
        for (int i = 0; i < n; ++i) {
            Complex denom{1.0, 0.0};
            for (int j = 0; j < n; ++j)
                if (j != i) denom *= w[i] - w[j];
            if (denom == Complex{}) {
                // collided iterates; nudge and keep going
                w[i] += Complex{1e-8, 1e-8};
                max_move = 1.0;
                continue;
            }
            const Complex delta = q(w[i]) / denom;
            w[i] -= delta;
            max_move = std::max(max_move, std::abs(delta));
        }
        converged = max_move < 1e-14;
    }

    for (auto& wi : w)
        for (int it = 0; it < 6; ++it) {
            const Complex d = dq(wi);
            if (std::abs(d) < 1e-300) break;
            wi -= q(wi) / d;
        }

    for (const auto& wi : w) {
        const double res = std::abs(2.0 * ipow(wi, n) - wi + c);
        if (!(res < 1e-10)) {
            std::ostringstream msg;
            msg << "critical_fixed_solutions: root finder residual " << res << " at w = ("
                << wi.real() << ", " << wi.imag() << ") for n = " << n;
            throw NumericalError(msg.str());
        }
    }
    return w;
}

}  // namespace

std::string describe(const TargetSet& t) {
    std::ostringstream os;
    std::visit(overloaded{[&](const Circle& s) { os << "circle:" << s.r; },
                          [&](const ClosedDisk& s) { os << "disk:" << s.r; },
                          [&](const ClosedAnnulus& s) {
                              os << "annulus:" << s.r_inner << "," << s.r_outer;
                          },
                          [&](const Limacon& s) {
                              os << "limacon:" << s.c.real()
                                 << (s.c.imag() < 0 ? "" : "+") << s.c.imag() << "i";
                          }},
               t);
    return os.str();
}

double distance_to_target(Complex z, const TargetSet& target) {
    const double r = std::abs(z);
    return std::visit(overloaded{[&](const Circle& s) { return std::abs(r - s.r); },
                                 [&](const ClosedDisk& s) { return std::max(0.0, r - s.r); },
                                 [&](const ClosedAnnulus& s) {
                                     return std::max({0.0, s.r_inner - r, r - s.r_outer});
                                 },
                                 [&](const Limacon& s) { return limacon_distance(z, s.c); }},
                      target);
}

Complex limacon_point(Complex c, double theta) {
    const Complex h = 0.5 * (std::polar(1.0, theta) + c);
    return h * h;
}

Complex superattracting_center(int n, int k) {
    if (n < 3) throw std::invalid_argument("superattracting_center: n must be >= 3");
    if (k < 0 || k > n - 2) throw std::invalid_argument("superattracting_center: k out of 0..n-2");
    return std::polar(std::pow(2.0, -2.0 * n / (n - 1.0)), two_pi * k / (n - 1.0));
}

CenterReport verify_center_dynamics(int n, int k) {
    const Complex a = superattracting_center(n, k);
    // The case table is stated for v+ = 2 * 2^{-n/(n-1)} e^{i pi k/(n-1)},
    // which for k > (n-1)/2 is the non-principal square root branch.
    const Complex v_plus = std::polar(2.0 * std::pow(2.0, -double(n) / (n - 1.0)),
                                      M_PI * k / (n - 1.0));
    const Complex v_minus = -v_plus;

    const MapFamily f = PerturbedPower{n, Complex{}, a};
    const Complex image_plus = apply_map(f, v_plus);
    const Complex image_minus = apply_map(f, v_minus);

    const bool n_even = n % 2 == 0;
    const bool k_even = k % 2 == 0;
    const Complex expect_plus = k_even ? v_plus : v_minus;
    const Complex expect_minus = (n_even == k_even) ? v_plus : v_minus;

    CenterReport rep;
    rep.case_tag = std::string(n_even ? "even" : "odd") + "-" + (k_even ? "even" : "odd");
    rep.residual_plus = std::abs(image_plus - expect_plus);
    rep.residual_minus = std::abs(image_minus - expect_minus);
    rep.a = a;
    rep.v_plus = v_plus;
    rep.v_minus = v_minus;
    return rep;
}

std::vector<Complex> roots_of_minus_one(int n) {
    if (n < 2) throw std::invalid_argument("roots_of_minus_one: n must be >= 2");
    std::vector<Complex> out;
    out.reserve(n - 1);
    for (int j = 0; j < n - 1; ++j) out.push_back(std::polar(1.0, M_PI * (2 * j + 1) / (n - 1.0)));
    return out;
}

AnnulusBounds annulus_bounds(double c_abs) {
    if (c_abs < 0) throw std::invalid_argument("annulus_bounds: |c| must be >= 0");
    const double lo = (1.0 - c_abs) * (1.0 - c_abs) / 4.0;
    const double hi = (1.0 + c_abs) * (1.0 + c_abs) / 4.0;
    return {lo, hi};
}

RadialRootBundle radial_roots(int n, double c_abs) {
    if (n < 2) throw std::invalid_argument("radial_roots: n must be >= 2");
    if (!(c_abs > 0)) throw std::invalid_argument("radial_roots: |c| must be positive");

    const double hi = std::max(1.0, c_abs) + 1.0;
    constexpr double tol = 1e-13;
    auto f = [&](double r) { return std::pow(r, n) + 0.5 * r - 0.5 * c_abs; };
    auto g = [&](double r) { return std::pow(r, n) - 0.5 * r - 0.5 * c_abs; };
    auto h = [&](double r) { return std::pow(r, n) - 0.5 * r + 0.5 * c_abs; };

    RadialRootBundle out;
    out.n = n;
    out.c_abs = c_abs;
    out.u = bisect(f, 0.0, hi, tol);
    out.v = bisect(g, 0.0, hi, tol);

    const double r_crit = std::pow(1.0 / (2.0 * n), 1.0 / (n - 1.0));
    if (h(r_crit) < 0.0) {
        out.x = bisect(h, 0.0, r_crit, tol);
        out.y = bisect(h, r_crit, hi, tol);
    }
    return out;
}

std::vector<SectorSolution> critical_fixed_solutions(int n, Complex c) {
    if (n < 2) throw std::invalid_argument("critical_fixed_solutions: n must be >= 2");
    if (c == Complex{}) throw std::invalid_argument("critical_fixed_solutions: c must be nonzero");

    const double c_abs = std::abs(c);
    const auto roots = all_roots(n, c);
    const auto bundle = radial_roots(n, c_abs);

    constexpr double fat = 1e-6;       // gamma-fattening of the radial band
    constexpr double edge_eps = 1e-9;  // "exactly on a boundary" report threshold
    const double u_lo = bundle.u * (1.0 - fat);
    const double v_hi = bundle.v * (1.0 + fat);

    for (const auto& w : roots) {
        const double r = std::abs(w);
        if (r < u_lo || r > v_hi) {
            std::ostringstream msg;
            msg << "critical_fixed_solutions: |w| = " << r << " outside the certified band ["
                << bundle.u << ", " << bundle.v << "] for n = " << n;
            throw NumericalError(msg.str());
        }
    }

    std::vector<SectorSolution> out;
    out.reserve(n);
    const bool use_s_sectors = c_abs >= 1.0;
    const int sector_count = use_s_sectors ? n : n - 1;
    const double sector_width = two_pi / sector_count;
    const double base = use_s_sectors ? std::arg(-c) / n : 0.0;

    // For |c| < 1 the small-modulus root sits apart from the n-1 sector
    // roots (for real c it coincides with the radial root x_n, so a radial
    // cutoff cannot separate it); it gets no sector index.
    std::size_t skip_index = roots.size();
    if (!use_s_sectors) {
        double smallest = std::numeric_limits<double>::infinity();
        for (std::size_t idx = 0; idx < roots.size(); ++idx)
            if (std::abs(roots[idx]) < smallest) {
                smallest = std::abs(roots[idx]);
                skip_index = idx;
            }
    }

    std::vector<int> occupancy(sector_count, 0);
    for (std::size_t idx = 0; idx < roots.size(); ++idx) {
        const Complex w = roots[idx];
        SectorSolution sol;
        sol.w = w;
        sol.a = ipow(w, 2 * n);
        sol.residual = std::abs(2.0 * ipow(w, n) - w + c);
        const double r = std::abs(w);
        if (idx == skip_index) {
            sol.k = std::nullopt;
        } else {
            const double rel = wrap_angle(std::arg(w) - base);
            int k = int(std::lround(rel / sector_width));
            k = ((k % sector_count) + sector_count) % sector_count;
            const double off = wrap_angle(std::arg(w) - base - k * sector_width);
            sol.k = k;
            sol.sector = {base + (k - 0.5) * sector_width, base + (k + 0.5) * sector_width, u_lo,
                          v_hi};
            sol.on_sector_boundary = sector_width / 2 - std::abs(off) < edge_eps ||
                                     r - u_lo < edge_eps || v_hi - r < edge_eps;
            occupancy[k]++;
        }
        out.push_back(sol);
    }

    for (int k = 0; k < sector_count; ++k) {
        if (occupancy[k] != 1) {
            std::ostringstream msg;
            msg << "critical_fixed_solutions: " << occupancy[k] << " roots in sector " << k
                << " for n = " << n << " (expected one)";
            throw NumericalError(msg.str());
        }
    }

    std::sort(out.begin(), out.end(), [](const SectorSolution& a, const SectorSolution& b) {
        if (a.k && b.k) return *a.k < *b.k;
        return a.k.has_value() && !b.k.has_value();
    });
    return out;
}

}  // namespace dlimit
