#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace dlimit {

using Complex = std::complex<double>;

// Point at infinity. PerturbedPower sends z = 0 here; apply_map absorbs it.
inline const Complex infinity_point{std::numeric_limits<double>::infinity(),
                                    std::numeric_limits<double>::infinity()};

inline bool is_finite_point(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// z^n + c, n >= 2
struct PowerPoly {
    int n = 2;
    Complex c{};
};

// z^t + c with the principal-branch power, t > 1
struct RealPower {
    double t = 2.0;
    Complex c{};
};

// z^n + c + a/z^n, n >= 2, a != 0
struct PerturbedPower {
    int n = 2;
    Complex c{};
    Complex a{1.0, 0.0};
};

using MapFamily = std::variant<PowerPoly, RealPower, PerturbedPower>;

/// Throws std::invalid_argument when family parameters are out of range.
void validate(const MapFamily& f);

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EscapeSpec {
    double radius = 2.0;
    int max_iter = 512;
};

inline constexpr int julia_max_iter_default = 512;
inline constexpr int param_max_iter_default = 256;

struct OrbitOutcome {
    std::optional<int> escape_step;  // empty: stayed within radius through max_iter
    bool escaped() const { return escape_step.has_value(); }
};

inline OrbitOutcome escaped_at(int step) { return {step}; }
inline OrbitOutcome bounded_orbit() { return {}; }

/// Integer power by repeated squaring, n >= 0.
inline Complex ipow(Complex z, int n) {
    Complex result{1.0, 0.0};
    while (n > 0) {
        if (n & 1) result *= z;
        z *= z;
        n >>= 1;
    }
    return result;
}

/// exp(t Ln z) with Arg in (-pi, pi], so Arg(-1) = +pi even for -0.0
/// imaginary parts. z = 0 returns 0 for t > 0 and throws otherwise.
Complex principal_power(Complex z, double t);

/// One application of the family formula. Nonfinite input and the
/// PerturbedPower pole at 0 both yield infinity_point.
Complex apply_map(const MapFamily& f, Complex z);

/// Radius beyond which one application strictly grows the modulus, so the
/// orbit runs monotonically to infinity. Uniform in n:
/// max(2^{1/(n-1)}, (2(|c|+|a|+1))^{1/n}, 1) + 1e-6, with a = 0 for the
/// polynomial families and t in place of n for RealPower.
double escape_radius(const MapFamily& f);

/// Escaped(m) at the first m with |z_m| > spec.radius (nonfinite iterates
/// count as escaped), Bounded otherwise. The given radius is honored as-is;
/// results certify escape to infinity only when radius >= escape_radius(f).
OrbitOutcome iterate_orbit(const MapFamily& f, Complex z0, const EscapeSpec& spec);

struct CriticalData {
    std::vector<Complex> critical_points;
    std::vector<Complex> critical_values;
};

/// PowerPoly/RealPower: critical point 0 with value c. PerturbedPower: the
/// 2n-th roots of a, with the two values c +- 2 sqrt(a) (principal root).
CriticalData critical_data(const MapFamily& f);

enum class ConnectivityClass { Cantor, McMullen, Connected };

const char* to_string(ConnectivityClass c);

struct Classification {
    // Set for PowerPoly/RealPower and for PerturbedPower with c = 0, where
    // the dichotomy/trichotomy applies. General c keeps only the records.
    std::optional<ConnectivityClass> tag;
    std::vector<OrbitOutcome> critical_orbits;  // one per free critical value
};

/// PowerPoly/RealPower: Cantor iff the orbit of 0 escapes, else Connected.
/// PerturbedPower with c = 0: Cantor iff |v+| exceeds the certified escape
/// radius outright; McMullen iff instead the orbit of R(v+) escapes;
/// Connected otherwise. The step-0 test uses escape_radius(f), not
/// spec.radius, so the split does not depend on the caller's slack.
Classification classify(const MapFamily& f, const EscapeSpec& spec);

namespace detail {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

inline Complex step_power(Complex z, int n, Complex c) { return ipow(z, n) + c; }

inline Complex step_real_power(Complex z, double t, Complex c) {
    if (z == Complex{}) return c;  // 0^t = 0 for t > 0
    return principal_power(z, t) + c;
}

inline Complex step_perturbed(Complex z, int n, Complex c, Complex a) {
    if (z == Complex{}) return infinity_point;
    const Complex zn = ipow(z, n);
    return zn + c + a / zn;
}

inline auto make_step(const PowerPoly& f) {
    return [n = f.n, c = f.c](Complex z) { return step_power(z, n, c); };
}
inline auto make_step(const RealPower& f) {
    return [t = f.t, c = f.c](Complex z) { return step_real_power(z, t, c); };
}
inline auto make_step(const PerturbedPower& f) {
    return [n = f.n, c = f.c, a = f.a](Complex z) { return step_perturbed(z, n, c, a); };
}

// Family-agnostic escape loop. NaN norms fail the <= test and so count as
// escaped, which is what we want for overflow.
template <class Step>
OrbitOutcome run_orbit(Complex z, double radius, int max_iter, const Step& step) {
    const double r2 = radius * radius;
    if (!(std::norm(z) <= r2)) return escaped_at(0);
    for (int m = 1; m <= max_iter; ++m) {
        z = step(z);
        if (!(std::norm(z) <= r2)) return escaped_at(m);
    }
    return bounded_orbit();
}

}  // namespace detail

}  // namespace dlimit
