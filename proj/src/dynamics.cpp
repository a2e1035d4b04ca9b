#include "dlimit/dynamics.hpp"

#include <algorithm>

namespace dlimit {

using detail::overloaded;

void validate(const MapFamily& f) {
    std::visit(overloaded{
                   [](const PowerPoly& p) {
                       if (p.n < 2) throw std::invalid_argument("PowerPoly: n must be >= 2");
                       if (!is_finite_point(p.c)) throw std::invalid_argument("PowerPoly: c must be finite");
                   },
                   [](const RealPower& p) {
                       if (!(p.t > 1.0)) throw std::invalid_argument("RealPower: t must be > 1");
                       if (!is_finite_point(p.c)) throw std::invalid_argument("RealPower: c must be finite");
                   },
                   [](const PerturbedPower& p) {
                       if (p.n < 2) throw std::invalid_argument("PerturbedPower: n must be >= 2");
                       if (p.a == Complex{}) throw std::invalid_argument("PerturbedPower: a must be nonzero");
                       if (!is_finite_point(p.c) || !is_finite_point(p.a))
                           throw std::invalid_argument("PerturbedPower: parameters must be finite");
                   }},
               f);
}

Complex principal_power(Complex z, double t) {
    if (z == Complex{}) {
        if (t > 0.0) return {};
        throw std::invalid_argument("principal_power: z = 0 requires t > 0");
    }
    const double im = z.imag() == 0.0 ? 0.0 : z.imag();
    const double theta = std::atan2(im, z.real());
    const double mod = std::exp(t * std::log(std::abs(z)));
    return {mod * std::cos(t * theta), mod * std::sin(t * theta)};
}

Complex apply_map(const MapFamily& f, Complex z) {
    if (!is_finite_point(z)) return infinity_point;
    return std::visit(overloaded{
                          [&](const PowerPoly& p) { return detail::step_power(z, p.n, p.c); },
                          [&](const RealPower& p) { return detail::step_real_power(z, p.t, p.c); },
                          [&](const PerturbedPower& p) { return detail::step_perturbed(z, p.n, p.c, p.a); }},
                      f);
}

namespace {

double radius_formula(double degree, double c_mag, double a_mag) {
    const double grow = std::pow(2.0, 1.0 / (degree - 1.0));
    const double dominate = std::pow(2.0 * (c_mag + a_mag + 1.0), 1.0 / degree);
    return std::max({grow, dominate, 1.0}) + 1e-6;
}

}  // namespace

double escape_radius(const MapFamily& f) {
    validate(f);
    return std::visit(overloaded{
                          [](const PowerPoly& p) { return radius_formula(p.n, std::abs(p.c), 0.0); },
                          [](const RealPower& p) { return radius_formula(p.t, std::abs(p.c), 0.0); },
                          [](const PerturbedPower& p) {
                              return radius_formula(p.n, std::abs(p.c), std::abs(p.a));
                          }},
                      f);
}

OrbitOutcome iterate_orbit(const MapFamily& f, Complex z0, const EscapeSpec& spec) {
    validate(f);
    if (spec.max_iter < 0) throw std::invalid_argument("iterate_orbit: max_iter must be >= 0");
    if (!(spec.radius > 0.0)) throw std::invalid_argument("iterate_orbit: radius must be positive");
    return std::visit(
        [&](const auto& fam) {
            return detail::run_orbit(z0, spec.radius, spec.max_iter, detail::make_step(fam));
        },
        f);
}

CriticalData critical_data(const MapFamily& f) {
    validate(f);
    return std::visit(overloaded{
                          [](const PowerPoly& p) {
                              return CriticalData{{Complex{}}, {p.c}};
                          },
                          [](const RealPower& p) {
                              return CriticalData{{Complex{}}, {p.c}};
                          },
                          [](const PerturbedPower& p) {
                              CriticalData out;
                              const double mod = std::pow(std::abs(p.a), 1.0 / (2.0 * p.n));
                              const double base = std::arg(p.a) / (2.0 * p.n);
                              out.critical_points.reserve(2 * p.n);
                              for (int k = 0; k < 2 * p.n; ++k)
                                  out.critical_points.push_back(
                                      std::polar(mod, base + k * M_PI / p.n));
                              const Complex sa = std::sqrt(p.a);
                              out.critical_values = {p.c + 2.0 * sa, p.c - 2.0 * sa};
                              return out;
                          }},
                      f);
}

const char* to_string(ConnectivityClass c) {
    switch (c) {
        case ConnectivityClass::Cantor: return "cantor";
        case ConnectivityClass::McMullen: return "mcmullen";
        case ConnectivityClass::Connected: return "connected";
    }
    return "?";
}

Classification classify(const MapFamily& f, const EscapeSpec& spec) {
    validate(f);
    const EscapeSpec eff{std::max(spec.radius, escape_radius(f)), spec.max_iter};
    Classification out;

    if (const auto* p = std::get_if<PerturbedPower>(&f)) {
        const Complex sa = std::sqrt(p->a);
        const Complex v_plus = p->c + 2.0 * sa;
        const Complex v_minus = p->c - 2.0 * sa;
        out.critical_orbits = {iterate_orbit(f, v_plus, eff), iterate_orbit(f, v_minus, eff)};
        if (p->c == Complex{}) {
            if (std::abs(v_plus) > escape_radius(f))
                out.tag = ConnectivityClass::Cantor;
            else if (iterate_orbit(f, apply_map(f, v_plus), eff).escaped())
                out.tag = ConnectivityClass::McMullen;
            else
                out.tag = ConnectivityClass::Connected;
        }
        return out;
    }

    const OrbitOutcome orbit = iterate_orbit(f, Complex{}, eff);
    out.critical_orbits = {orbit};
    out.tag = orbit.escaped() ? ConnectivityClass::Cantor : ConnectivityClass::Connected;
    return out;
}

}  // namespace dlimit
