#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dlimit/geometry.hpp"

using namespace dlimit;

TEST_CASE("pointwise distances to analytic targets") {
    CHECK(distance_to_target({0, 0}, Circle{1.0}) == 1.0);
    CHECK(distance_to_target({0.5, 0}, ClosedDisk{1.0}) == 0.0);
    CHECK(distance_to_target({1.5, 0}, ClosedDisk{1.0}) == doctest::Approx(0.5));
    CHECK(distance_to_target({0.1, 0}, ClosedAnnulus{0.5, 1.5}) == doctest::Approx(0.4));
    CHECK(distance_to_target({0, 2}, ClosedAnnulus{0.5, 1.5}) == doctest::Approx(0.5));
    CHECK(distance_to_target({0, 0}, Limacon{{0, 0}}) == doctest::Approx(0.25).epsilon(1e-8));
}

TEST_CASE("limacon distance against a dense sampling oracle") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> coord(-1.2, 1.2);
    std::uniform_real_distribution<double> cmag(0.0, 2.0);
    std::uniform_real_distribution<double> ang(-M_PI, M_PI);
    for (int trial = 0; trial < 25; ++trial) {
        const Complex c = std::polar(cmag(rng), ang(rng));
        const Complex z{coord(rng), coord(rng)};
        double brute = 1e300;
        for (int k = 0; k < 200000; ++k)
            brute = std::min(brute, std::abs(z - limacon_point(c, 2 * M_PI * k / 200000.0)));
        CHECK(distance_to_target(z, Limacon{c}) == doctest::Approx(brute).epsilon(1e-6));
    }
}

TEST_CASE("limacon parametrization") {
    for (double theta : {0.0, 0.7, 2.0, 3.14, 5.5})
        CHECK(std::abs(limacon_point({0, 0}, theta)) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(std::abs(limacon_point({1, 0}, 0.0) - Complex{1, 0}) < 1e-14);
    CHECK(std::abs(Complex{1, 0} - 2.0 * std::sqrt(Complex{1, 0})) ==
          doctest::Approx(1.0));  // the defining property at theta = 0
    CHECK(std::abs(limacon_point({1, 0}, M_PI)) < 1e-14);  // cardioid cusp
}

TEST_CASE("limacon points carry critical values of modulus one") {
    std::mt19937 rng(202408);
    std::uniform_real_distribution<double> cmag(0.0, 3.0);
    std::uniform_real_distribution<double> ang(-M_PI, M_PI);
    std::uniform_real_distribution<double> th(0.0, 2 * M_PI);
    for (int trial = 0; trial < 10000; ++trial) {
        const Complex c = std::polar(cmag(rng), ang(rng));
        const Complex a = limacon_point(c, th(rng));
        const Complex sa = std::sqrt(a);
        const double plus = std::abs(std::abs(c + 2.0 * sa) - 1.0);
        const double minus = std::abs(std::abs(c - 2.0 * sa) - 1.0);
        CHECK(std::min(plus, minus) < 1e-10);
    }
}

TEST_CASE("limacon rotation covariance") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> cmag(0.05, 2.5);
    std::uniform_real_distribution<double> ang(-M_PI, M_PI);
    for (int trial = 0; trial < 50; ++trial) {
        const Complex c = std::polar(cmag(rng), ang(rng));
        const double phi = std::arg(c);
        const Complex rotation = std::polar(1.0, 2.0 * phi);
        for (int k = 0; k < 64; ++k) {
            const double theta = 2 * M_PI * k / 64.0;
            const Complex direct = limacon_point(c, theta);
            const Complex rotated = rotation * limacon_point(std::abs(c), theta - phi);
            CHECK(std::abs(direct - rotated) < 1e-12);
        }
    }
}

TEST_CASE("limacon moduli stay inside the l..u annulus") {
    std::mt19937 rng(12);
    std::uniform_real_distribution<double> cmag(0.0, 3.0);
    std::uniform_real_distribution<double> ang(-M_PI, M_PI);
    for (int trial = 0; trial < 40; ++trial) {
        const Complex c = std::polar(cmag(rng), ang(rng));
        const auto bounds = annulus_bounds(std::abs(c));
        for (int k = 0; k < 4096; ++k) {
            const double m = std::abs(limacon_point(c, 2 * M_PI * k / 4096.0));
            CHECK(m >= bounds.lower - 1e-12);
            CHECK(m <= bounds.upper + 1e-12);
        }
    }
}

TEST_CASE("superattracting centers") {
    CHECK(std::abs(superattracting_center(5, 0) - Complex{std::pow(2.0, -2.5), 0}) < 1e-15);
    CHECK(std::abs(superattracting_center(3, 1) - Complex{-0.125, 0}) < 1e-15);
    CHECK_THROWS_AS(superattracting_center(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(superattracting_center(5, 4), std::invalid_argument);
    CHECK_THROWS_AS(superattracting_center(5, -1), std::invalid_argument);

    double prev = std::abs(superattracting_center(3, 0));
    for (int n = 4; n <= 64; ++n) {
        const double mod = std::abs(superattracting_center(n, 0));
        CHECK(mod > prev);  // 2^{-2n/(n-1)} climbs toward 1/4
        CHECK(mod < 0.25);
        prev = mod;
    }
    CHECK(std::abs(prev - 0.25) < 0.006);
}

TEST_CASE("center dynamics match the parity table") {
    const auto odd_odd = verify_center_dynamics(3, 1);
    CHECK(odd_odd.case_tag == "odd-odd");
    CHECK(odd_odd.residual_plus < 1e-12);
    CHECK(odd_odd.residual_minus < 1e-12);
    CHECK(std::abs(odd_odd.v_plus - Complex{0, 1.0 / std::sqrt(2.0)}) < 1e-14);

    CHECK(verify_center_dynamics(4, 0).case_tag == "even-even");
    CHECK(verify_center_dynamics(4, 0).residual_plus < 1e-12);
    CHECK(verify_center_dynamics(3, 0).case_tag == "odd-even");
    CHECK(verify_center_dynamics(3, 0).residual_minus < 1e-12);

    for (int n = 3; n <= 16; ++n)
        for (int k = 0; k <= n - 2; ++k) {
            const auto rep = verify_center_dynamics(n, k);
            CHECK(rep.residual_plus < 1e-9);
            CHECK(rep.residual_minus < 1e-9);
        }
}

TEST_CASE("roots of minus one") {
    const auto q2 = roots_of_minus_one(2);
    REQUIRE(q2.size() == 1);
    CHECK(std::abs(q2[0] - Complex{-1, 0}) < 1e-15);

    const auto q3 = roots_of_minus_one(3);
    REQUIRE(q3.size() == 2);
    CHECK(std::abs(q3[0] - Complex{0, 1}) < 1e-15);
    CHECK(std::abs(q3[1] - Complex{0, -1}) < 1e-15);

    const auto q5 = roots_of_minus_one(5);
    REQUIRE(q5.size() == 4);
    for (std::size_t k = 0; k + 1 < q5.size(); ++k) {
        CHECK(std::abs(std::abs(q5[k]) - 1.0) < 1e-15);
        const double gap = std::arg(q5[k + 1] / q5[k]);
        CHECK(std::abs(gap - M_PI / 2) < 1e-12);
    }

    for (int n = 2; n <= 20; ++n)
        for (const auto& c : roots_of_minus_one(n)) CHECK(std::abs(ipow(c, n) + c) < 1e-12);

    CHECK_THROWS_AS(roots_of_minus_one(1), std::invalid_argument);
}

TEST_CASE("annulus bounds") {
    CHECK(annulus_bounds(1.0).lower == 0.0);
    CHECK(annulus_bounds(1.0).upper == 1.0);
    CHECK(annulus_bounds(0.0).lower == 0.25);
    CHECK(annulus_bounds(0.0).upper == 0.25);
    CHECK(annulus_bounds(3.0).lower == 1.0);
    CHECK(annulus_bounds(3.0).upper == 4.0);
}

TEST_CASE("radial roots: quadratic closed forms at n = 2") {
    // r^2 + r/2 - 1/2 and r^2 - r/2 - 1/2, solved independently
    const double u_exact = (-0.5 + std::sqrt(0.25 + 2.0)) / 2.0;
    const double v_exact = (0.5 + std::sqrt(0.25 + 2.0)) / 2.0;
    const auto b = radial_roots(2, 1.0);
    CHECK(b.u == doctest::Approx(u_exact).epsilon(1e-12));
    CHECK(b.v == doctest::Approx(v_exact).epsilon(1e-12));
    CHECK(b.u == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(b.v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("radial root orderings") {
    for (int n = 2; n <= 64; ++n)
        for (double c_abs : {0.25, 0.5, 1.0, 1.5, 2.0, 3.0}) {
            const auto b = radial_roots(n, c_abs);
            CHECK(b.u > 0.0);
            CHECK(b.u < b.v);
            if (b.x) {
                REQUIRE(b.y.has_value());
                // u_n and x_n pinch onto |c| as n grows, down to double
                // resolution, so the strict ordering gets 1e-12 of slack
                CHECK(b.u < c_abs + 1e-12);
                CHECK(c_abs < *b.x + 1e-12);
                CHECK(*b.x < *b.y);
                CHECK(c_abs < 1.0);  // Claim 6: no x,y once |c| >= 1
            }
        }
    // h(0.5) = -1/16 at n = 4, |c| = 1/4: both roots exist in the brackets
    const auto b = radial_roots(4, 0.25);
    REQUIRE(b.x.has_value());
    CHECK(*b.x > 0.25);
    CHECK(*b.x < 0.5);
    CHECK(*b.y > 0.5);
    CHECK(*b.y < 1.0);
    CHECK_THROWS_AS(radial_roots(1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(radial_roots(4, 0.0), std::invalid_argument);
}

TEST_CASE("radial roots approach 1 for |c| >= 1") {
    for (double c_abs : {1.0, 1.5, 2.0, 3.0}) {
        double prev_u = 10, prev_v = 10;
        for (int n = 2; n <= 64; ++n) {
            const auto b = radial_roots(n, c_abs);
            const double gu = std::abs(b.u - 1.0), gv = std::abs(b.v - 1.0);
            CHECK(gu <= prev_u + 1e-12);
            CHECK(gv <= prev_v + 1e-12);
            prev_u = gu;
            prev_v = gv;
        }
        // measured worst gap at n = 64 is 5.47e-2 (u at |c| = 1); the
        // approach is O(log n / n), so the bound is frozen at 0.06
        CHECK(prev_u < 0.06);
        CHECK(prev_v < 0.06);
    }
}

TEST_CASE("f is negative below u and positive above") {
    for (int n : {2, 5, 16, 33})
        for (double c_abs : {0.3, 1.0, 2.5}) {
            const auto b = radial_roots(n, c_abs);
            for (int k = 1; k <= 20; ++k) {
                const double below = b.u * k / 21.0;
                const double above = b.u * (1.0 + 0.2 * k);
                if (below > 0)
                    CHECK(std::pow(below, n) + below / 2 - c_abs / 2 < 0);
                CHECK(std::pow(above, n) + above / 2 - c_abs / 2 > 0);
            }
        }
}

TEST_CASE("sector solutions for |c| >= 1") {
    for (const Complex c : {Complex{1.5, 0}, Complex{2, 0}, Complex{0, 1}}) {
        for (int n = 4; n <= 12; ++n) {
            const auto sols = critical_fixed_solutions(n, c);
            REQUIRE(sols.size() == std::size_t(n));
            const auto band = radial_roots(n, std::abs(c));
            std::vector<bool> seen(n, false);
            for (const auto& s : sols) {
                CHECK(s.residual < 1e-10);
                CHECK(std::abs(s.w) >= band.u * (1 - 1e-6));
                CHECK(std::abs(s.w) <= band.v * (1 + 1e-6));
                REQUIRE(s.k.has_value());
                CHECK(!seen[*s.k]);
                seen[*s.k] = true;
                // a = w^{2n} makes w a fixed critical point of R_{n,c,a}
                const Complex image = apply_map(PerturbedPower{n, c, s.a}, s.w);
                CHECK(std::abs(image - s.w) < 1e-8);
            }
        }
    }
}

TEST_CASE("sector solutions for |c| < 1 keep one rootless of sector") {
    const Complex c{0.25, 0};
    for (int n = 4; n <= 12; ++n) {
        const auto sols = critical_fixed_solutions(n, c);
        REQUIRE(sols.size() == std::size_t(n));
        const auto band = radial_roots(n, 0.25);
        REQUIRE(band.x.has_value());
        int none_count = 0;
        std::vector<bool> seen(n - 1, false);
        for (const auto& s : sols) {
            CHECK(s.residual < 1e-10);
            CHECK(std::abs(s.w) >= band.u * (1 - 1e-6));
            CHECK(std::abs(s.w) <= band.v * (1 + 1e-6));
            if (!s.k) {
                ++none_count;
                // for real positive c the small root solves h exactly
                CHECK(std::abs(std::abs(s.w) - *band.x) < 1e-9);
            } else {
                CHECK(!seen[*s.k]);
                seen[*s.k] = true;
            }
        }
        CHECK(none_count == 1);
    }
}

TEST_CASE("sector solutions in the c -> 0 limit") {
    const Complex c{1e-8, 0};
    for (int n : {3, 6, 11}) {
        const auto sols = critical_fixed_solutions(n, c);
        const double want_w = std::pow(2.0, -1.0 / (n - 1));
        const double want_a = std::pow(2.0, -2.0 * n / (n - 1.0));
        for (const auto& s : sols) {
            if (!s.k) {
                CHECK(std::abs(s.w) < 1e-6);  // the root shadowing w = c
                continue;
            }
            CHECK(std::abs(std::abs(s.w) - want_w) < 1e-6);
            CHECK(std::abs(std::abs(s.a) - want_a) < 1e-5);
        }
    }
}

TEST_CASE("sector parameters approach the limacon") {
    // measured gaps: 1.93e-2 worst at n = 32 (c = 2), 9.6e-3 at n = 64
    for (const Complex c : {Complex{0.25, 0}, Complex{1.5, 0}, Complex{2, 0}, Complex{0, 1}}) {
        double gap32 = 0, gap64 = 0;
        for (const auto& s : critical_fixed_solutions(32, c))
            if (s.k) gap32 = std::max(gap32, distance_to_target(s.a, Limacon{c}));
        for (const auto& s : critical_fixed_solutions(64, c))
            if (s.k) gap64 = std::max(gap64, distance_to_target(s.a, Limacon{c}));
        CHECK(gap32 < 0.025);
        CHECK(gap64 < 0.012);
        CHECK(gap64 < gap32);
    }
}

TEST_CASE("sector solution argument errors") {
    CHECK_THROWS_AS(critical_fixed_solutions(1, {1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(critical_fixed_solutions(5, {0, 0}), std::invalid_argument);
}
