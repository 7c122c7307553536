// Copyright 2026 The Isochrone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "isochrone/families.hpp"
#include "isochrone/implicit.hpp"
#include "isochrone/numerics.hpp"
#include "isochrone/potential.hpp"

using namespace isochrone;

namespace {

std::vector<Potential> shipped_families() {
    std::vector<Potential> out;
    out.push_back(rational_potential(1.0, 1.0));
    out.push_back(rational_potential(-0.5, 1.0));
    out.push_back(stillinger_potential(1.0, 1.0, 1.0));
    out.push_back(stillinger_potential(2.0, -1.0, 1.0));
    out.push_back(dorignac_potential(1.0, 1.0));
    out.push_back(dorignac_potential(0.5, 1.0));
    out.push_back(lambert_potential(1.0, 1.0, 1.0));
    out.push_back(lambert_potential(2.0, 0.5, 1.0));
    return out;
}

} // namespace

TEST_CASE("harmonic potential") {
    const Potential p = harmonic_potential(1.0);
    CHECK(p.V(2.0) == doctest::Approx(2.0));        // x^2/2
    CHECK(p.V_from_involution(2.0) == doctest::Approx(2.0).epsilon(1e-15));
    const Potential p2 = harmonic_potential(2.0);
    CHECK(p2.g(3.0) == doctest::Approx(12.0));      // omega^2 x
}

TEST_CASE("rational potential") {
    SUBCASE("a = 0 is the linear oscillator") {
        const Potential p = rational_potential(0.0, 2.0);
        CHECK(p.V(1.5) == doctest::Approx(0.5 * 4.0 * 1.5 * 1.5));
    }
    SUBCASE("hand value 9/32 at a = 1, x = 1, both routes") {
        const Potential p = rational_potential(1.0, 1.0);
        CHECK(p.V(1.0) == doctest::Approx(9.0 / 32.0).epsilon(1e-15));
        CHECK(p.V_from_involution(1.0) == doctest::Approx(9.0 / 32.0).epsilon(1e-14));
    }
    SUBCASE("a = -1 lives on (-inf, 1)") {
        const Potential p = rational_potential(-1.0, 1.0);
        CHECK(p.domain().hi() == doctest::Approx(1.0));
        CHECK_THROWS_AS(p.V(1.5), std::domain_error);
    }
    SUBCASE("closed g matches a finite difference of V") {
        const Potential p = rational_potential(1.0, 1.0);
        for (double x : {-0.6, 0.3, 2.0, 9.0}) {
            const double fd = numerics::central_derivative(
                [&p](double t) { return p.V(t); }, x, 1e-4 * (1.0 + std::fabs(x)));
            CHECK(std::fabs(p.g(x) - fd) <= 1e-7 * (1.0 + std::fabs(fd)));
        }
    }
}

TEST_CASE("stillinger potential") {
    SUBCASE("a = 0 reduces to the linear oscillator") {
        const Potential p = stillinger_potential(3.0, 0.0, 1.0);
        for (double x : {-2.0, 0.5, 4.0})
            CHECK(p.V(x) == doctest::Approx(0.5 * x * x).epsilon(1e-12));
    }
    SUBCASE("V(0) cancels algebraically") {
        const Potential p = stillinger_potential(1.0, 1.0, 1.0);
        CHECK(std::fabs(p.V(0.0)) < 1e-14);
    }
    SUBCASE("hand value 13 - 4 sqrt(10) at lambda = a = omega = x = 1, dual route") {
        const Potential p = stillinger_potential(1.0, 1.0, 1.0);
        const double expected = 13.0 - 4.0 * std::sqrt(10.0);
        CHECK(p.V(1.0) == doctest::Approx(expected).epsilon(1e-14));
        CHECK(p.V_from_involution(1.0) == doctest::Approx(expected).epsilon(1e-13));
        CHECK(std::fabs(p.V(1.0) - p.V_from_involution(1.0)) < 1e-12);
    }
    SUBCASE("closed g equals the involution route") {
        const Potential p = stillinger_potential(1.0, 1.0, 1.0);
        for (double x : numerics::chebyshev_points(-10.0, 10.0, 101))
            CHECK(std::fabs(p.g(x) - p.g_from_involution(x)) <=
                  1e-9 * (1.0 + std::fabs(p.g(x))));
    }
    SUBCASE("omega = 0 rejected, negative omega normalized") {
        CHECK_THROWS_AS(stillinger_potential(1.0, 1.0, 0.0), std::invalid_argument);
        const Potential p = stillinger_potential(1.0, 1.0, -2.0);
        CHECK(p.omega() == 2.0);
    }
}

TEST_CASE("stillinger xi-beta reparameterization") {
    SUBCASE("xi = 0 is harmonic") {
        const Potential p = stillinger_xi_beta(0.0, 1.0, 1.0);
        for (double x : {-3.0, 0.7, 5.0})
            CHECK(p.V(x) == doctest::Approx(0.5 * x * x).epsilon(1e-12));
        CHECK(p.V(0.0) == doctest::Approx(0.0));
    }
    SUBCASE("matches the quadratic-family form under the parameter map") {
        const Potential a = stillinger_xi_beta(0.5, 1.0, 1.0);
        const Potential b = stillinger_potential(0.75, 0.5, 1.0);
        for (double x : numerics::chebyshev_points(-10.0, 10.0, 101))
            CHECK(std::fabs(a.V(x) - b.V(x)) <= 1e-11 * (1.0 + std::fabs(b.V(x))));
    }
    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(stillinger_xi_beta(1.0, 1.0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(stillinger_xi_beta(-1.5, 1.0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(stillinger_xi_beta(0.5, 0.0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(stillinger_xi_beta(0.5, 1.0, -1.0), std::invalid_argument);
    }
}

TEST_CASE("dorignac potential") {
    SUBCASE("V(0) = 0") {
        CHECK(dorignac_potential(1.0, 1.0).V(0.0) == doctest::Approx(0.0));
    }
    SUBCASE("dual-path agreement at beta = omega = x = 1") {
        const Potential p = dorignac_potential(1.0, 1.0);
        const Involution h = dorignac_involution(1.0);
        const double via_h = 0.125 * std::pow(1.0 - h(1.0), 2);
        CHECK(p.V(1.0) == doctest::Approx(via_h).epsilon(1e-12));
    }
    SUBCASE("global inequality margin at sample points") {
        const Potential p = dorignac_potential(1.0, 1.0);
        for (double x : {-20.0, -5.0, -1.0, 1.0, 5.0, 20.0})
            CHECK(p.V(x) >= x * x / 8.0 - 1e-12 * (1.0 + x * x));
    }
    SUBCASE("zeros rejected") {
        CHECK_THROWS_AS(dorignac_potential(0.0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(dorignac_potential(1.0, 0.0), std::invalid_argument);
    }
}

TEST_CASE("gcmp force law") {
    SUBCASE("b = 0 is linear") {
        const auto g = g_cmp(3.0, 0.0, 1.0);
        for (double x : {-2.0, 0.4, 7.0})
            CHECK(g(x) == doctest::Approx(9.0 * x).epsilon(1e-13));
    }
    SUBCASE("g(0) = 0") {
        const auto g = g_cmp(1.0, 2.0, 1.25);
        CHECK(std::fabs(g(0.0)) < 1e-13);
    }
    SUBCASE("reduces to the stillinger force under lambda = c - b^2/4, a = b/2") {
        const auto g = g_cmp(1.0, 2.0, 1.25); // lambda = 0.25, a = 1
        const Potential still = stillinger_potential(0.25, 1.0, 1.0);
        for (double x : numerics::chebyshev_points(-10.0, 10.0, 101))
            CHECK(std::fabs(g(x) - still.g(x)) <= 1e-10 * (1.0 + std::fabs(still.g(x))));
    }
    SUBCASE("globality condition enforced") {
        CHECK_THROWS_AS(g_cmp(1.0, 2.0, 1.0), std::invalid_argument);  // b^2 - 4c = 0
        CHECK_THROWS_AS(g_cmp(1.0, 3.0, 1.0), std::invalid_argument);  // > 0
        CHECK_THROWS_AS(g_cmp(1.0, 1.0, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(g_cmp(0.0, 0.0, 1.0), std::invalid_argument);
    }
}

TEST_CASE("check_global_inequality") {
    SUBCASE("harmonic margin is 3 w^2 x^2 / 8 with minimum at 0") {
        const Potential p = harmonic_potential(1.0);
        const auto grid = numerics::chebyshev_points(-5.0, 5.0, 101);
        const auto rep = check_global_inequality(p, grid);
        CHECK(rep.violations.empty());
        CHECK(rep.min_margin == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(std::fabs(rep.min_margin_x) < 1e-6);
    }
    SUBCASE("all families pass on 1001-point grids") {
        for (const auto& p : shipped_families()) {
            const auto grid = numerics::default_grid(p.domain());
            const auto rep = check_global_inequality(p, grid);
            CAPTURE(p.closed_form());
            CHECK(rep.violations.empty());
        }
    }
    SUBCASE("a deliberately shallow well is flagged") {
        Involution neg(Interval::real_line(), [](double x) { return -x; },
                       [](double) { return -1.0; }, "negation");
        const Potential broken(1.0, neg, "broken",
                               [](double x) { return x * x / 16.0; },
                               [](double x) { return x / 8.0; });
        const auto grid = numerics::chebyshev_points(-2.0, 2.0, 41);
        const auto rep = check_global_inequality(broken, grid);
        CHECK_FALSE(rep.violations.empty());
        CHECK(rep.min_margin < 0.0);
    }
}

TEST_CASE("necessary derivative conditions") {
    SUBCASE("harmonic: identities hold within fit noise") {
        const auto rep = check_necessary_conditions(harmonic_potential(1.0));
        CHECK(rep.v4_residual < 1e-6);
        CHECK(rep.v6_residual < 1e-6);
        CHECK(rep.derivatives[2] == doctest::Approx(1.0).epsilon(1e-6));
    }
    SUBCASE("every shipped family satisfies both identities") {
        for (const auto& p : shipped_families()) {
            const auto rep = check_necessary_conditions(p);
            CAPTURE(p.closed_form());
            CHECK(rep.v4_residual < 1e-4);
            CHECK(rep.v6_residual < 1e-4);
            CHECK(rep.derivatives[2] ==
                  doctest::Approx(p.omega() * p.omega()).epsilon(1e-6));
            CHECK_FALSE(rep.conditioning_warning);
        }
    }
    SUBCASE("quartic control is flagged by the 4th-derivative identity") {
        const auto rep = check_necessary_conditions(quartic_control(1.0));
        CHECK(rep.v4_residual > 1.0);
        CHECK(rep.derivatives[4] == doctest::Approx(24.0).epsilon(1e-6));
        CHECK(std::fabs(rep.derivatives[3]) < 1e-4);
    }
}

TEST_CASE("dual-path identity for every closed-form potential") {
    for (const auto& p : shipped_families()) {
        const auto grid = numerics::default_grid(p.domain(), 301);
        for (double x : grid) {
            const double a = p.V(x), b = p.V_from_involution(x);
            CAPTURE(p.closed_form());
            CAPTURE(x);
            CHECK(std::fabs(a - b) <= 1e-11 * (1.0 + std::fabs(a)));
        }
    }
}

TEST_CASE("g is an odd-signed restoring force") {
    for (const auto& p : shipped_families()) {
        for (double x : numerics::default_grid(p.domain(), 201)) {
            if (x == 0.0) continue;
            CAPTURE(p.closed_form());
            CHECK(x * p.g(x) > 0.0);
        }
    }
}

TEST_CASE("finite differences of V reproduce g") {
    for (const auto& p : shipped_families()) {
        for (double x : numerics::default_grid(p.domain(), 41)) {
            double step = 1e-4 * (1.0 + std::fabs(x));
            const Interval& J = p.domain();
            if (J.finite_lo()) step = std::min(step, 0.25 * (x - J.lo()));
            if (J.finite_hi()) step = std::min(step, 0.25 * (J.hi() - x));
            const double fd = numerics::central_derivative(
                [&p](double t) { return p.V(t); }, x, step);
            CAPTURE(p.closed_form());
            CAPTURE(x);
            CHECK(std::fabs(p.g(x) - fd) <= 1e-7 * (1.0 + std::fabs(fd)));
        }
    }
}

TEST_CASE("implicit involutions make working potentials too") {
    const Involution h = implicit_involution(quintic_f());
    const Potential p = potential_from_involution(h, 1.0);
    CHECK(p.V(0.0) == 0.0);
    CHECK(p.V(1.0) == doctest::Approx(0.125 * std::pow(1.0 - h(1.0), 2)).epsilon(1e-13));
    CHECK(p.g(0.5) > 0.0);
}
