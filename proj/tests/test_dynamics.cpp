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

#include "isochrone/dynamics.hpp"
#include "isochrone/numerics.hpp"

using namespace isochrone;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

} // namespace

TEST_CASE("turning points") {
    SUBCASE("harmonic at E = 1/2 turns at +-1") {
        const auto [xm, xp] = turning_points(harmonic_potential(1.0), 0.5);
        CHECK(xm == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(xp == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("V at the turning points equals E to 1e-12 (1 + E)") {
        const Potential p = stillinger_potential(1.0, 1.0, 1.0);
        for (double E : {1e-2, 1.0, 1e2}) {
            const auto [xm, xp] = turning_points(p, E);
            CHECK(xm < 0.0);
            CHECK(xp > 0.0);
            CHECK(std::fabs(p.V(xm) - E) <= 1e-12 * (1.0 + E));
            CHECK(std::fabs(p.V(xp) - E) <= 1e-12 * (1.0 + E));
            // lower bound from V >= x^2/8
            CHECK(std::fabs(xm) <= std::sqrt(8.0 * E) + 1e-9);
            CHECK(std::fabs(xp) <= std::sqrt(8.0 * E) + 1e-9);
        }
    }
    SUBCASE("rational wall confines the left turning point") {
        const Potential p = rational_potential(1.0, 1.0);
        const auto [xm, xp] = turning_points(p, 1e6);
        CHECK(xm > -1.0);
        CHECK(xp > 0.0);
        CHECK(std::fabs(p.V(xm) - 1e6) <= 1e-12 * (1.0 + 1e6));
    }
    SUBCASE("bounded potential reports the unreachable side") {
        Involution neg(Interval::real_line(), [](double x) { return -x; },
                       [](double) { return -1.0; }, "negation");
        const Potential bounded(1.0, neg, "bounded",
                                [](double x) { return 0.5 * x * x / (1.0 + x * x); },
                                [](double x) {
                                    const double d = 1.0 + x * x;
                                    return x / (d * d);
                                });
        CHECK_THROWS_WITH_AS(turning_points(bounded, 1.0),
                             doctest::Contains("never reaches"), std::runtime_error);
    }
    SUBCASE("nonpositive energies rejected") {
        CHECK_THROWS_AS(turning_points(harmonic_potential(1.0), 0.0), std::invalid_argument);
    }
}

TEST_CASE("period quadrature") {
    SUBCASE("harmonic periods are 2 pi to 1e-9 absolute") {
        const Potential p = harmonic_potential(1.0);
        for (double E : {0.1, 1.0, 10.0})
            CHECK(std::fabs(period_quadrature(p, E) - kTwoPi) < 1e-9);
    }
    SUBCASE("dorignac periods across four decades of energy") {
        const Potential p = dorignac_potential(1.0, 1.0);
        for (double E : {0.01, 0.1, 1.0, 10.0, 100.0})
            CHECK(std::fabs(period_quadrature(p, E) - kTwoPi) < 1e-7);
    }
    SUBCASE("quartic control is faster than harmonic") {
        const double T = period_quadrature(quartic_control(1.0), 1.0);
        CHECK(T < kTwoPi - 1e-2);
    }
    SUBCASE("omega scaling") {
        const Potential p = harmonic_potential(2.0);
        CHECK(period_quadrature(p, 1.0) == doctest::Approx(M_PI).epsilon(1e-10));
    }
}

TEST_CASE("simulate") {
    SUBCASE("harmonic orbit closes after one period") {
        const Potential p = harmonic_potential(1.0);
        const Trajectory traj = simulate(p, {1.0, 0.0, 0.0}, kTwoPi, 1e-10);
        const State end = traj.final_state();
        CHECK(std::fabs(end.x - 1.0) < 1e-8);
        CHECK(std::fabs(end.v) < 1e-8);
    }
    SUBCASE("dense interpolation matches the analytic harmonic solution") {
        const Potential p = harmonic_potential(1.0);
        const Trajectory traj = simulate(p, {1.0, 0.0, 0.0}, 10.0, 1e-10);
        for (double t : {0.1, 1.7, 4.4, 9.9}) {
            const State s = traj.at(t);
            CHECK(s.x == doctest::Approx(std::cos(t)).epsilon(1e-8));
            CHECK(s.v == doctest::Approx(-std::sin(t)).epsilon(1e-8));
        }
    }
    SUBCASE("energy drift over ten periods stays within 1e-8 E") {
        const Potential p = stillinger_potential(1.0, 1.0, 1.0);
        const auto [xm, xp] = turning_points(p, 1.0);
        (void)xm;
        const Trajectory traj = simulate(p, {xp, 0.0, 0.0}, 10.0 * kTwoPi, 1e-10);
        CHECK(traj.max_energy_drift() < 1e-8 * 1.0);
    }
    SUBCASE("a stillinger orbit returns to the turning point ten times") {
        const Potential p = stillinger_potential(1.0, 1.0, 1.0);
        const auto [xm, xp] = turning_points(p, 1.0);
        (void)xm;
        const Trajectory traj = simulate(p, {xp, 0.0, 0.0}, 10.0 * kTwoPi, 1e-10);
        int returns = 0;
        for (int k = 1; k <= 10; ++k) {
            const State s = traj.at(k * kTwoPi);
            if (std::fabs(s.x - xp) < 1e-6 && std::fabs(s.v) < 1e-6) ++returns;
        }
        CHECK(returns == 10);
    }
    SUBCASE("domain exit raises") {
        const Potential p = rational_potential(1.0, 1.0);
        CHECK_THROWS_AS(simulate(p, {-2.0, 0.0, 0.0}, 1.0, 1e-8), std::domain_error);
    }
}

TEST_CASE("period from the ODE oracle") {
    SUBCASE("harmonic with omega = 2 gives pi") {
        CHECK(std::fabs(period_ode(harmonic_potential(2.0), 1.0, 1e-10) - M_PI) < 1e-8);
    }
    SUBCASE("lambert family at E = 5") {
        const Potential p = lambert_potential(1.0, 1.0, 1.0);
        CHECK(std::fabs(period_ode(p, 5.0, 1e-10) - kTwoPi) < 1e-6);
    }
    SUBCASE("oracle agreement across families and energies") {
        const Potential ps[] = {
            rational_potential(1.0, 1.0),
            stillinger_potential(2.0, -1.0, 1.0),
            dorignac_potential(0.5, 1.0),
            lambert_potential(2.0, 0.5, 1.0),
        };
        for (const auto& p : ps) {
            for (double E : {0.05, 1.0, 20.0}) {
                const double Tq = period_quadrature(p, E);
                const double To = period_ode(p, E, 1e-10);
                CAPTURE(p.closed_form());
                CAPTURE(E);
                CHECK(std::fabs(Tq - To) <= 1e-6 * Tq);
            }
        }
    }
    SUBCASE("half-period symmetry under time reversal") {
        const Potential p = dorignac_potential(1.0, 1.0);
        const double E = 2.0;
        const auto [xm, xp] = turning_points(p, E);
        const double T = period_ode(p, E, 1e-11);
        const Trajectory traj = simulate(p, {xp, 0.0, 0.0}, T, 1e-11);
        // locate the arrival at x_minus as the half-period point
        const State mid = traj.at(0.5 * T);
        CHECK(std::fabs(mid.x - xm) < 1e-6);
        CHECK(std::fabs(mid.v) < 1e-6);
    }
}

TEST_CASE("isochrony sweep") {
    SUBCASE("harmonic passes at 1e-8") {
        const auto energies = numerics::logspace(1e-2, 1e2, 11);
        const auto res = isochrony_sweep(harmonic_potential(1.0), energies, 1e-10, 1);
        CHECK(res.summary.failures == 0);
        CHECK(res.summary.max_rel_period_deviation < 1e-8);
        REQUIRE(res.reports.size() == 11);
        for (const auto& r : res.reports) {
            CHECK(r.ok());
            CHECK(r.T_expected == doctest::Approx(kTwoPi));
            CHECK(r.x_minus < 0.0);
            CHECK(r.x_plus > 0.0);
        }
    }
    SUBCASE("quartic control is reported as non-isochronous") {
        const auto energies = numerics::logspace(1e-1, 1e1, 5);
        const auto res = isochrony_sweep(quartic_control(1.0), energies, 1e-10, 1);
        CHECK(res.summary.failures == 0);
        CHECK(res.summary.max_rel_period_deviation > 1e-2);
    }
    SUBCASE("failures are collected, not fatal") {
        Involution neg(Interval::real_line(), [](double x) { return -x; },
                       [](double) { return -1.0; }, "negation");
        const Potential bounded(1.0, neg, "bounded",
                                [](double x) { return 0.5 * x * x / (1.0 + x * x); },
                                [](double x) {
                                    const double d = 1.0 + x * x;
                                    return x / (d * d);
                                });
        const double energies[] = {0.1, 1.0}; // 1.0 exceeds sup V = 1/2
        const auto res = isochrony_sweep(bounded, energies, 1e-10, 1);
        CHECK(res.summary.failures == 1);
        CHECK(res.reports[0].ok());
        CHECK_FALSE(res.reports[1].ok());
        CHECK(res.reports[1].error.find("never reaches") != std::string::npos);
    }
    SUBCASE("parallel and serial sweeps agree bitwise") {
        const Potential p = dorignac_potential(1.0, 1.0);
        const auto energies = numerics::logspace(1e-2, 1e2, 9);
        const auto serial = isochrony_sweep(p, energies, 1e-10, 1);
        const auto parallel = isochrony_sweep(p, energies, 1e-10, 4);
        REQUIRE(serial.reports.size() == parallel.reports.size());
        for (size_t i = 0; i < serial.reports.size(); ++i) {
            CHECK(serial.reports[i].T_quadrature == parallel.reports[i].T_quadrature);
            CHECK(serial.reports[i].T_ode == parallel.reports[i].T_ode);
        }
        CHECK(serial.summary.max_rel_period_deviation ==
              parallel.summary.max_rel_period_deviation);
    }
}

TEST_CASE("rational family with a wall stays isochronous under the cap") {
    const Potential p = rational_potential(1.0, 1.0);
    const auto energies = numerics::logspace(1e-2, 1e2, 11);
    const auto res = isochrony_sweep(p, energies, 1e-10, 0);
    CHECK(res.summary.failures == 0);
    CHECK(res.summary.max_rel_period_deviation < 1e-6);
    for (const auto& r : res.reports) CHECK(r.x_minus > -1.0);
}
