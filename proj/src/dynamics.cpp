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

#include "isochrone/dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "isochrone/numerics.hpp"

namespace isochrone {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double energy_of(const Potential& p, double x, double v) {
    return 0.5 * v * v + p.V(x);
}

/// Finds the x > 0 (side = +1) or x < 0 (side = -1) with V(x) = target,
/// assuming V is strictly increasing away from 0 on that side.
double solve_side(const Potential& p, double target, int side) {
    const Interval& J = p.domain();
    const double guess = std::sqrt(8.0 * target) / p.omega(); // lower-bound radius from V >= w^2 x^2/8
    double far;
    const double wall = side > 0 ? J.hi() : J.lo();
    if (std::isfinite(wall)) {
        // approach the wall until V clears the target (V blows up there for
        // the shipped families; if it does not, the energy is inadmissible)
        far = side > 0 ? std::min(guess, wall - 1e-3 * std::fabs(wall))
                       : std::max(-guess, wall + 1e-3 * std::fabs(wall));
        if (!J.contains(far)) far = 0.5 * wall; // guess overshot the wall
        double gap = wall - far;
        int tries = 0;
        while (p.V(far) < target) {
            gap *= 0.0625;
            const double next = wall - gap;
            if (!(std::fabs(gap) > 4.0 * std::numeric_limits<double>::epsilon() *
                                       (1.0 + std::fabs(wall))) ||
                ++tries > 60)
                throw std::runtime_error(
                    "turning_points: V never reaches E = " + std::to_string(target) +
                    " on the " + (side > 0 ? std::string("right") : std::string("left")) +
                    " side of the domain " + J.str());
            far = next;
        }
    } else {
        far = side > 0 ? guess : -guess;
        int tries = 0;
        // the global inequality makes the first guess sufficient for every
        // potential built from an involution; controls may need more room
        while (p.V(far) < target) {
            far *= 2.0;
            if (std::fabs(far) > 1e154 || ++tries > 600)
                throw std::runtime_error(
                    "turning_points: V never reaches E = " + std::to_string(target) +
                    " on the " + (side > 0 ? std::string("right") : std::string("left")) +
                    " side (potential appears bounded)");
        }
    }
    auto fn = [&p, target](double x) { return p.V(x) - target; };
    const auto res = numerics::find_root(fn, 0.0, far, -target, p.V(far) - target,
                                         0.0, 4.0 * std::numeric_limits<double>::epsilon(),
                                         1e-13 * (1.0 + target), 200);
    return res.x;
}

/// Time contribution of one turning-point tail, integrated in
/// u = sqrt(E - V(x)):  Int dx/sqrt(E-V) = Int_0^{u_c} 2 du / g(x(u)).
/// `side` = +1 for the right tail [xc, x_plus], -1 for the left one.
double tail_time(const Potential& p, double E, double xc, double xt, int side) {
    const double u_c = std::sqrt(std::max(0.0, E - p.V(xc)));
    if (u_c == 0.0) return 0.0;

    // bracket cap just past the turning point, kept inside the domain and
    // extended until V clears E so every inner solve is bracketed
    const Interval& J = p.domain();
    double ext = 1e-9 * std::fabs(xt - xc) + 1e-14;
    const double wall = side > 0 ? J.hi() : J.lo();
    const double ext_cap = std::isfinite(wall)
                               ? 0.25 * std::fabs(wall - xt)
                               : std::numeric_limits<double>::infinity();
    ext = std::min(ext, ext_cap);
    double x_far = xt + side * ext;
    for (int tries = 0; p.V(x_far) < E && tries < 40; ++tries) {
        ext = std::min(8.0 * ext, ext_cap);
        x_far = xt + side * ext;
    }

    const double lo = side > 0 ? xc : x_far;
    const double hi = side > 0 ? x_far : xc;

    double x_warm = xt;
    auto x_at = [&](double u) {
        // solve V(x) = E - u^2 on [lo, hi]; safeguarded Newton from the
        // previous node, g is bounded away from 0 on the whole tail
        const double target = E - u * u;
        double x = std::clamp(x_warm, lo, hi);
        bool converged = false;
        for (int it = 0; it < 12; ++it) {
            const double r = p.V(x) - target;
            if (std::fabs(r) <= 1e-13 * (1.0 + E)) {
                converged = true;
                break;
            }
            const double gx = p.g(x);
            if (gx == 0.0) break;
            const double xn = std::clamp(x - r / gx, lo, hi);
            if (xn == x) {
                converged = true;
                break;
            }
            x = xn;
        }
        if (!converged) {
            const auto res = numerics::find_root(
                [&](double xx) { return p.V(xx) - target; }, lo, hi,
                0.0, 4.0 * std::numeric_limits<double>::epsilon(), 1e-13 * (1.0 + E), 200);
            x = res.x;
        }
        x_warm = x;
        return x;
    };

    auto integrand = [&](double u) { return 2.0 / std::fabs(p.g(x_at(u))); };
    return numerics::integrate(integrand, 0.0, u_c, 1e-11, 0.0);
}

} // namespace

Trajectory::Trajectory(std::vector<DenseStep> steps, std::vector<double> energies,
                       State initial, State final_state)
    : steps_(std::move(steps)), energies_(std::move(energies)),
      initial_(initial), final_(final_state) {
    if (!energies_.empty()) {
        const double e0 = energies_.front();
        for (double e : energies_)
            max_drift_ = std::max(max_drift_, std::fabs(e - e0));
    }
}

State Trajectory::at(double t) const {
    if (steps_.empty() || t <= t_begin()) return initial_;
    if (t >= t_end()) return final_;
    // first step whose start lies beyond t, then step back
    auto it = std::upper_bound(steps_.begin(), steps_.end(), t,
                               [](double v, const DenseStep& s) { return v < s.t0; });
    if (it != steps_.begin()) --it;
    const Vec2 y = it->eval(std::clamp(t, it->t0, it->t0 + it->h));
    return {y[0], y[1], t};
}

Trajectory simulate(const Potential& p, State s0, double t_end, double tol) {
    if (!(t_end > s0.t))
        throw std::invalid_argument("simulate: t_end must exceed the initial time");
    if (!p.domain().contains(s0.x))
        throw std::domain_error("simulate: initial position outside the potential domain");

    Rhs2 rhs = [&p](double, const Vec2& y) { return Vec2{y[1], -p.g(y[0])}; };
    Dopri5 stepper(rhs, tol);
    stepper.init(s0.t, {s0.x, s0.v});

    std::vector<DenseStep> steps;
    std::vector<double> energies;
    energies.push_back(energy_of(p, s0.x, s0.v));
    while (stepper.t() < t_end) {
        steps.push_back(stepper.advance(t_end));
        energies.push_back(energy_of(p, stepper.y()[0], stepper.y()[1]));
    }
    const State final_state{stepper.y()[0], stepper.y()[1], stepper.t()};
    return Trajectory(std::move(steps), std::move(energies), s0, final_state);
}

std::pair<double, double> turning_points(const Potential& p, double E) {
    if (!(E > 0.0))
        throw std::invalid_argument("turning_points: require E > 0");
    const double xp = solve_side(p, E, +1);
    const double xm = solve_side(p, E, -1);
    return {xm, xp};
}

double period_quadrature(const Potential& p, double E) {
    const auto [xm, xp] = turning_points(p, E);
    // split points where V = E/2; both pieces stay smooth there
    auto half = [&](int side) {
        auto fn = [&p, E](double x) { return p.V(x) - 0.5 * E; };
        const double far = side > 0 ? xp : xm;
        return numerics::find_root(fn, 0.0, far, -0.5 * E, p.V(far) - 0.5 * E, 0.0,
                                   4.0 * std::numeric_limits<double>::epsilon(),
                                   1e-13 * (1.0 + E), 200).x;
    };
    const double xc_p = half(+1);
    const double xc_m = half(-1);

    const double central = numerics::integrate(
        [&](double x) { return 1.0 / std::sqrt(E - p.V(x)); }, xc_m, xc_p, 1e-11, 0.0);
    const double t_right = tail_time(p, E, xc_p, xp, +1);
    const double t_left = tail_time(p, E, xc_m, xm, -1);
    return std::sqrt(2.0) * (central + t_right + t_left);
}

OdePeriod period_ode_detailed(const Potential& p, double E, double tol) {
    const auto [xm, xp] = turning_points(p, E);
    (void)xm;
    const double t_guard = 50.0 * kTwoPi / p.omega();

    Rhs2 rhs = [&p](double, const Vec2& y) { return Vec2{y[1], -p.g(y[0])}; };
    Dopri5 stepper(rhs, tol);
    stepper.init(0.0, {xp, 0.0});

    const double e0 = energy_of(p, xp, 0.0);
    double drift = 0.0;
    int crossings = 0;
    double v_prev = 0.0;
    while (stepper.t() < t_guard) {
        const DenseStep step = stepper.advance(t_guard);
        const double v_new = stepper.y()[1];
        drift = std::max(drift, std::fabs(energy_of(p, stepper.y()[0], v_new) - e0));
        if (v_prev != 0.0 && v_new != 0.0 && std::signbit(v_prev) != std::signbit(v_new)) {
            ++crossings;
            if (crossings == 2) {
                // polish the crossing time on the dense interpolant
                auto v_of = [&step](double t) { return step.eval(t)[1]; };
                const auto res = numerics::find_root(
                    v_of, step.t0, step.t0 + step.h, v_of(step.t0), v_of(step.t0 + step.h),
                    1e-14 * (1.0 + step.t0), 1e-14, 0.0, 200);
                return {res.x, drift};
            }
        }
        if (v_new != 0.0) v_prev = v_new;
    }
    throw std::runtime_error("period_ode: no orbit closure within 50 nominal periods at E = " +
                             std::to_string(E));
}

double period_ode(const Potential& p, double E, double tol) {
    return period_ode_detailed(p, E, tol).T;
}

double PeriodReport::rel_deviation() const {
    const double dq = std::fabs(T_quadrature - T_expected);
    const double db = std::fabs(T_ode - T_expected);
    return std::max(dq, db) / T_expected;
}

SweepResult isochrony_sweep(const Potential& p, std::span<const double> energies,
                            double tol, int threads) {
    SweepResult result;
    result.reports.resize(energies.size());

    auto run_one = [&](size_t i) {
        PeriodReport& rep = result.reports[i];
        rep.energy = energies[i];
        rep.T_expected = kTwoPi / p.omega();
        try {
            const auto [xm, xp] = turning_points(p, energies[i]);
            rep.x_minus = xm;
            rep.x_plus = xp;
            rep.T_quadrature = period_quadrature(p, energies[i]);
            const OdePeriod ode = period_ode_detailed(p, energies[i], tol);
            rep.T_ode = ode.T;
            rep.max_energy_drift = ode.max_energy_drift;
        } catch (const std::exception& e) {
            rep.error = e.what();
        }
    };

    int nthreads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    nthreads = std::max(1, std::min<int>(nthreads, static_cast<int>(energies.size())));
    if (nthreads <= 1) {
        for (size_t i = 0; i < energies.size(); ++i) run_one(i);
    } else {
        std::atomic<size_t> next{0};
        auto worker = [&] {
            for (size_t i = next.fetch_add(1); i < energies.size(); i = next.fetch_add(1))
                run_one(i);
        };
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int k = 0; k < nthreads; ++k) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (const auto& rep : result.reports) {
        if (!rep.ok()) {
            ++result.summary.failures;
            continue;
        }
        result.summary.max_rel_period_deviation =
            std::max(result.summary.max_rel_period_deviation, rep.rel_deviation());
    }
    return result;
}

} // namespace isochrone
