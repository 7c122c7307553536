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

#ifndef ISOCHRONE_DYNAMICS_HPP
#define ISOCHRONE_DYNAMICS_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "isochrone/ode.hpp"
#include "isochrone/potential.hpp"

namespace isochrone {

struct State {
    double x = 0.0;
    double v = 0.0;
    double t = 0.0;
};

/// Dense solution of x'' = -g(x): a sequence of interpolating steps plus the
/// energy v^2/2 + V(x) recorded at every accepted step.
class Trajectory {
public:
    Trajectory(std::vector<DenseStep> steps, std::vector<double> energies,
               State initial, State final_state);

    State at(double t) const; ///< interpolated state, t within [t_begin, t_end]
    double t_begin() const { return initial_.t; }
    double t_end() const { return final_.t; }
    const State& initial_state() const { return initial_; }
    const State& final_state() const { return final_; }
    const std::vector<DenseStep>& steps() const { return steps_; }

    /// max |E(t_k) - E(t_0)| over accepted step endpoints.
    double max_energy_drift() const { return max_drift_; }

private:
    std::vector<DenseStep> steps_;
    std::vector<double> energies_;
    State initial_, final_;
    double max_drift_ = 0.0;
};

/// Integrates x' = v, v' = -g(x) from s0 to t_end with per-step local error
/// below tol * (1 + |state|). Throws on step underflow or domain exit.
Trajectory simulate(const Potential& p, State s0, double t_end, double tol);

/// The two solutions x_minus < 0 < x_plus of V(x) = E, each found by a
/// bracketed solve on its side of the well (V is strictly monotone there).
/// |V(x_pm) - E| <= 1e-12 (1 + E). Throws std::runtime_error if a side of
/// the potential never reaches E inside the domain.
std::pair<double, double> turning_points(const Potential& p, double E);

/// Orbit period at energy E via the energy integral
///   T = sqrt(2) * Int_{x_-}^{x_+} dx / sqrt(E - V(x)).
/// The interval is split where V = E/2: the central part is integrated in x,
/// each turning-point tail in the local variable u = sqrt(E - V(x)), where
/// dx/sqrt(E-V) = 2 du / g(x(u)) is smooth and the endpoint u = 0 is exact.
/// Absolute accuracy ~1e-10 * T.
double period_quadrature(const Potential& p, double E);

/// Orbit period via time-domain integration: start at (x_plus(E), v = 0),
/// integrate until v returns to zero with x > 0 (two v sign changes), with
/// the crossing time polished on the dense interpolant.
double period_ode(const Potential& p, double E, double tol);

struct OdePeriod {
    double T = 0.0;
    double max_energy_drift = 0.0;
};
OdePeriod period_ode_detailed(const Potential& p, double E, double tol);

struct PeriodReport {
    double energy = 0.0;
    double x_minus = 0.0, x_plus = 0.0;
    double T_quadrature = 0.0;
    double T_ode = 0.0;
    double T_expected = 0.0; ///< 2 pi / omega
    double max_energy_drift = 0.0;
    std::string error;       ///< empty when the entry succeeded
    bool ok() const { return error.empty(); }
    double rel_deviation() const; ///< max over both oracles of |T - T_exp|/T_exp
};

struct SweepSummary {
    double max_rel_period_deviation = 0.0; ///< over successful entries and both oracles
    int failures = 0;                      ///< entries that raised errors
};

struct SweepResult {
    std::vector<PeriodReport> reports; ///< one per energy, input order
    SweepSummary summary;
};

/// Runs both period oracles for every energy. Per-energy errors are captured
/// in the report and the sweep continues. Entries are independent and may be
/// computed on `threads` worker threads (0 = hardware concurrency); results
/// are merged in energy order regardless of completion order.
SweepResult isochrony_sweep(const Potential& p, std::span<const double> energies,
                            double tol, int threads = 0);

} // namespace isochrone

#endif
