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

#ifndef ISOCHRONE_POTENTIAL_HPP
#define ISOCHRONE_POTENTIAL_HPP

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "isochrone/involution.hpp"

namespace isochrone {

/// A potential V(x) = (omega^2 / 8) (x - h(x))^2 built from an involution h,
/// optionally carrying a closed-form fast path for V and g = V'. The two
/// routes agree to ~1e-12 relative for every shipped family; tests compare
/// them explicitly via the *_from_involution accessors.
class Potential {
public:
    using Fn = std::function<double(double)>;

    /// closed_V / closed_g may be null; `closed_form` tags the family the
    /// fast path comes from ("" when none).
    Potential(double omega, Involution h, std::string closed_form = "",
              Fn closed_V = nullptr, Fn closed_g = nullptr);

    double omega() const { return omega_; }
    const Interval& domain() const { return h_.domain(); }
    const Involution& involution() const { return h_; }
    bool has_closed_form() const { return !closed_form_.empty(); }
    const std::string& closed_form() const { return closed_form_; }

    /// V(x); throws std::domain_error outside the domain.
    double V(double x) const;
    /// g(x) = V'(x); throws std::domain_error outside the domain.
    double g(double x) const;

    /// Always the involution route (omega^2/8)(x - h(x))^2, closed form or not.
    double V_from_involution(double x) const;
    /// Always (omega^2/4)(x - h(x))(1 - h'(x)).
    double g_from_involution(double x) const;

private:
    void require_inside(double x) const;

    double omega_;
    Involution h_;
    std::string closed_form_;
    Fn closed_V_;
    Fn closed_g_;
};

/// V = omega^2 x^2 / 2 (h(x) = -x). Requires omega > 0.
Potential harmonic_potential(double omega);

/// V(x) = (omega^2/8) x^2 ((2 + a x)/(1 + a x))^2 on the rational
/// involution's domain. Requires omega > 0.
Potential rational_potential(double a, double omega);

/// The explicit global family from the symmetric quadratic:
///   V(x) = omega^2 (lambda+a^2)/(2 lambda^2) *
///          (lambda a^2 + (a+x)((lambda+2a^2)(a+x) - 2a sqrt(lambda+a^2) sqrt(lambda+(a+x)^2)))
/// Requires lambda > 0, omega != 0 (omega is stored as |omega|).
Potential stillinger_potential(double lambda, double a, double omega);

/// Same family in the (xi, beta) parameterization
///   V(x) = omega^2 / (2(1-xi^2)^2) * (x + (xi/sqrt(beta)) (1 - sqrt(1 + 2 xi sqrt(beta) x + beta x^2)))^2,
/// equal pointwise to stillinger_potential(lambda = (1-xi^2)/beta, a = xi/sqrt(beta)).
/// Requires xi in (-1, 1), beta > 0, omega > 0.
Potential stillinger_xi_beta(double xi, double beta, double omega);

/// V(x) = (omega^2 / (8 beta^2)) ln^2((sqrt(1 + 8 e^{3 beta x}) - 1)/2) on R.
/// Requires beta != 0, omega != 0 (stored as |omega|).
Potential dorignac_potential(double beta, double omega);

/// Potential of the Lambert involution family (no published closed form for
/// V; the involution route is the definition). Requires rho >= 0, a != 0,
/// omega > 0.
Potential lambert_potential(double rho, double a, double omega);

/// Generic constructor from any involution.
Potential potential_from_involution(Involution h, double omega);

/// Non-isochronous control well V = omega^2 x^2/2 + x^4 (it satisfies the
/// global inequality and the V''(0) = omega^2 normalization but fails the
/// equal-period property).
Potential quartic_control(double omega);

/// Restoring force
///   g(x) = 2 c omega^2/(b^2-4c)^2 ((b^2+4c)(b+2x) + b (b^2-4c-2(b+2x)^2)/sqrt(1 + x(b+x)/c))
/// defined on all of R exactly when b^2 - 4c < 0. Under lambda = c - b^2/4,
/// a = b/2 it coincides identically with the stillinger force law (so
/// lambda + a^2 = c, which is what puts the sqrt into the 1 + x(b+x)/c form).
/// Throws std::invalid_argument when omega <= 0, c = 0 or b^2 - 4c >= 0.
std::function<double(double)> g_cmp(double omega, double b, double c);

struct InequalityViolation {
    double x = 0.0;
    double margin = 0.0;
};

struct InequalityReport {
    double min_margin = 0.0;                      ///< min over grid of V(x) - omega^2 x^2/8
    double min_margin_x = 0.0;
    std::vector<InequalityViolation> violations;  ///< entries below -1e-12 (1 + x^2)
};

/// Checks the lower bound V(x) >= omega^2 x^2 / 8 on the grid.
InequalityReport check_global_inequality(const Potential& p, std::span<const double> grid);

struct NecessaryConditionsReport {
    std::array<double, 7> derivatives{}; ///< V(0), V'(0), ..., V^(6)(0) estimates
    double v4_residual = 0.0;            ///< normalized defect of the 4th-derivative identity
    double v6_residual = 0.0;            ///< normalized defect of the 6th-derivative identity
    double fit_residual = 0.0;           ///< max abs fit deviation on the sample window
    bool conditioning_warning = false;   ///< fit residual exceeded 1e-10 * scale of V
};

/// Estimates V''(0)..V^(6)(0) by a degree-10 polynomial least-squares fit on
/// 33 Chebyshev points in [-r, r], r = 0.1 * domain scale, and evaluates the
/// two local isochrony identities
///   V^(4)(0) = 5 V'''(0)^2 / (3 V''(0)),
///   V^(6)(0) = 7 V'''(0) V^(5)(0) / V''(0) - 140 V'''(0)^4 / (9 V''(0)^3).
/// Residuals are normalized by max(1, |identity rhs|).
NecessaryConditionsReport check_necessary_conditions(const Potential& p);

} // namespace isochrone

#endif
