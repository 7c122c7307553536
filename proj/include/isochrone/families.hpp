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

#ifndef ISOCHRONE_FAMILIES_HPP
#define ISOCHRONE_FAMILIES_HPP

#include <string>

#include <json.hpp>

#include "isochrone/involution.hpp"

namespace isochrone {

/// Hyperbola-branch involution h(x) = -x/(1 + a x) on
///   (-1/a, +inf) for a > 0,  all of R for a = 0,  (-inf, -1/a) for a < 0.
/// Analytic derivative attached.
Involution rational_involution(double a);

/// Global involution from the symmetric quadratic (hyperbola) family:
///   h(x) = -a - ((lambda + 2a^2)(a+x) - 2a sqrt(lambda+a^2) sqrt(lambda+(a+x)^2)) / lambda
/// on all of R. Requires lambda > 0. Analytic derivative attached.
Involution stillinger_involution(double lambda, double a);

/// Global involution h(x) = (1/beta) * ln(2 e^{beta x} / (sqrt(1+8e^{3 beta x}) - 1))
/// on all of R, evaluated through an overflow/cancellation-free rearrangement.
/// Requires beta != 0.
Involution dorignac_involution(double beta);

/// Two-parameter global involution built on the Lambert W0 function:
///   h(x) = -x + (rho/a)(2 - e^{a x}) - (1/a) W0(rho e^{-a x + rho(2 - e^{a x})})
/// on all of R. Requires rho >= 0 and a != 0.
Involution lambert_involution(double rho, double a);

/// Closed-form involution family selector, (de)serializable as the CLI's JSON
/// config, e.g. {"kind": "stillinger", "lambda": 1.0, "a": 1.0}.
struct FamilySpec {
    enum class Kind { Rational, Stillinger, Dorignac, LambertExp };

    Kind kind = Kind::Rational;
    double a = 0.0;      // Rational, Stillinger, LambertExp
    double lambda = 1.0; // Stillinger
    double beta = 1.0;   // Dorignac
    double rho = 1.0;    // LambertExp

    static FamilySpec rational(double a);
    static FamilySpec stillinger(double lambda, double a);
    static FamilySpec dorignac(double beta);
    static FamilySpec lambert(double rho, double a);

    /// Throws std::invalid_argument when a parameter violates its family
    /// constraint (Stillinger lambda > 0, Dorignac beta != 0, ...).
    void validate() const;

    std::string name() const;
    nlohmann::json to_json() const;
    static FamilySpec from_json(const nlohmann::json& j);
};

/// Builds the involution described by the spec (validates eagerly).
Involution make_involution(const FamilySpec& spec);

} // namespace isochrone

#endif
