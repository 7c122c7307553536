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

#include "isochrone/families.hpp"

#include <cmath>
#include <stdexcept>

#include "isochrone/detail/dorignac.hpp"
#include "isochrone/lambert.hpp"

namespace isochrone {

Involution rational_involution(double a) {
    const double inf = std::numeric_limits<double>::infinity();
    Interval J = a > 0.0 ? Interval(-1.0 / a, inf)
               : a < 0.0 ? Interval(-inf, -1.0 / a)
                         : Interval::real_line();
    auto eval = [a](double x) { return -x / (1.0 + a * x); };
    auto deriv = [a](double x) {
        const double d = 1.0 + a * x;
        return -1.0 / (d * d);
    };
    return Involution(J, eval, deriv, "rational(a=" + std::to_string(a) + ")");
}

Involution stillinger_involution(double lambda, double a) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("stillinger_involution: require lambda > 0, got " +
                                    std::to_string(lambda));
    const double k = lambda + 2.0 * a * a;
    const double s = 2.0 * a * std::sqrt(lambda + a * a);
    auto eval = [lambda, a, k, s](double x) {
        if (x == 0.0) return 0.0; // the algebraic cancellation is exact
        const double ax = a + x;
        return -a - (k * ax - s * std::sqrt(lambda + ax * ax)) / lambda;
    };
    auto deriv = [lambda, a, k, s](double x) {
        const double ax = a + x;
        return -(k - s * ax / std::sqrt(lambda + ax * ax)) / lambda;
    };
    return Involution(Interval::real_line(), eval, deriv,
                      "stillinger(lambda=" + std::to_string(lambda) +
                      ",a=" + std::to_string(a) + ")");
}

Involution dorignac_involution(double beta) {
    if (beta == 0.0)
        throw std::invalid_argument("dorignac_involution: require beta != 0");
    auto eval = [beta](double x) {
        if (x == 0.0) return 0.0; // u(0) = 2 exactly
        // (1/beta) * (ln 2 + beta x - ln u(3 beta x))
        return (std::log(2.0) + beta * x - detail::dorignac_log_u(3.0 * beta * x)) / beta;
    };
    return Involution(Interval::real_line(), eval, nullptr,
                      "dorignac(beta=" + std::to_string(beta) + ")");
}

Involution lambert_involution(double rho, double a) {
    if (rho < 0.0)
        throw std::invalid_argument("lambert_involution: require rho >= 0, got " +
                                    std::to_string(rho));
    if (a == 0.0)
        throw std::invalid_argument("lambert_involution: require a != 0");
    auto eval = [rho, a](double x) {
        if (rho == 0.0) return -x;
        if (x == 0.0) return 0.0; // W0(rho e^rho) = rho exactly
        // t/a equals -x + (rho/a)(2 - e^{a x})
        const double t = -a * x + rho * (2.0 - std::exp(a * x));
        const double ell = std::log(rho) + t;
        if (ell > 500.0) {
            // W0 argument overflows; t - W0 collapses to log(W0) - log(rho)
            const double w = lambert_w0_of_exp(ell);
            return (std::log(w) - std::log(rho)) / a;
        }
        const double w = lambert_w0(std::exp(ell)); // underflow to 0 gives W0 = 0
        return (t - w) / a;
    };
    return Involution(Interval::real_line(), eval, nullptr,
                      "lambert(rho=" + std::to_string(rho) + ",a=" + std::to_string(a) + ")");
}

FamilySpec FamilySpec::rational(double a) {
    FamilySpec s;
    s.kind = Kind::Rational;
    s.a = a;
    return s;
}

FamilySpec FamilySpec::stillinger(double lambda, double a) {
    FamilySpec s;
    s.kind = Kind::Stillinger;
    s.lambda = lambda;
    s.a = a;
    return s;
}

FamilySpec FamilySpec::dorignac(double beta) {
    FamilySpec s;
    s.kind = Kind::Dorignac;
    s.beta = beta;
    return s;
}

FamilySpec FamilySpec::lambert(double rho, double a) {
    FamilySpec s;
    s.kind = Kind::LambertExp;
    s.rho = rho;
    s.a = a;
    return s;
}

void FamilySpec::validate() const {
    switch (kind) {
        case Kind::Rational:
            break;
        case Kind::Stillinger:
            if (!(lambda > 0.0))
                throw std::invalid_argument("FamilySpec: stillinger requires lambda > 0");
            break;
        case Kind::Dorignac:
            if (beta == 0.0)
                throw std::invalid_argument("FamilySpec: dorignac requires beta != 0");
            break;
        case Kind::LambertExp:
            if (rho < 0.0 || a == 0.0)
                throw std::invalid_argument("FamilySpec: lambert requires rho >= 0 and a != 0");
            break;
    }
}

std::string FamilySpec::name() const {
    switch (kind) {
        case Kind::Rational:   return "rational";
        case Kind::Stillinger: return "stillinger";
        case Kind::Dorignac:   return "dorignac";
        case Kind::LambertExp: return "lambert";
    }
    return "?";
}

nlohmann::json FamilySpec::to_json() const {
    nlohmann::json j;
    j["kind"] = name();
    switch (kind) {
        case Kind::Rational:   j["a"] = a; break;
        case Kind::Stillinger: j["lambda"] = lambda; j["a"] = a; break;
        case Kind::Dorignac:   j["beta"] = beta; break;
        case Kind::LambertExp: j["rho"] = rho; j["a"] = a; break;
    }
    return j;
}

FamilySpec FamilySpec::from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    FamilySpec s;
    if (kind == "rational") {
        s = rational(j.value("a", 0.0));
    } else if (kind == "stillinger") {
        s = stillinger(j.value("lambda", 1.0), j.value("a", 1.0));
    } else if (kind == "dorignac") {
        s = dorignac(j.value("beta", 1.0));
    } else if (kind == "lambert") {
        s = lambert(j.value("rho", 1.0), j.value("a", 1.0));
    } else {
        throw std::invalid_argument("FamilySpec: unknown kind '" + kind + "'");
    }
    s.validate();
    return s;
}

Involution make_involution(const FamilySpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case FamilySpec::Kind::Rational:   return rational_involution(spec.a);
        case FamilySpec::Kind::Stillinger: return stillinger_involution(spec.lambda, spec.a);
        case FamilySpec::Kind::Dorignac:   return dorignac_involution(spec.beta);
        case FamilySpec::Kind::LambertExp: return lambert_involution(spec.rho, spec.a);
    }
    throw std::logic_error("make_involution: unreachable");
}

} // namespace isochrone
