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

#include "isochrone/potential.hpp"

#include <cmath>
#include <stdexcept>

#include "isochrone/detail/dorignac.hpp"
#include "isochrone/families.hpp"
#include "isochrone/numerics.hpp"

namespace isochrone {

Potential::Potential(double omega, Involution h, std::string closed_form,
                     Fn closed_V, Fn closed_g)
    : omega_(omega), h_(std::move(h)), closed_form_(std::move(closed_form)),
      closed_V_(std::move(closed_V)), closed_g_(std::move(closed_g)) {
    if (!(omega_ > 0.0))
        throw std::invalid_argument("Potential: require omega > 0, got " +
                                    std::to_string(omega_));
}

void Potential::require_inside(double x) const {
    if (!domain().contains(x))
        throw std::domain_error("potential" +
                                (closed_form_.empty() ? std::string() : " '" + closed_form_ + "'") +
                                ": x = " + std::to_string(x) + " outside domain " +
                                domain().str());
}

double Potential::V(double x) const {
    require_inside(x);
    if (closed_V_) return closed_V_(x);
    const double d = x - h_.eval_fn()(x);
    return 0.125 * omega_ * omega_ * d * d;
}

double Potential::g(double x) const {
    require_inside(x);
    if (closed_g_) return closed_g_(x);
    return g_from_involution(x);
}

double Potential::V_from_involution(double x) const {
    require_inside(x);
    const double d = x - h_.eval_fn()(x);
    return 0.125 * omega_ * omega_ * d * d;
}

double Potential::g_from_involution(double x) const {
    require_inside(x);
    const double d = x - h_.eval_fn()(x);
    return 0.25 * omega_ * omega_ * d * (1.0 - h_.derivative(x));
}

Potential harmonic_potential(double omega) {
    if (!(omega > 0.0))
        throw std::invalid_argument("harmonic_potential: require omega > 0");
    const double w2 = omega * omega;
    Involution h(Interval::real_line(), [](double x) { return -x; },
                 [](double) { return -1.0; }, "negation");
    return Potential(omega, std::move(h), "harmonic",
                     [w2](double x) { return 0.5 * w2 * x * x; },
                     [w2](double x) { return w2 * x; });
}

Potential rational_potential(double a, double omega) {
    if (!(omega > 0.0))
        throw std::invalid_argument("rational_potential: require omega > 0");
    const double w2 = omega * omega;
    auto closed_V = [a, w2](double x) {
        const double r = (2.0 + a * x) / (1.0 + a * x);
        return 0.125 * w2 * x * x * r * r;
    };
    auto closed_g = [a, w2](double x) {
        const double den = 1.0 + a * x;
        const double r = (2.0 + a * x) / den;
        // d/dx of x^2 r^2 / 8: r + x r' with r' = -a/(1+ax)^2
        const double rp = (2.0 + 2.0 * a * x + a * a * x * x) / (den * den);
        return 0.25 * w2 * x * r * rp;
    };
    return Potential(omega, rational_involution(a), "rational",
                     std::move(closed_V), std::move(closed_g));
}

Potential stillinger_potential(double lambda, double a, double omega) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("stillinger_potential: require lambda > 0");
    if (omega == 0.0)
        throw std::invalid_argument("stillinger_potential: require omega != 0");
    omega = std::fabs(omega); // V depends on omega^2 only
    const double w2 = omega * omega;
    const double la2 = lambda + a * a;
    const double k = lambda + 2.0 * a * a;
    const double s = 2.0 * a * std::sqrt(la2);
    auto closed_V = [lambda, a, w2, la2, k, s](double x) {
        const double ax = a + x;
        const double inner = lambda * a * a + ax * (k * ax - s * std::sqrt(lambda + ax * ax));
        return w2 * la2 / (2.0 * lambda * lambda) * inner;
    };
    auto closed_g = [lambda, a, w2, la2, k](double x) {
        const double ax = a + x;
        const double pref = w2 * std::pow(la2, 1.5) / (lambda * lambda);
        return pref * (ax * k / std::sqrt(la2) -
                       a * (lambda + 2.0 * ax * ax) / std::sqrt(lambda + ax * ax));
    };
    return Potential(omega, stillinger_involution(lambda, a), "stillinger",
                     std::move(closed_V), std::move(closed_g));
}

Potential stillinger_xi_beta(double xi, double beta, double omega) {
    if (!(xi > -1.0 && xi < 1.0))
        throw std::invalid_argument("stillinger_xi_beta: require xi in (-1, 1)");
    if (!(beta > 0.0))
        throw std::invalid_argument("stillinger_xi_beta: require beta > 0");
    if (!(omega > 0.0))
        throw std::invalid_argument("stillinger_xi_beta: require omega > 0");
    const double w2 = omega * omega;
    const double sb = std::sqrt(beta);
    const double one_m = 1.0 - xi * xi;
    auto closed_V = [xi, beta, w2, sb, one_m](double x) {
        const double rad = 1.0 + 2.0 * xi * sb * x + beta * x * x;
        const double t = x + (xi / sb) * (1.0 - std::sqrt(rad));
        return w2 / (2.0 * one_m * one_m) * t * t;
    };
    // parameter map back to the quadratic-family form
    const double lambda = one_m / beta;
    const double a = xi / sb;
    return Potential(omega, stillinger_involution(lambda, a), "stillinger-xi-beta",
                     std::move(closed_V), nullptr);
}

Potential dorignac_potential(double beta, double omega) {
    if (beta == 0.0)
        throw std::invalid_argument("dorignac_potential: require beta != 0");
    if (omega == 0.0)
        throw std::invalid_argument("dorignac_potential: require omega != 0");
    omega = std::fabs(omega);
    const double w2 = omega * omega;
    using detail::dorignac_log_u;
    using detail::dorignac_slope_ratio;
    using detail::dorignac_u;
    auto closed_V = [beta, w2](double x) {
        const double L = dorignac_log_u(3.0 * beta * x) - std::log(2.0);
        return w2 / (8.0 * beta * beta) * L * L;
    };
    auto closed_g = [beta, w2](double x) {
        const double s = 3.0 * beta * x;
        const double L = dorignac_log_u(s) - std::log(2.0);
        // dL/dx = (3 beta / 2) (u + 2)/(u + 1)
        return w2 / (4.0 * beta * beta) * L * 1.5 * beta * dorignac_slope_ratio(dorignac_u(s));
    };
    return Potential(omega, dorignac_involution(beta), "dorignac",
                     std::move(closed_V), std::move(closed_g));
}

Potential lambert_potential(double rho, double a, double omega) {
    if (!(omega > 0.0))
        throw std::invalid_argument("lambert_potential: require omega > 0");
    return Potential(omega, lambert_involution(rho, a), "lambert");
}

Potential potential_from_involution(Involution h, double omega) {
    return Potential(omega, std::move(h));
}

Potential quartic_control(double omega) {
    if (!(omega > 0.0))
        throw std::invalid_argument("quartic_control: require omega > 0");
    const double w2 = omega * omega;
    Involution h(Interval::real_line(), [](double x) { return -x; },
                 [](double) { return -1.0; }, "negation");
    return Potential(omega, std::move(h), "quartic-control",
                     [w2](double x) { return 0.5 * w2 * x * x + x * x * x * x; },
                     [w2](double x) { return w2 * x + 4.0 * x * x * x; });
}

std::function<double(double)> g_cmp(double omega, double b, double c) {
    if (!(omega > 0.0))
        throw std::invalid_argument("g_cmp: require omega > 0");
    if (c == 0.0)
        throw std::invalid_argument("g_cmp: require c != 0");
    const double disc = b * b - 4.0 * c;
    if (!(disc < 0.0))
        throw std::invalid_argument(
            "g_cmp: global definition requires b^2 - 4c < 0 (got b^2 - 4c = " +
            std::to_string(disc) + "); the square root 1 + x(b+x)/c would vanish");
    const double w2 = omega * omega;
    return [b, c, disc, w2](double x) {
        const double b2x = b + 2.0 * x;
        const double rad = 1.0 + x * (b + x) / c;
        return 2.0 * c * w2 / (disc * disc) *
               ((b * b + 4.0 * c) * b2x + b * (disc - 2.0 * b2x * b2x) / std::sqrt(rad));
    };
}

InequalityReport check_global_inequality(const Potential& p, std::span<const double> grid) {
    InequalityReport rep;
    rep.min_margin = std::numeric_limits<double>::infinity();
    const double w2_8 = 0.125 * p.omega() * p.omega();
    for (double x : grid) {
        const double margin = p.V(x) - w2_8 * x * x;
        if (margin < rep.min_margin) {
            rep.min_margin = margin;
            rep.min_margin_x = x;
        }
        if (margin < -1e-12 * (1.0 + x * x))
            rep.violations.push_back({x, margin});
    }
    if (!std::isfinite(rep.min_margin)) rep.min_margin = 0.0; // empty grid
    return rep;
}

NecessaryConditionsReport check_necessary_conditions(const Potential& p) {
    NecessaryConditionsReport rep;
    // window width trades truncation against rounding: the x^6 signal in the
    // samples scales like r^6 while their rounding floor scales like r^2, so
    // r = 0.01 would bury V^(6)(0) in noise. r = 0.1 with a degree-10 fit
    // keeps both error terms near 1e-5 relative even when the nearest
    // singularity of V sits right at the domain scale (rational family).
    const double r = 0.1 * p.domain().char_scale();
    double fit_res = 0.0;
    const auto derivs = numerics::fit_derivatives_at_zero(
        [&p](double x) { return p.V(x); }, r, 10, 33, 6, &fit_res);
    for (int k = 0; k <= 6; ++k) rep.derivatives[k] = derivs[k];
    rep.fit_residual = fit_res;

    const double v2 = derivs[2], v3 = derivs[3], v4 = derivs[4], v5 = derivs[5], v6 = derivs[6];
    const double rhs4 = 5.0 * v3 * v3 / (3.0 * v2);
    const double rhs6 = 7.0 * v3 * v5 / v2 - 140.0 * std::pow(v3, 4) / (9.0 * std::pow(v2, 3));
    rep.v4_residual = std::fabs(v4 - rhs4) / std::max(1.0, std::fabs(rhs4));
    rep.v6_residual = std::fabs(v6 - rhs6) / std::max(1.0, std::fabs(rhs6));

    const double v_scale = std::max(std::fabs(p.V(r)), std::fabs(p.V(-r)));
    rep.conditioning_warning = fit_res > 1e-10 * std::max(v_scale, 1e-300);
    return rep;
}

} // namespace isochrone
