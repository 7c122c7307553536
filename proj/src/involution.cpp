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

#include "isochrone/involution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "isochrone/numerics.hpp"

namespace isochrone {

namespace {

[[noreturn]] void domain_fail(const std::string& label, double x, const Interval& J) {
    throw std::domain_error("involution '" + (label.empty() ? std::string("<unnamed>") : label) +
                            "': x = " + std::to_string(x) + " outside domain " + J.str());
}

} // namespace

Involution::Involution(Interval domain, Map eval, Map deriv, std::string label)
    : domain_(domain), eval_(std::move(eval)), deriv_(std::move(deriv)), label_(std::move(label)) {
    if (!eval_)
        throw std::invalid_argument("Involution: eval map must be callable");
    if (!(domain_.lo() < 0.0 && 0.0 < domain_.hi()))
        throw std::invalid_argument("Involution: domain must contain 0 strictly, got " +
                                    domain_.str());
    const double h0 = eval_(0.0);
    if (!(std::fabs(h0) <= 1e-10))
        throw std::invalid_argument("Involution '" + label_ + "': h(0) = " + std::to_string(h0) +
                                    ", expected 0");
}

double Involution::operator()(double x) const {
    if (!domain_.contains(x)) domain_fail(label_, x, domain_);
    return eval_(x);
}

double Involution::derivative(double x) const {
    if (!domain_.contains(x)) domain_fail(label_, x, domain_);
    if (deriv_) return deriv_(x);
    // eps^(1/5)-scaled step balances truncation and rounding of the
    // 4th-order stencil; shrink near finite endpoints so x +- 2h stays in J.
    double h = 7.4e-4 * (1.0 + std::fabs(x));
    if (domain_.finite_lo()) h = std::min(h, (x - domain_.lo()) / 2.5);
    if (domain_.finite_hi()) h = std::min(h, (domain_.hi() - x) / 2.5);
    return numerics::central_derivative(eval_, x, h);
}

Involution homothety(const Involution& h, double a) {
    if (a == 0.0)
        throw std::invalid_argument("homothety: scale parameter a must be nonzero");
    const Interval& J = h.domain();
    const Interval scaled = (a > 0.0) ? Interval(J.lo() / a, J.hi() / a)
                                      : Interval(J.hi() / a, J.lo() / a);
    auto base = h.eval_fn();
    Involution::Map eval = [base, a](double x) { return base(a * x) / a; };
    Involution::Map deriv = nullptr;
    if (h.has_analytic_deriv()) {
        auto dbase = h.deriv_fn();
        deriv = [dbase, a](double x) { return dbase(a * x); };
    }
    return Involution(scaled, std::move(eval), std::move(deriv),
                      h.label().empty() ? "" : h.label() + "/homothety");
}

double slope_at_origin(const Involution& h) {
    const double step = 1e-6 * h.domain().char_scale();
    const auto& f = h.eval_fn();
    auto central = [&](double s) { return (f(s) - f(-s)) / (2.0 * s); };
    const double d1 = central(step);
    const double d2 = central(0.5 * step);
    return (4.0 * d2 - d1) / 3.0; // one Richardson step
}

InvolutionCheck check_involution(const Involution& h, std::span<const double> grid) {
    InvolutionCheck rep;
    const Interval& J = h.domain();
    for (double x : grid)
        if (!J.contains(x)) domain_fail(h.label(), x, J);

    std::vector<double> values(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) {
        const double y = h.eval_fn()(grid[i]);
        values[i] = y;
        double defect;
        if (J.contains(y)) {
            defect = std::fabs(h.eval_fn()(y) - grid[i]);
        } else {
            // h maps J onto J for a true involution; an escape is a maximal defect
            defect = std::numeric_limits<double>::infinity();
        }
        if (defect > rep.max_identity_defect) {
            rep.max_identity_defect = defect;
            rep.worst_identity_x = grid[i];
        }
    }
    for (size_t i = 0; i + 1 < grid.size(); ++i) {
        const bool increasing_x = grid[i + 1] > grid[i];
        const double rise = increasing_x ? values[i + 1] - values[i]
                                         : values[i] - values[i + 1];
        rep.max_monotonicity_violation = std::max(rep.max_monotonicity_violation,
                                                  std::max(0.0, rise));
    }
    rep.origin_defect = std::fabs(h.eval_fn()(0.0));
    const double slope = h.has_analytic_deriv() ? h.deriv_fn()(0.0) : slope_at_origin(h);
    rep.slope_defect = std::fabs(slope + 1.0);
    return rep;
}

InvolutionCheck check_involution(const Involution& h) {
    const std::vector<double> grid = numerics::default_grid(h.domain());
    return check_involution(h, grid);
}

} // namespace isochrone
