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

#ifndef ISOCHRONE_INVOLUTION_HPP
#define ISOCHRONE_INVOLUTION_HPP

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "isochrone/interval.hpp"

namespace isochrone {

/// A decreasing C^1 self-map h of an open interval J containing 0 with
/// h(h(x)) = x, h(0) = 0 and h'(0) = -1. Instances are immutable after
/// construction and evaluation is reentrant.
class Involution {
public:
    using Map = std::function<double(double)>;

    /// `deriv` may be null; callers that need h' then fall back to the
    /// finite-difference derivative below.
    Involution(Interval domain, Map eval, Map deriv = nullptr, std::string label = "");

    const Interval& domain() const { return domain_; }
    const std::string& label() const { return label_; }
    bool has_analytic_deriv() const { return static_cast<bool>(deriv_); }

    /// h(x). Throws std::domain_error if x is outside J.
    double operator()(double x) const;
    double eval(double x) const { return (*this)(x); }

    /// h'(x): analytic when attached, otherwise a 4th-order central
    /// difference with the step clipped to stay inside J.
    double derivative(double x) const;

    /// Raw accessors used when wrapping into derived involutions.
    const Map& eval_fn() const { return eval_; }
    const Map& deriv_fn() const { return deriv_; }

private:
    Interval domain_;
    Map eval_;
    Map deriv_;
    std::string label_;
};

/// Rescaled involution x -> h(a*x)/a on the correspondingly rescaled
/// interval. Throws std::invalid_argument for a = 0.
Involution homothety(const Involution& h, double a);

/// Finite-difference slope at the origin: Richardson-extrapolated central
/// difference with step 1e-6 * char_scale(J).
double slope_at_origin(const Involution& h);

struct InvolutionCheck {
    double max_identity_defect = 0.0;       ///< max |h(h(x)) - x| over the grid
    double worst_identity_x = 0.0;          ///< grid point attaining it
    double max_monotonicity_violation = 0.0;///< max increase of h over consecutive grid pairs
    double origin_defect = 0.0;             ///< |h(0)|
    double slope_defect = 0.0;              ///< |h'(0) + 1|
};

/// Numerical audit of the involution properties over a grid of points in J.
/// Throws std::domain_error if any grid point lies outside J.
InvolutionCheck check_involution(const Involution& h, std::span<const double> grid);

/// Same audit on the default 1001-point Chebyshev grid for h.domain().
InvolutionCheck check_involution(const Involution& h);

} // namespace isochrone

#endif
