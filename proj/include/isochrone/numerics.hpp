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

#ifndef ISOCHRONE_NUMERICS_HPP
#define ISOCHRONE_NUMERICS_HPP

#include <functional>
#include <string>
#include <vector>

#include "isochrone/interval.hpp"

namespace isochrone::numerics {

using Fn1 = std::function<double(double)>;

struct RootResult {
    double x = 0.0;        // best abscissa
    double f = 0.0;        // residual there
    int evaluations = 0;
    bool converged = false;
};

/// Brent-style bracketed root finder (bisection + secant/inverse quadratic).
/// Requires fa and fb of opposite sign (or one of them zero). Stops when the
/// bracket width falls below xatol + xrtol*|x| or |f| <= fatol.
RootResult find_root(const Fn1& f, double a, double b, double fa, double fb,
                     double xatol, double xrtol, double fatol = 0.0, int max_iter = 200);

/// Convenience overload evaluating the endpoints itself.
RootResult find_root(const Fn1& f, double a, double b,
                     double xatol, double xrtol, double fatol = 0.0, int max_iter = 200);

struct Bracket {
    double lo = 0.0, hi = 0.0;
    double f_lo = 0.0, f_hi = 0.0;
    bool found = false;
};

/// Scans outward from `seed` with geometrically growing half-width until two
/// adjacent scanned points straddle a sign change of f. Checking adjacent
/// scan points (not just the outermost pair) keeps the bracket tight around
/// the root nearest the seed, which matters when f has several roots.
Bracket expand_bracket(const Fn1& f, double seed, double initial_width,
                       double growth, double max_width);

/// Adaptive Gauss-Legendre quadrature of f over [a, b]. The panel rule is a
/// fixed-order open rule, so f is never evaluated at panel endpoints.
double integrate(const Fn1& f, double a, double b,
                 double rtol = 1e-12, double atol = 0.0, int max_depth = 48);

/// Nodes/weights of the n-point Gauss-Legendre rule on [-1, 1], computed by
/// Newton iteration on the Legendre polynomial (no hard-coded tables).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// 4th-order central difference derivative with step h.
double central_derivative(const Fn1& f, double x, double h);

/// n Chebyshev-Lobatto points on [a, b], increasing.
std::vector<double> chebyshev_points(double a, double b, int n);

/// Default audit grid for an interval: 1001 Chebyshev-spaced points, finite
/// endpoints clipped inward by 1% of the grid width, infinite sides capped
/// at +-50.
std::vector<double> default_grid(const Interval& J, int n = 1001, double cap = 50.0);

/// n logarithmically spaced values from lo to hi (both > 0), inclusive.
std::vector<double> logspace(double lo, double hi, int n);

/// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

/// Estimates derivatives f'(0)..f^(max_order)(0) by least-squares fit of a
/// degree `degree` polynomial on `n_points` Chebyshev points in [-r, r].
/// Returns derivatives[k] = f^(k)(0) for k = 0..max_order and, through
/// fit_residual, the max abs deviation of the fit on the sample.
std::vector<double> fit_derivatives_at_zero(const Fn1& f, double r, int degree,
                                            int n_points, int max_order,
                                            double* fit_residual = nullptr);

} // namespace isochrone::numerics

#endif
