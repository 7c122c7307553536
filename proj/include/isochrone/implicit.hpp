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

#ifndef ISOCHRONE_IMPLICIT_HPP
#define ISOCHRONE_IMPLICIT_HPP

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "isochrone/interval.hpp"
#include "isochrone/involution.hpp"

namespace isochrone {

/// A two-variable function f with f(x,y) = f(y,x) and f(0,0) = 0. The zero
/// branch through the origin, when it projects onto the whole x-axis with a
/// nonvanishing y-partial, is the graph of a global involution.
class SymmetricImplicit {
public:
    using Fn2 = std::function<double(double, double)>;

    /// df_dy (the partial derivative in the second slot) is optional.
    /// Throws std::invalid_argument if |f(0,0)| > 1e-12.
    SymmetricImplicit(Fn2 f, Fn2 df_dy = nullptr, std::string label = "");

    double operator()(double x, double y) const { return f_(x, y); }
    bool has_df_dy() const { return static_cast<bool>(df_dy_); }
    /// Analytic partial when attached, else a central difference in y.
    double df_dy(double x, double y) const;
    const std::string& label() const { return label_; }
    const Fn2& f() const { return f_; }
    const Fn2& df() const { return df_dy_; }

private:
    Fn2 f_;
    Fn2 df_dy_;
    std::string label_;
};

struct SymmetryReport {
    double max_asymmetry = 0.0; ///< max |f(x,y) - f(y,x)| over the sampled pairs
};

/// Audits f(x,y) = f(y,x) on n_samples pseudo-random pairs drawn (with a
/// fixed seed) from range x range.
SymmetryReport verify_symmetry(const SymmetricImplicit& s, int n_samples,
                               const Interval& range);

struct BranchSolveConfig {
    double bracket_growth = 2.0; ///< geometric growth of the search bracket
    double max_bracket = 1e12;   ///< give up (branch does not project) beyond this
    double root_atol = 1e-13;
    double root_rtol = 1e-13;
    int max_iter = 200;

    void validate() const;
};

/// Diagnostics accumulated by the branch solver; share one instance across
/// threads if desired — access is internally synchronized.
struct ImplicitDiagnostics {
    long derivative_warnings() const;
    std::vector<std::string> messages() const;
    void warn(const std::string& msg);

private:
    mutable std::mutex mu_;
    long count_ = 0;
    std::vector<std::string> messages_;
};

/// Solves f(x, y) = 0 along the connected zero branch through the origin and
/// wraps the result as an Involution on all of R.
///
/// Evaluation tracks the branch by continuation: a chain of anchor solutions
/// is grown outward from x = 0 with adaptive steps, each root solve
/// warm-started from its neighbour; arbitrary x are then solved from the
/// bracketing anchors. The anchor chain and all results are deterministic
/// functions of x alone, so concurrent eval calls return identical values
/// (the internal cache is mutex-protected).
///
/// Errors: std::runtime_error when no sign change is found before
/// max_bracket (the branch does not project onto that x — the offending x is
/// named); a derivative-vanishing warning is recorded in `diag` when the
/// y-partial at an accepted root is below 1e-10 of the local scale of f.
Involution implicit_involution(const SymmetricImplicit& s,
                               const BranchSolveConfig& cfg = {},
                               std::shared_ptr<ImplicitDiagnostics> diag = nullptr);

// Builtin symmetric functions.
SymmetricImplicit quintic_f();                                      ///< x - x^2 + x^5 + y - y^2 + y^5
SymmetricImplicit quintic_circle_f();                               ///< quintic times ((x-1)^2 + (y-1)^2 - 1)
SymmetricImplicit exponential_f(double rho);                        ///< x + y + rho(e^x + e^y - 2), rho >= 0
SymmetricImplicit stillinger_quadratic_f(double lambda, double a);  ///< symmetric quadratic, lambda > 0, a != 0
SymmetricImplicit dorignac_f(double beta);                          ///< (sqrt(1+8e^{3bx})-1)(sqrt(1+8e^{3by})-1) - 4

/// The five builtin symmetric functions at default parameters
/// (rho = 1, lambda = 1, a = 1, beta = 1).
std::vector<SymmetricImplicit> catalog();

/// Slopes of the two asymptotes of the symmetric quadratic's hyperbola:
///   (-(lambda + 2a^2) +- 2a sqrt(lambda + a^2)) / lambda,
/// returned as (plus-sign slope, minus-sign slope); both are strictly
/// negative. Requires lambda > 0 and a != 0.
std::pair<double, double> hyperbola_asymptote_slopes(double lambda, double a);

} // namespace isochrone

#endif
