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

#include "isochrone/implicit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "isochrone/detail/dorignac.hpp"
#include "isochrone/numerics.hpp"

namespace isochrone {

SymmetricImplicit::SymmetricImplicit(Fn2 f, Fn2 df_dy, std::string label)
    : f_(std::move(f)), df_dy_(std::move(df_dy)), label_(std::move(label)) {
    if (!f_)
        throw std::invalid_argument("SymmetricImplicit: f must be callable");
    const double f00 = f_(0.0, 0.0);
    if (!(std::fabs(f00) <= 1e-12))
        throw std::invalid_argument("SymmetricImplicit '" + label_ +
                                    "': f(0,0) = " + std::to_string(f00) + ", expected 0");
}

double SymmetricImplicit::df_dy(double x, double y) const {
    if (df_dy_) return df_dy_(x, y);
    const double h = 7.4e-4 * (1.0 + std::fabs(y));
    return numerics::central_derivative([this, x](double yy) { return f_(x, yy); }, y, h);
}

SymmetryReport verify_symmetry(const SymmetricImplicit& s, int n_samples,
                               const Interval& range) {
    if (n_samples < 1)
        throw std::invalid_argument("verify_symmetry: need n_samples >= 1");
    std::mt19937 rng(0x5eed5eedu);
    std::uniform_real_distribution<double> dist(range.lo(), range.hi());
    SymmetryReport rep;
    for (int i = 0; i < n_samples; ++i) {
        const double x = dist(rng), y = dist(rng);
        rep.max_asymmetry = std::max(rep.max_asymmetry, std::fabs(s(x, y) - s(y, x)));
    }
    return rep;
}

void BranchSolveConfig::validate() const {
    if (!(bracket_growth > 1.0))
        throw std::invalid_argument("BranchSolveConfig: bracket_growth must be > 1");
    if (!(max_bracket > 0.0) || !(root_atol > 0.0) || !(root_rtol > 0.0) || max_iter < 1)
        throw std::invalid_argument("BranchSolveConfig: all fields must be positive");
}

long ImplicitDiagnostics::derivative_warnings() const {
    std::lock_guard<std::mutex> lk(mu_);
    return count_;
}

std::vector<std::string> ImplicitDiagnostics::messages() const {
    std::lock_guard<std::mutex> lk(mu_);
    return messages_;
}

void ImplicitDiagnostics::warn(const std::string& msg) {
    std::lock_guard<std::mutex> lk(mu_);
    ++count_;
    if (messages_.size() < 64) messages_.push_back(msg);
}

namespace {

/// Continuation solver for the zero branch through (0, 0).
///
/// Anchors are grown outward from x = 0 with adaptive steps and each anchor
/// root is warm-started from its neighbour, so the tracker cannot jump to
/// another connected component of f^{-1}(0). The anchor chain depends only
/// on f and the config, never on the query history, which keeps eval(x) a
/// pure function of x.
class BranchSolver {
public:
    BranchSolver(SymmetricImplicit s, BranchSolveConfig cfg,
                 std::shared_ptr<ImplicitDiagnostics> diag)
        : f_(std::move(s)), cfg_(cfg), diag_(std::move(diag)) {
        pos_.push_back({0.0, 0.0});
        neg_.push_back({0.0, 0.0});
    }

    double eval(double x) {
        std::lock_guard<std::mutex> lk(mu_);
        if (x == 0.0) return 0.0;
        if (auto it = memo_.find(x); it != memo_.end()) return it->second;

        auto& chain = x > 0.0 ? pos_ : neg_;
        auto& step = x > 0.0 ? step_pos_ : step_neg_;
        extend(chain, step, std::fabs(x));

        // bracketing anchors around |x|
        const double ax = std::fabs(x);
        const auto it = std::lower_bound(chain.begin(), chain.end(), ax,
                                         [](const Anchor& an, double v) { return an.ax < v; });
        double seed, width;
        if (it == chain.begin()) {
            seed = it->y;
            width = base_width(seed);
        } else if (it == chain.end()) {
            seed = chain.back().y; // only when x coincides with the frontier
            width = base_width(seed);
        } else {
            const Anchor& a0 = *(it - 1);
            const Anchor& a1 = *it;
            const double t = (ax - a0.ax) / (a1.ax - a0.ax);
            seed = a0.y + t * (a1.y - a0.y);
            width = std::max(base_width(seed), 0.75 * std::fabs(a1.y - a0.y));
        }
        const double y = solve_at(x, seed, width);
        memo_.emplace(x, y);
        return y;
    }

private:
    struct Anchor {
        double ax; ///< |x| of the anchor (chains store one sign each)
        double y;
    };

    double base_width(double y_near) const {
        return std::max(10.0 * cfg_.root_atol, 1e-3 * (1.0 + std::fabs(y_near)));
    }

    void extend(std::vector<Anchor>& chain, double& step, double target_ax) {
        const double sign = (&chain == &pos_) ? 1.0 : -1.0;
        int guard = 0;
        // Anchors advance by the step rule alone, never clamped to the query
        // point: the chain is then the same whatever order callers probe it
        // in, and eval(x) is a pure function of x.
        while (chain.back().ax < target_ax) {
            if (++guard > 2'000'000)
                throw std::runtime_error("implicit involution '" + f_.label() +
                                         "': continuation exceeded anchor budget before x = " +
                                         std::to_string(sign * target_ax));
            const Anchor& last = chain.back();
            const double next_ax = last.ax + step;
            const double dx = step;
            // linear prediction from the trailing pair (slope -1 at the origin)
            double slope = -1.0;
            if (chain.size() >= 2) {
                const Anchor& prev = chain[chain.size() - 2];
                slope = (last.y - prev.y) / (last.ax - prev.ax);
            }
            const double seed = last.y + slope * dx;
            const double width = std::max(base_width(seed), 0.75 * std::fabs(slope) * dx);
            const double scale = 1.0 + std::fabs(last.y);
            double y;
            try {
                y = solve_at(sign * next_ax, seed, width);
            } catch (const std::runtime_error&) {
                // prediction too far off on a curved stretch; a smaller step
                // tightens it quadratically. Only a step that cannot shrink
                // is a genuine projection failure.
                if (dx > 1e-10 * (1.0 + last.ax)) {
                    step = 0.5 * dx;
                    continue;
                }
                throw;
            }
            const double move = std::fabs(y - last.y);
            if (move > 0.25 * scale && dx > 1e-8 * scale) {
                step = 0.5 * dx; // too fast, refine
                continue;
            }
            chain.push_back({next_ax, y});
            // no absolute cap: along log-flat stretches of the branch the
            // step grows geometrically, so even |x| ~ 1e20 costs O(100) solves
            if (move < 0.05 * scale) step *= 1.6;
        }
    }

    /// One bracketed solve of f(x, .) = 0 near y_seed. The expansion cap
    /// scales with the seed so branches of magnitude 1e20 still solve.
    double solve_at(double x, double y_seed, double initial_width) {
        auto fy = [this, x](double y) { return f_.f()(x, y); };
        const double cap = cfg_.max_bracket * (1.0 + std::fabs(y_seed));
        const auto br = numerics::expand_bracket(fy, y_seed, initial_width,
                                                 cfg_.bracket_growth, cap);
        if (!br.found)
            throw std::runtime_error(
                "implicit involution '" + f_.label() + "': no sign change of f(x, .) before " +
                "half-width " + std::to_string(cfg_.max_bracket) + " at x = " +
                std::to_string(x) + "; the zero branch does not project onto this x");
        double y, fv;
        if (br.lo == br.hi) {
            y = br.lo;
            fv = 0.0;
        } else {
            // solve a factor tighter than the configured tolerance, then let
            // Newton polish take the residual to the noise floor
            const auto res = numerics::find_root(fy, br.lo, br.hi, br.f_lo, br.f_hi,
                                                 0.25 * cfg_.root_atol, 0.25 * cfg_.root_rtol,
                                                 0.0, cfg_.max_iter);
            y = res.x;
            fv = res.f;
        }
        if (f_.has_df_dy() && fv != 0.0) {
            for (int i = 0; i < 2; ++i) {
                const double d = f_.df()(x, y);
                if (!std::isfinite(d) || d == 0.0) break;
                const double y2 = y - fv / d;
                const double f2 = fy(y2);
                if (!std::isfinite(f2) || std::fabs(f2) >= std::fabs(fv)) break;
                y = y2;
                fv = f2;
            }
        }
        check_partial(x, y);
        return y;
    }

    /// Implicit-function-theorem hypothesis audit: the y-partial must not
    /// vanish on the solved branch.
    void check_partial(double x, double y) {
        if (!diag_) return;
        const double d = f_.df_dy(x, y);
        const double c = 1e-2 * (1.0 + std::fabs(y));
        const double scale =
            (std::fabs(f_.f()(x, y + c)) + std::fabs(f_.f()(x, y - c))) / (2.0 * c);
        if (std::fabs(d) < 1e-10 * scale)
            diag_->warn("implicit involution '" + f_.label() + "': |df/dy| = " +
                        std::to_string(std::fabs(d)) + " at (x, y) = (" + std::to_string(x) +
                        ", " + std::to_string(y) + ") is below 1e-10 of the local f scale; " +
                        "possible branch fold");
    }

    SymmetricImplicit f_;
    BranchSolveConfig cfg_;
    std::shared_ptr<ImplicitDiagnostics> diag_;
    std::mutex mu_;
    std::vector<Anchor> pos_, neg_; // anchors at x >= 0 resp. x <= 0, by |x|
    double step_pos_ = 0.125, step_neg_ = 0.125;
    std::map<double, double> memo_;
};

} // namespace

Involution implicit_involution(const SymmetricImplicit& s,
                               const BranchSolveConfig& cfg,
                               std::shared_ptr<ImplicitDiagnostics> diag) {
    cfg.validate();
    // cheap symmetry audit; an asymmetric f cannot define an involution
    const auto sym = verify_symmetry(s, 256, Interval(-2.0, 2.0));
    if (!(sym.max_asymmetry <= 1e-10))
        throw std::invalid_argument("implicit_involution: f is not symmetric (max |f(x,y)-f(y,x)| = " +
                                    std::to_string(sym.max_asymmetry) + " on samples)");

    auto solver = std::make_shared<BranchSolver>(s, cfg, std::move(diag));
    Involution::Map eval = [solver](double x) { return solver->eval(x); };
    Involution::Map deriv = nullptr;
    if (s.has_df_dy()) {
        // h'(x) = -d1 f / d2 f on the branch; by symmetry d1 f(x,y) = d2 f(y,x)
        auto df = s.df();
        deriv = [solver, df](double x) {
            const double y = solver->eval(x);
            return -df(y, x) / df(x, y);
        };
    }
    const std::string label = s.label().empty() ? "implicit" : "implicit:" + s.label();
    return Involution(Interval::real_line(), std::move(eval), std::move(deriv), label);
}

SymmetricImplicit quintic_f() {
    auto phi = [](double t) { return t - t * t + t * t * t * t * t; };
    return SymmetricImplicit(
        [phi](double x, double y) { return phi(x) + phi(y); },
        [](double, double y) { return 1.0 - 2.0 * y + 5.0 * y * y * y * y; },
        "quintic");
}

SymmetricImplicit quintic_circle_f() {
    auto phi = [](double t) { return t - t * t + t * t * t * t * t; };
    auto circle = [](double x, double y) {
        return (x - 1.0) * (x - 1.0) + (y - 1.0) * (y - 1.0) - 1.0;
    };
    return SymmetricImplicit(
        [phi, circle](double x, double y) { return (phi(x) + phi(y)) * circle(x, y); },
        [phi, circle](double x, double y) {
            const double dq = 1.0 - 2.0 * y + 5.0 * y * y * y * y;
            return dq * circle(x, y) + (phi(x) + phi(y)) * 2.0 * (y - 1.0);
        },
        "quintic-circle");
}

SymmetricImplicit exponential_f(double rho) {
    if (rho < 0.0)
        throw std::invalid_argument("exponential_f: require rho >= 0");
    return SymmetricImplicit(
        [rho](double x, double y) {
            return x + y + rho * (std::exp(x) + std::exp(y) - 2.0);
        },
        [rho](double, double y) { return 1.0 + rho * std::exp(y); },
        "exp(rho=" + std::to_string(rho) + ")");
}

SymmetricImplicit stillinger_quadratic_f(double lambda, double a) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("stillinger_quadratic_f: require lambda > 0");
    if (a == 0.0)
        throw std::invalid_argument("stillinger_quadratic_f: require a != 0 "
                                    "(the conic degenerates to a double line)");
    const double k = 2.0 * (lambda + 2.0 * a * a);
    const double m = 4.0 * a * (lambda + a * a);
    return SymmetricImplicit(
        [lambda, k, m](double x, double y) {
            return lambda * (x * x + y * y) + k * x * y + m * (x + y);
        },
        [lambda, k, m](double x, double y) { return 2.0 * lambda * y + k * x + m; },
        "stillinger-f(lambda=" + std::to_string(lambda) + ",a=" + std::to_string(a) + ")");
}

SymmetricImplicit dorignac_f(double beta) {
    if (beta == 0.0)
        throw std::invalid_argument("dorignac_f: require beta != 0");
    using detail::dorignac_log_u;
    using detail::dorignac_slope_ratio;
    using detail::dorignac_u;
    return SymmetricImplicit(
        [beta](double x, double y) {
            // (u(x) u(y) - 4) evaluated as 4 expm1(log u(x) + log u(y) - log 4):
            // full precision near the curve, the right sign everywhere
            const double L = dorignac_log_u(3.0 * beta * x) + dorignac_log_u(3.0 * beta * y) -
                             std::log(4.0);
            return 4.0 * std::expm1(L);
        },
        [beta](double x, double y) {
            const double prod = std::exp(dorignac_log_u(3.0 * beta * x) +
                                         dorignac_log_u(3.0 * beta * y));
            return 1.5 * beta * prod * dorignac_slope_ratio(dorignac_u(3.0 * beta * y));
        },
        "dorignac-f(beta=" + std::to_string(beta) + ")");
}

std::vector<SymmetricImplicit> catalog() {
    return {quintic_f(), exponential_f(1.0), quintic_circle_f(),
            stillinger_quadratic_f(1.0, 1.0), dorignac_f(1.0)};
}

std::pair<double, double> hyperbola_asymptote_slopes(double lambda, double a) {
    if (!(lambda > 0.0) || a == 0.0)
        throw std::invalid_argument("hyperbola_asymptote_slopes: require lambda > 0 and a != 0");
    const double root = 2.0 * a * std::sqrt(lambda + a * a);
    return {(-(lambda + 2.0 * a * a) + root) / lambda,
            (-(lambda + 2.0 * a * a) - root) / lambda};
}

} // namespace isochrone
