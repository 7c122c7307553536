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

#include "isochrone/numerics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace isochrone::numerics {

namespace {

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

} // namespace

RootResult find_root(const Fn1& f, double a, double b, double fa, double fb,
                     double xatol, double xrtol, double fatol, int max_iter) {
    RootResult res;
    if (fa == 0.0) { res = {a, 0.0, 0, true}; return res; }
    if (fb == 0.0) { res = {b, 0.0, 0, true}; return res; }
    if (sign_of(fa) == sign_of(fb))
        throw std::invalid_argument("find_root: endpoints do not bracket a sign change");

    // Standard Brent iteration; see Brent (1973), chapter 4.
    double c = a, fc = fa, d = b - a, e = d;
    int it = 0;
    for (; it < max_iter; ++it) {
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol = 0.5 * (xatol + xrtol * std::fabs(b)) +
                           2.0 * std::numeric_limits<double>::epsilon() * std::fabs(b);
        const double m = 0.5 * (c - b);
        if (std::fabs(m) <= tol || fb == 0.0 || std::fabs(fb) <= fatol) {
            res = {b, fb, it, true};
            return res;
        }
        if (std::fabs(e) < tol || std::fabs(fa) <= std::fabs(fb) ||
            !std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fc)) {
            d = e = m; // bisection
        } else {
            double p, q;
            const double s = fb / fa;
            if (a == c) { // secant
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {      // inverse quadratic
                const double qq = fa / fc, r = fb / fc;
                p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q; else p = -p;
            if (2.0 * p < std::min(3.0 * m * q - std::fabs(tol * q), std::fabs(e * q))) {
                e = d; d = p / q;
            } else {
                d = e = m;
            }
        }
        a = b; fa = fb;
        b += (std::fabs(d) > tol) ? d : (m > 0 ? tol : -tol);
        fb = f(b);
        ++res.evaluations;
        if ((fb > 0.0) == (fc > 0.0)) { c = a; fc = fa; d = e = b - a; }
    }
    res = {b, fb, it, false};
    return res;
}

RootResult find_root(const Fn1& f, double a, double b,
                     double xatol, double xrtol, double fatol, int max_iter) {
    return find_root(f, a, b, f(a), f(b), xatol, xrtol, fatol, max_iter);
}

Bracket expand_bracket(const Fn1& f, double seed, double initial_width,
                       double growth, double max_width) {
    Bracket br;
    const double f0 = f(seed);
    if (f0 == 0.0) {
        br = {seed, seed, 0.0, 0.0, true};
        return br;
    }
    // Track the outermost point with a usable (finite or infinite, non-NaN)
    // value on each side; a sign change against the adjacent scan point keeps
    // the bracket tight around the root nearest the seed.
    double lo = seed, hi = seed;
    double f_lo = f0, f_hi = f0;
    double w = initial_width;
    while (w <= max_width) {
        const double nhi = seed + w;
        const double f_nhi = f(nhi);
        if (!std::isnan(f_nhi)) {
            if (f_nhi == 0.0) { br = {nhi, nhi, 0.0, 0.0, true}; return br; }
            if (!std::isnan(f_hi) && sign_of(f_nhi) * sign_of(f_hi) < 0) {
                br = {hi, nhi, f_hi, f_nhi, true};
                return br;
            }
            hi = nhi; f_hi = f_nhi;
        }
        const double nlo = seed - w;
        const double f_nlo = f(nlo);
        if (!std::isnan(f_nlo)) {
            if (f_nlo == 0.0) { br = {nlo, nlo, 0.0, 0.0, true}; return br; }
            if (!std::isnan(f_lo) && sign_of(f_nlo) * sign_of(f_lo) < 0) {
                br = {nlo, lo, f_nlo, f_lo, true};
                return br;
            }
            lo = nlo; f_lo = f_nlo;
        }
        w *= growth;
    }
    return br;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev estimate of the i-th root, then Newton on P_n.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
}

namespace {

struct GLRule {
    std::vector<double> nodes, weights;
};

const GLRule& rule15() {
    static GLRule r = [] {
        GLRule g;
        gauss_legendre(15, g.nodes, g.weights);
        return g;
    }();
    return r;
}

double gl_panel(const Fn1& f, double a, double b) {
    const GLRule& r = rule15();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (size_t i = 0; i < r.nodes.size(); ++i)
        s += r.weights[i] * f(mid + half * r.nodes[i]);
    return s * half;
}

double integrate_rec(const Fn1& f, double a, double b, double whole,
                     double tol, int depth, int max_depth) {
    const double m = 0.5 * (a + b);
    const double left = gl_panel(f, a, m);
    const double right = gl_panel(f, m, b);
    const double err = std::fabs(left + right - whole);
    if (err <= tol || depth >= max_depth)
        return left + right;
    return integrate_rec(f, a, m, left, 0.5 * tol, depth + 1, max_depth) +
           integrate_rec(f, m, b, right, 0.5 * tol, depth + 1, max_depth);
}

} // namespace

double integrate(const Fn1& f, double a, double b, double rtol, double atol, int max_depth) {
    if (a == b) return 0.0;
    const double rough = gl_panel(f, a, b);
    const double tol = std::max(atol, rtol * std::fabs(rough));
    return integrate_rec(f, a, b, rough, std::max(tol, 1e-300), 0, max_depth);
}

double central_derivative(const Fn1& f, double x, double h) {
    // 4th-order five-point stencil
    return (8.0 * (f(x + h) - f(x - h)) - (f(x + 2.0 * h) - f(x - 2.0 * h))) / (12.0 * h);
}

std::vector<double> chebyshev_points(double a, double b, int n) {
    if (n < 2) throw std::invalid_argument("chebyshev_points: need n >= 2");
    std::vector<double> pts(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int k = 0; k < n; ++k)
        pts[k] = mid + half * std::cos(M_PI * (n - 1.0 - k) / (n - 1.0));
    pts.front() = a;
    pts.back() = b;
    return pts;
}

std::vector<double> default_grid(const Interval& J, int n, double cap) {
    double a_raw = J.finite_lo() ? J.lo() : -cap;
    double b_raw = J.finite_hi() ? J.hi() : cap;
    if (!(a_raw < b_raw)) { // interval entirely outside the cap window
        a_raw = J.lo();
        b_raw = J.hi();
    }
    const double width = b_raw - a_raw;
    const double a = J.finite_lo() ? J.lo() + 0.01 * width : a_raw;
    const double b = J.finite_hi() ? J.hi() - 0.01 * width : b_raw;
    return chebyshev_points(a, b, n);
}

std::vector<double> logspace(double lo, double hi, int n) {
    if (lo <= 0.0 || hi <= 0.0) throw std::invalid_argument("logspace: endpoints must be > 0");
    if (n < 1) throw std::invalid_argument("logspace: need n >= 1");
    std::vector<double> v(n);
    if (n == 1) { v[0] = lo; return v; }
    const double llo = std::log10(lo), lhi = std::log10(hi);
    for (int i = 0; i < n; ++i)
        v[i] = std::pow(10.0, llo + (lhi - llo) * i / (n - 1.0));
    return v;
}

std::string format_double(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc())
        return std::to_string(v);
    return std::string(buf.data(), ptr);
}

std::vector<double> fit_derivatives_at_zero(const Fn1& f, double r, int degree,
                                            int n_points, int max_order,
                                            double* fit_residual) {
    if (max_order > degree)
        throw std::invalid_argument("fit_derivatives_at_zero: max_order exceeds fit degree");
    const std::vector<double> xs = chebyshev_points(-r, r, n_points);
    Eigen::MatrixXd A(n_points, degree + 1);
    Eigen::VectorXd y(n_points);
    for (int i = 0; i < n_points; ++i) {
        const double t = xs[i] / r; // scaled abscissa, conditioning stays mild
        double p = 1.0;
        for (int j = 0; j <= degree; ++j) {
            A(i, j) = p;
            p *= t;
        }
        y(i) = f(xs[i]);
    }
    Eigen::VectorXd coef = A.colPivHouseholderQr().solve(y);
    if (fit_residual) {
        *fit_residual = (A * coef - y).cwiseAbs().maxCoeff();
    }
    std::vector<double> derivs(max_order + 1, 0.0);
    double fact = 1.0, rk = 1.0;
    for (int k = 0; k <= max_order; ++k) {
        if (k > 0) { fact *= k; rk *= r; }
        derivs[k] = coef(k) * fact / rk;
    }
    return derivs;
}

} // namespace isochrone::numerics
