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

#include "isochrone/lambert.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace isochrone {

namespace {

constexpr double kE = 2.718281828459045235360287471352662498;
constexpr double kInvE = 0.367879441171442321595523770161460867;

double initial_guess(double x) {
    if (x < 0.7357588823428847) { // 2/e; covers the branch-point neighbourhood
        // series in p = sqrt(2(1 + e x)) about the branch point w = -1
        const double z = 1.0 + kE * x;
        const double p = std::sqrt(std::max(0.0, 2.0 * z));
        if (p < 0.5) {
            return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 +
                   p * (-43.0 / 540.0 + p * (769.0 / 17280.0 - p * 221.0 / 8505.0)))));
        }
        // Taylor series about 0 for small |x|, otherwise a padded rational fit
        if (std::fabs(x) < 0.3)
            return x * (1.0 + x * (-1.0 + x * (1.5 - x * 8.0 / 3.0)));
        return 0.5 * x; // crude but inside the Halley convergence basin
    }
    if (x < 3.0) {
        // one secant-flavoured estimate around W(e) = 1
        return 0.2 + 0.3 * x;
    }
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    return l1 - l2 + l2 / l1;
}

double halley_polish(double w, double x) {
    for (int it = 0; it < 40; ++it) {
        const double ew = std::exp(w);
        const double wew = w * ew;
        const double r = wew - x;
        if (std::fabs(r) <= 1e-15 * std::max(1.0, std::fabs(x)))
            break;
        const double d1 = ew * (w + 1.0);
        const double step = r / (d1 - r * (w + 2.0) / (2.0 * w + 2.0));
        const double w_next = w - step;
        if (w_next == w) break;
        // stay on the principal branch; avoid the w = -1 derivative zero
        w = w_next < -1.0 ? -1.0 + 1e-12 : w_next;
    }
    return w;
}

} // namespace

double lambert_w0_of_exp(double ell) {
    if (ell < 350.0) return lambert_w0(std::exp(ell));
    // solve w + log(w) = ell by Newton; for ell this large, w >> 1
    double w = ell - std::log(ell);
    for (int it = 0; it < 30; ++it) {
        const double r = w + std::log(w) - ell;
        const double step = r * w / (w + 1.0);
        w -= step;
        if (std::fabs(step) <= 1e-16 * w) break;
    }
    return w;
}

double lambert_w0(double x) {
    if (std::isnan(x))
        throw std::domain_error("lambert_w0: argument is NaN");
    if (x < -kInvE) {
        // allow arguments a few ulps past the branch point (rounding of -1/e)
        if (x > -kInvE - 1e-9 * (1.0 + std::fabs(x)))
            x = -kInvE;
        else
            throw std::domain_error("lambert_w0: x = " + std::to_string(x) +
                                    " below the branch point -1/e");
    }
    if (x == 0.0) return 0.0;
    if (x > 1e250) { // w*e^w would overflow inside the residual; work in logs
        return lambert_w0_of_exp(std::log(x));
    }

    const double z = 1.0 + kE * x;
    const double p = std::sqrt(std::max(0.0, 2.0 * z));
    if (p < 1e-2) {
        // so close to the branch point that Halley is ill-conditioned;
        // the series truncation error is O(p^7) < 4e-16 here
        return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 +
               p * (-43.0 / 540.0 + p * (769.0 / 17280.0 - p * 221.0 / 8505.0)))));
    }
    return halley_polish(initial_guess(x), x);
}

} // namespace isochrone
