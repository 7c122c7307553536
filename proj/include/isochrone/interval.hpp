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

#ifndef ISOCHRONE_INTERVAL_HPP
#define ISOCHRONE_INTERVAL_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace isochrone {

/// Open interval (lo, hi) of the extended real line. Infinite endpoints are
/// represented by IEEE +-infinity; membership is tested with strict
/// inequalities, so the endpoints themselves never belong to the interval.
class Interval {
public:
    Interval(double lo, double hi) : lo_(lo), hi_(hi) {
        if (!(lo < hi))
            throw std::invalid_argument("Interval: require lo < hi, got [" +
                                        std::to_string(lo) + ", " + std::to_string(hi) + "]");
        if (std::isnan(lo) || std::isnan(hi))
            throw std::invalid_argument("Interval: endpoints must not be NaN");
    }

    static Interval real_line() {
        const double inf = std::numeric_limits<double>::infinity();
        return Interval(-inf, inf);
    }

    double lo() const { return lo_; }
    double hi() const { return hi_; }

    bool contains(double x) const { return lo_ < x && x < hi_; }
    bool finite_lo() const { return std::isfinite(lo_); }
    bool finite_hi() const { return std::isfinite(hi_); }

    /// Distance from 0 to the nearest finite endpoint, capped at 1.
    /// Used as the step scale for finite differences taken near the origin.
    double char_scale() const {
        double d = std::numeric_limits<double>::infinity();
        if (finite_lo()) d = std::min(d, std::fabs(lo_));
        if (finite_hi()) d = std::min(d, std::fabs(hi_));
        return std::isfinite(d) ? std::min(1.0, d) : 1.0;
    }

    std::string str() const {
        auto fmt = [](double v) {
            if (std::isinf(v)) return std::string(v > 0 ? "+inf" : "-inf");
            return std::to_string(v);
        };
        return "(" + fmt(lo_) + ", " + fmt(hi_) + ")";
    }

private:
    double lo_, hi_;
};

} // namespace isochrone

#endif
