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

#ifndef ISOCHRONE_DETAIL_DORIGNAC_HPP
#define ISOCHRONE_DETAIL_DORIGNAC_HPP

#include <cmath>

namespace isochrone::detail {

// Building block of the exponential hyperbola-like family:
//   u(s) = sqrt(1 + 8 e^s) - 1,   s = 3 * beta * x.
// The textbook expression cancels catastrophically for s << 0 and overflows
// for s > ~700, so u and log(u) are evaluated through the rearrangement
//   u = 8 e^s / (1 + sqrt(1 + 8 e^s)).

inline double dorignac_u(double s) {
    if (s < 500.0) {
        const double es8 = 8.0 * std::exp(s);
        return es8 / (1.0 + std::sqrt(1.0 + es8));
    }
    // u ~ sqrt(8) * e^{s/2}; overflows to +inf only for s > ~1416
    return std::exp(0.5 * std::log(8.0) + 0.5 * s);
}

inline double dorignac_log_u(double s) {
    if (s < 500.0) {
        const double es8 = 8.0 * std::exp(s);
        return std::log(8.0) + s - std::log(1.0 + std::sqrt(1.0 + es8));
    }
    return 0.5 * std::log(8.0) + 0.5 * s;
}

/// (u + 2) / (u + 1), safe against u = +inf.
inline double dorignac_slope_ratio(double u) {
    if (std::isinf(u)) return 1.0;
    return (u + 2.0) / (u + 1.0);
}

} // namespace isochrone::detail

#endif
