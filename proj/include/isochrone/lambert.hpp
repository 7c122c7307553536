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

#ifndef ISOCHRONE_LAMBERT_HPP
#define ISOCHRONE_LAMBERT_HPP

namespace isochrone {

/// Principal branch W0 of the Lambert W function: the solution w >= -1 of
/// w * exp(w) = x, defined for x >= -1/e. An initial guess (branch-point
/// series near -1/e, Taylor series near 0, log asymptotics for large x) is
/// polished by Halley iterations until |w e^w - x| <= 1e-15 * max(1, |x|).
/// Throws std::domain_error for x < -1/e.
double lambert_w0(double x);

/// W0(exp(ell)) for ell up to far beyond the overflow threshold of exp.
/// Solves w + log(w) = ell without ever forming exp(ell).
double lambert_w0_of_exp(double ell);

} // namespace isochrone

#endif
