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

#ifndef ISOCHRONE_ODE_HPP
#define ISOCHRONE_ODE_HPP

#include <array>
#include <functional>

namespace isochrone {

using Vec2 = std::array<double, 2>;
using Rhs2 = std::function<Vec2(double t, const Vec2& y)>;

/// One accepted integrator step with its quartic interpolation polynomial.
struct DenseStep {
    double t0 = 0.0;
    double h = 0.0;
    std::array<Vec2, 5> rcont{}; // continuous-extension coefficients

    /// Interpolated solution at t in [t0, t0 + h].
    Vec2 eval(double t) const {
        const double th = (t - t0) / h;
        const double th1 = 1.0 - th;
        Vec2 out;
        for (int i = 0; i < 2; ++i)
            out[i] = rcont[0][i] +
                     th * (rcont[1][i] +
                           th1 * (rcont[2][i] + th * (rcont[3][i] + th1 * rcont[4][i])));
        return out;
    }
};

/// Adaptive Dormand-Prince 5(4) stepper. The per-step local error estimate
/// is kept below tol * (1 + |y_i|) componentwise (atol = rtol = tol).
class Dopri5 {
public:
    Dopri5(Rhs2 rhs, double tol);

    void init(double t0, const Vec2& y0);

    /// Advances by one accepted step, not beyond t_limit. Throws
    /// std::runtime_error on step-size underflow.
    DenseStep advance(double t_limit);

    double t() const { return t_; }
    const Vec2& y() const { return y_; }

private:
    Rhs2 rhs_;
    double tol_;
    double t_ = 0.0;
    Vec2 y_{};
    Vec2 k1_{}; // FSAL derivative at (t_, y_)
    double h_ = 0.0;
    bool have_k1_ = false;
};

} // namespace isochrone

#endif
