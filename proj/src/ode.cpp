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

#include "isochrone/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace isochrone {

namespace {

// Dormand-Prince 5(4) tableau (Hairer, Norsett & Wanner, DOPRI5).
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;

constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                 a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;

constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

} // namespace

Dopri5::Dopri5(Rhs2 rhs, double tol) : rhs_(std::move(rhs)), tol_(tol) {
    if (!(tol > 0.0))
        throw std::invalid_argument("Dopri5: tolerance must be positive");
}

void Dopri5::init(double t0, const Vec2& y0) {
    t_ = t0;
    y_ = y0;
    k1_ = rhs_(t_, y_);
    have_k1_ = true;
    // crude first step; the controller corrects it within a step or two
    const double ynorm = std::max(std::fabs(y0[0]), std::fabs(y0[1]));
    const double fnorm = std::max(std::fabs(k1_[0]), std::fabs(k1_[1]));
    h_ = 0.01 * (1.0 + ynorm) / (1.0 + fnorm);
}

DenseStep Dopri5::advance(double t_limit) {
    if (!have_k1_)
        throw std::logic_error("Dopri5: advance() before init()");
    if (!(t_limit > t_))
        throw std::invalid_argument("Dopri5: t_limit must exceed the current time");

    Vec2 k2, k3, k4, k5, k6, k7, ytmp, ynew;
    for (int attempt = 0; attempt < 400; ++attempt) {
        const double gap = t_limit - t_;
        double h = std::min(h_, gap);
        // a controller-shrunk step this small means stiffness or a domain
        // edge; a *clamped* final sliver is legitimate as long as time still
        // advances
        if (h < gap && !(h > 1e-14 * (1.0 + std::fabs(t_))))
            throw std::runtime_error("Dopri5: step size underflow at t = " + std::to_string(t_));
        if (t_ + h == t_)
            throw std::runtime_error("Dopri5: no representable time progress at t = " +
                                     std::to_string(t_));

        for (int i = 0; i < 2; ++i) ytmp[i] = y_[i] + h * a21 * k1_[i];
        k2 = rhs_(t_ + c2 * h, ytmp);
        for (int i = 0; i < 2; ++i) ytmp[i] = y_[i] + h * (a31 * k1_[i] + a32 * k2[i]);
        k3 = rhs_(t_ + c3 * h, ytmp);
        for (int i = 0; i < 2; ++i)
            ytmp[i] = y_[i] + h * (a41 * k1_[i] + a42 * k2[i] + a43 * k3[i]);
        k4 = rhs_(t_ + c4 * h, ytmp);
        for (int i = 0; i < 2; ++i)
            ytmp[i] = y_[i] + h * (a51 * k1_[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        k5 = rhs_(t_ + c5 * h, ytmp);
        for (int i = 0; i < 2; ++i)
            ytmp[i] = y_[i] + h * (a61 * k1_[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                   a65 * k5[i]);
        k6 = rhs_(t_ + h, ytmp);
        for (int i = 0; i < 2; ++i)
            ynew[i] = y_[i] + h * (a71 * k1_[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] +
                                   a76 * k6[i]);
        k7 = rhs_(t_ + h, ynew); // FSAL

        double err = 0.0;
        for (int i = 0; i < 2; ++i) {
            const double ei = h * (e1 * k1_[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                   e6 * k6[i] + e7 * k7[i]);
            const double sc = tol_ * (1.0 + std::max(std::fabs(y_[i]), std::fabs(ynew[i])));
            err += (ei / sc) * (ei / sc);
        }
        err = std::sqrt(0.5 * err);

        const double factor = std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
        if (err <= 1.0) {
            DenseStep step;
            step.t0 = t_;
            step.h = h;
            for (int i = 0; i < 2; ++i) {
                const double ydiff = ynew[i] - y_[i];
                const double bspl = h * k1_[i] - ydiff;
                step.rcont[0][i] = y_[i];
                step.rcont[1][i] = ydiff;
                step.rcont[2][i] = bspl;
                step.rcont[3][i] = ydiff - h * k7[i] - bspl;
                step.rcont[4][i] = h * (d1 * k1_[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                                        d6 * k6[i] + d7 * k7[i]);
            }
            t_ += h;
            y_ = ynew;
            k1_ = k7;
            h_ = h * factor;
            return step;
        }
        h_ = h * factor; // rejected
    }
    throw std::runtime_error("Dopri5: too many rejected steps at t = " + std::to_string(t_));
}

} // namespace isochrone
