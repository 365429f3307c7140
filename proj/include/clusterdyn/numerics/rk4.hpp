// Copyright 2026 The clusterdyn Authors
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

#ifndef CLUSTERDYN_NUMERICS_RK4_HPP
#define CLUSTERDYN_NUMERICS_RK4_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace clusterdyn::numerics {

/// Number of equal steps covering [0, t] with step at most `step`. A step
/// longer than t becomes a single step of size t.
inline std::size_t step_count(double t, double step) {
    if (!(step > 0)) {
        throw std::invalid_argument("integration step must be positive");
    }
    if (t < 0) {
        throw std::invalid_argument("integration time must be non-negative");
    }
    if (t == 0) {
        return 0;
    }
    double k = std::ceil(t / step - 1e-9);
    return k < 1 ? 1 : static_cast<std::size_t>(k);
}

/// Classical fourth-order Runge-Kutta for an autonomous system y' = f(y).
/// `after_step` may modify y in place after every step (renormalisation).
template <class State, class Rhs, class AfterStep>
State rk4(State y, Rhs &&f, double t, double step, AfterStep &&after_step) {
    const std::size_t n = step_count(t, step);
    if (n == 0) {
        return y;
    }
    const double h = t / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        State k1 = f(y);
        State k2 = f(State(y + (h / 2) * k1));
        State k3 = f(State(y + (h / 2) * k2));
        State k4 = f(State(y + h * k3));
        y += (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        after_step(y);
    }
    return y;
}

template <class State, class Rhs>
State rk4(State y, Rhs &&f, double t, double step) {
    return rk4(std::move(y), f, t, step, [](State &) {});
}

}  // namespace clusterdyn::numerics

#endif  // CLUSTERDYN_NUMERICS_RK4_HPP
