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

#ifndef CLUSTERDYN_NUMERICS_OPTIMIZE_HPP
#define CLUSTERDYN_NUMERICS_OPTIMIZE_HPP

#include <cmath>
#include <stdexcept>

namespace clusterdyn::numerics {

struct RootResult {
    double x = 0;
    double residual = 0;
    int iterations = 0;
};

/// Bisection for f(x) = 0 on [lo, hi]; f(lo) and f(hi) must differ in sign.
/// Stops when the bracket stops shrinking in floating point or after
/// max_iter halvings, and returns the endpoint with the smaller |f|.
template <class F>
RootResult bisect(F &&f, double lo, double hi, int max_iter = 200) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0) return {lo, 0, 0};
    if (fhi == 0) return {hi, 0, 0};
    if ((flo > 0) == (fhi > 0)) {
        throw std::domain_error("bisect: root not bracketed");
    }
    int it = 0;
    for (; it < max_iter; ++it) {
        double mid = lo + (hi - lo) / 2;
        if (mid == lo || mid == hi) {
            break;
        }
        double fm = f(mid);
        if (fm == 0) {
            return {mid, 0, it + 1};
        }
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    if (std::abs(flo) <= std::abs(fhi)) {
        return {lo, std::abs(flo), it};
    }
    return {hi, std::abs(fhi), it};
}

struct MaxResult {
    double x = 0;
    double value = 0;
    int iterations = 0;
};

/// Golden-section search for the maximum of a unimodal f on [lo, hi],
/// stopping once the bracket width is below tol.
template <class F>
MaxResult golden_section_max(F &&f, double lo, double hi, double tol, int max_iter = 500) {
    const double invphi = (std::sqrt(5.0) - 1) / 2;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    int it = 0;
    while (std::abs(b - a) > tol && it < max_iter) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
        ++it;
    }
    if (fc >= fd) {
        return {c, fc, it};
    }
    return {d, fd, it};
}

}  // namespace clusterdyn::numerics

#endif  // CLUSTERDYN_NUMERICS_OPTIMIZE_HPP
