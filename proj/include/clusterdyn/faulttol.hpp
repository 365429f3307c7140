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

#ifndef CLUSTERDYN_FAULTTOL_HPP
#define CLUSTERDYN_FAULTTOL_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "clusterdyn/dynamics.hpp"
#include "clusterdyn/numerics/optimize.hpp"
#include "clusterdyn/state.hpp"

namespace clusterdyn {

/// Threshold on q = p_prep + (2/3) p_s for the topological scheme. It comes
/// from an external error-correction analysis and is only ever an input here.
inline constexpr double kDefaultQThreshold = 0.0293;

/// Probability of a thermal Z error in the prepared cluster.
inline double prep_error(double kT, double delta) { return z_error_probability(kT, delta); }

/// Per-period storage error bound (1/4)(1 + w)(1 - w^6), w = exp(-(a+b) tau / 2).
/// This is the Z weight of the cubic-lattice logical channel.
inline double storage_error(double alpha, double beta, double tau) {
    if (alpha < 0 || beta < 0) {
        throw std::invalid_argument("storage_error: negative rate");
    }
    if (!(tau > 0)) {
        throw std::invalid_argument("storage_error: period must be positive");
    }
    const double w = std::exp(-(alpha + beta) * tau / 2);
    return 0.25 * (1 + w) * (1 - std::pow(w, 6));
}

struct ErrorBudget {
    double p_prep = 0;
    double p_s = 0;
    double q = 0;
    double kT = 0;
    double delta = 1;
    double alpha = 0;
    double beta = 0;
    double tau = 0;
};

inline ErrorBudget combined_q(const BathSpec &bath, double delta) {
    if (!(delta > 0)) {
        throw std::invalid_argument("gap must be positive");
    }
    ErrorBudget e;
    e.delta = delta;
    e.alpha = bath.alpha();
    e.beta = bath.beta();
    e.tau = clock_period(delta);
    if (auto *tb = std::get_if<BathSpec::TwoBath>(&bath.rates())) {
        if (tb->gamma == 0 && tb->alpha_bath == 0) {
            throw std::domain_error("combined_q: both bath rates are zero");
        }
        // Same as 1 / (1 + exp(delta / kT)) with kT = delta / ln(1 + alpha_bath / gamma).
        e.p_prep = tb->gamma / (tb->alpha_bath + 2 * tb->gamma);
        e.kT = tb->gamma == 0 ? 0.0
               : tb->alpha_bath == 0 ? std::numeric_limits<double>::infinity()
                                     : delta / std::log1p(tb->alpha_bath / tb->gamma);
    } else {
        e.kT = bath_temperature(bath, delta);
        e.p_prep = prep_error(e.kT, delta);
    }
    e.p_s = storage_error(e.alpha, e.beta, e.tau);
    e.q = e.p_prep + 2.0 / 3.0 * e.p_s;
    return e;
}

struct ThresholdReport {
    /// Primary solved quantity: kT*/delta, (alpha+beta)*/delta or gamma*/delta.
    double value = 0;
    /// alpha_bath*/delta for the cooling optimum, zero otherwise.
    double secondary = 0;
    int iterations = 0;
    /// |q - target| (or the defining equation) at the solution.
    double residual = 0;
    /// Solved gamma at alpha_bath* (1 - 1e-3) and (1 + 1e-3).
    double certificate_lo = 0;
    double certificate_hi = 0;
    bool certified = true;
};

/// kT* with prep_error(kT*) = q_target, in units of delta.
inline ThresholdReport temperature_threshold(double q_target = kDefaultQThreshold) {
    if (!(q_target > 0 && q_target < 0.5)) {
        throw std::domain_error("temperature_threshold: target outside (0, 1/2)");
    }
    ThresholdReport r;
    r.value = 1 / std::log((1 - q_target) / q_target);
    r.residual = std::abs(prep_error(r.value, 1.0) - q_target);
    return r;
}

/// (alpha+beta)*/delta with (2/3) p_s = q_target at a zero-temperature preparation.
inline ThresholdReport coupling_threshold(double q_target = kDefaultQThreshold) {
    auto f = [&](double w) { return 2.0 / 3.0 * 0.25 * (1 + w) * (1 - std::pow(w, 6)) - q_target; };
    auto root = numerics::bisect(f, 1e-6, 1 - 1e-9, 200);
    ThresholdReport r;
    r.value = -std::log(root.x) / std::numbers::pi;
    r.iterations = root.iterations;
    r.residual = root.residual;
    return r;
}

/// Largest background rate gamma with q(alpha_bath, gamma) <= q_target;
/// zero when storage alone already exceeds the target. Units of delta.
inline double gamma_threshold(double alpha_bath, double q_target = kDefaultQThreshold, int *iterations = nullptr,
                              double *residual = nullptr) {
    auto q = [&](double g) { return combined_q(BathSpec::two_bath(alpha_bath, g), 1.0).q - q_target; };
    if (q(0) >= 0) {
        if (residual) *residual = 0;
        return 0.0;
    }
    double hi = 1e-9;
    while (q(hi) < 0) hi *= 2;
    auto root = numerics::bisect(q, 0.0, hi, 200);
    if (iterations) *iterations = root.iterations;
    if (residual) *residual = root.residual;
    return root.x;
}

/// Maximises gamma_threshold over log10(alpha_bath) in [log_lo, log_hi]: a
/// coarse grid brackets the peak, golden-section search refines it.
inline ThresholdReport goldilocks(double q_target = kDefaultQThreshold, double log_lo = -5, double log_hi = -1,
                                  int grid_points = 41) {
    auto g_of = [&](double la) { return gamma_threshold(std::pow(10.0, la), q_target); };
    std::vector<double> vals(grid_points);
    int best = 0;
    for (int k = 0; k < grid_points; ++k) {
        vals[k] = g_of(log_lo + (log_hi - log_lo) * k / (grid_points - 1));
        if (vals[k] > vals[best]) best = k;
    }
    const double step = (log_hi - log_lo) / (grid_points - 1);
    const double lo = log_lo + step * std::max(best - 1, 0);
    const double hi = log_lo + step * std::min(best + 1, grid_points - 1);
    // Relative width 1e-6 in alpha_bath is 1e-6 / ln 10 in log10.
    auto m = numerics::golden_section_max(g_of, lo, hi, 1e-6 / std::log(10.0));

    ThresholdReport r;
    r.secondary = std::pow(10.0, m.x);
    int inner = 0;
    double resid = 0;
    r.value = gamma_threshold(r.secondary, q_target, &inner, &resid);
    r.iterations = m.iterations;
    r.residual = resid;
    r.certificate_lo = gamma_threshold(r.secondary * (1 - 1e-3), q_target);
    r.certificate_hi = gamma_threshold(r.secondary * (1 + 1e-3), q_target);
    r.certified = r.certificate_lo < r.value && r.certificate_hi < r.value && best > 0 && best < grid_points - 1;
    return r;
}

}  // namespace clusterdyn

#endif  // CLUSTERDYN_FAULTTOL_HPP
