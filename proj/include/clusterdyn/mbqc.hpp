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

#ifndef CLUSTERDYN_MBQC_HPP
#define CLUSTERDYN_MBQC_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "clusterdyn/dynamics.hpp"
#include "clusterdyn/parallel.hpp"
#include "clusterdyn/state.hpp"

namespace clusterdyn {

// ---------------------------------------------------------------------------
// Pauli channels.

/// rho -> p1 rho + p2 X rho X + p3 Y rho Y + p4 Z rho Z.
struct PauliChannel {
    double p1 = 1, p2 = 0, p3 = 0, p4 = 0;

    double lambda_x() const { return p1 + p2 - p3 - p4; }
    double lambda_y() const { return p1 - p2 + p3 - p4; }
    double lambda_z() const { return p1 - p2 - p3 + p4; }
    std::array<double, 4> probabilities() const { return {p1, p2, p3, p4}; }

    /// The channel with the given Pauli eigenvalues (not necessarily physical).
    static PauliChannel from_eigenvalues(double lx, double ly, double lz) {
        return {(1 + lx + ly + lz) / 4, (1 + lx - ly - lz) / 4, (1 - lx + ly - lz) / 4, (1 - lx - ly + lz) / 4};
    }

    bool valid(double tol = 1e-12) const {
        for (double p : probabilities())
            if (p < -tol) return false;
        return std::abs(p1 + p2 + p3 + p4 - 1) <= tol;
    }

    DensityMatrix apply(const DensityMatrix &rho) const {
        if (rho.num_qubits() != 1) {
            throw std::invalid_argument("PauliChannel::apply: single-qubit state expected");
        }
        const Matrix &m = rho.matrix();
        Mat2 x = mat2::X(), y = mat2::Y(), z = mat2::Z();
        Matrix out = p1 * m + p2 * (x * m * x) + p3 * (y * m * y) + p4 * (z * m * z);
        return DensityMatrix(1, out);
    }

    /// this after other.
    PauliChannel after(const PauliChannel &other) const {
        return from_eigenvalues(lambda_x() * other.lambda_x(), lambda_y() * other.lambda_y(),
                                lambda_z() * other.lambda_z());
    }
};

enum class LatticeVariant { Line, Cubic };

/// Logical noise for one clock period with decay parameter w. The cubic
/// variant replaces w^2 by w^6.
inline PauliChannel logical_channel(double w, LatticeVariant variant = LatticeVariant::Line) {
    if (!(w > 0) || w > 1) {
        throw std::domain_error("logical_channel: w must lie in (0, 1]");
    }
    const double w2 = variant == LatticeVariant::Line ? w * w : std::pow(w, 6);
    return {(1 + w) * (1 + w2) / 4, (1 - w) * (1 - w2) / 4, (1 - w) * (1 + w2) / 4, (1 + w) * (1 - w2) / 4};
}

/// w = exp(-(alpha + beta) t / 2).
inline double decay_parameter(double total_rate, double t) { return std::exp(-total_rate * t / 2); }

// ---------------------------------------------------------------------------
// Closed forms for the three-qubit rotation.

/// Output Bloch vector (ideal rotation removed) for input Bloch vector r_t0.
inline BlochVector xrot_output_bloch(const BlochVector &r, double t, double alpha, double beta, double delta) {
    const double g = alpha + beta;
    const double c = std::cos(delta * t), s = std::sin(delta * t);
    return {r.x * std::exp(-g * t / 2) * c, (r.y * c + r.z * s) * std::exp(-g * t) * c,
            (r.z * c - r.y * s) * std::exp(-1.5 * g * t)};
}

/// Fidelity for a perfect cluster, input |+>, first measurement at t0 = 0.
inline double xrot_fidelity(double alpha, double t, double delta) {
    return 0.5 * (1 + std::exp(-alpha * t / 2) * std::cos(delta * t));
}

// ---------------------------------------------------------------------------
// Byproduct bookkeeping.

/// Tracks the logical map applied so far along a chain of in-plane
/// measurements. Each step applies X^s X(phi) H to the logical qubit; the
/// accumulated Pauli correction is kept as Z^a X^b in front of `intended`.
struct LogicalRecord {
    int a = 0;
    int b = 0;
    Mat2 intended = Mat2::Identity();
    std::vector<int> outcomes;
    std::vector<double> angles;

    /// Angle to measure for intended angle phi given the corrections so far.
    double adapted_angle(double phi) const { return b ? -phi : phi; }

    /// Records a measurement with intended angle phi, measured at `used`,
    /// giving outcome s.
    void record(double phi, double used, int s) {
        intended = mat2::xrot(phi) * mat2::H() * intended;
        int na = b;
        b = a ^ s;
        a = na;
        outcomes.push_back(s);
        angles.push_back(used);
    }

    Mat2 byproduct() const {
        Mat2 m = Mat2::Identity();
        if (a) m = mat2::Z() * m;
        if (b) m = m * mat2::X();
        return m;
    }

    /// Undoes Z^a X^b on a single-qubit output.
    DensityMatrix correct(const DensityMatrix &out) const {
        Mat2 bp = byproduct();
        return DensityMatrix(1, bp.adjoint() * out.matrix() * bp);
    }
};

// ---------------------------------------------------------------------------
// Dense three-qubit rotation experiment.

struct XrotOptions {
    /// Logical input; |+> by default.
    DensityMatrix input = states::plus();
    /// Preparation temperature of the two helper qubits; defaults to the bath
    /// temperature (zero when the bath is switched off).
    std::optional<double> kT;
    /// Prepare the output qubit pure and keep it off the bath.
    bool noiseless_output = false;
    EvolveOptions evolve;
};

struct XrotResult {
    LogicalRecord record;
    /// Output qubit after undoing the byproduct operators.
    DensityMatrix output;
    double fidelity = 0;
    std::array<double, 2> probabilities{};

    /// Output with the ideal rotation removed.
    DensityMatrix unrotated(double theta) const {
        Mat2 r = mat2::xrot(theta);
        return DensityMatrix(1, r.adjoint() * output.matrix() * r);
    }
};

inline double default_kT(const BathSpec &bath, double delta) {
    return bath.total() > 0 ? bath_temperature(bath, delta) : 0.0;
}

/// Input on site 0, helpers on sites 1 and 2, entangled into a line.
/// Measures site 0 in X after t0 and site 1 at the adapted angle after a
/// further t, then undoes the byproducts on site 2.
inline XrotResult run_xrot_experiment(double theta, double t0, double t, const BathSpec &bath, double delta,
                                      OutcomePolicy &policy, const XrotOptions &opt = {}) {
    if (!std::isfinite(theta)) {
        throw std::invalid_argument("run_xrot_experiment: theta must be finite");
    }
    if (t0 < 0 || t < 0) {
        throw std::invalid_argument("run_xrot_experiment: negative time");
    }
    if (opt.input.num_qubits() != 1) {
        throw std::invalid_argument("run_xrot_experiment: input must be a single qubit");
    }
    const double kT = opt.kT ? *opt.kT : default_kT(bath, delta);
    const DensityMatrix helper = equilibrium_state_at(kT, delta);
    const Lattice line = Lattice::line(3);
    SystemParams params(delta, line);
    if (opt.noiseless_output) params.decoupled_sites.insert(2);
    DensityMatrix out_qubit = opt.noiseless_output ? states::plus() : helper;
    DensityMatrix rho = entangle(product_state({opt.input, helper, out_qubit}), line);

    XrotResult res;
    rho = evolve(rho, params, bath, Picture::Original, t0, opt.evolve);
    double phi1 = res.record.adapted_angle(0.0);
    MeasureResult m1 = measure(rho, {0, Basis::xy(phi1), t0, std::nullopt}, policy);
    res.record.record(0.0, phi1, m1.outcome);
    res.probabilities[0] = m1.probability;

    rho = evolve(m1.state, params, bath, Picture::Original, t, opt.evolve);
    double phi2 = res.record.adapted_angle(theta);
    MeasureResult m2 = measure(rho, {1, Basis::xy(phi2), t0 + t, std::nullopt}, policy);
    res.record.record(theta, phi2, m2.outcome);
    res.probabilities[1] = m2.probability;

    res.output = res.record.correct(partial_trace(m2.state, {2}));
    DensityMatrix ideal(1, res.record.intended * opt.input.matrix() * res.record.intended.adjoint());
    res.fidelity = fidelity(ideal, res.output);
    return res;
}

inline XrotResult run_xrot_experiment(double theta, double t0, double t, const BathSpec &bath, double delta,
                                      OutcomePolicy &&policy, const XrotOptions &opt = {}) {
    return run_xrot_experiment(theta, t0, t, bath, delta, policy, opt);
}

// ---------------------------------------------------------------------------
// Logical processing chain.

/// Alternates the measurement step X^s X(phi) H with the noise F(w).
inline DensityMatrix apply_logical_chain(const DensityMatrix &input, const std::vector<double> &angles,
                                         const std::vector<int> &outcomes, double w,
                                         LatticeVariant variant = LatticeVariant::Line) {
    if (angles.size() != outcomes.size()) {
        throw std::invalid_argument("apply_logical_chain: " + std::to_string(angles.size()) + " angles but " +
                                    std::to_string(outcomes.size()) + " outcomes");
    }
    const PauliChannel f = logical_channel(w, variant);
    DensityMatrix rho = input;
    for (std::size_t k = 0; k < angles.size(); ++k) {
        Mat2 step = mat2::xrot(angles[k]) * mat2::H();
        if (outcomes[k]) step = mat2::X() * step;
        rho = f.apply(apply_unitary_1q(step, rho));
    }
    return rho;
}

// ---------------------------------------------------------------------------
// Channel tomography.

using SingleQubitProcess = std::function<DensityMatrix(const DensityMatrix &)>;

struct ChannelEstimate {
    PauliChannel channel;
    /// Affine Bloch map r -> T r + c reconstructed from the probes.
    Eigen::Matrix3d transfer = Eigen::Matrix3d::Identity();
    Eigen::Vector3d offset = Eigen::Vector3d::Zero();
    /// Distance of the reconstruction from the reported Pauli channel.
    double residual = 0;
    bool flagged = false;
};

/// Euclidean projection onto the probability simplex.
inline std::array<double, 4> project_to_simplex(std::array<double, 4> v) {
    std::array<double, 4> u = v;
    std::sort(u.begin(), u.end(), std::greater<>());
    double css = 0, theta = 0;
    for (int k = 0; k < 4; ++k) {
        css += u[k];
        double cand = (css - 1) / (k + 1);
        if (u[k] - cand > 0) theta = cand;
    }
    for (double &x : v) x = std::max(x - theta, 0.0);
    return v;
}

/// Probes the process with |0>, |1>, |+>, |+i>, rebuilds the Bloch transfer
/// map and projects it onto the nearest Pauli channel.
inline ChannelEstimate extract_channel(const SingleQubitProcess &process, double residual_threshold = 1e-6) {
    auto probe = [&](const DensityMatrix &in) {
        DensityMatrix out = process(in);
        BlochVector b = bloch(out);
        return Eigen::Vector3d(b.x, b.y, b.z);
    };
    Eigen::Vector3d r0 = probe(states::zero()), r1 = probe(states::one());
    Eigen::Vector3d rp = probe(states::plus()), ri = probe(states::plus_i());
    ChannelEstimate est;
    est.offset = (r0 + r1) / 2;
    est.transfer.col(2) = (r0 - r1) / 2;
    est.transfer.col(0) = rp - est.offset;
    est.transfer.col(1) = ri - est.offset;
    PauliChannel raw = PauliChannel::from_eigenvalues(est.transfer(0, 0), est.transfer(1, 1), est.transfer(2, 2));
    auto p = project_to_simplex(raw.probabilities());
    est.channel = {p[0], p[1], p[2], p[3]};
    Eigen::Matrix3d diff = est.transfer;
    diff(0, 0) -= est.channel.lambda_x();
    diff(1, 1) -= est.channel.lambda_y();
    diff(2, 2) -= est.channel.lambda_z();
    est.residual = std::sqrt(diff.squaredNorm() + est.offset.squaredNorm());
    est.flagged = est.residual > residual_threshold;
    return est;
}

/// Earlier measurement on the chain: angle and outcome of the step that
/// placed the logical qubit on site 1.
struct History {
    double angle = 0;
    int outcome = 0;
};

/// One clock period of logical storage on the dense three-qubit line: the
/// probe state is teleported onto site 1 by measuring site 0 (history h),
/// stored for one period, read out through site 2 by an X measurement, and
/// the ideal steps are undone. The cluster is prepared perfectly (the storage
/// channel excludes preparation errors) and site 2 is kept off the bath.
inline SingleQubitProcess timestep_process(const BathSpec &bath, double delta, History h = {},
                                           EvolveOptions evolve_opt = {}) {
    return [=](const DensityMatrix &chi) {
        Mat2 v1 = mat2::xrot(h.angle) * mat2::H();
        if (h.outcome) v1 = mat2::X() * v1;
        DensityMatrix input(1, v1.adjoint() * chi.matrix() * v1);
        const Lattice line = Lattice::line(3);
        SystemParams params(delta, line, {2});
        DensityMatrix rho = entangle(product_state({input, states::plus(), states::plus()}), line);
        auto policy = OutcomePolicy::forced(h.outcome);
        rho = measure(rho, {0, Basis::xy(h.angle), 0, h.outcome}, policy).state;
        rho = evolve(rho, params, bath, Picture::Original, params.tau(), evolve_opt);
        rho = measure(rho, {1, Basis::xy(0), params.tau(), 0}, policy).state;
        DensityMatrix out = partial_trace(rho, {2});
        Mat2 h2 = mat2::H();
        return DensityMatrix(1, h2.adjoint() * out.matrix() * h2);
    };
}

// ---------------------------------------------------------------------------
// Cooling scan.

/// Reference used to score the two-bath rotation experiment.
enum class IdealConvention {
    /// Mean fidelity over the six Pauli eigenstates as logical inputs.
    CardinalAverage,
    /// Input qubit in equilibrium, compared with X(theta)|+>.
    EquilibriumPlus,
    /// Input qubit in equilibrium, compared with its own noiseless image.
    ThermalImage,
};

inline const char *convention_name(IdealConvention c) {
    switch (c) {
        case IdealConvention::CardinalAverage:
            return "cardinal-average";
        case IdealConvention::EquilibriumPlus:
            return "equilibrium-plus";
        case IdealConvention::ThermalImage:
            return "thermal-image";
    }
    return "?";
}

inline IdealConvention parse_convention(const std::string &s) {
    for (auto c : {IdealConvention::CardinalAverage, IdealConvention::EquilibriumPlus, IdealConvention::ThermalImage})
        if (s == convention_name(c)) return c;
    throw std::invalid_argument("unknown ideal-output convention \"" + s + "\"");
}

/// Fidelity of the two-bath experiment (measurements at 0 and one period)
/// under the chosen convention. Outcomes are forced to zero.
inline double cooling_fidelity(double gamma, double alpha_bath, double theta, double delta,
                               IdealConvention conv = IdealConvention::CardinalAverage, EvolveOptions ev = {}) {
    const BathSpec bath = BathSpec::two_bath(alpha_bath, gamma);
    const double tau = clock_period(delta);
    auto run = [&](const DensityMatrix &input) {
        XrotOptions opt;
        opt.input = input;
        opt.evolve = ev;
        return run_xrot_experiment(theta, 0, tau, bath, delta, OutcomePolicy::forced(0), opt);
    };
    switch (conv) {
        case IdealConvention::CardinalAverage: {
            double acc = 0;
            for (const auto &s : states::cardinal()) acc += run(s).fidelity;
            return acc / 6;
        }
        case IdealConvention::EquilibriumPlus: {
            XrotResult r = run(equilibrium_state(bath));
            return fidelity(apply_unitary_1q(r.record.intended, states::plus()), r.output);
        }
        case IdealConvention::ThermalImage:
            return run(equilibrium_state(bath)).fidelity;
    }
    return 0;
}

inline std::vector<std::pair<double, double>> cooling_scan(double gamma, const std::vector<double> &alpha_bath_grid,
                                                           double theta, double delta,
                                                           IdealConvention conv = IdealConvention::CardinalAverage,
                                                           unsigned jobs = 1, EvolveOptions ev = {}) {
    if (!(gamma > 0)) {
        throw std::invalid_argument("cooling_scan: gamma must be positive");
    }
    for (double a : alpha_bath_grid) {
        if (!(a > 0)) throw std::invalid_argument("cooling_scan: grid values must be positive");
    }
    auto f = parallel_map(alpha_bath_grid.size(), jobs, [&](std::size_t i) {
        return cooling_fidelity(gamma, alpha_bath_grid[i], theta, delta, conv, ev);
    });
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i < f.size(); ++i) out.emplace_back(alpha_bath_grid[i], f[i]);
    return out;
}

/// Points spaced evenly in log10 from lo to hi inclusive.
inline std::vector<double> log_grid(double lo, double hi, std::size_t count) {
    if (!(lo > 0) || !(hi > lo) || count < 2) {
        throw std::invalid_argument("log_grid: need 0 < lo < hi and at least two points");
    }
    std::vector<double> g(count);
    const double a = std::log10(lo), b = std::log10(hi);
    for (std::size_t i = 0; i < count; ++i) g[i] = std::pow(10.0, a + (b - a) * i / (count - 1));
    return g;
}

// ---------------------------------------------------------------------------
// Patterns.

struct PatternEvent {
    int site = 0;
    Basis basis;
    /// Index (in execution order) of an earlier event whose outcome flips
    /// the sign of this event's angle.
    std::optional<std::size_t> adapt_source;
};

/// Measurement rounds on a line, executed one clock period apart. The logical
/// input sits on site 0 and is read out on the last site; events must walk
/// the chain in order with in-plane bases.
struct Pattern {
    int num_sites = 3;
    std::vector<std::vector<PatternEvent>> rounds;
    double t0 = 0;
    double delay_periods = 1;
    DensityMatrix input = states::plus();

    void validate() const {
        if (num_sites < 2) throw std::invalid_argument("pattern needs at least two sites");
        std::size_t count = 0;
        std::vector<char> seen(num_sites, 0);
        for (const auto &round : rounds) {
            for (const auto &ev : round) {
                if (ev.site < 0 || ev.site >= num_sites) {
                    throw std::out_of_range("pattern event on unknown site " + std::to_string(ev.site));
                }
                if (seen[ev.site]) throw std::invalid_argument("site " + std::to_string(ev.site) + " measured twice");
                seen[ev.site] = 1;
                if (ev.site != static_cast<int>(count)) {
                    throw std::invalid_argument("pattern must measure sites 0, 1, ... in order");
                }
                if (ev.basis.kind != Basis::Kind::XY) {
                    throw std::invalid_argument("pattern events must use in-plane bases");
                }
                if (!std::isfinite(ev.basis.angle)) throw std::invalid_argument("non-finite angle");
                if (ev.adapt_source && *ev.adapt_source >= count) {
                    throw std::invalid_argument("event on site " + std::to_string(ev.site) +
                                                " adapts on a later or same event");
                }
                ++count;
            }
        }
        if (count != static_cast<std::size_t>(num_sites - 1)) {
            throw std::invalid_argument("pattern must measure every site but the last");
        }
        if (!(delay_periods >= 0) || !(t0 >= 0)) throw std::invalid_argument("negative pattern timing");
    }
};

struct PatternRun {
    LogicalRecord record;
    DensityMatrix output;
    double fidelity = 0;
    std::vector<std::string> transcript;
};

struct PatternOptions {
    std::optional<double> kT;
    EvolveOptions evolve;
};

inline PatternRun run_pattern(const Pattern &pattern, const BathSpec &bath, double delta, OutcomePolicy &policy,
                              const PatternOptions &opt = {}) {
    pattern.validate();
    const int n = pattern.num_sites;
    const Lattice line = Lattice::line(n);
    SystemParams params(delta, line);
    const double kT = opt.kT ? *opt.kT : default_kT(bath, delta);
    std::vector<DensityMatrix> factors{pattern.input};
    for (int s = 1; s < n; ++s) factors.push_back(equilibrium_state_at(kT, delta));
    DensityMatrix rho = entangle(product_state(factors), line);

    PatternRun run;
    std::vector<int> outcomes;
    double now = 0;
    auto fmt = [](double x) {
        std::ostringstream o;
        o.setf(std::ios::fixed);
        o.precision(6);
        o << x;
        return o.str();
    };
    for (std::size_t r = 0; r < pattern.rounds.size(); ++r) {
        double wait = r == 0 ? pattern.t0 : pattern.delay_periods * params.tau();
        rho = evolve(rho, params, bath, Picture::Original, wait, opt.evolve);
        now += wait;
        for (const auto &ev : pattern.rounds[r]) {
            double used = ev.basis.angle;
            if (ev.adapt_source && outcomes[*ev.adapt_source]) used = -used;
            if (std::abs(used - run.record.adapted_angle(ev.basis.angle)) > 1e-15) {
                warn("pattern adaptivity on site " + std::to_string(ev.site) + " disagrees with byproduct tracking");
            }
            MeasureResult m = measure(rho, {ev.site, Basis::xy(used), now, std::nullopt}, policy);
            rho = m.state;
            outcomes.push_back(m.outcome);
            run.record.record(ev.basis.angle, used, m.outcome);
            run.transcript.push_back("t=" + fmt(now) + " site " + std::to_string(ev.site) + " angle " + fmt(used) +
                                     " -> s=" + std::to_string(m.outcome) + " (p=" + fmt(m.probability) + ")");
        }
    }
    run.output = run.record.correct(partial_trace(rho, {n - 1}));
    DensityMatrix ideal = apply_unitary_1q(run.record.intended, pattern.input);
    run.fidelity = fidelity(ideal, run.output);
    run.transcript.push_back("byproduct: Z^" + std::to_string(run.record.a) + " X^" + std::to_string(run.record.b));
    run.transcript.push_back("fidelity: " + fmt(run.fidelity));
    return run;
}

}  // namespace clusterdyn

#endif  // CLUSTERDYN_MBQC_HPP
