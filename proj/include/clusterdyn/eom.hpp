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

#ifndef CLUSTERDYN_EOM_HPP
#define CLUSTERDYN_EOM_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

#include "clusterdyn/lattice.hpp"
#include "clusterdyn/pauli.hpp"
#include "clusterdyn/state.hpp"

namespace clusterdyn {

/// A site that has already been measured, with its basis and outcome.
struct MeasuredSite {
    Basis basis = Basis::xy(0);
    int outcome = 0;

    bool in_plane() const { return basis.kind == Basis::Kind::XY; }
    /// Bloch vector of the post-measurement single-site state.
    BlochVector bloch() const {
        double s = outcome ? -1.0 : 1.0;
        if (!in_plane()) {
            return {0, 0, s};
        }
        return {s * std::cos(basis.angle), -s * std::sin(basis.angle), 0};
    }
};

/// Classification of lattice sites for the logical-observable equations:
/// the logical set, the previously measured set, and sites still sitting in
/// equilibrium. Equilibrium sites are static; their bonds are dropped, so
/// the effective stabilizers live on the graph induced by the other sites.
struct EOMContext {
    Lattice lattice;
    std::set<int> logical;
    std::map<int, MeasuredSite> measured;
    std::set<int> equilibrium;
    /// Optional logical-site Bloch vectors for the product initial-value model.
    std::map<int, BlochVector> logical_bloch;

    /// Every site logical, nothing measured.
    static EOMContext full(const Lattice &lattice) {
        EOMContext c;
        c.lattice = lattice;
        for (int s = 0; s < lattice.size(); ++s) c.logical.insert(s);
        return c;
    }

    bool active(int s) const { return logical.count(s) > 0 || measured.count(s) > 0; }

    void validate() const {
        for (int s = 0; s < lattice.size(); ++s) {
            int hits = static_cast<int>(logical.count(s)) + static_cast<int>(measured.count(s)) +
                       static_cast<int>(equilibrium.count(s));
            if (hits != 1) {
                throw std::invalid_argument("EOMContext: site " + std::to_string(s) +
                                            (hits == 0 ? " is unclassified" : " is in more than one set"));
            }
        }
        auto in_range = [&](int s) {
            if (!lattice.contains(s)) {
                throw std::out_of_range("EOMContext: site " + std::to_string(s) + " not in lattice");
            }
        };
        for (int s : logical) in_range(s);
        for (auto &kv : measured) in_range(kv.first);
        for (int s : equilibrium) in_range(s);
    }

    Lattice effective_lattice() const {
        return lattice.induced([&](int s) { return active(s); });
    }
};

/// K_i on the graph induced by the non-equilibrium sites.
inline PauliString effective_stabilizer(const EOMContext &ctx, int site) {
    return stabilizer(ctx.effective_lattice(), site);
}

/// What one site's dissipator does to d<M>/dt.
struct SiteContribution {
    enum class Kind { None, Decay, Coupling } kind = Kind::None;
    /// Decay rate in units of (alpha + beta) / 2: 1 for Decay, 2 for Coupling.
    int decay_halves = 0;
    /// For Coupling: M K_i (Hermitian, phase +-1), entering with (alpha - beta).
    PauliString partner;
};

namespace detail {

inline SiteContribution classify(const PauliString &m, const PauliString &k, int site) {
    const bool cz = commutes(m, PauliString::single(site, PauliLetter::Z));
    const bool ck = commutes(m, k);
    SiteContribution out;
    if (!cz && ck) {
        out.kind = SiteContribution::Kind::Coupling;
        out.decay_halves = 2;
        out.partner = m * k;
    } else if (!ck) {
        out.kind = SiteContribution::Kind::Decay;
        out.decay_halves = 1;
    }
    return out;
}

}  // namespace detail

/// Rule for site i: decay -(a+b)/2 <M> when M anticommutes with K_i;
/// -(a+b) <M> + (a-b) <M K_i> when M anticommutes with Z_i but commutes with
/// K_i; nothing otherwise. Equilibrium sites contribute nothing.
inline SiteContribution site_contribution(const PauliString &m, int site, const EOMContext &ctx) {
    if (!ctx.active(site)) {
        return {};
    }
    return detail::classify(m.unsigned_part(), effective_stabilizer(ctx, site), site);
}

struct EOMSource {
    std::size_t var = 0;
    /// +1 or -1, in units of (alpha - beta).
    double coef = 0;
};

struct EOMRow {
    /// Diagonal rate in units of (alpha + beta) / 2.
    int decay_halves = 0;
    std::vector<EOMSource> sources;
};

struct DecouplingReport {
    bool decoupled = true;
    std::vector<int> witness;
};

/// A logical site is fine when it has an in-plane measured neighbour, or when
/// no neighbour has been measured at all (then no coupling leaves the logical
/// set). Sites failing both are returned as the witness.
inline DecouplingReport check_decoupling(const EOMContext &ctx) {
    DecouplingReport r;
    Lattice eff = ctx.effective_lattice();
    for (int s : ctx.logical) {
        bool any_measured = false, in_plane = false;
        for (int j : eff.neighbours(s)) {
            auto it = ctx.measured.find(j);
            if (it == ctx.measured.end()) continue;
            any_measured = true;
            in_plane |= it->second.in_plane();
        }
        if (any_measured && !in_plane) {
            r.decoupled = false;
            r.witness.push_back(s);
        }
    }
    return r;
}

using InitialValues = std::function<double(const PauliString &)>;

/// Initial values from a dense original-picture state on the same lattice.
inline InitialValues initial_values_from_state(DensityMatrix state) {
    return [state = std::move(state)](const PauliString &p) { return state.expectation(p); };
}

/// Product model: measured sites carry their post-measurement eigenstate,
/// logical sites the Bloch vectors in ctx.logical_bloch (zero if absent).
inline InitialValues initial_values_from_context(const EOMContext &ctx) {
    return [ctx](const PauliString &p) {
        double v = p.phase().sign();
        for (const auto &[site, letter] : p.factors()) {
            BlochVector b;
            if (auto it = ctx.measured.find(site); it != ctx.measured.end()) {
                b = it->second.bloch();
            } else if (auto jt = ctx.logical_bloch.find(site); jt != ctx.logical_bloch.end()) {
                b = jt->second;
            }
            v *= b[static_cast<int>(letter) - 1];
        }
        return v;
    };
}

inline constexpr std::size_t kClosureCap = 10000;

/// Closed linear system d<M_j>/dt = sum_k A_jk <M_k> over Pauli observables
/// in the interaction picture, with A = (alpha+beta) A_sum + (alpha-beta) A_diff.
class EOMSystem {
   public:
    std::vector<PauliString> variables;
    std::vector<EOMRow> rows;
    Eigen::VectorXd initial;
    double alpha = 0, beta = 0;
    /// Sign of the requested observable relative to variables[root].
    std::size_t root = 0;
    int root_sign = 1;
    DecouplingReport decoupling;

    std::size_t size() const { return variables.size(); }

    std::size_t index_of(const PauliString &p) const {
        auto it = std::find(variables.begin(), variables.end(), p.unsigned_part());
        if (it == variables.end()) {
            throw std::out_of_range("EOMSystem: " + p.str() + " is not a variable");
        }
        return static_cast<std::size_t>(it - variables.begin());
    }

    Eigen::MatrixXd a_sum() const {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(size(), size());
        for (std::size_t j = 0; j < size(); ++j) a(j, j) = -0.5 * rows[j].decay_halves;
        return a;
    }
    Eigen::MatrixXd a_diff() const {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(size(), size());
        for (std::size_t j = 0; j < size(); ++j)
            for (auto &s : rows[j].sources) a(j, s.var) += s.coef;
        return a;
    }
    Eigen::MatrixXd matrix() const { return (alpha + beta) * a_sum() + (alpha - beta) * a_diff(); }

    bool lower_triangular() const {
        for (std::size_t j = 0; j < size(); ++j)
            for (auto &s : rows[j].sources)
                if (s.var >= j) return false;
        return true;
    }

    std::string str() const {
        std::ostringstream out;
        for (std::size_t j = 0; j < size(); ++j) {
            out << "d/dt <" << name(variables[j]) << "> =";
            bool first = true;
            if (rows[j].decay_halves != 0) {
                out << ' ' << rate(rows[j].decay_halves) << " (α+β) <" << name(variables[j]) << '>';
                first = false;
            }
            for (auto &s : rows[j].sources) {
                out << (s.coef < 0 ? " - " : (first ? " " : " + ")) << "(α-β) <" << name(variables[s.var]) << '>';
                first = false;
            }
            if (first) out << " 0";
            out << '\n';
        }
        return out.str();
    }

   private:
    static std::string name(const PauliString &p) {
        if (p.factors().empty()) return "I";
        std::string s;
        for (const auto &[site, letter] : p.factors()) {
            if (!s.empty()) s += ' ';
            s += letter_char(letter);
            s += std::to_string(site);
        }
        return s;
    }
    static std::string rate(int halves) {
        if (halves % 2 == 0) return "-" + std::to_string(halves / 2);
        return "-" + std::to_string(halves) + "/2";
    }
};

/// Generates the variable set by closing {M0} under M -> M K_i and orders it
/// by the number of coupling sites so that every source sits below its row.
inline EOMSystem build_eom(const PauliString &m0, const EOMContext &ctx, double alpha, double beta,
                           InitialValues init = nullptr) {
    ctx.validate();
    if (!(alpha >= 0) || !(beta >= 0)) {
        throw std::invalid_argument("build_eom: rates must be non-negative");
    }
    if (m0.has_identity_support()) {
        throw std::invalid_argument("build_eom: observable must be nontrivial");
    }
    if (!m0.is_hermitian()) {
        throw std::invalid_argument("build_eom: observable must have a real phase");
    }
    for (int s : m0.support()) {
        if (!ctx.lattice.contains(s)) {
            throw std::out_of_range("build_eom: site " + std::to_string(s) + " not in lattice");
        }
        if (!ctx.active(s)) {
            throw std::invalid_argument("build_eom: " + m0.str() + " acts on equilibrium site " + std::to_string(s));
        }
    }
    if (!init) {
        init = initial_values_from_context(ctx);
    }
    Lattice eff = ctx.effective_lattice();
    std::vector<int> sites;
    std::vector<PauliString> stabs;
    for (int s = 0; s < eff.size(); ++s) {
        if (ctx.active(s)) {
            sites.push_back(s);
            stabs.push_back(stabilizer(eff, s));
        }
    }

    struct Raw {
        int halves = 0;
        int couplings = 0;
        std::vector<std::pair<PauliString, int>> partners;
    };
    std::map<PauliString, Raw> raw;
    std::deque<PauliString> todo{m0.unsigned_part()};
    while (!todo.empty()) {
        PauliString m = todo.front();
        todo.pop_front();
        if (raw.count(m)) continue;
        if (raw.size() >= kClosureCap) {
            std::ostringstream msg;
            msg << "build_eom: closure exceeded " << kClosureCap << " variables; first few:";
            int k = 0;
            for (auto &kv : raw) {
                if (k++ == 8) break;
                msg << ' ' << kv.first.str();
            }
            throw std::length_error(msg.str());
        }
        Raw r;
        if (!m.has_identity_support()) {
            for (std::size_t k = 0; k < sites.size(); ++k) {
                SiteContribution c = detail::classify(m, stabs[k], sites[k]);
                r.halves += c.decay_halves;
                if (c.kind == SiteContribution::Kind::Coupling) {
                    ++r.couplings;
                    PauliString p = c.partner.unsigned_part();
                    r.partners.emplace_back(p, c.partner.phase().sign());
                    todo.push_back(p);
                }
            }
        }
        raw.emplace(m, std::move(r));
    }

    EOMSystem sys;
    sys.alpha = alpha;
    sys.beta = beta;
    sys.decoupling = check_decoupling(ctx);
    for (auto &kv : raw) sys.variables.push_back(kv.first);
    std::stable_sort(sys.variables.begin(), sys.variables.end(), [&](const PauliString &a, const PauliString &b) {
        return raw.at(a).couplings < raw.at(b).couplings;
    });
    std::map<PauliString, std::size_t> index;
    for (std::size_t j = 0; j < sys.variables.size(); ++j) index[sys.variables[j]] = j;
    sys.rows.resize(sys.variables.size());
    sys.initial.resize(static_cast<Eigen::Index>(sys.variables.size()));
    for (std::size_t j = 0; j < sys.variables.size(); ++j) {
        const Raw &r = raw.at(sys.variables[j]);
        sys.rows[j].decay_halves = r.halves;
        for (auto &[p, sign] : r.partners) sys.rows[j].sources.push_back({index.at(p), static_cast<double>(sign)});
        sys.initial(static_cast<Eigen::Index>(j)) =
            sys.variables[j].has_identity_support() ? 1.0 : init(sys.variables[j]);
    }
    sys.root = index.at(m0.unsigned_part());
    sys.root_sign = m0.phase().sign();
    return sys;
}

namespace detail {

/// Sum of coef * t^m * exp(-q c t) keyed by (q, m), c = (alpha + beta) / 2.
using ExpPoly = std::map<std::pair<int, int>, double>;

inline double eval(const ExpPoly &p, double c, double t) {
    double v = 0;
    for (auto &[key, coef] : p) v += coef * std::pow(t, key.second) * std::exp(-key.first * c * t);
    return v;
}

}  // namespace detail

/// Values of every variable at time t. Back-substitutes closed-form
/// exponential-polynomials down the triangular order; falls back to the
/// matrix exponential when two distinct rates are too close to separate.
inline Eigen::VectorXd solve_eom(const EOMSystem &sys, double t) {
    if (t < 0) {
        throw std::invalid_argument("solve_eom: negative time");
    }
    const double c = (sys.alpha + sys.beta) / 2;
    const double d = sys.alpha - sys.beta;
    bool ill = !sys.lower_triangular();
    for (std::size_t j = 0; j < sys.size() && !ill; ++j)
        for (auto &s : sys.rows[j].sources) {
            int dq = sys.rows[j].decay_halves - sys.rows[s.var].decay_halves;
            if (dq != 0 && c > 0 && std::abs(dq * c * t) < 1e-6 && std::abs(dq * c * t) > 0) ill = true;
        }
    if (ill) {
        return (sys.matrix() * t).exp() * sys.initial;
    }

    std::vector<detail::ExpPoly> sol(sys.size());
    std::vector<double> fact{1.0};
    auto factorial = [&](int m) {
        while (static_cast<int>(fact.size()) <= m) fact.push_back(fact.back() * static_cast<double>(fact.size()));
        return fact[m];
    };
    for (std::size_t j = 0; j < sys.size(); ++j) {
        const int qj = sys.rows[j].decay_halves;
        detail::ExpPoly x;
        x[{qj, 0}] += sys.initial(static_cast<Eigen::Index>(j));
        for (auto &src : sys.rows[j].sources) {
            for (auto &[key, a0] : sol[src.var]) {
                const auto [q, m] = key;
                const double a = a0 * src.coef * d;
                if (q == qj || c == 0) {
                    x[{qj, m + 1}] += a / (m + 1);
                    continue;
                }
                // int_0^t s^m e^{delta s} ds, delta = (qj - q) c.
                const double delta = (qj - q) * c;
                for (int k = 0; k <= m; ++k) {
                    double term = factorial(m) / (factorial(k) * std::pow(delta, m - k + 1));
                    x[{q, k}] += a * (((m - k) % 2) ? -term : term);
                }
                double tail = factorial(m) / std::pow(delta, m + 1);
                x[{qj, 0}] -= a * ((m % 2) ? -tail : tail);
            }
        }
        sol[j] = std::move(x);
    }
    Eigen::VectorXd out(static_cast<Eigen::Index>(sys.size()));
    for (std::size_t j = 0; j < sys.size(); ++j) out(static_cast<Eigen::Index>(j)) = detail::eval(sol[j], c, t);
    return out;
}

/// Value of the observable the system was built for.
inline double solve_root(const EOMSystem &sys, double t) {
    return sys.root_sign * solve_eom(sys, t)(static_cast<Eigen::Index>(sys.root));
}

}  // namespace clusterdyn

#endif  // CLUSTERDYN_EOM_HPP
