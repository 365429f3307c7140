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

#ifndef CLUSTERDYN_PAULI_HPP
#define CLUSTERDYN_PAULI_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "clusterdyn/lattice.hpp"

namespace clusterdyn {

enum class PauliLetter : std::uint8_t { X = 1, Y = 2, Z = 3 };

inline char letter_char(PauliLetter p) {
    switch (p) {
        case PauliLetter::X:
            return 'X';
        case PauliLetter::Y:
            return 'Y';
        case PauliLetter::Z:
            return 'Z';
    }
    return '?';
}

/// A unit phase i^k, k in {0, 1, 2, 3}. Kept exact so that products of
/// stabilizers never accumulate floating point drift.
class Phase {
   public:
    constexpr Phase() = default;
    static constexpr Phase from_power(int k) {
        Phase p;
        p.k_ = static_cast<std::uint8_t>(((k % 4) + 4) % 4);
        return p;
    }
    static constexpr Phase plus_one() { return from_power(0); }
    static constexpr Phase plus_i() { return from_power(1); }
    static constexpr Phase minus_one() { return from_power(2); }
    static constexpr Phase minus_i() { return from_power(3); }

    constexpr int power() const { return k_; }
    constexpr bool is_real() const { return (k_ & 1) == 0; }
    /// +1 or -1 for real phases; throws otherwise.
    int sign() const {
        if (!is_real()) {
            throw std::domain_error("Phase::sign called on an imaginary phase");
        }
        return k_ == 0 ? 1 : -1;
    }
    std::complex<double> value() const {
        static constexpr std::complex<double> table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        return table[k_];
    }
    std::string str() const {
        static constexpr const char *table[4] = {"+1", "+i", "-1", "-i"};
        return table[k_];
    }

    constexpr Phase operator*(Phase other) const { return from_power(k_ + other.k_); }
    constexpr Phase conj() const { return from_power(-static_cast<int>(k_)); }
    constexpr bool operator==(const Phase &) const = default;

   private:
    std::uint8_t k_ = 0;
};

namespace detail {

/// Single-site product a*b = phase * letter; letter 0 means identity.
inline std::pair<Phase, int> letter_product(PauliLetter a, PauliLetter b) {
    int ia = static_cast<int>(a);
    int ib = static_cast<int>(b);
    if (ia == ib) {
        return {Phase::plus_one(), 0};
    }
    // Cyclic order X -> Y -> Z -> X picks up +i, the reverse picks up -i.
    Phase ph = ((ib - ia + 3) % 3 == 1) ? Phase::plus_i() : Phase::minus_i();
    return {ph, 6 - ia - ib};
}

inline std::optional<PauliLetter> parse_letter(char c) {
    switch (c) {
        case 'X':
        case 'x':
            return PauliLetter::X;
        case 'Y':
        case 'y':
            return PauliLetter::Y;
        case 'Z':
        case 'z':
            return PauliLetter::Z;
        default:
            return std::nullopt;
    }
}

}  // namespace detail

/// Sparse multi-site Pauli operator with an exact unit phase. Sites not in
/// the factor map carry the identity.
class PauliString {
   public:
    using Factors = std::map<int, PauliLetter>;

    PauliString() = default;
    PauliString(Factors factors, Phase phase = Phase::plus_one()) : factors_(std::move(factors)), phase_(phase) {
        for (const auto &[site, letter] : factors_) {
            if (site < 0) {
                throw std::invalid_argument("PauliString: negative site id " + std::to_string(site));
            }
            int v = static_cast<int>(letter);
            if (v < 1 || v > 3) {
                throw std::invalid_argument("PauliString: invalid letter at site " + std::to_string(site));
            }
        }
    }

    static PauliString identity() { return {}; }
    static PauliString single(int site, PauliLetter letter) { return PauliString(Factors{{site, letter}}); }

    /// Parses "+1 * Z0 X1 Z2", "-i * Y3", "Z0 Z1" (phase defaults to +1) or "+1 * I".
    static PauliString parse(std::string_view text);

    const Factors &factors() const { return factors_; }
    Phase phase() const { return phase_; }
    std::size_t weight() const { return factors_.size(); }
    bool has_identity_support() const { return factors_.empty(); }
    bool is_identity() const { return factors_.empty() && phase_ == Phase::plus_one(); }
    bool is_hermitian() const { return phase_.is_real(); }

    std::optional<PauliLetter> at(int site) const {
        auto it = factors_.find(site);
        if (it == factors_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    std::vector<int> support() const {
        std::vector<int> out;
        out.reserve(factors_.size());
        for (const auto &kv : factors_) {
            out.push_back(kv.first);
        }
        return out;
    }

    int max_site() const { return factors_.empty() ? -1 : factors_.rbegin()->first; }

    PauliString with_phase(Phase p) const {
        PauliString out = *this;
        out.phase_ = p;
        return out;
    }
    PauliString unsigned_part() const { return with_phase(Phase::plus_one()); }

    /// Restriction to the given sites (phase dropped).
    template <class Pred>
    PauliString restricted(Pred &&keep) const {
        Factors f;
        for (const auto &[site, letter] : factors_) {
            if (keep(site)) {
                f.emplace(site, letter);
            }
        }
        return PauliString(std::move(f));
    }

    std::string str() const {
        std::ostringstream out;
        out << phase_.str() << " *";
        if (factors_.empty()) {
            out << " I";
        }
        for (const auto &[site, letter] : factors_) {
            out << ' ' << letter_char(letter) << site;
        }
        return out.str();
    }

    /// Compact form without the phase, e.g. "Z0X1Z2"; "I" for the identity.
    std::string label() const {
        if (factors_.empty()) {
            return "I";
        }
        std::string out;
        for (const auto &[site, letter] : factors_) {
            out += letter_char(letter);
            out += std::to_string(site);
        }
        return out;
    }

    friend PauliString operator*(const PauliString &a, const PauliString &b) {
        Factors out;
        Phase ph = a.phase_ * b.phase_;
        auto ia = a.factors_.begin();
        auto ib = b.factors_.begin();
        while (ia != a.factors_.end() || ib != b.factors_.end()) {
            if (ib == b.factors_.end() || (ia != a.factors_.end() && ia->first < ib->first)) {
                out.emplace_hint(out.end(), *ia);
                ++ia;
            } else if (ia == a.factors_.end() || ib->first < ia->first) {
                out.emplace_hint(out.end(), *ib);
                ++ib;
            } else {
                auto [p, letter] = detail::letter_product(ia->second, ib->second);
                ph = ph * p;
                if (letter != 0) {
                    out.emplace_hint(out.end(), ia->first, static_cast<PauliLetter>(letter));
                }
                ++ia;
                ++ib;
            }
        }
        PauliString result;
        result.factors_ = std::move(out);
        result.phase_ = ph;
        return result;
    }

    bool operator==(const PauliString &other) const = default;
    /// Strict weak order on (factors, phase); used for ordered containers.
    bool operator<(const PauliString &other) const {
        if (factors_ != other.factors_) {
            return factors_ < other.factors_;
        }
        return phase_.power() < other.phase_.power();
    }

   private:
    Factors factors_;
    Phase phase_;
};

inline std::ostream &operator<<(std::ostream &out, const PauliString &p) { return out << p.str(); }

inline PauliString PauliString::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<std::string> tokens;
    for (std::string tok; in >> tok;) {
        tokens.push_back(tok);
    }
    Phase phase = Phase::plus_one();
    std::size_t pos = 0;
    if (!tokens.empty() && (tokens[0] == "+1" || tokens[0] == "-1" || tokens[0] == "+i" || tokens[0] == "-i" ||
                            tokens[0] == "1" || tokens[0] == "i")) {
        const std::string &t = tokens[0];
        if (t == "+1" || t == "1") {
            phase = Phase::plus_one();
        } else if (t == "-1") {
            phase = Phase::minus_one();
        } else if (t == "+i" || t == "i") {
            phase = Phase::plus_i();
        } else {
            phase = Phase::minus_i();
        }
        pos = 1;
        if (pos >= tokens.size() || tokens[pos] != "*") {
            throw std::invalid_argument("PauliString::parse: expected '*' after phase in \"" + std::string(text) + "\"");
        }
        ++pos;
    }
    Factors factors;
    for (; pos < tokens.size(); ++pos) {
        const std::string &tok = tokens[pos];
        if (tok == "I" && tokens.size() == pos + 1 && factors.empty()) {
            break;
        }
        auto letter = tok.empty() ? std::nullopt : detail::parse_letter(tok[0]);
        if (!letter || tok.size() < 2) {
            throw std::invalid_argument("PauliString::parse: bad factor \"" + tok + "\"");
        }
        int site = 0;
        for (std::size_t k = 1; k < tok.size(); ++k) {
            if (tok[k] < '0' || tok[k] > '9') {
                throw std::invalid_argument("PauliString::parse: bad site in \"" + tok + "\"");
            }
            site = site * 10 + (tok[k] - '0');
        }
        if (!factors.emplace(site, *letter).second) {
            throw std::invalid_argument("PauliString::parse: site " + std::to_string(site) + " repeated");
        }
    }
    return PauliString(std::move(factors), phase);
}

/// True iff a*b == b*a: the number of sites where both act with different
/// letters is even.
inline bool commutes(const PauliString &a, const PauliString &b) {
    int clashes = 0;
    auto ia = a.factors().begin();
    auto ib = b.factors().begin();
    while (ia != a.factors().end() && ib != b.factors().end()) {
        if (ia->first < ib->first) {
            ++ia;
        } else if (ib->first < ia->first) {
            ++ib;
        } else {
            clashes += ia->second != ib->second;
            ++ia;
            ++ib;
        }
    }
    return clashes % 2 == 0;
}

inline bool anticommutes(const PauliString &a, const PauliString &b) { return !commutes(a, b); }

/// K_i = X_i times Z on every neighbour of i.
inline PauliString stabilizer(const Lattice &lattice, int site) {
    if (!lattice.contains(site)) {
        throw std::out_of_range("stabilizer: site " + std::to_string(site) + " not in lattice of size " +
                                std::to_string(lattice.size()));
    }
    PauliString::Factors f{{site, PauliLetter::X}};
    for (int j : lattice.neighbours(site)) {
        f.emplace(j, PauliLetter::Z);
    }
    return PauliString(std::move(f));
}

/// U P U^dagger where U is the product of controlled-Z gates on every edge.
/// X_s and Y_s pick up Z on the neighbours of s; Z_s is unchanged.
inline PauliString conjugate_by_cz(const PauliString &p, const Lattice &lattice) {
    PauliString out = PauliString::identity().with_phase(p.phase());
    for (const auto &[site, letter] : p.factors()) {
        PauliString image = PauliString::single(site, letter);
        if (letter != PauliLetter::Z) {
            if (!lattice.contains(site)) {
                throw std::out_of_range("conjugate_by_cz: site " + std::to_string(site) + " not in lattice");
            }
            PauliString::Factors zs;
            for (int j : lattice.neighbours(site)) {
                zs.emplace(j, PauliLetter::Z);
            }
            image = image * PauliString(std::move(zs));
        }
        out = out * image;
    }
    return out;
}

/// Linear combination of Pauli strings with complex coefficients. Each
/// stored string has phase +1; the term phase is folded into the coefficient.
class PauliSum {
   public:
    using Term = std::pair<std::complex<double>, PauliString>;

    PauliSum() = default;
    explicit PauliSum(const PauliString &p, std::complex<double> c = 1.0) { add(p, c); }

    void add(const PauliString &p, std::complex<double> c = 1.0) {
        std::complex<double> coef = c * p.phase().value();
        auto [it, inserted] = terms_.try_emplace(p.unsigned_part(), coef);
        if (!inserted) {
            it->second += coef;
        }
    }

    PauliSum &operator+=(const PauliSum &other) {
        for (const auto &[p, c] : other.terms_) {
            add(p, c);
        }
        return *this;
    }
    friend PauliSum operator+(PauliSum a, const PauliSum &b) { return a += b; }

    PauliSum &operator*=(std::complex<double> s) {
        for (auto &kv : terms_) {
            kv.second *= s;
        }
        return *this;
    }
    friend PauliSum operator*(std::complex<double> s, PauliSum a) { return a *= s; }

    friend PauliSum operator*(const PauliSum &a, const PauliSum &b) {
        PauliSum out;
        for (const auto &[pa, ca] : a.terms_) {
            for (const auto &[pb, cb] : b.terms_) {
                out.add(pa * pb, ca * cb);
            }
        }
        return out;
    }

    PauliSum adjoint() const {
        PauliSum out;
        for (const auto &[p, c] : terms_) {
            out.add(p, std::conj(c));
        }
        return out;
    }

    /// Drops terms with |coefficient| <= tol.
    PauliSum pruned(double tol = 1e-15) const {
        PauliSum out;
        for (const auto &[p, c] : terms_) {
            if (std::abs(c) > tol) {
                out.terms_.emplace(p, c);
            }
        }
        return out;
    }

    PauliSum conjugated_by_cz(const Lattice &lattice) const {
        PauliSum out;
        for (const auto &[p, c] : terms_) {
            out.add(conjugate_by_cz(p, lattice), c);
        }
        return out;
    }

    const std::map<PauliString, std::complex<double>> &terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

   private:
    std::map<PauliString, std::complex<double>> terms_;
};

}  // namespace clusterdyn

#endif  // CLUSTERDYN_PAULI_HPP
