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

#ifndef CLUSTERDYN_LATTICE_HPP
#define CLUSTERDYN_LATTICE_HPP

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace clusterdyn {

enum class LatticeKind { Line, Square, Cubic, Custom };

inline const char *kind_name(LatticeKind k) {
    switch (k) {
        case LatticeKind::Line:
            return "line";
        case LatticeKind::Square:
            return "square";
        case LatticeKind::Cubic:
            return "cubic";
        case LatticeKind::Custom:
            return "custom";
    }
    return "?";
}

/// Undirected simple graph on sites 0..N-1.
class Lattice {
   public:
    using Edge = std::pair<int, int>;

    Lattice() = default;

    /// Builds a lattice from an edge list. Edges are normalised to (min, max);
    /// self-loops and duplicates are rejected.
    Lattice(int num_sites, const std::vector<Edge> &edges, LatticeKind kind = LatticeKind::Custom)
        : n_(num_sites), kind_(kind), adj_(static_cast<std::size_t>(std::max(num_sites, 0))) {
        if (num_sites < 0) {
            throw std::invalid_argument("Lattice: negative site count");
        }
        for (auto [a, b] : edges) {
            if (a < 0 || b < 0 || a >= n_ || b >= n_) {
                throw std::out_of_range("Lattice: edge (" + std::to_string(a) + ", " + std::to_string(b) +
                                        ") outside 0.." + std::to_string(n_ - 1));
            }
            if (a == b) {
                throw std::invalid_argument("Lattice: self-loop at site " + std::to_string(a));
            }
            Edge e{std::min(a, b), std::max(a, b)};
            if (!edges_.insert(e).second) {
                throw std::invalid_argument("Lattice: duplicate edge (" + std::to_string(e.first) + ", " +
                                            std::to_string(e.second) + ")");
            }
            adj_[e.first].push_back(e.second);
            adj_[e.second].push_back(e.first);
        }
        for (auto &nb : adj_) {
            std::sort(nb.begin(), nb.end());
        }
    }

    static Lattice line(int n) {
        std::vector<Edge> e;
        for (int i = 0; i + 1 < n; ++i) {
            e.emplace_back(i, i + 1);
        }
        return Lattice(n, e, LatticeKind::Line);
    }

    /// rows x cols grid, site id = r * cols + c.
    static Lattice square(int rows, int cols) {
        std::vector<Edge> e;
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) {
                int s = r * cols + c;
                if (c + 1 < cols) e.emplace_back(s, s + 1);
                if (r + 1 < rows) e.emplace_back(s, s + cols);
            }
        }
        return Lattice(rows * cols, e, LatticeKind::Square);
    }

    /// a x b x c grid, site id = (i * b + j) * c + k.
    static Lattice cubic(int a, int b, int c) {
        std::vector<Edge> e;
        auto id = [&](int i, int j, int k) { return (i * b + j) * c + k; };
        for (int i = 0; i < a; ++i) {
            for (int j = 0; j < b; ++j) {
                for (int k = 0; k < c; ++k) {
                    if (i + 1 < a) e.emplace_back(id(i, j, k), id(i + 1, j, k));
                    if (j + 1 < b) e.emplace_back(id(i, j, k), id(i, j + 1, k));
                    if (k + 1 < c) e.emplace_back(id(i, j, k), id(i, j, k + 1));
                }
            }
        }
        return Lattice(a * b * c, e, LatticeKind::Cubic);
    }

    /// Centre 0 joined to k leaves 1..k.
    static Lattice star(int k) {
        std::vector<Edge> e;
        for (int j = 1; j <= k; ++j) {
            e.emplace_back(0, j);
        }
        return Lattice(k + 1, e, LatticeKind::Custom);
    }

    /// Reads "i j" pairs, one per line. Blank lines and '#' comments are
    /// skipped. The site count is one more than the largest id seen.
    static Lattice from_edge_list(std::istream &in) {
        std::vector<Edge> e;
        int max_id = -1;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) {
                line.resize(hash);
            }
            std::istringstream ls(line);
            int a, b;
            if (!(ls >> a)) {
                continue;
            }
            std::string rest;
            if (!(ls >> b) || (ls >> rest)) {
                throw std::invalid_argument("edge list line " + std::to_string(lineno) + ": expected \"i j\"");
            }
            e.emplace_back(a, b);
            max_id = std::max({max_id, a, b});
        }
        return Lattice(max_id + 1, e, LatticeKind::Custom);
    }

    static Lattice from_edge_file(const std::string &path) {
        std::ifstream in(path);
        if (!in) {
            throw std::runtime_error("cannot open lattice file: " + path);
        }
        return from_edge_list(in);
    }

    int size() const { return n_; }
    LatticeKind kind() const { return kind_; }
    bool contains(int site) const { return site >= 0 && site < n_; }
    const std::set<Edge> &edges() const { return edges_; }
    const std::vector<int> &neighbours(int site) const {
        if (!contains(site)) {
            throw std::out_of_range("Lattice: unknown site " + std::to_string(site));
        }
        return adj_[site];
    }
    int degree(int site) const { return static_cast<int>(neighbours(site).size()); }
    bool adjacent(int a, int b) const { return edges_.count({std::min(a, b), std::max(a, b)}) > 0; }

    /// Same site ids, keeping only edges with both ends satisfying keep.
    template <class Pred>
    Lattice induced(Pred &&keep) const {
        std::vector<Edge> e;
        for (auto [a, b] : edges_) {
            if (keep(a) && keep(b)) {
                e.emplace_back(a, b);
            }
        }
        return Lattice(n_, e, LatticeKind::Custom);
    }

    bool connected() const {
        if (n_ <= 1) {
            return true;
        }
        std::vector<char> seen(n_, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            int s = stack.back();
            stack.pop_back();
            for (int j : adj_[s]) {
                if (!seen[j]) {
                    seen[j] = 1;
                    ++count;
                    stack.push_back(j);
                }
            }
        }
        return count == n_;
    }

    std::string str() const {
        std::ostringstream out;
        out << kind_name(kind_) << '(' << n_ << ';';
        for (auto [a, b] : edges_) {
            out << ' ' << a << '-' << b;
        }
        out << ')';
        return out.str();
    }

    bool operator==(const Lattice &o) const { return n_ == o.n_ && edges_ == o.edges_; }

   private:
    int n_ = 0;
    LatticeKind kind_ = LatticeKind::Custom;
    std::set<Edge> edges_;
    std::vector<std::vector<int>> adj_;
};

}  // namespace clusterdyn

#endif  // CLUSTERDYN_LATTICE_HPP
