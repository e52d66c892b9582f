// Copyright 2026 The mvh Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "matrix.hpp"

namespace mvh {

enum class QuboKind { generic, ecc, vcc, max_clique, kcut };

inline const char *to_string(QuboKind k) {
    switch (k) {
        case QuboKind::ecc: return "ecc";
        case QuboKind::vcc: return "vcc";
        case QuboKind::max_clique: return "maxclique";
        case QuboKind::kcut: return "kcut";
        case QuboKind::generic: break;
    }
    return "generic";
}

// Semantic label of one binary variable.
struct VariableRole {
    enum class Kind { vertex_in_clique, edge_in_clique, plain_vertex };
    Kind kind = Kind::plain_vertex;
    std::size_t clique = 0;  // clique (or class / part) index; 0 for plain vertices
    std::size_t index = 0;   // vertex id or canonical edge index

    bool operator==(const VariableRole &) const = default;
};

struct QuboTerm {
    std::size_t i = 0;
    std::size_t j = 0;  // i <= j
    double value = 0.0;

    bool operator==(const QuboTerm &) const = default;
};

// Symmetric Q over {0,1}^N, stored as its upper triangle. For i < j the
// stored value is Q_ij (= Q_ji), so
//   energy(x) = sum_i Q_ii x_i + 2 sum_{i<j} Q_ij x_i x_j = x^T Q x.
class QuboProblem {
  public:
    QuboProblem() = default;

    explicit QuboProblem(std::size_t n) : roles_(n) {
        for (std::size_t v = 0; v < n; ++v) roles_[v].index = v;
    }

    QuboProblem(std::vector<VariableRole> roles, QuboKind kind, std::size_t cliques)
        : roles_(std::move(roles)), kind_(kind), cliques_(cliques) {}

    std::size_t size() const { return roles_.size(); }
    QuboKind kind() const { return kind_; }
    std::size_t clique_count() const { return cliques_; }
    const std::vector<VariableRole> &roles() const { return roles_; }

    // Adds v to Q_ij (and, implicitly, Q_ji).
    void add(std::size_t i, std::size_t j, double v) {
        if (i >= size() || j >= size()) throw DomainError("QUBO index out of range");
        if (i > j) std::swap(i, j);
        if (v == 0.0) return;
        auto [it, inserted] = entries_.try_emplace({i, j}, v);
        if (!inserted) {
            it->second += v;
            if (it->second == 0.0) entries_.erase(it);
        }
    }

    double value(std::size_t i, std::size_t j) const {
        if (i > j) std::swap(i, j);
        auto it = entries_.find({i, j});
        return it == entries_.end() ? 0.0 : it->second;
    }

    std::size_t nonzeros() const { return entries_.size(); }

    std::vector<QuboTerm> terms() const {
        std::vector<QuboTerm> out;
        out.reserve(entries_.size());
        for (const auto &[key, v] : entries_) out.push_back({key.first, key.second, v});
        return out;
    }

    double energy(std::span<const std::uint8_t> bits) const {
        if (bits.size() != size()) throw DomainError("bit vector length does not match QUBO size");
        double e = 0.0;
        for (const auto &[key, v] : entries_) {
            if (!bits[key.first] || !bits[key.second]) continue;
            e += key.first == key.second ? v : 2.0 * v;
        }
        return e;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto &[key, v] : entries_) m = std::max(m, std::abs(v));
        return m;
    }

    DenseMatrix<double> dense() const {
        DenseMatrix<double> q(size(), size(), 0.0);
        for (const auto &[key, v] : entries_) q(key.first, key.second) = q(key.second, key.first) = v;
        return q;
    }

    bool operator==(const QuboProblem &o) const { return roles_.size() == o.roles_.size() && entries_ == o.entries_; }

  private:
    std::vector<VariableRole> roles_;
    std::map<std::pair<std::size_t, std::size_t>, double> entries_;
    QuboKind kind_ = QuboKind::generic;
    std::size_t cliques_ = 0;
};

// x = (1 + s)/2 substitution. For s in {-1,+1}^N:
//   x^T Q x = sum_i h_i s_i + sum_{i<j} J_ij s_i s_j + offset.
struct IsingProblem {
    std::vector<double> h;
    std::vector<QuboTerm> couplings;  // i < j
    double offset = 0.0;

    double energy(std::span<const int> spins) const {
        double e = 0.0;
        for (std::size_t i = 0; i < h.size(); ++i) e += h[i] * spins[i];
        for (const auto &c : couplings) e += c.value * spins[c.i] * spins[c.j];
        return e;
    }
};

namespace detail {

inline std::vector<VariableRole> clique_major_vertex_roles(std::size_t k, std::size_t n) {
    std::vector<VariableRole> roles;
    roles.reserve(k * n);
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t v = 0; v < n; ++v) roles.push_back({VariableRole::Kind::vertex_in_clique, c, v});
    return roles;
}

}  // namespace detail

// Edge clique cover:
//   Q = [[ I_k (x) (J_n - I_n),  -2 I_k (x) B ],
//        [ -2 I_k (x) B^T,       (J_k + 3 I_k) (x) I_m ]]
// over X = [x_0 .. x_{k-1}, e_0 .. e_{k-1}], N = k(n+m).
inline QuboProblem build_ecc_qubo(const SkeletonGraph &g, std::size_t k) {
    if (k < 1) throw DomainError("ECC needs k >= 1");
    const std::size_t n = g.vertex_count(), m = g.edge_count();
    auto roles = detail::clique_major_vertex_roles(k, n);
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t e = 0; e < m; ++e) roles.push_back({VariableRole::Kind::edge_in_clique, c, e});
    QuboProblem q(std::move(roles), QuboKind::ecc, k);
    const auto vvar = [n](std::size_t c, std::size_t v) { return c * n + v; };
    const auto evar = [n, m, k](std::size_t c, std::size_t e) { return k * n + c * m + e; };
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v) q.add(vvar(c, u), vvar(c, v), 1.0);
        for (std::size_t e = 0; e < m; ++e) {
            q.add(vvar(c, g.edges()[e].u), evar(c, e), -2.0);
            q.add(vvar(c, g.edges()[e].v), evar(c, e), -2.0);
        }
    }
    for (std::size_t e = 0; e < m; ++e)
        for (std::size_t c = 0; c < k; ++c) {
            q.add(evar(c, e), evar(c, e), 4.0);
            for (std::size_t c2 = c + 1; c2 < k; ++c2) q.add(evar(c, e), evar(c2, e), 1.0);
        }
    return q;
}

// Vertex clique cover (colouring of the complement):
//   Q = I_k (x) (J_n - I_n - A) + alpha (J_k - 2 I_k) (x) I_n, N = kn.
inline QuboProblem build_vcc_qubo(const SkeletonGraph &g, std::size_t k, double alpha) {
    if (k < 1) throw DomainError("VCC needs k >= 1");
    if (!(alpha > 0.0)) throw DomainError("VCC needs alpha > 0");
    const std::size_t n = g.vertex_count();
    QuboProblem q(detail::clique_major_vertex_roles(k, n), QuboKind::vcc, k);
    for (std::size_t c = 0; c < k; ++c)
        for (Vertex u = 0; u < n; ++u) {
            q.add(c * n + u, c * n + u, -alpha);
            for (Vertex v = u + 1; v < n; ++v)
                if (!g.has_edge(u, v)) q.add(c * n + u, c * n + v, 1.0);
            for (std::size_t c2 = c + 1; c2 < k; ++c2) q.add(c * n + u, c2 * n + u, alpha);
        }
    return q;
}

// Maximum clique of the current graph as min x^T (Abar - I) x, where Abar is
// the complement adjacency. Ground states are the maximum cliques, energy
// -omega. (Using A itself would select independent sets.)
inline QuboProblem build_max_clique_qubo(const SkeletonGraph &g) {
    const std::size_t n = g.vertex_count();
    std::vector<VariableRole> roles(n);
    for (std::size_t v = 0; v < n; ++v) roles[v] = {VariableRole::Kind::plain_vertex, 0, v};
    QuboProblem q(std::move(roles), QuboKind::max_clique, 1);
    for (Vertex u = 0; u < n; ++u) {
        q.add(u, u, -1.0);
        for (Vertex v = u + 1; v < n; ++v)
            if (!g.has_edge(u, v)) q.add(u, v, 1.0);
    }
    return q;
}

inline QuboProblem build_max_clique_qubo(const DenseMatrix<int> &adjacency) {
    if (adjacency.rows() != adjacency.cols()) throw DomainError("adjacency matrix must be square");
    std::vector<Edge> es;
    for (std::size_t u = 0; u < adjacency.rows(); ++u) {
        if (adjacency(u, u) != 0) throw DomainError("adjacency matrix must have a zero diagonal");
        for (std::size_t v = u + 1; v < adjacency.cols(); ++v) {
            if (adjacency(u, v) != adjacency(v, u) || (adjacency(u, v) != 0 && adjacency(u, v) != 1))
                throw DomainError("adjacency matrix must be symmetric 0/1");
            if (adjacency(u, v)) es.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
        }
    }
    return build_max_clique_qubo(SkeletonGraph(adjacency.rows(), std::move(es)));
}

inline double kcut_average_size(std::size_t n, std::size_t k) {
    return 0.5 * static_cast<double>((n + k - 1) / k + n / k);
}

// Minimum k-cut partitioning:
//   Q = -I_k (x) A + alpha (J_k - 2 I_k) (x) I_n + beta I_k (x) (J_n - 2 s_av I_n).
inline QuboProblem build_kcut_qubo(const SkeletonGraph &g, std::size_t k, double alpha, double beta) {
    if (k < 2) throw DomainError("k-cut needs k >= 2");
    const std::size_t n = g.vertex_count();
    const double s_av = kcut_average_size(n, k);
    QuboProblem q(detail::clique_major_vertex_roles(k, n), QuboKind::kcut, k);
    for (std::size_t c = 0; c < k; ++c)
        for (Vertex u = 0; u < n; ++u) {
            q.add(c * n + u, c * n + u, -alpha + beta * (1.0 - 2.0 * s_av));
            for (Vertex v = u + 1; v < n; ++v) q.add(c * n + u, c * n + v, beta - (g.has_edge(u, v) ? 1.0 : 0.0));
            for (std::size_t c2 = c + 1; c2 < k; ++c2) q.add(c * n + u, c2 * n + u, alpha);
        }
    return q;
}

inline IsingProblem to_ising(const QuboProblem &q) {
    IsingProblem out;
    out.h.assign(q.size(), 0.0);
    for (const auto &t : q.terms()) {
        if (t.i == t.j) {
            out.h[t.i] += t.value / 2.0;
            out.offset += t.value / 2.0;
        } else {
            out.h[t.i] += t.value / 2.0;
            out.h[t.j] += t.value / 2.0;
            out.couplings.push_back({t.i, t.j, t.value / 2.0});
            out.offset += t.value / 2.0;
        }
    }
    return out;
}

}  // namespace mvh
