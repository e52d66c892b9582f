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
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"

namespace mvh {

using Vertex = std::uint32_t;

// Undirected edge, always stored with u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    Edge() = default;
    Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {}

    auto operator<=>(const Edge &) const = default;
};

// A simplex is its strictly increasing vertex list.
using Simplex = std::vector<Vertex>;

inline Simplex make_simplex(std::vector<Vertex> vertices) {
    std::sort(vertices.begin(), vertices.end());
    if (vertices.empty()) throw DomainError("simplex must be non-empty");
    if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
        throw DomainError("simplex vertices must be distinct");
    return vertices;
}

inline int simplex_dim(const Simplex &s) { return static_cast<int>(s.size()) - 1; }

// The 1-skeleton G. Immutable after construction: edges are canonicalised
// (u < v, lexicographic, no duplicates) and adjacency is kept as bit rows.
class SkeletonGraph {
  public:
    SkeletonGraph() = default;

    explicit SkeletonGraph(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_), nbrs_(n) {}

    SkeletonGraph(std::size_t n, std::vector<Edge> edges) : SkeletonGraph(n) {
        for (const auto &e : edges) {
            if (e.u == e.v) throw FormatError("self-loop on vertex " + std::to_string(e.u));
            if (e.v >= n) throw FormatError("edge endpoint " + std::to_string(e.v) + " out of range");
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        edges_ = std::move(edges);
        for (const auto &e : edges_) {
            set_bit(e.u, e.v);
            set_bit(e.v, e.u);
            nbrs_[e.u].push_back(e.v);
            nbrs_[e.v].push_back(e.u);
        }
        for (auto &nb : nbrs_) std::sort(nb.begin(), nb.end());
    }

    std::size_t vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge> &edges() const { return edges_; }

    bool has_edge(Vertex a, Vertex b) const {
        if (a >= n_ || b >= n_ || a == b) return false;
        return (bits_[a * words_ + b / 64] >> (b % 64)) & 1u;
    }

    std::span<const Vertex> neighbors(Vertex v) const { return nbrs_[v]; }
    std::size_t degree(Vertex v) const { return nbrs_[v].size(); }

    // Position of {a,b} in the canonical edge order.
    std::optional<std::size_t> edge_index(Vertex a, Vertex b) const {
        Edge e(a, b);
        auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
        if (it == edges_.end() || *it != e) return std::nullopt;
        return static_cast<std::size_t>(it - edges_.begin());
    }

    // Optional external ids (e.g. landmark point indices). Empty = identity.
    const std::vector<std::size_t> &labels() const { return labels_; }
    void set_labels(std::vector<std::size_t> labels) {
        if (!labels.empty() && labels.size() != n_) throw FormatError("label count must equal vertex count");
        labels_ = std::move(labels);
    }

    bool is_clique(std::span<const Vertex> vs) const {
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = i + 1; j < vs.size(); ++j)
                if (!has_edge(vs[i], vs[j])) return false;
        return true;
    }

    SkeletonGraph complement() const {
        std::vector<Edge> es;
        for (Vertex a = 0; a < n_; ++a)
            for (Vertex b = a + 1; b < n_; ++b)
                if (!has_edge(a, b)) es.emplace_back(a, b);
        return SkeletonGraph(n_, std::move(es));
    }

    std::size_t max_degree() const {
        std::size_t d = 0;
        for (const auto &nb : nbrs_) d = std::max(d, nb.size());
        return d;
    }

    double density() const {
        if (n_ < 2) return 0.0;
        return static_cast<double>(edges_.size()) / (static_cast<double>(n_) * (n_ - 1) / 2.0);
    }

    bool operator==(const SkeletonGraph &o) const { return n_ == o.n_ && edges_ == o.edges_; }

  private:
    void set_bit(Vertex a, Vertex b) { bits_[a * words_ + b / 64] |= std::uint64_t{1} << (b % 64); }

    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
    std::vector<std::vector<Vertex>> nbrs_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> labels_;
};

// Simplices graded by dimension, each grade sorted lexicographically.
class SimplicialComplex {
  public:
    SimplicialComplex() = default;

    // Takes any collection of simplices; sorts and removes duplicates.
    explicit SimplicialComplex(std::vector<Simplex> simplices) {
        for (auto &s : simplices) {
            auto dim = static_cast<std::size_t>(simplex_dim(s));
            if (grades_.size() <= dim) grades_.resize(dim + 1);
            grades_[dim].push_back(std::move(s));
        }
        for (auto &g : grades_) {
            std::sort(g.begin(), g.end());
            g.erase(std::unique(g.begin(), g.end()), g.end());
        }
    }

    // Highest dimension present, -1 when empty.
    int dimension() const {
        for (int d = static_cast<int>(grades_.size()) - 1; d >= 0; --d)
            if (!grades_[d].empty()) return d;
        return -1;
    }

    const std::vector<Simplex> &simplices(int dim) const {
        static const std::vector<Simplex> empty;
        if (dim < 0 || static_cast<std::size_t>(dim) >= grades_.size()) return empty;
        return grades_[dim];
    }

    std::size_t count(int dim) const { return simplices(dim).size(); }

    std::size_t size() const {
        std::size_t total = 0;
        for (const auto &g : grades_) total += g.size();
        return total;
    }

    bool contains(const Simplex &s) const {
        const auto &g = simplices(simplex_dim(s));
        return std::binary_search(g.begin(), g.end(), s);
    }

    bool is_face_closed() const {
        for (const auto &g : grades_)
            for (const auto &s : g) {
                if (s.size() < 2) continue;
                for (std::size_t drop = 0; drop < s.size(); ++drop) {
                    Simplex f;
                    for (std::size_t t = 0; t < s.size(); ++t)
                        if (t != drop) f.push_back(s[t]);
                    if (!contains(f)) return false;
                }
            }
        return true;
    }

    std::vector<Simplex> all() const {
        std::vector<Simplex> out;
        for (const auto &g : grades_) out.insert(out.end(), g.begin(), g.end());
        return out;
    }

    bool operator==(const SimplicialComplex &o) const { return all() == o.all(); }

  private:
    std::vector<std::vector<Simplex>> grades_;
};

inline DenseMatrix<int> adjacency_matrix(const SkeletonGraph &g) {
    const auto n = g.vertex_count();
    DenseMatrix<int> a(n, n, 0);
    for (const auto &e : g.edges()) a(e.u, e.v) = a(e.v, e.u) = 1;
    return a;
}

// Columns follow the canonical (lexicographic) edge order.
inline DenseMatrix<int> incidence_matrix(const SkeletonGraph &g) {
    DenseMatrix<int> b(g.vertex_count(), g.edge_count(), 0);
    const auto &es = g.edges();
    for (std::size_t j = 0; j < es.size(); ++j) b(es[j].u, j) = b(es[j].v, j) = 1;
    return b;
}

namespace detail {

inline void extend_cliques(const SkeletonGraph &g, Simplex &current, const std::vector<Vertex> &candidates,
                           std::size_t max_size, std::vector<Simplex> &out) {
    out.push_back(current);
    if (current.size() == max_size) return;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const Vertex c = candidates[i];
        std::vector<Vertex> next;
        for (std::size_t j = i + 1; j < candidates.size(); ++j)
            if (g.has_edge(c, candidates[j])) next.push_back(candidates[j]);
        current.push_back(c);
        extend_cliques(g, current, next, max_size, out);
        current.pop_back();
    }
}

inline void sort_by_size_then_lex(std::vector<Simplex> &cliques) {
    std::sort(cliques.begin(), cliques.end(), [](const Simplex &a, const Simplex &b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
}

}  // namespace detail

// All cliques of size <= max_size lying inside `within` (sorted vertex ids).
// Each clique is produced once by extending only with larger common neighbours.
inline std::vector<Simplex> cliques_within(const SkeletonGraph &g, std::span<const Vertex> within,
                                           std::size_t max_size) {
    std::vector<Simplex> out;
    if (max_size == 0) return out;
    std::vector<Vertex> pool(within.begin(), within.end());
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    Simplex current;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        std::vector<Vertex> cand;
        for (std::size_t j = i + 1; j < pool.size(); ++j)
            if (g.has_edge(pool[i], pool[j])) cand.push_back(pool[j]);
        current.assign(1, pool[i]);
        detail::extend_cliques(g, current, cand, max_size, out);
    }
    detail::sort_by_size_then_lex(out);
    return out;
}

inline std::vector<Simplex> enumerate_cliques(const SkeletonGraph &g, std::size_t max_size) {
    if (max_size < 1) throw DomainError("max_size must be >= 1");
    std::vector<Vertex> all(g.vertex_count());
    std::iota(all.begin(), all.end(), Vertex{0});
    return cliques_within(g, all, max_size);
}

inline SimplicialComplex clique_complex(const SkeletonGraph &g, int max_dim) {
    if (max_dim < 0) throw DomainError("max_dim must be non-negative");
    return SimplicialComplex(enumerate_cliques(g, static_cast<std::size_t>(max_dim) + 1));
}

// Component id per vertex, numbered in order of smallest member.
inline std::vector<std::size_t> connected_components(const SkeletonGraph &g) {
    constexpr auto unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> comp(g.vertex_count(), unset);
    std::size_t next = 0;
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
        if (comp[s] != unset) continue;
        comp[s] = next;
        stack.assign(1, s);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(v))
                if (comp[w] == unset) {
                    comp[w] = next;
                    stack.push_back(w);
                }
        }
        ++next;
    }
    return comp;
}

inline std::size_t component_count(const SkeletonGraph &g) {
    auto comp = connected_components(g);
    return comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
}

}  // namespace mvh
