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
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "qubo.hpp"
#include "solver.hpp"

namespace mvh {

enum class CoverMethod { ecc, vcc, edecc, kcut, explicit_sets };

inline const char *to_string(CoverMethod m) {
    switch (m) {
        case CoverMethod::ecc: return "ecc";
        case CoverMethod::vcc: return "vcc";
        case CoverMethod::edecc: return "edecc";
        case CoverMethod::kcut: return "kcut";
        case CoverMethod::explicit_sets: break;
    }
    return "explicit";
}

inline CoverMethod parse_cover_method(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "ecc") return CoverMethod::ecc;
    if (s == "vcc") return CoverMethod::vcc;
    if (s == "edecc" || s == "ed-ecc") return CoverMethod::edecc;
    if (s == "kcut") return CoverMethod::kcut;
    if (s == "explicit") return CoverMethod::explicit_sets;
    throw FormatError("unknown cover method '" + s + "'");
}

// Covering vertex sets U_0..U_{k-1}. For the clique methods every set is a
// clique of G; `explicit_sets` allows arbitrary vertex sets (hand-made covers).
struct CliqueCover {
    CoverMethod method = CoverMethod::explicit_sets;
    std::vector<std::vector<Vertex>> cliques;
    std::vector<Edge> uncovered_edges;

    bool operator==(const CliqueCover &) const = default;
};

// ECC: min(m, ceil(2 e^2 (d+1)^2 ln n)); VCC: greedy colouring bound d + 1.
// d is the maximum degree of the complement graph.
inline std::size_t estimate_k(const SkeletonGraph &g, CoverMethod method) {
    const std::size_t n = g.vertex_count();
    if (n < 2) throw DomainError("estimate_k needs at least two vertices");
    std::size_t d = 0;
    for (Vertex v = 0; v < n; ++v) d = std::max(d, n - 1 - g.degree(v));
    switch (method) {
        case CoverMethod::ecc: {
            const double e2 = std::numbers::e * std::numbers::e;
            const double dd = static_cast<double>(d + 1);
            const double bound = std::ceil(2.0 * e2 * dd * dd * std::log(static_cast<double>(n)));
            const auto m = static_cast<double>(g.edge_count());
            return static_cast<std::size_t>(std::max(1.0, std::min(m, bound)));
        }
        case CoverMethod::vcc: return d + 1;
        default: break;
    }
    throw DomainError(std::string("no k estimate for method ") + to_string(method) + "; supply k explicitly");
}

namespace detail {

// Adds a singleton clique for every vertex that is in no clique and on no
// uncovered edge, so every vertex of G lies in some piece.
inline void add_singletons(const SkeletonGraph &g, CliqueCover &cover) {
    std::vector<char> seen(g.vertex_count(), 0);
    for (const auto &c : cover.cliques)
        for (Vertex v : c) seen[v] = 1;
    for (const auto &e : cover.uncovered_edges) seen[e.u] = seen[e.v] = 1;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (!seen[v]) cover.cliques.push_back({v});
}

}  // namespace detail

inline CliqueCover cover_ecc(const SkeletonGraph &g, std::size_t k, const QuboSolver &solver) {
    const auto q = build_ecc_qubo(g, k);
    const auto dec = decode_cover(g, q, solver(q));
    CliqueCover cover{CoverMethod::ecc, {}, dec.uncovered_edges};
    for (const auto &c : dec.cliques)
        if (!c.empty()) cover.cliques.push_back(c);
    detail::add_singletons(g, cover);
    return cover;
}

inline CliqueCover cover_vcc(const SkeletonGraph &g, std::size_t k, double alpha, const QuboSolver &solver) {
    const auto q = build_vcc_qubo(g, k, alpha);
    const auto dec = decode_cover(g, q, solver(q));
    CliqueCover cover{CoverMethod::vcc, {}, {}};
    for (const auto &c : dec.cliques)
        if (!c.empty()) cover.cliques.push_back(c);
    detail::add_singletons(g, cover);
    return cover;
}

struct EdeccStop {
    std::size_t min_clique_size = 2;
    std::size_t max_iterations = std::numeric_limits<std::size_t>::max();
};

// Repeatedly extracts a maximum clique of the residual graph and deletes its
// edges. Edges still present when the loop stops become 2-cliques, so the
// result covers E(G) with pairwise edge-disjoint cliques.
inline CliqueCover cover_edecc(const SkeletonGraph &g, const QuboSolver &solver, EdeccStop stop = {}) {
    CliqueCover cover{CoverMethod::edecc, {}, {}};
    const std::size_t n = g.vertex_count();
    std::vector<Edge> residual = g.edges();
    for (std::size_t iter = 0; !residual.empty() && iter < stop.max_iterations; ++iter) {
        const SkeletonGraph current(n, residual);
        const auto q = build_max_clique_qubo(current);
        const auto dec = decode_cover(current, q, solver(q));
        const auto &clique = dec.cliques.front();
        if (clique.size() < std::max<std::size_t>(stop.min_clique_size, 2)) break;
        cover.cliques.push_back(clique);
        std::erase_if(residual, [&](const Edge &e) {
            return std::binary_search(clique.begin(), clique.end(), e.u) &&
                   std::binary_search(clique.begin(), clique.end(), e.v);
        });
    }
    for (const auto &e : residual) cover.cliques.push_back({e.u, e.v});
    detail::add_singletons(g, cover);
    return cover;
}

enum class PieceKind { clique_power_set, induced_clique_complex };

struct CoverPiece {
    std::vector<Vertex> vertices;  // sorted
    PieceKind kind = PieceKind::induced_clique_complex;
    bool remainder = false;

    bool operator==(const CoverPiece &) const = default;
};

// Cover of K = clique_complex(G, max_dim) by subcomplexes K_i, each given by a
// vertex set: K_i is the power set of V_i (clique pieces) or the clique
// complex of G[V_i]. Either way K^J is the clique complex of G[cap V_j].
class ComplexCover {
  public:
    ComplexCover(SkeletonGraph graph, std::vector<CoverPiece> pieces, int max_dim)
        : graph_(std::move(graph)), pieces_(std::move(pieces)), max_dim_(max_dim) {
        if (max_dim_ < 0) throw DomainError("max_dim must be non-negative");
        for (auto &p : pieces_) {
            std::sort(p.vertices.begin(), p.vertices.end());
            p.vertices.erase(std::unique(p.vertices.begin(), p.vertices.end()), p.vertices.end());
            for (Vertex v : p.vertices)
                if (v >= graph_.vertex_count()) throw DomainError("cover vertex out of range");
            if (p.kind == PieceKind::clique_power_set && !graph_.is_clique(p.vertices))
                throw DomainError("clique piece is not a clique of the graph");
        }
    }

    const SkeletonGraph &graph() const { return graph_; }
    const std::vector<CoverPiece> &pieces() const { return pieces_; }
    std::size_t piece_count() const { return pieces_.size(); }
    int max_dim() const { return max_dim_; }

    // Simplices of K^J with at most max_size vertices, sorted by size then lex.
    // `common` must be the intersection of the vertex sets named by J.
    std::vector<Simplex> simplices_in(std::span<const std::uint32_t> J, std::span<const Vertex> common,
                                      std::size_t max_size) const {
        bool power_set = false;
        for (auto j : J) power_set = power_set || pieces_[j].kind == PieceKind::clique_power_set;
        if (!power_set) return cliques_within(graph_, common, max_size);
        std::vector<Simplex> out;
        Simplex cur;
        const auto rec = [&](auto &&self, std::size_t from) -> void {
            if (!cur.empty()) out.push_back(cur);
            if (cur.size() == max_size) return;
            for (std::size_t t = from; t < common.size(); ++t) {
                cur.push_back(common[t]);
                self(self, t + 1);
                cur.pop_back();
            }
        };
        if (max_size > 0) rec(rec, 0);
        detail::sort_by_size_then_lex(out);
        return out;
    }

    SimplicialComplex subcomplex(std::size_t i) const {
        const std::uint32_t J[] = {static_cast<std::uint32_t>(i)};
        return SimplicialComplex(simplices_in(J, pieces_.at(i).vertices, static_cast<std::size_t>(max_dim_) + 1));
    }

    SimplicialComplex union_complex() const {
        std::vector<Simplex> all;
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            auto s = subcomplex(i).all();
            all.insert(all.end(), s.begin(), s.end());
        }
        return SimplicialComplex(std::move(all));
    }

    // True when the pieces jointly contain every simplex of
    // clique_complex(G, max_dim).
    bool covers_graph() const { return union_complex() == clique_complex(graph_, max_dim_); }

    // Nonempty index sets J (|J| <= max_size) mapped to the common vertex set.
    std::map<std::vector<std::uint32_t>, std::vector<Vertex>> nerve(std::size_t max_size,
                                                                   bool include_remainder = true) const {
        std::vector<std::vector<std::uint32_t>> member(graph_.vertex_count());
        for (std::uint32_t i = 0; i < pieces_.size(); ++i) {
            if (pieces_[i].remainder && !include_remainder) continue;
            for (Vertex v : pieces_[i].vertices) member[v].push_back(i);
        }
        std::map<std::vector<std::uint32_t>, std::vector<Vertex>> out;
        std::vector<std::uint32_t> J;
        for (Vertex v = 0; v < member.size(); ++v) {
            const auto &m = member[v];
            const auto rec = [&](auto &&self, std::size_t from) -> void {
                if (!J.empty()) out[J].push_back(v);
                if (J.size() == max_size) return;
                for (std::size_t t = from; t < m.size(); ++t) {
                    J.push_back(m[t]);
                    self(self, t + 1);
                    J.pop_back();
                }
            };
            rec(rec, 0);
        }
        return out;
    }

  private:
    SkeletonGraph graph_;
    std::vector<CoverPiece> pieces_;
    int max_dim_ = 0;
};

// K_0..K_{k-1}: capped power sets of the covering cliques. K_k: clique complex
// of G restricted to the vertices lying in two or more cliques plus the
// endpoints of every edge that no clique contains. For ECC / ED-ECC the latter
// are the uncovered edges; for VCC they are the edges connecting classes.
inline ComplexCover remainder_subcomplex(const SkeletonGraph &g, const CliqueCover &cover, int max_dim) {
    if (cover.method == CoverMethod::kcut)
        throw DomainError("k-cut partitions are not supported as a homology cover");
    std::vector<CoverPiece> pieces;
    if (cover.method == CoverMethod::explicit_sets) {
        for (const auto &c : cover.cliques) pieces.push_back({c, PieceKind::induced_clique_complex, false});
        return ComplexCover(g, std::move(pieces), max_dim);
    }
    const std::size_t n = g.vertex_count();
    std::vector<std::vector<std::uint32_t>> member(n);
    for (std::uint32_t i = 0; i < cover.cliques.size(); ++i) {
        const auto &c = cover.cliques[i];
        for (Vertex v : c) {
            if (v >= n) throw DomainError("cover vertex out of range");
            member[v].push_back(i);
        }
        pieces.push_back({c, PieceKind::clique_power_set, false});
    }
    std::vector<char> in_rest(n, 0);
    for (Vertex v = 0; v < n; ++v)
        if (member[v].size() >= 2) in_rest[v] = 1;
    for (const auto &e : g.edges()) {
        bool inside = false;
        for (auto c : member[e.u])
            if (std::find(member[e.v].begin(), member[e.v].end(), c) != member[e.v].end()) inside = true;
        if (!inside) in_rest[e.u] = in_rest[e.v] = 1;
    }
    for (const auto &e : cover.uncovered_edges) in_rest.at(e.u) = in_rest.at(e.v) = 1;
    CoverPiece rest{{}, PieceKind::induced_clique_complex, true};
    for (Vertex v = 0; v < n; ++v)
        if (in_rest[v]) rest.vertices.push_back(v);
    if (!rest.vertices.empty()) pieces.push_back(std::move(rest));
    return ComplexCover(g, std::move(pieces), max_dim);
}

struct NerveOptions {
    bool include_remainder = false;
};

struct NerveStats {
    std::size_t omega = 0;            // largest intersection of two or more pieces
    std::size_t kappa = 0;            // largest J with nonempty intersection
    std::vector<std::size_t> nu;      // nu[l] = #{J : |J| = l+2, cap nonempty}
    std::vector<std::uint64_t> bound; // bound[l] = sum_i C(omega, l+1-i) C(kappa, i+2)
};

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
    if (r > n) return 0;
    r = std::min(r, n - r);
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        acc = acc * (n - r + i) / i;
        if (acc > std::numeric_limits<std::uint64_t>::max()) throw CapacityError("binomial coefficient overflow");
    }
    return static_cast<std::uint64_t>(acc);
}

inline std::uint64_t blowup_column_bound(std::size_t omega, std::size_t kappa, std::size_t l) {
    std::uint64_t b = 0;
    for (std::size_t i = 0; i <= l; ++i) b += binomial(omega, l + 1 - i) * binomial(kappa, i + 2);
    return b;
}

// Diagnostics for degrees 0..max_degree.
inline NerveStats nerve_stats(const ComplexCover &cover, std::size_t max_degree, NerveOptions opts = {}) {
    NerveStats st;
    const auto nerve = cover.nerve(std::numeric_limits<std::size_t>::max(), opts.include_remainder);
    st.nu.assign(max_degree + 1, 0);
    for (const auto &[J, common] : nerve) {
        st.kappa = std::max(st.kappa, J.size());
        if (J.size() >= 2) st.omega = std::max(st.omega, common.size());
        if (J.size() >= 2 && J.size() - 2 <= max_degree) ++st.nu[J.size() - 2];
    }
    for (std::size_t l = 0; l <= max_degree; ++l) st.bound.push_back(blowup_column_bound(st.omega, st.kappa, l));
    return st;
}

}  // namespace mvh
