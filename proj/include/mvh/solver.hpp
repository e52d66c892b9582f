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

#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "qubo.hpp"

namespace mvh {

struct Solution {
    std::vector<std::uint8_t> bits;
    double energy = 0.0;
    std::string solver_tag;
    // Energy reported by an external solver, if any. `energy` is always the
    // locally recomputed value.
    std::optional<double> claimed_energy;

    bool operator==(const Solution &o) const {
        return bits == o.bits && energy == o.energy && solver_tag == o.solver_tag;
    }
};

using QuboSolver = std::function<Solution(const QuboProblem &)>;

namespace detail {

// Off-diagonal couplings per variable in CSR form plus the diagonal.
struct CouplingGraph {
    std::vector<double> diag;
    std::vector<std::size_t> start;
    std::vector<std::uint32_t> nbr;
    std::vector<double> weight;

    explicit CouplingGraph(const QuboProblem &q) : diag(q.size(), 0.0), start(q.size() + 1, 0) {
        const auto terms = q.terms();
        for (const auto &t : terms) {
            if (t.i == t.j) {
                diag[t.i] = t.value;
            } else {
                ++start[t.i + 1];
                ++start[t.j + 1];
            }
        }
        for (std::size_t i = 0; i < q.size(); ++i) start[i + 1] += start[i];
        nbr.resize(start.back());
        weight.resize(start.back());
        std::vector<std::size_t> fill(start.begin(), start.end() - 1);
        for (const auto &t : terms) {
            if (t.i == t.j) continue;
            nbr[fill[t.i]] = static_cast<std::uint32_t>(t.j);
            weight[fill[t.i]++] = t.value;
            nbr[fill[t.j]] = static_cast<std::uint32_t>(t.i);
            weight[fill[t.j]++] = t.value;
        }
    }

    // Energy change when flipping variable i, given field_i = sum_j Q_ij x_j.
    double flip_delta(std::size_t i, const std::vector<std::uint8_t> &x, const std::vector<double> &field) const {
        const double d = diag[i] + 2.0 * field[i];
        return x[i] ? -d : d;
    }

    void apply_flip(std::size_t i, std::vector<std::uint8_t> &x, std::vector<double> &field) const {
        const double sign = x[i] ? -1.0 : 1.0;
        x[i] ^= 1u;
        for (std::size_t p = start[i]; p < start[i + 1]; ++p) field[nbr[p]] += sign * weight[p];
    }
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline double uniform01(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace detail

inline constexpr std::size_t default_exhaustive_limit = 26;

// Enumerates all 2^N assignments in Gray-code order. Returns the minimum
// energy; ties go to the smallest assignment read as a binary number with
// variable 0 as the least significant bit (so {0,1} beats {1,2}).
inline Solution solve_exhaustive(const QuboProblem &q, std::size_t limit = default_exhaustive_limit) {
    const std::size_t n = q.size();
    if (n > limit || n > 62)
        throw CapacityError("exhaustive solver limited to " + std::to_string(limit) + " variables, got " +
                            std::to_string(n));
    const detail::CouplingGraph cg(q);
    double scale = 0.0;
    for (const auto &t : q.terms()) scale += std::abs(t.value) * (t.i == t.j ? 1.0 : 2.0);
    const double tol = 1e-9 * std::max(1.0, scale);

    std::vector<std::uint8_t> x(n, 0);
    std::vector<double> field(n, 0.0);
    double energy = 0.0, best = 0.0;
    std::uint64_t mask = 0, best_mask = 0;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t step = 1; step < total; ++step) {
        const auto i = static_cast<std::size_t>(std::countr_zero(step));
        energy += cg.flip_delta(i, x, field);
        cg.apply_flip(i, x, field);
        mask ^= std::uint64_t{1} << i;
        if (energy < best - tol || (energy <= best + tol && mask < best_mask)) {
            best = energy;
            best_mask = mask;
        }
    }
    Solution s;
    s.bits.resize(n);
    for (std::size_t i = 0; i < n; ++i) s.bits[i] = (best_mask >> i) & 1u;
    s.energy = q.energy(s.bits);
    s.solver_tag = "exhaustive";
    return s;
}

struct AnnealConfig {
    std::uint64_t seed = 0;
    std::size_t sweeps = 10000;
    std::size_t restarts = 20;
    std::optional<double> t_initial;  // default 10 * max|Q|
    double t_final = 0.01;
    unsigned threads = 1;

    void validate() const {
        if (sweeps < 1) throw DomainError("annealing needs sweeps >= 1");
        if (restarts < 1) throw DomainError("annealing needs restarts >= 1");
        if (!(t_final > 0.0)) throw DomainError("final temperature must be positive");
        if (t_initial && !(*t_initial >= t_final)) throw DomainError("initial temperature must be >= final");
    }
};

namespace detail {

struct RestartResult {
    std::vector<std::uint8_t> bits;
    double energy = std::numeric_limits<double>::infinity();
};

inline RestartResult anneal_once(const CouplingGraph &cg, std::size_t n, const AnnealConfig &cfg, double t0,
                                 std::size_t restart) {
    std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(restart + 1)));
    std::vector<std::uint8_t> x(n);
    for (auto &b : x) b = static_cast<std::uint8_t>(rng() & 1u);
    std::vector<double> field(n, 0.0);
    double energy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!x[i]) continue;
        energy += cg.diag[i];
        for (std::size_t p = cg.start[i]; p < cg.start[i + 1]; ++p) field[cg.nbr[p]] += cg.weight[p];
    }
    for (std::size_t i = 0; i < n; ++i)
        if (x[i]) energy += field[i];  // each pair counted twice = 2 Q_ij

    RestartResult best{x, energy};
    const double ratio = cfg.t_final / t0;
    for (std::size_t s = 0; s < cfg.sweeps; ++s) {
        const double frac = cfg.sweeps > 1 ? static_cast<double>(s) / static_cast<double>(cfg.sweeps - 1) : 1.0;
        const double temp = t0 * std::pow(ratio, frac);
        for (std::size_t i = 0; i < n; ++i) {
            const double d = cg.flip_delta(i, x, field);
            if (d <= 0.0 || uniform01(rng) < std::exp(-d / temp)) {
                cg.apply_flip(i, x, field);
                energy += d;
                if (energy < best.energy - 1e-12) {
                    best.energy = energy;
                    best.bits = x;
                }
            }
        }
    }
    // Zero-temperature descent from the best state seen.
    x = best.bits;
    std::fill(field.begin(), field.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
        if (x[i])
            for (std::size_t p = cg.start[i]; p < cg.start[i + 1]; ++p) field[cg.nbr[p]] += cg.weight[p];
    for (bool improved = true; improved;) {
        improved = false;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = cg.flip_delta(i, x, field);
            if (d < -1e-12) {
                cg.apply_flip(i, x, field);
                improved = true;
            }
        }
    }
    best.bits = x;
    return best;
}

}  // namespace detail

// Single-bit-flip Metropolis with geometric cooling; best state over all
// restarts, ties resolved by restart index. Reproducible for a given seed
// regardless of the thread count.
inline Solution solve_annealing(const QuboProblem &q, const AnnealConfig &cfg = {}) {
    cfg.validate();
    const std::size_t n = q.size();
    Solution s;
    s.solver_tag = "anneal";
    if (n == 0) return s;
    const detail::CouplingGraph cg(q);
    const double t0 = cfg.t_initial.value_or(q.max_abs() > 0.0 ? 10.0 * q.max_abs() : 1.0);
    if (!(t0 >= cfg.t_final)) throw DomainError("initial temperature must be >= final");

    std::vector<detail::RestartResult> results(cfg.restarts);
    const unsigned workers = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(cfg.restarts)));
    if (workers == 1) {
        for (std::size_t r = 0; r < cfg.restarts; ++r) results[r] = detail::anneal_once(cg, n, cfg, t0, r);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t r = w; r < cfg.restarts; r += workers) results[r] = detail::anneal_once(cg, n, cfg, t0, r);
            });
        for (auto &t : pool) t.join();
    }
    std::size_t pick = 0;
    for (std::size_t r = 0; r < results.size(); ++r) results[r].energy = q.energy(results[r].bits);
    for (std::size_t r = 1; r < results.size(); ++r)
        if (results[r].energy < results[pick].energy) pick = r;
    s.bits = std::move(results[pick].bits);
    s.energy = results[pick].energy;
    return s;
}

// Result of grouping a solution's bits by clique index.
struct CoverDecoding {
    std::vector<std::vector<Vertex>> candidates;  // raw sets, one per clique index
    std::vector<std::vector<Vertex>> cliques;     // after repair, same indexing
    std::vector<std::size_t> non_cliques;         // indices whose raw set was not a clique
    std::vector<Edge> uncovered_edges;            // edges inside no repaired clique (ECC)
    std::vector<Vertex> multiply_assigned;        // VCC / k-cut: vertex in > 1 class
    std::vector<Vertex> unassigned;               // VCC / k-cut: vertex in no repaired class

    bool feasible() const {
        return non_cliques.empty() && uncovered_edges.empty() && multiply_assigned.empty() && unassigned.empty();
    }
};

// Greedily drops the vertex with fewest neighbours inside the set (lowest id
// on ties) until the set is a clique.
inline std::vector<Vertex> repair_to_clique(const SkeletonGraph &g, std::vector<Vertex> set) {
    while (!g.is_clique(set)) {
        std::size_t worst = 0, worst_deg = std::numeric_limits<std::size_t>::max();
        for (std::size_t a = 0; a < set.size(); ++a) {
            std::size_t deg = 0;
            for (std::size_t b = 0; b < set.size(); ++b) deg += g.has_edge(set[a], set[b]) ? 1 : 0;
            if (deg < worst_deg) {
                worst_deg = deg;
                worst = a;
            }
        }
        set.erase(set.begin() + static_cast<std::ptrdiff_t>(worst));
    }
    return set;
}

inline CoverDecoding decode_cover(const SkeletonGraph &g, const QuboProblem &q, const Solution &s) {
    if (s.bits.size() != q.size()) throw DomainError("solution length does not match QUBO size");
    CoverDecoding out;
    const std::size_t k = std::max<std::size_t>(q.clique_count(), 1);
    const std::size_t n = g.vertex_count();
    out.candidates.assign(k, {});
    for (std::size_t i = 0; i < q.size(); ++i) {
        const auto &role = q.roles()[i];
        if (role.kind == VariableRole::Kind::edge_in_clique || !s.bits[i]) continue;
        if (role.index >= n) throw DomainError("variable refers to vertex outside the graph");
        out.candidates[role.clique].push_back(static_cast<Vertex>(role.index));
    }
    for (auto &c : out.candidates) std::sort(c.begin(), c.end());

    auto sets = out.candidates;
    const bool partition = q.kind() == QuboKind::vcc || q.kind() == QuboKind::kcut;
    if (partition) {
        std::vector<int> owner(n, -1);
        for (std::size_t c = 0; c < sets.size(); ++c)
            for (Vertex v : sets[c]) {
                if (owner[v] < 0) {
                    owner[v] = static_cast<int>(c);
                } else if (owner[v] != -2) {
                    out.multiply_assigned.push_back(v);
                    owner[v] = -2;
                }
            }
        std::sort(out.multiply_assigned.begin(), out.multiply_assigned.end());
        // keep each vertex only in its lowest class
        std::vector<char> placed(n, 0);
        for (auto &c : sets) {
            std::vector<Vertex> kept;
            for (Vertex v : c)
                if (!placed[v]) {
                    placed[v] = 1;
                    kept.push_back(v);
                }
            c = std::move(kept);
        }
    }
    if (q.kind() != QuboKind::kcut) {
        for (std::size_t c = 0; c < sets.size(); ++c)
            if (!g.is_clique(out.candidates[c])) out.non_cliques.push_back(c);
        for (auto &c : sets) c = repair_to_clique(g, std::move(c));
    }
    out.cliques = std::move(sets);

    if (partition) {
        std::vector<char> placed(n, 0);
        for (const auto &c : out.cliques)
            for (Vertex v : c) placed[v] = 1;
        for (Vertex v = 0; v < n; ++v)
            if (!placed[v]) out.unassigned.push_back(v);
    }
    if (q.kind() == QuboKind::ecc) {
        std::vector<std::vector<std::uint32_t>> member(n);
        for (std::uint32_t c = 0; c < out.cliques.size(); ++c)
            for (Vertex v : out.cliques[c]) member[v].push_back(c);
        for (const auto &e : g.edges()) {
            bool covered = false;
            for (auto c : member[e.u])
                if (std::binary_search(member[e.v].begin(), member[e.v].end(), c)) covered = true;
            if (!covered) out.uncovered_edges.push_back(e);
        }
    }
    return out;
}

}  // namespace mvh
