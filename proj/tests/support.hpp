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

// Helpers shared by the test binaries: random graph generators and small
// brute-force oracles written independently of the library internals.

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "mvh/mvh.hpp"

namespace mvh::testing {

// Random spanning tree plus extra edges until roughly `density` of all pairs.
inline SkeletonGraph random_connected_graph(std::size_t n, double density, std::mt19937_64 &rng) {
    std::vector<Edge> edges;
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    const auto link = [&](Vertex a, Vertex b) {
        if (a == b || adj[a][b]) return;
        adj[a][b] = adj[b][a] = 1;
        edges.emplace_back(a, b);
    };
    for (Vertex v = 1; v < n; ++v) link(v, static_cast<Vertex>(rng() % v));
    const auto target = static_cast<std::size_t>(density * static_cast<double>(n * (n - 1) / 2) + 0.5);
    std::vector<Edge> rest;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            if (!adj[a][b]) rest.emplace_back(a, b);
    std::shuffle(rest.begin(), rest.end(), rng);
    for (const auto &e : rest) {
        if (edges.size() >= target) break;
        link(e.u, e.v);
    }
    return SkeletonGraph(n, edges);
}

inline SkeletonGraph random_graph(std::size_t n, double p, std::mt19937_64 &rng) {
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            if (coin(rng)) edges.emplace_back(a, b);
    return SkeletonGraph(n, edges);
}

inline SkeletonGraph cycle_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, static_cast<Vertex>((v + 1) % n));
    return SkeletonGraph(n, edges);
}

inline SkeletonGraph complete_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b) edges.emplace_back(a, b);
    return SkeletonGraph(n, edges);
}

// Octahedron: 1-skeleton whose clique complex is a 2-sphere.
inline SkeletonGraph octahedron() {
    std::vector<Edge> edges;
    for (Vertex a = 0; a < 6; ++a)
        for (Vertex b = a + 1; b < 6; ++b)
            if (b != a + 3 || a >= 3) edges.emplace_back(a, b);
    return SkeletonGraph(6, edges);
}

// w x h periodic grid with one diagonal per square: a triangulated torus
// once w, h >= 4.
inline SkeletonGraph torus_graph(std::size_t w, std::size_t h) {
    std::vector<Edge> edges;
    const auto id = [&](std::size_t x, std::size_t y) { return static_cast<Vertex>((y % h) * w + (x % w)); };
    for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < w; ++x) {
            edges.emplace_back(id(x, y), id(x + 1, y));
            edges.emplace_back(id(x, y), id(x, y + 1));
            edges.emplace_back(id(x, y), id(x + 1, y + 1));
        }
    return SkeletonGraph(w * h, edges);
}

// Rank over GF(2) of a dense 0/±1 matrix, by plain row reduction on bytes.
inline std::size_t gf2_rank(DenseMatrix<int> m) {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        std::size_t p = rank;
        while (p < m.rows() && (m(p, c) & 1) == 0) ++p;
        if (p == m.rows()) continue;
        for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(p, k), m(rank, k));
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (r != rank && (m(r, c) & 1))
                for (std::size_t k = 0; k < m.cols(); ++k) m(r, k) = (m(r, k) + m(rank, k)) & 1;
        ++rank;
    }
    return rank;
}

// Rank over Q with fraction-free (Bareiss) elimination in 128-bit integers.
// Fine for the small matrices used in tests.
inline std::size_t rational_rank(const DenseMatrix<int> &in) {
    std::vector<std::vector<__int128>> m(in.rows(), std::vector<__int128>(in.cols()));
    for (std::size_t r = 0; r < in.rows(); ++r)
        for (std::size_t c = 0; c < in.cols(); ++c) m[r][c] = in(r, c);
    std::size_t rank = 0;
    __int128 prev = 1;
    for (std::size_t c = 0; c < in.cols() && rank < in.rows(); ++c) {
        std::size_t p = rank;
        while (p < in.rows() && m[p][c] == 0) ++p;
        if (p == in.rows()) continue;
        std::swap(m[p], m[rank]);
        for (std::size_t r = rank + 1; r < in.rows(); ++r) {
            for (std::size_t k = c + 1; k < in.cols(); ++k)
                m[r][k] = (m[rank][c] * m[r][k] - m[r][c] * m[rank][k]) / prev;
            m[r][c] = 0;
        }
        prev = m[rank][c];
        ++rank;
    }
    return rank;
}

// Minimum of x^T Q x by plain enumeration of all 2^N assignments.
inline double brute_force_min(const QuboProblem &q) {
    const auto dq = q.dense();
    const std::size_t n = q.size();
    double best = 0.0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        double e = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if ((x >> i) & 1)
                for (std::size_t j = 0; j < n; ++j)
                    if ((x >> j) & 1) e += dq(i, j);
        if (x == 0 || e < best) best = e;
    }
    return best;
}

// Largest clique size, by checking every vertex subset.
inline std::size_t brute_force_clique_number(const SkeletonGraph &g) {
    const std::size_t n = g.vertex_count();
    std::size_t best = 0;
    for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s) {
        const auto size = static_cast<std::size_t>(std::popcount(s));
        if (size <= best) continue;
        bool ok = true;
        for (Vertex a = 0; a < n && ok; ++a)
            for (Vertex b = a + 1; b < n && ok; ++b)
                if (((s >> a) & 1) && ((s >> b) & 1) && !g.has_edge(a, b)) ok = false;
        if (ok) best = size;
    }
    return best;
}

}  // namespace mvh::testing
