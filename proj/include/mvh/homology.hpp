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
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "blowup.hpp"
#include "cover.hpp"
#include "error.hpp"
#include "field.hpp"
#include "graph.hpp"

namespace mvh {

// Rank of d_l on the full simplex with m vertices:
//   sum_{a=0..l} (-1)^{l-a} C(m, a),   1 <= l <= m-1.
inline std::uint64_t clique_block_rank(std::size_t m, std::size_t l) {
    if (l < 1 || l + 1 > m)
        throw DomainError("clique_block_rank needs 1 <= l <= m-1 (m=" + std::to_string(m) + ", l=" + std::to_string(l) + ")");
    __int128 acc = 0;
    for (std::size_t a = 0; a <= l; ++a) {
        const auto c = static_cast<__int128>(binomial(m, a));
        acc += ((l - a) % 2 == 0) ? c : -c;
    }
    return static_cast<std::uint64_t>(acc);
}

struct HomologyOptions {
    FieldKind field = FieldKind::gf2;
    unsigned threads = 1;
    bool verify_clique_blocks = true;
};

template <typename F>
struct BlockReduction {
    std::size_t rank = 0;
    std::vector<SparseRow<F>> remainder;       // rows over the B columns
    std::vector<std::uint32_t> pivot_columns;  // A columns holding pivots
};

// Eliminates the juxtaposed [A | B]. Pivots inside A count towards the block
// rank; rows whose A part vanished but whose B part survived are remainders.
template <typename F>
BlockReduction<F> reduce_block(const SparseIntMatrix &a, const SparseIntMatrix &b) {
    if (a.rows != b.rows)
        throw DomainError("block row count mismatch: A has " + std::to_string(a.rows) + ", B has " + std::to_string(b.rows));
    BlockReduction<F> out;
    const auto shift = static_cast<std::uint32_t>(a.cols);
    Eliminator<F> elim(a.cols + b.cols);
    for (std::size_t r = 0; r < a.rows; ++r) {
        auto row = to_field_row<F>(a.row_entries[r]);
        for (auto &&e : to_field_row<F>(b.row_entries[r])) row.emplace_back(e.first + shift, std::move(e.second));
        const auto &reduced = elim.insert(std::move(row));
        if (reduced.empty()) continue;
        if (reduced.front().first < shift) {
            ++out.rank;
            out.pivot_columns.push_back(reduced.front().first);
        } else {
            SparseRow<F> rem;
            for (const auto &[c, v] : reduced) rem.emplace_back(c - shift, v);
            out.remainder.push_back(std::move(rem));
        }
    }
    return out;
}

template <typename F>
std::size_t matrix_rank(const SparseIntMatrix &m) {
    Eliminator<F> elim(m.cols);
    for (const auto &row : m.row_entries) elim.insert(to_field_row<F>(row));
    return elim.rank();
}

inline std::size_t matrix_rank(const SparseIntMatrix &m, FieldKind field) {
    return field == FieldKind::gf2 ? matrix_rank<Gf2>(m) : matrix_rank<Rational>(m);
}

struct DegreeRank {
    int degree = 0;
    std::vector<std::size_t> block_ranks;  // one per cover piece
    std::size_t remainder_rows = 0;        // remainder rows + blown-up rows entering the join
    std::size_t remainder_rank = 0;
    std::size_t total = 0;
};

namespace detail {

template <typename F>
DegreeRank rank_of_degree_impl(const BlowupComplex &cx, int degree, const HomologyOptions &opts) {
    const auto blocks = boundary_blocks(cx, degree);
    const std::size_t P = cx.piece_count();
    std::vector<BlockReduction<F>> red(P);
    const unsigned workers = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(std::max<std::size_t>(P, 1))));
    if (workers == 1) {
        for (std::size_t b = 0; b < P; ++b) red[b] = reduce_block<F>(blocks.blocks[b].a, blocks.blocks[b].b);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t b = w; b < P; b += workers) red[b] = reduce_block<F>(blocks.blocks[b].a, blocks.blocks[b].b);
            });
        for (auto &t : pool) t.join();
    }

    DegreeRank out;
    out.degree = degree;
    for (std::size_t b = 0; b < P; ++b) {
        out.block_ranks.push_back(red[b].rank);
        const auto &info = cx.pieces()[b];
        if (opts.verify_clique_blocks && info.kind == PieceKind::clique_power_set) {
            const auto l = static_cast<std::size_t>(degree);
            const std::uint64_t expected = (l + 1 <= info.vertex_count) ? clique_block_rank(info.vertex_count, l) : 0;
            if (red[b].rank != expected)
                throw std::logic_error("clique block " + std::to_string(b) + " has rank " + std::to_string(red[b].rank) +
                                       ", formula gives " + std::to_string(expected));
        }
    }

    Eliminator<F> join(blocks.cols - blocks.shared_begin);
    for (auto &r : red)
        for (auto &row : r.remainder) {
            ++out.remainder_rows;
            join.insert(std::move(row));
        }
    const auto &inter = blocks.blocks[P].b;
    for (const auto &row : inter.row_entries) {
        if (row.empty()) continue;
        ++out.remainder_rows;
        join.insert(to_field_row<F>(row));
    }
    out.remainder_rank = join.rank();
    out.total = out.remainder_rank;
    for (auto r : out.block_ranks) out.total += r;
    return out;
}

}  // namespace detail

// rank d_l = sum of per-block ranks + rank of the aggregated remainder rows.
inline DegreeRank rank_of_degree(const BlowupComplex &cx, int degree, const HomologyOptions &opts = {}) {
    return opts.field == FieldKind::gf2 ? detail::rank_of_degree_impl<Gf2>(cx, degree, opts)
                                        : detail::rank_of_degree_impl<Rational>(cx, degree, opts);
}

struct BettiProfile {
    std::vector<std::size_t> betti;       // beta_0 .. beta_lmax
    std::vector<std::size_t> chain_dims;  // dim C_0 .. dim C_{lmax+1}
    std::vector<std::size_t> ranks;       // rank d_0 (= 0) .. rank d_{lmax+1}

    bool operator==(const BettiProfile &) const = default;
};

namespace detail {

inline BettiProfile assemble_betti(std::vector<std::size_t> dims, std::vector<std::size_t> ranks, int lmax) {
    BettiProfile p;
    for (int l = 0; l <= lmax; ++l) {
        const auto L = static_cast<std::size_t>(l);
        const auto used = ranks[L] + ranks[L + 1];
        if (used > dims[L]) throw std::logic_error("negative Betti number in degree " + std::to_string(l));
        p.betti.push_back(dims[L] - used);
    }
    p.chain_dims = std::move(dims);
    p.ranks = std::move(ranks);
    return p;
}

}  // namespace detail

// beta_l = dim C_l - rank d_l - rank d_{l+1}; needs cells up to degree lmax+1.
inline BettiProfile betti(const BlowupComplex &cx, int lmax, const HomologyOptions &opts = {}) {
    if (lmax < 0) throw DomainError("lmax must be non-negative");
    if (cx.max_dim() < lmax + 1)
        throw DomainError("blow-up complex built to degree " + std::to_string(cx.max_dim()) + ", need " +
                          std::to_string(lmax + 1));
    std::vector<std::size_t> dims, ranks{0};
    for (int l = 0; l <= lmax + 1; ++l) dims.push_back(cx.count(l));
    for (int l = 1; l <= lmax + 1; ++l) ranks.push_back(rank_of_degree(cx, l, opts).total);
    return detail::assemble_betti(std::move(dims), std::move(ranks), lmax);
}

// Boundary d_l of a plain simplicial complex, rows and columns in the
// complex's lexicographic order.
inline SparseIntMatrix simplicial_boundary_matrix(const SimplicialComplex &k, int degree) {
    const auto &cols = k.simplices(degree);
    const auto &rows = k.simplices(degree - 1);
    SparseIntMatrix m(rows.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        const auto &s = cols[j];
        if (s.size() < 2) continue;
        for (std::size_t t = 0; t < s.size(); ++t) {
            Simplex f;
            for (std::size_t u = 0; u < s.size(); ++u)
                if (u != t) f.push_back(s[u]);
            auto it = std::lower_bound(rows.begin(), rows.end(), f);
            if (it == rows.end() || *it != f) throw DomainError("complex is not closed under faces");
            m.row_entries[static_cast<std::size_t>(it - rows.begin())].emplace_back(static_cast<std::uint32_t>(j),
                                                                                  t % 2 == 0 ? 1 : -1);
        }
    }
    for (auto &row : m.row_entries) std::sort(row.begin(), row.end());
    return m;
}

inline constexpr std::size_t default_oracle_simplex_cap = 2'000'000;

// Direct route: clique complex of G up to dimension lmax+1, full boundary
// matrices, plain elimination. No cover involved.
inline BettiProfile oracle_betti(const SkeletonGraph &g, int lmax, FieldKind field = FieldKind::gf2,
                                 std::size_t simplex_cap = default_oracle_simplex_cap) {
    if (lmax < 0) throw DomainError("lmax must be non-negative");
    const auto k = clique_complex(g, lmax + 1);
    if (k.size() > simplex_cap)
        throw CapacityError("clique complex has " + std::to_string(k.size()) + " simplices, cap is " +
                            std::to_string(simplex_cap));
    std::vector<std::size_t> dims, ranks{0};
    for (int l = 0; l <= lmax + 1; ++l) dims.push_back(k.count(l));
    for (int l = 1; l <= lmax + 1; ++l) ranks.push_back(matrix_rank(simplicial_boundary_matrix(k, l), field));
    return detail::assemble_betti(std::move(dims), std::move(ranks), lmax);
}

}  // namespace mvh
