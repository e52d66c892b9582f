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
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "cover.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "matrix.hpp"

namespace mvh {

// sigma (x) J: a simplex of K^J tagged with the (sorted) cover indices J.
// Its dimension is dim(sigma) + |J| - 1.
struct Cell {
    Simplex simplex;
    std::vector<std::uint32_t> pieces;

    int dim() const { return simplex_dim(simplex) + static_cast<int>(pieces.size()) - 1; }
    bool is_blown_up() const { return pieces.size() > 1; }

    auto operator<=>(const Cell &) const = default;
};

inline std::ostream &operator<<(std::ostream &os, const Cell &c) {
    os << "sigma=";
    for (std::size_t i = 0; i < c.simplex.size(); ++i) os << (i ? "," : "") << c.simplex[i];
    os << " J=";
    for (std::size_t i = 0; i < c.pieces.size(); ++i) os << (i ? "," : "") << c.pieces[i];
    return os << " dim=" << c.dim();
}

struct SignedCell {
    Cell cell;
    int coeff = 0;
};

// d(sigma (x) J) = d(sigma) (x) J + (-1)^{dim sigma} sigma (x) dJ, with both
// d's the alternating sum over deleting one entry in sorted position order.
// Deleting the only vertex or the only index gives nothing.
inline std::vector<SignedCell> boundary(const Cell &c) {
    std::vector<SignedCell> out;
    if (c.simplex.size() > 1)
        for (std::size_t t = 0; t < c.simplex.size(); ++t) {
            Cell f{{}, c.pieces};
            for (std::size_t s = 0; s < c.simplex.size(); ++s)
                if (s != t) f.simplex.push_back(c.simplex[s]);
            out.push_back({std::move(f), t % 2 == 0 ? 1 : -1});
        }
    if (c.pieces.size() > 1) {
        const int outer = simplex_dim(c.simplex) % 2 == 0 ? 1 : -1;
        for (std::size_t t = 0; t < c.pieces.size(); ++t) {
            Cell f{c.simplex, {}};
            for (std::size_t s = 0; s < c.pieces.size(); ++s)
                if (s != t) f.pieces.push_back(c.pieces[s]);
            out.push_back({std::move(f), outer * (t % 2 == 0 ? 1 : -1)});
        }
    }
    return out;
}

// Sparse integer matrix stored by rows; entries sorted by column.
struct SparseIntMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::vector<std::pair<std::uint32_t, int>>> row_entries;

    SparseIntMatrix() = default;
    SparseIntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), row_entries(r) {}

    DenseMatrix<int> dense() const {
        DenseMatrix<int> d(rows, cols, 0);
        for (std::size_t r = 0; r < rows; ++r)
            for (const auto &[c, v] : row_entries[r]) d(r, c) = v;
        return d;
    }

    std::size_t nonzeros() const {
        std::size_t n = 0;
        for (const auto &r : row_entries) n += r.size();
        return n;
    }

    bool operator==(const SparseIntMatrix &) const = default;
};

struct PieceInfo {
    PieceKind kind = PieceKind::induced_clique_complex;
    std::size_t vertex_count = 0;
};

// The Mayer-Vietoris blow-up complex, graded up to max_dim. Within a degree
// cells are ordered block-major: J = {0} cells, then J = {1}, ..., then all
// cells with |J| >= 2 (by J, then sigma). Within a block, sigma is
// lexicographic.
class BlowupComplex {
  public:
    BlowupComplex() = default;

    BlowupComplex(std::vector<PieceInfo> pieces, int max_dim, std::vector<std::vector<Cell>> cells)
        : pieces_(std::move(pieces)), max_dim_(max_dim), cells_(std::move(cells)) {
        cells_.resize(static_cast<std::size_t>(max_dim_) + 1);
        const std::size_t P = pieces_.size();
        for (auto &grade : cells_) {
            std::sort(grade.begin(), grade.end(), [](const Cell &a, const Cell &b) {
                const bool ab = a.pieces.size() > 1, bb = b.pieces.size() > 1;
                if (ab != bb) return bb;
                if (a.pieces != b.pieces) return a.pieces < b.pieces;
                return a.simplex < b.simplex;
            });
            const auto key = [P](const Cell &c) -> std::size_t { return c.pieces.size() > 1 ? P : c.pieces.front(); };
            std::vector<std::size_t> start(P + 2);
            for (std::size_t b = 0; b <= P + 1; ++b)
                start[b] = static_cast<std::size_t>(
                    std::partition_point(grade.begin(), grade.end(), [&](const Cell &c) { return key(c) < b; }) -
                    grade.begin());
            block_start_.push_back(std::move(start));
            std::map<Cell, std::size_t> index;
            for (std::size_t i = 0; i < grade.size(); ++i) index.emplace(grade[i], i);
            index_.push_back(std::move(index));
        }
    }

    int max_dim() const { return max_dim_; }
    std::size_t piece_count() const { return pieces_.size(); }
    const std::vector<PieceInfo> &pieces() const { return pieces_; }

    const std::vector<Cell> &cells(int degree) const {
        static const std::vector<Cell> empty;
        if (degree < 0 || degree > max_dim_) return empty;
        return cells_[static_cast<std::size_t>(degree)];
    }
    std::size_t count(int degree) const { return cells(degree).size(); }

    std::optional<std::size_t> index_of(const Cell &c) const {
        const int d = c.dim();
        if (d < 0 || d > max_dim_) return std::nullopt;
        const auto &idx = index_[static_cast<std::size_t>(d)];
        auto it = idx.find(c);
        if (it == idx.end()) return std::nullopt;
        return it->second;
    }

    // [begin, end) of block b in degree d; b == piece_count() is the block of
    // blown-up cells (|J| >= 2).
    std::pair<std::size_t, std::size_t> block_range(int degree, std::size_t b) const {
        if (degree < 0 || degree > max_dim_) return {0, 0};
        const auto &s = block_start_[static_cast<std::size_t>(degree)];
        return {s[b], s[b + 1]};
    }

  private:
    std::vector<PieceInfo> pieces_;
    int max_dim_ = 0;
    std::vector<std::vector<Cell>> cells_;
    std::vector<std::vector<std::size_t>> block_start_;
    std::vector<std::map<Cell, std::size_t>> index_;
};

// Cells sigma (x) J for J in the nerve, sigma in K^J, dim sigma + |J| - 1 <= max_dim.
inline BlowupComplex build_blowup(const ComplexCover &cover, int max_dim) {
    if (max_dim < 0) throw DomainError("max_dim must be non-negative");
    if (max_dim > cover.max_dim())
        throw DomainError("cover was built for max_dim " + std::to_string(cover.max_dim()) + ", requested " +
                          std::to_string(max_dim));
    std::vector<std::vector<Cell>> cells(static_cast<std::size_t>(max_dim) + 1);
    const auto nerve = cover.nerve(static_cast<std::size_t>(max_dim) + 1);
    for (const auto &[J, common] : nerve) {
        const std::size_t max_size = static_cast<std::size_t>(max_dim) + 2 - J.size();
        for (auto &s : cover.simplices_in(J, common, max_size)) {
            Cell c{std::move(s), J};
            const auto d = static_cast<std::size_t>(c.dim());
            cells[d].push_back(std::move(c));
        }
    }
    std::vector<PieceInfo> info;
    for (const auto &p : cover.pieces()) info.push_back({p.kind, p.vertices.size()});
    return BlowupComplex(std::move(info), max_dim, std::move(cells));
}

// Matrix of d_l : C_l -> C_{l-1} in the canonical cell orders.
inline SparseIntMatrix boundary_matrix(const BlowupComplex &cx, int degree) {
    if (degree < 1 || degree > cx.max_dim())
        throw DomainError("boundary degree " + std::to_string(degree) + " out of range [1, " +
                          std::to_string(cx.max_dim()) + "]");
    const auto &cols = cx.cells(degree);
    SparseIntMatrix m(cx.count(degree - 1), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (auto &term : boundary(cols[j])) {
            const auto r = cx.index_of(term.cell);
            if (!r) throw std::logic_error("blow-up complex is not closed under the boundary");
            m.row_entries[*r].emplace_back(static_cast<std::uint32_t>(j), term.coeff);
        }
    for (auto &row : m.row_entries) std::sort(row.begin(), row.end());
    return m;
}

// One row block of d_l. Blocks 0..P-1 hold rows with J = {i}; block P holds
// the rows of blown-up cells. `a` is restricted to the block's own J = {i}
// columns (empty for block P); `b` to the shared blown-up columns.
struct BoundaryBlock {
    std::size_t row_begin = 0, row_end = 0;
    std::size_t col_begin = 0, col_end = 0;  // own A columns
    SparseIntMatrix a;
    SparseIntMatrix b;
};

struct BoundaryBlocks {
    int degree = 0;
    std::size_t rows = 0, cols = 0;
    std::size_t shared_begin = 0;  // shared columns are [shared_begin, cols)
    std::vector<BoundaryBlock> blocks;

    // Reassembles the full matrix from the blocks.
    SparseIntMatrix assemble() const {
        SparseIntMatrix m(rows, cols);
        for (const auto &blk : blocks)
            for (std::size_t r = 0; r < blk.a.rows; ++r) {
                auto &row = m.row_entries[blk.row_begin + r];
                for (const auto &[c, v] : blk.a.row_entries[r])
                    row.emplace_back(static_cast<std::uint32_t>(blk.col_begin + c), v);
                for (const auto &[c, v] : blk.b.row_entries[r])
                    row.emplace_back(static_cast<std::uint32_t>(shared_begin + c), v);
            }
        return m;
    }
};

inline BoundaryBlocks boundary_blocks(const BlowupComplex &cx, int degree) {
    const auto full = boundary_matrix(cx, degree);
    const std::size_t P = cx.piece_count();
    BoundaryBlocks out;
    out.degree = degree;
    out.rows = full.rows;
    out.cols = full.cols;
    out.shared_begin = cx.block_range(degree, P).first;
    const std::size_t shared = full.cols - out.shared_begin;
    for (std::size_t b = 0; b <= P; ++b) {
        BoundaryBlock blk;
        std::tie(blk.row_begin, blk.row_end) = cx.block_range(degree - 1, b);
        if (b < P) {
            std::tie(blk.col_begin, blk.col_end) = cx.block_range(degree, b);
        } else {
            blk.col_begin = blk.col_end = out.shared_begin;
        }
        const std::size_t nrows = blk.row_end - blk.row_begin;
        blk.a = SparseIntMatrix(nrows, blk.col_end - blk.col_begin);
        blk.b = SparseIntMatrix(nrows, shared);
        for (std::size_t r = 0; r < nrows; ++r)
            for (const auto &[c, v] : full.row_entries[blk.row_begin + r]) {
                if (c >= out.shared_begin) {
                    blk.b.row_entries[r].emplace_back(static_cast<std::uint32_t>(c - out.shared_begin), v);
                } else if (c >= blk.col_begin && c < blk.col_end) {
                    blk.a.row_entries[r].emplace_back(static_cast<std::uint32_t>(c - blk.col_begin), v);
                } else {
                    throw std::logic_error("boundary entry outside its diagonal block");
                }
            }
        out.blocks.push_back(std::move(blk));
    }
    return out;
}

}  // namespace mvh
