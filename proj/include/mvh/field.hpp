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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

namespace mvh {

enum class FieldKind { gf2, rational };

inline const char *to_string(FieldKind f) { return f == FieldKind::gf2 ? "gf2" : "rational"; }

inline FieldKind parse_field(const std::string &s) {
    if (s == "gf2") return FieldKind::gf2;
    if (s == "rational" || s == "q") return FieldKind::rational;
    throw FormatError("unknown field '" + s + "'");
}

// Coefficient fields for exact elimination. GF(2) rows carry only column
// indices; rational rows carry exact values.
struct Gf2 {
    using value_type = std::uint8_t;
    static value_type from_int(int v) { return static_cast<value_type>(v & 1); }
    static bool is_zero(value_type v) { return v == 0; }
};

struct Rational {
    using value_type = boost::multiprecision::cpp_rational;
    static value_type from_int(int v) { return value_type(v); }
    static bool is_zero(const value_type &v) { return v == 0; }
};

template <typename F>
using SparseRow = std::vector<std::pair<std::uint32_t, typename F::value_type>>;

template <typename F>
SparseRow<F> to_field_row(const std::vector<std::pair<std::uint32_t, int>> &row) {
    SparseRow<F> out;
    out.reserve(row.size());
    for (const auto &[c, v] : row) {
        auto x = F::from_int(v);
        if (!F::is_zero(x)) out.emplace_back(c, std::move(x));
    }
    return out;
}

// Incremental row echelon form. Each inserted row is reduced against the
// stored pivot rows (pivot = leading column) until it vanishes or acquires a
// fresh leading column. Pivot choice is deterministic: the first nonzero.
template <typename F>
class Eliminator {
  public:
    explicit Eliminator(std::size_t cols) : pivot_(cols) {}

    // Reduces `row` and stores it if it is independent. Returns the reduced
    // row (empty when dependent).
    const SparseRow<F> &insert(SparseRow<F> row) {
        reduce(row);
        if (row.empty()) {
            last_ = {};
            return last_;
        }
        const auto lead = row.front().first;
        pivot_[lead] = std::move(row);
        ++rank_;
        return *pivot_[lead];
    }

    std::size_t rank() const { return rank_; }

  private:
    void reduce(SparseRow<F> &row) const {
        while (!row.empty()) {
            const auto lead = row.front().first;
            const auto &p = pivot_[lead];
            if (!p) return;
            if constexpr (std::is_same_v<F, Gf2>) {
                SparseRow<F> out;
                out.reserve(row.size() + p->size());
                std::size_t a = 0, b = 0;
                while (a < row.size() || b < p->size()) {
                    if (b == p->size() || (a < row.size() && row[a].first < (*p)[b].first)) {
                        out.push_back(row[a++]);
                    } else if (a == row.size() || (*p)[b].first < row[a].first) {
                        out.push_back((*p)[b++]);
                    } else {
                        ++a;
                        ++b;
                    }
                }
                row = std::move(out);
            } else {
                const auto factor = row.front().second / p->front().second;
                SparseRow<F> out;
                out.reserve(row.size() + p->size());
                std::size_t a = 0, b = 0;
                while (a < row.size() || b < p->size()) {
                    if (b == p->size() || (a < row.size() && row[a].first < (*p)[b].first)) {
                        out.push_back(row[a++]);
                    } else if (a == row.size() || (*p)[b].first < row[a].first) {
                        out.emplace_back((*p)[b].first, -factor * (*p)[b].second);
                        ++b;
                    } else {
                        typename F::value_type v = row[a].second - factor * (*p)[b].second;
                        if (!F::is_zero(v)) out.emplace_back(row[a].first, std::move(v));
                        ++a;
                        ++b;
                    }
                }
                row = std::move(out);
            }
        }
    }

    std::vector<std::optional<SparseRow<F>>> pivot_;
    std::size_t rank_ = 0;
    SparseRow<F> last_;
};

}  // namespace mvh
