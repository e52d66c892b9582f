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
#include <charconv>
#include <cmath>
#include <functional>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "blowup.hpp"
#include "cover.hpp"
#include "error.hpp"
#include "geometry.hpp"
#include "graph.hpp"
#include "homology.hpp"
#include "qubo.hpp"
#include "solver.hpp"

// Text formats for every stage boundary. All readers accept '#' comment lines.
namespace mvh::io {

// Shortest text that parses back to the same double.
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view tok, const std::string &what) {
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front()))) tok.remove_prefix(1);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.remove_suffix(1);
    double v = 0.0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
        throw FormatError(what + ": not a number: '" + std::string(tok) + "'");
    return v;
}

inline std::size_t parse_index(const std::string &tok, const std::string &what) {
    std::size_t v = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
        throw FormatError(what + ": not a non-negative integer: '" + tok + "'");
    return v;
}

inline std::ifstream open_in(const std::filesystem::path &p) {
    std::ifstream in(p);
    if (!in) throw IoError("cannot open '" + p.string() + "' for reading");
    return in;
}

inline std::ofstream open_out(const std::filesystem::path &p) {
    std::ofstream out(p);
    if (!out) throw IoError("cannot open '" + p.string() + "' for writing");
    return out;
}

namespace detail {

// Non-empty, non-comment lines.
inline std::vector<std::string> content_lines(std::istream &in) {
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        out.push_back(line);
    }
    return out;
}

inline std::vector<std::string> split_csv(const std::string &line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(tok);
    return out;
}

inline std::vector<std::string> split_ws(const std::string &line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

inline bool all_numeric(const std::vector<std::string> &toks) {
    for (const auto &t : toks) {
        try {
            parse_double(t, "");
        } catch (const FormatError &) {
            return false;
        }
    }
    return true;
}

inline std::vector<std::vector<double>> read_numeric_csv(std::istream &in, const std::string &what) {
    auto lines = content_lines(in);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        auto toks = split_csv(lines[i]);
        if (i == 0 && !all_numeric(toks)) continue;  // header
        std::vector<double> row;
        for (const auto &t : toks) row.push_back(parse_double(t, what + " line " + std::to_string(i + 1)));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace detail

// ---- point clouds --------------------------------------------------------

inline PointCloud read_points_csv(std::istream &in, Metric metric = Metric::euclidean) {
    return PointCloud::from_points(detail::read_numeric_csv(in, "points"), metric);
}

inline PointCloud read_distance_csv(std::istream &in) {
    auto rows = detail::read_numeric_csv(in, "distance matrix");
    DenseMatrix<double> d(rows.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) throw FormatError("distance matrix must be square");
        for (std::size_t j = 0; j < rows.size(); ++j) d(i, j) = rows[i][j];
    }
    return PointCloud::from_distances(std::move(d));
}

inline void write_distance_csv(std::ostream &out, const PointCloud &cloud) {
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        for (std::size_t j = 0; j < cloud.size(); ++j) out << (j ? "," : "") << format_double(cloud.distance(i, j));
        out << '\n';
    }
}

// ---- graphs and complexes --------------------------------------------------

// Header "n m", then one "u v" line per edge (0-based, canonical order).
inline void write_edge_list(std::ostream &out, const SkeletonGraph &g) {
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto &e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

inline SkeletonGraph read_edge_list(std::istream &in) {
    auto lines = detail::content_lines(in);
    if (lines.empty()) throw FormatError("edge list: missing 'n m' header");
    auto head = detail::split_ws(lines[0]);
    if (head.size() != 2) throw FormatError("edge list: header must be 'n m'");
    const auto n = parse_index(head[0], "edge list header");
    const auto m = parse_index(head[1], "edge list header");
    if (lines.size() - 1 != m)
        throw FormatError("edge list: header announces " + std::to_string(m) + " edges, found " +
                          std::to_string(lines.size() - 1));
    std::vector<Edge> es;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto t = detail::split_ws(lines[i]);
        if (t.size() != 2) throw FormatError("edge list line " + std::to_string(i + 1) + ": expected 'u v'");
        const auto u = parse_index(t[0], "edge list"), v = parse_index(t[1], "edge list");
        if (u >= n || v >= n) throw FormatError("edge list line " + std::to_string(i + 1) + ": vertex out of range");
        es.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    SkeletonGraph g(n, std::move(es));
    if (g.edge_count() != m) throw FormatError("edge list: duplicate edges");
    return g;
}

inline void write_complex(std::ostream &out, const SimplicialComplex &k) {
    for (int d = 0; d <= k.dimension(); ++d)
        for (const auto &s : k.simplices(d)) {
            for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << s[i];
            out << '\n';
        }
}

inline void write_cells(std::ostream &out, const BlowupComplex &cx) {
    for (int d = 0; d <= cx.max_dim(); ++d)
        for (const auto &c : cx.cells(d)) out << c << '\n';
}

// "rows cols nnz" header, then "i j value" triplets.
inline void write_sparse(std::ostream &out, const SparseIntMatrix &m) {
    out << m.rows << ' ' << m.cols << ' ' << m.nonzeros() << '\n';
    for (std::size_t r = 0; r < m.rows; ++r)
        for (const auto &[c, v] : m.row_entries[r]) out << r << ' ' << c << ' ' << v << '\n';
}

// ---- QUBO / Ising / solutions -----------------------------------------------

// Header "N nnz", then "i j value" with i <= j, value = Q_ij.
inline void write_qubo(std::ostream &out, const QuboProblem &q) {
    out << q.size() << ' ' << q.nonzeros() << '\n';
    for (const auto &t : q.terms()) out << t.i << ' ' << t.j << ' ' << format_double(t.value) << '\n';
}

inline QuboProblem read_qubo(std::istream &in) {
    auto lines = detail::content_lines(in);
    if (lines.empty()) throw FormatError("qubo: missing 'N nnz' header");
    auto head = detail::split_ws(lines[0]);
    if (head.size() != 2) throw FormatError("qubo: header must be 'N nnz'");
    const auto n = parse_index(head[0], "qubo header");
    const auto nnz = parse_index(head[1], "qubo header");
    if (lines.size() - 1 != nnz)
        throw FormatError("qubo: header announces " + std::to_string(nnz) + " entries, found " +
                          std::to_string(lines.size() - 1));
    QuboProblem q(n);
    for (std::size_t l = 1; l < lines.size(); ++l) {
        auto t = detail::split_ws(lines[l]);
        if (t.size() != 3) throw FormatError("qubo line " + std::to_string(l + 1) + ": expected 'i j value'");
        const auto i = parse_index(t[0], "qubo"), j = parse_index(t[1], "qubo");
        if (i > j) throw FormatError("qubo line " + std::to_string(l + 1) + ": need i <= j");
        if (j >= n) throw FormatError("qubo line " + std::to_string(l + 1) + ": index out of range");
        q.add(i, j, parse_double(t[2], "qubo"));
    }
    return q;
}

inline void write_ising(std::ostream &out, const IsingProblem &p) {
    out << "offset " << format_double(p.offset) << '\n';
    for (std::size_t i = 0; i < p.h.size(); ++i)
        if (p.h[i] != 0.0) out << "h " << i << ' ' << format_double(p.h[i]) << '\n';
    for (const auto &c : p.couplings) out << "J " << c.i << ' ' << c.j << ' ' << format_double(c.value) << '\n';
}

inline IsingProblem read_ising(std::istream &in, std::size_t n) {
    IsingProblem p;
    p.h.assign(n, 0.0);
    for (const auto &line : detail::content_lines(in)) {
        auto t = detail::split_ws(line);
        if (t.size() == 2 && t[0] == "offset") {
            p.offset = parse_double(t[1], "ising offset");
        } else if (t.size() == 3 && t[0] == "h") {
            const auto i = parse_index(t[1], "ising h");
            if (i >= n) throw FormatError("ising: field index out of range");
            p.h[i] = parse_double(t[2], "ising h");
        } else if (t.size() == 4 && t[0] == "J") {
            const auto i = parse_index(t[1], "ising J"), j = parse_index(t[2], "ising J");
            if (i >= j || j >= n) throw FormatError("ising: coupling indices must satisfy i < j < N");
            p.couplings.push_back({i, j, parse_double(t[3], "ising J")});
        } else {
            throw FormatError("ising: unrecognised line '" + line + "'");
        }
    }
    return p;
}

// One line of N '0'/'1' characters, optionally followed by "energy <value>".
inline void write_solution(std::ostream &out, const Solution &s) {
    for (auto b : s.bits) out << (b ? '1' : '0');
    out << "\nenergy " << format_double(s.energy) << '\n';
}

inline Solution read_solution(std::istream &in, std::size_t expected_bits) {
    auto lines = detail::content_lines(in);
    if (lines.empty()) throw FormatError("solution: empty file");
    Solution s;
    std::string bits = lines[0];
    while (!bits.empty() && std::isspace(static_cast<unsigned char>(bits.back()))) bits.pop_back();
    for (char c : bits) {
        if (c != '0' && c != '1') throw FormatError("solution: bitstring may only contain '0' and '1'");
        s.bits.push_back(c == '1');
    }
    if (s.bits.size() != expected_bits)
        throw FormatError("solution: expected " + std::to_string(expected_bits) + " bits, got " +
                          std::to_string(s.bits.size()));
    for (std::size_t l = 1; l < lines.size(); ++l) {
        auto t = detail::split_ws(lines[l]);
        if (t.size() == 2 && t[0] == "energy") {
            s.claimed_energy = parse_double(t[1], "solution energy");
        } else {
            throw FormatError("solution: unrecognised line '" + lines[l] + "'");
        }
    }
    return s;
}

// Writes the problem (QUBO triplets, plus the Ising form next to it with an
// ".ising" suffix) for an external solver, then reads that solver's answer.
// The energy is recomputed locally; a disagreeing claimed energy is reported
// through `on_warning`.
inline Solution roundtrip_external(const QuboProblem &q, const std::filesystem::path &problem_path,
                                   const std::filesystem::path &solution_path,
                                   const std::function<void(const std::string &)> &on_warning = {}) {
    {
        auto out = open_out(problem_path);
        write_qubo(out, q);
    }
    {
        auto ising_path = problem_path;
        ising_path += ".ising";
        auto out = open_out(ising_path);
        write_ising(out, to_ising(q));
    }
    if (!std::filesystem::exists(solution_path))
        throw IoError("external solution '" + solution_path.string() + "' not found; problem written to '" +
                      problem_path.string() + "'");
    auto in = open_in(solution_path);
    auto s = read_solution(in, q.size());
    s.energy = q.energy(s.bits);
    s.solver_tag = "external";
    if (s.claimed_energy && std::abs(*s.claimed_energy - s.energy) > 1e-9 * std::max(1.0, std::abs(s.energy)) &&
        on_warning)
        on_warning("claimed energy " + format_double(*s.claimed_energy) + " differs from recomputed " +
                   format_double(s.energy));
    return s;
}

// ---- covers ---------------------------------------------------------------

inline nlohmann::json cover_to_json(const CliqueCover &c) {
    nlohmann::json j;
    j["method"] = to_string(c.method);
    j["cliques"] = c.cliques;
    auto edges = nlohmann::json::array();
    for (const auto &e : c.uncovered_edges) edges.push_back({e.u, e.v});
    j["uncovered_edges"] = edges;
    return j;
}

inline CliqueCover cover_from_json(const nlohmann::json &j) {
    try {
        CliqueCover c;
        c.method = parse_cover_method(j.at("method").get<std::string>());
        for (const auto &cl : j.at("cliques")) {
            auto vs = cl.get<std::vector<Vertex>>();
            std::sort(vs.begin(), vs.end());
            vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
            c.cliques.push_back(std::move(vs));
        }
        if (j.contains("uncovered_edges"))
            for (const auto &e : j.at("uncovered_edges")) {
                if (!e.is_array() || e.size() != 2) throw FormatError("cover: uncovered edge must be [u, v]");
                c.uncovered_edges.emplace_back(e[0].get<Vertex>(), e[1].get<Vertex>());
            }
        return c;
    } catch (const nlohmann::json::exception &ex) {
        throw FormatError(std::string("cover: ") + ex.what());
    }
}

inline CliqueCover read_cover(std::istream &in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &ex) {
        throw FormatError(std::string("cover: ") + ex.what());
    }
    return cover_from_json(j);
}

// ---- Betti output -----------------------------------------------------------

inline nlohmann::json betti_to_json(const BettiProfile &p) {
    nlohmann::json j;
    j["betti"] = p.betti;
    j["chain_dims"] = p.chain_dims;
    j["ranks"] = p.ranks;
    return j;
}

inline nlohmann::json nerve_to_json(const NerveStats &s) {
    nlohmann::json j;
    j["omega"] = s.omega;
    j["kappa"] = s.kappa;
    j["nu"] = s.nu;
    j["bound"] = s.bound;
    return j;
}

inline void write_betti_csv_header(std::ostream &out, int lmax) {
    out << "epsilon";
    for (int l = 0; l <= lmax; ++l) out << ",beta" << l;
    out << '\n';
}

}  // namespace mvh::io
