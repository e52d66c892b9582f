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

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "mvh/io.hpp"
#include "support.hpp"

using namespace mvh;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string &name) {
    const auto dir = fs::temp_directory_path() / "mvh_test_io";
    fs::create_directories(dir);
    return dir / name;
}

void write_file(const fs::path &p, const std::string &text) {
    std::ofstream out(p);
    out << text;
}

QuboProblem random_qubo(std::size_t n, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> val(-3.0, 3.0);
    QuboProblem q(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (rng() % 3 == 0) q.add(i, j, val(rng));
    return q;
}

}  // namespace

TEST_CASE("point csv with and without header") {
    std::istringstream with("x,y\n0,0\n3,4\n");
    auto a = io::read_points_csv(with);
    CHECK(a.size() == 2);
    CHECK(a.distance(0, 1) == 5.0);
    std::istringstream without("# comment\n0,0\n3,4\n");
    CHECK(io::read_points_csv(without, Metric::manhattan).distance(0, 1) == 7.0);
    std::istringstream ragged("0,0\n1\n");
    CHECK_THROWS_AS(io::read_points_csv(ragged), FormatError);
    std::istringstream junk("0,0\n1,zz\n");
    CHECK_THROWS_AS(io::read_points_csv(junk), FormatError);
}

TEST_CASE("distance csv round trip") {
    auto pc = PointCloud::from_points({{0.1, 0.2}, {1.5, -2.0}, {3.0, 0.7}});
    std::stringstream ss;
    io::write_distance_csv(ss, pc);
    auto back = io::read_distance_csv(ss);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(back.distance(i, j) == pc.distance(i, j));
    std::istringstream bad("0,1\n1,0,2\n");
    CHECK_THROWS_AS(io::read_distance_csv(bad), FormatError);
}

TEST_CASE("edge list round trip and validation") {
    std::mt19937_64 rng(1);
    auto g = testing::random_graph(9, 0.5, rng);
    std::stringstream ss;
    io::write_edge_list(ss, g);
    CHECK(io::read_edge_list(ss) == g);

    std::istringstream short_list("3 2\n0 1\n");
    CHECK_THROWS_AS(io::read_edge_list(short_list), FormatError);
    std::istringstream range("3 1\n0 3\n");
    CHECK_THROWS_AS(io::read_edge_list(range), FormatError);
    std::istringstream loop("3 1\n1 1\n");
    CHECK_THROWS_AS(io::read_edge_list(loop), FormatError);
    std::istringstream dup("3 2\n0 1\n1 0\n");
    CHECK_THROWS_AS(io::read_edge_list(dup), FormatError);
    std::istringstream empty("");
    CHECK_THROWS_AS(io::read_edge_list(empty), FormatError);
}

TEST_CASE("qubo file round trip is exact") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        auto q = random_qubo(1 + rng() % 15, rng);
        std::stringstream ss;
        io::write_qubo(ss, q);
        CHECK(io::read_qubo(ss) == q);
    }
    std::istringstream lower("2 1\n1 0 3\n");
    CHECK_THROWS_AS(io::read_qubo(lower), FormatError);
    std::istringstream count("2 2\n0 0 3\n");
    CHECK_THROWS_AS(io::read_qubo(count), FormatError);
}

TEST_CASE("qubo header") {
    std::mt19937_64 rng(3);
    auto g = testing::random_connected_graph(6, 13.0 / 15.0, rng);
    std::stringstream ss;
    io::write_qubo(ss, build_ecc_qubo(g, 4));
    std::size_t n = 0, nnz = 0;
    ss >> n >> nnz;
    CHECK(n == 76);
}

TEST_CASE("ising file round trip") {
    std::mt19937_64 rng(4);
    auto q = random_qubo(8, rng);
    const auto is = to_ising(q);
    std::stringstream ss;
    io::write_ising(ss, is);
    const auto back = io::read_ising(ss, 8);
    CHECK(back.h == is.h);
    CHECK(back.offset == is.offset);
    CHECK(back.couplings == is.couplings);
    std::istringstream bad("J 2 1 0.5\n");
    CHECK_THROWS_AS(io::read_ising(bad, 3), FormatError);
}

TEST_CASE("solution files") {
    Solution s;
    s.bits = {1, 0, 1};
    s.energy = -2.5;
    std::stringstream ss;
    io::write_solution(ss, s);
    auto back = io::read_solution(ss, 3);
    CHECK(back.bits == s.bits);
    CHECK(back.claimed_energy == -2.5);
    std::istringstream wrong("1010\n");
    CHECK_THROWS_AS(io::read_solution(wrong, 3), FormatError);
    std::istringstream chars("1a1\n");
    CHECK_THROWS_AS(io::read_solution(chars, 3), FormatError);
}

TEST_CASE("external round trip") {
    SkeletonGraph edge(2, {Edge(0, 1)});
    const auto q = build_ecc_qubo(edge, 1);
    const auto prob = scratch("edge.qubo"), sol = scratch("edge.sol");
    fs::remove(sol);
    CHECK_THROWS_AS(io::roundtrip_external(q, prob, sol), IoError);
    REQUIRE(fs::exists(prob));
    {
        auto in = io::open_in(prob);
        CHECK(io::read_qubo(in) == q);
    }
    fs::path ising = prob;
    ising += ".ising";
    CHECK(fs::exists(ising));

    write_file(sol, "000\n");
    CHECK(io::roundtrip_external(q, prob, sol).energy == 0.0);

    std::vector<std::string> warnings;
    write_file(sol, "111\nenergy 5\n");
    auto s = io::roundtrip_external(q, prob, sol, [&](const std::string &w) { warnings.push_back(w); });
    CHECK(s.energy == -2.0);
    CHECK(s.claimed_energy == 5.0);
    CHECK(warnings.size() == 1);

    warnings.clear();
    write_file(sol, "111\nenergy -2\n");
    io::roundtrip_external(q, prob, sol, [&](const std::string &w) { warnings.push_back(w); });
    CHECK(warnings.empty());

    write_file(sol, "11\n");
    CHECK_THROWS_AS(io::roundtrip_external(q, prob, sol), FormatError);
}

TEST_CASE("cover json round trip") {
    CliqueCover c{CoverMethod::ecc, {{0, 1, 2}, {2, 3}}, {Edge(1, 3)}};
    auto back = io::cover_from_json(io::cover_to_json(c));
    CHECK(back == c);
    std::istringstream text(R"({"method": "explicit", "cliques": [[2, 1, 0], [3]]})");
    auto e = io::read_cover(text);
    CHECK(e.method == CoverMethod::explicit_sets);
    CHECK(e.cliques == std::vector<std::vector<Vertex>>{{0, 1, 2}, {3}});
    std::istringstream bad(R"({"cliques": []})");
    CHECK_THROWS_AS(io::read_cover(bad), FormatError);
    std::istringstream notjson("{");
    CHECK_THROWS_AS(io::read_cover(notjson), FormatError);
    std::istringstream method(R"({"method": "magic", "cliques": []})");
    CHECK_THROWS_AS(io::read_cover(method), FormatError);
}

TEST_CASE("missing files are io errors") {
    CHECK_THROWS_AS(io::open_in("/nonexistent/file.txt"), IoError);
    CHECK_THROWS_AS(io::open_out("/nonexistent/dir/file.txt"), IoError);
}

TEST_CASE("cell dump and sparse export") {
    CliqueCover cover{CoverMethod::explicit_sets, {{0, 1}, {1, 2}}, {}};
    SkeletonGraph p(3, {Edge(0, 1), Edge(1, 2)});
    auto cx = build_blowup(remainder_subcomplex(p, cover, 1), 1);
    std::ostringstream cells;
    io::write_cells(cells, cx);
    CHECK(cells.str() ==
          "sigma=0 J=0 dim=0\nsigma=1 J=0 dim=0\nsigma=1 J=1 dim=0\nsigma=2 J=1 dim=0\n"
          "sigma=0,1 J=0 dim=1\nsigma=1,2 J=1 dim=1\nsigma=1 J=0,1 dim=1\n");
    std::ostringstream sp;
    io::write_sparse(sp, boundary_matrix(cx, 1));
    CHECK(sp.str().rfind("4 3 6\n", 0) == 0);
}

TEST_CASE("number formatting round trips") {
    for (double v : {0.0, -2.0, 0.1, 1.0 / 3.0, 1e-300, 12345.678}) CHECK(io::parse_double(io::format_double(v), "x") == v);
    CHECK_THROWS_AS(io::parse_double("1.5x", "x"), FormatError);
    CHECK_THROWS_AS(io::parse_index("-1", "x"), FormatError);
}
