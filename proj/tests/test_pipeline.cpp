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

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>
#include <sstream>

#include "mvh/pipeline.hpp"
#include "support.hpp"

using namespace mvh;
namespace fs = std::filesystem;

namespace {

PointCloud circle(std::size_t n, double radius = 1.0) {
    std::vector<std::vector<double>> pts;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        pts.push_back({radius * std::cos(t), radius * std::sin(t)});
    }
    return PointCloud::from_points(pts);
}

PointCloud unit_triangle() {
    return PointCloud::from_points({{0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0}});
}

std::vector<std::size_t> row(const BarcodeRow &r) { return r.betti ? r.betti->betti : std::vector<std::size_t>{}; }

}  // namespace

TEST_CASE("barcode examples") {
    PipelineConfig cfg;
    auto rows = barcode(unit_triangle(), {0.5, 1.5}, cfg);
    REQUIRE(rows.size() == 2);
    CHECK(row(rows[0]) == std::vector<std::size_t>{3, 0});
    CHECK(row(rows[1]) == std::vector<std::size_t>{1, 0});

    auto sq = barcode(circle(4), {1.5}, cfg);
    CHECK(row(sq[0]) == std::vector<std::size_t>{1, 1});

    CHECK(barcode(circle(4), {}, cfg).empty());

    std::ostringstream csv;
    write_barcode_csv(csv, rows, 1);
    CHECK(csv.str() == "epsilon,beta0,beta1\n0.5,3,0\n1.5,1,0\n");
}

TEST_CASE("barcode keeps going past a failing epsilon") {
    PipelineConfig cfg;
    cfg.solver = SolverKind::exhaustive;
    cfg.exhaustive_limit = 5;
    auto rows = barcode(circle(8), {0.1, 10.0}, cfg);
    REQUIRE(rows.size() == 2);
    CHECK(row(rows[0]) == std::vector<std::size_t>{8, 0});
    CHECK_FALSE(rows[1].betti.has_value());
    CHECK_FALSE(rows[1].error.empty());
    std::ostringstream csv;
    write_barcode_csv(csv, rows, 1);
    CHECK(csv.str() == "epsilon,beta0,beta1\n0.1,8,0\n10,,\n");
}

TEST_CASE("config validation") {
    PipelineConfig cfg;
    cfg.lmax = -1;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg = {};
    cfg.solver = SolverKind::external;
    cfg.method = CoverMethod::ecc;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg.external_problem = "p";
    cfg.external_solution = "s";
    CHECK_NOTHROW(cfg.validate());
    cfg.method = CoverMethod::edecc;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg = {};
    cfg.alpha = 0.0;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg = {};
    cfg.method = CoverMethod::kcut;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    CHECK(parse_solver("auto") == SolverKind::automatic);
    CHECK_THROWS_AS(parse_solver("quantum"), FormatError);
}

TEST_CASE("every method reproduces the circle") {
    for (auto m : {CoverMethod::ecc, CoverMethod::vcc, CoverMethod::edecc}) {
        PipelineConfig cfg;
        cfg.method = m;
        cfg.anneal.restarts = 4;
        cfg.anneal.sweeps = 1000;
        auto rows = barcode(circle(10), {0.7}, cfg);
        CHECK(row(rows[0]) == std::vector<std::size_t>{1, 1});
    }
}

TEST_CASE("witness pipeline on a sampled circle") {
    PipelineConfig cfg;
    cfg.skeleton = SkeletonKind::witness;
    cfg.landmark_count = 8;
    auto rows = barcode(circle(60), {0.2}, cfg);
    const auto g = make_skeleton(circle(60), 0.2, cfg);
    CHECK(g.vertex_count() == 8);
    CHECK(row(rows[0]) == oracle_betti(g, 1).betti);
    CHECK(row(rows[0]) == std::vector<std::size_t>{1, 1});
}

TEST_CASE("pipeline is deterministic under a fixed seed") {
    std::mt19937_64 rng(1);
    auto g = testing::random_connected_graph(14, 0.5, rng);
    PipelineConfig cfg;
    cfg.method = CoverMethod::vcc;
    cfg.solver = SolverKind::anneal;
    cfg.anneal.restarts = 3;
    cfg.anneal.sweeps = 300;
    cfg.seed = 17;
    auto a = run_pipeline(g, cfg), b = run_pipeline(g, cfg);
    CHECK(a.cover == b.cover);
    CHECK(a.betti == b.betti);
    CHECK(a.betti.betti == oracle_betti(g, 1).betti);
}

TEST_CASE("external solver through the pipeline") {
    const auto dir = fs::temp_directory_path() / "mvh_test_pipeline";
    fs::create_directories(dir);
    const auto prob = dir / "p.qubo", sol = dir / "p.sol";
    fs::remove(sol);
    auto g = testing::complete_graph(3);
    PipelineConfig cfg;
    cfg.method = CoverMethod::ecc;
    cfg.k = 1;
    cfg.solver = SolverKind::external;
    cfg.external_problem = prob;
    cfg.external_solution = sol;
    CHECK_THROWS_AS(run_cover(g, cfg), IoError);
    // play the external solver: read the exported file, solve, write an answer
    auto in = io::open_in(prob);
    const auto q = io::read_qubo(in);
    {
        auto out = io::open_out(sol);
        io::write_solution(out, solve_exhaustive(q));
    }
    auto cover = run_cover(g, cfg);
    CHECK(cover.cliques == std::vector<std::vector<Vertex>>{{0, 1, 2}});
}

TEST_CASE("graphs with isolated vertices") {
    SkeletonGraph g(4, {Edge(0, 1)});
    for (auto m : {CoverMethod::ecc, CoverMethod::vcc, CoverMethod::edecc}) {
        PipelineConfig cfg;
        cfg.method = m;
        CHECK(run_pipeline(g, cfg).betti.betti == std::vector<std::size_t>{3, 0});
    }
    SkeletonGraph lone(1);
    PipelineConfig cfg;
    CHECK(run_pipeline(lone, cfg).betti.betti == std::vector<std::size_t>{1, 0});
    CHECK(run_pipeline(SkeletonGraph(3), cfg).betti.betti == std::vector<std::size_t>{3, 0});
}
