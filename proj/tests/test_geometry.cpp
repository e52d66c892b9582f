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
#include <numbers>
#include <random>

#include "mvh/geometry.hpp"
#include "support.hpp"

using namespace mvh;

namespace {

PointCloud line(std::vector<double> xs) {
    std::vector<std::vector<double>> pts;
    for (double x : xs) pts.push_back({x});
    return PointCloud::from_points(pts);
}

PointCloud unit_triangle() {
    const double h = std::sqrt(3.0) / 2.0;
    return PointCloud::from_points({{0.0, 0.0}, {1.0, 0.0}, {0.5, h}});
}

std::vector<std::size_t> as_vec(const LandmarkSet &l) { return l.indices; }

}  // namespace

TEST_CASE("point cloud validation") {
    CHECK_THROWS_AS(PointCloud::from_points({{0.0, 1.0}, {2.0}}), FormatError);
    CHECK_THROWS_AS(PointCloud::from_points({{}}), FormatError);
    DenseMatrix<double> asym(2, 2, 0.0);
    asym(0, 1) = 1.0;
    asym(1, 0) = 2.0;
    CHECK_THROWS_AS(PointCloud::from_distances(asym), FormatError);
    DenseMatrix<double> neg(2, 2, 0.0);
    neg(0, 1) = neg(1, 0) = -1.0;
    CHECK_THROWS_AS(PointCloud::from_distances(neg), FormatError);
    CHECK_THROWS_AS(PointCloud::from_distances(DenseMatrix<double>(2, 3, 0.0)), FormatError);
}

TEST_CASE("metrics") {
    auto e = PointCloud::from_points({{0.0, 0.0}, {3.0, 4.0}});
    auto m = PointCloud::from_points({{0.0, 0.0}, {3.0, 4.0}}, Metric::manhattan);
    CHECK(e.distance(0, 1) == 5.0);
    CHECK(m.distance(0, 1) == 7.0);
}

TEST_CASE("maxmin landmarks on a line") {
    auto pc = line({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
    CHECK(as_vec(select_landmarks(pc, 2, LandmarkStrategy::maxmin)) == std::vector<std::size_t>{0, 10});
    CHECK(as_vec(select_landmarks(pc, 3, LandmarkStrategy::maxmin)) == std::vector<std::size_t>{0, 10, 5});
}

TEST_CASE("landmark count equal to cloud size selects everything") {
    auto pc = line({0, 3, 4, 9, 12});
    for (auto s : {LandmarkStrategy::maxmin, LandmarkStrategy::random}) {
        auto idx = select_landmarks(pc, 5, s, 7).indices;
        std::sort(idx.begin(), idx.end());
        CHECK(idx == std::vector<std::size_t>{0, 1, 2, 3, 4});
    }
}

TEST_CASE("landmark errors") {
    auto pc = line({0, 1, 2});
    CHECK_THROWS_AS(select_landmarks(pc, 0, LandmarkStrategy::maxmin), DomainError);
    CHECK_THROWS_AS(select_landmarks(pc, 4, LandmarkStrategy::random), DomainError);
    CHECK_THROWS_AS(make_landmarks(pc, {0, 0}), DomainError);
    CHECK_THROWS_AS(make_landmarks(pc, {3}), DomainError);
    CHECK_THROWS_AS(make_landmarks(pc, {}), DomainError);
}

TEST_CASE("random landmarks are reproducible and distinct") {
    std::mt19937_64 rng(3);
    std::vector<std::vector<double>> pts;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) pts.push_back({u(rng), u(rng)});
    auto pc = PointCloud::from_points(pts);
    auto a = select_landmarks(pc, 12, LandmarkStrategy::random, 99);
    auto b = select_landmarks(pc, 12, LandmarkStrategy::random, 99);
    CHECK(a.indices == b.indices);
    std::set<std::size_t> s(a.indices.begin(), a.indices.end());
    CHECK(s.size() == 12);
    CHECK(select_landmarks(pc, 12, LandmarkStrategy::maxmin).indices ==
          select_landmarks(pc, 12, LandmarkStrategy::maxmin).indices);
}

TEST_CASE("vr skeleton examples") {
    auto tri = unit_triangle();
    CHECK(vr_skeleton(tri, 1.5).edge_count() == 3);
    CHECK(vr_skeleton(tri, 0.5).edge_count() == 0);
    // strict: a distance exactly equal to epsilon is not an edge
    auto pair = line({0, 1});
    CHECK(vr_skeleton(pair, 1.0).edge_count() == 0);
    CHECK(vr_skeleton(pair, 1.0, Comparison::inclusive).edge_count() == 1);

    std::vector<std::vector<double>> sq;
    for (int k = 0; k < 4; ++k) sq.push_back({std::cos(k * std::numbers::pi / 2), std::sin(k * std::numbers::pi / 2)});
    auto g = vr_skeleton(PointCloud::from_points(sq), 1.5);
    CHECK(g == testing::cycle_graph(4));
}

TEST_CASE("witness skeleton examples") {
    auto pc = line({0, 5, 10});
    auto g = witness_skeleton(pc, make_landmarks(pc, {0, 2}), 0.0);
    CHECK(g.vertex_count() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(g.labels() == std::vector<std::size_t>{0, 2});

    auto pc2 = line({0, 10});
    CHECK(witness_skeleton(pc2, make_landmarks(pc2, {0, 1}), 0.0).edge_count() == 0);

    // points 0,2,4,8 with landmarks 0,4,8 (indices 0,2,3): only {0,4}
    auto pc3 = line({0, 2, 4, 8});
    auto g3 = witness_skeleton(pc3, make_landmarks(pc3, {0, 2, 3}), 1.0);
    REQUIRE(g3.edge_count() == 1);
    CHECK(g3.has_edge(0, 1));
}

TEST_CASE("witness skeleton agrees with a direct check of every (point, pair)") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 4.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::vector<double>> pts;
        for (int i = 0; i < 25; ++i) pts.push_back({u(rng), u(rng)});
        auto pc = PointCloud::from_points(pts);
        auto lm = select_landmarks(pc, 8, LandmarkStrategy::random, static_cast<std::uint64_t>(trial));
        const double eps = 0.3;
        auto g = witness_skeleton(pc, lm, eps);
        for (std::size_t a = 0; a < 8; ++a)
            for (std::size_t b = a + 1; b < 8; ++b) {
                bool witnessed = false;
                for (std::size_t x = 0; x < pc.size(); ++x) {
                    double mx = 1e300;
                    for (auto l : lm.indices) mx = std::min(mx, pc.distance(x, l));
                    const double d = std::max(pc.distance(x, lm.indices[a]), pc.distance(x, lm.indices[b]));
                    if (d <= mx + eps) witnessed = true;
                }
                CHECK(g.has_edge(static_cast<Vertex>(a), static_cast<Vertex>(b)) == witnessed);
            }
    }
}

TEST_CASE("skeletons are monotone in epsilon") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < 30; ++i) pts.push_back({u(rng), u(rng), u(rng)});
    auto pc = PointCloud::from_points(pts);
    auto lm = select_landmarks(pc, 10, LandmarkStrategy::maxmin);
    double prev = 0.0;
    for (double eps : {0.1, 0.2, 0.4, 0.8}) {
        auto lo = vr_skeleton(pc, prev), hi = vr_skeleton(pc, eps);
        for (const auto &e : lo.edges()) CHECK(hi.has_edge(e.u, e.v));
        auto wlo = witness_skeleton(pc, lm, prev), whi = witness_skeleton(pc, lm, eps);
        for (const auto &e : wlo.edges()) CHECK(whi.has_edge(e.u, e.v));
        prev = eps;
    }
    CHECK(vr_skeleton(pc, 0.0).edge_count() == 0);
    CHECK(vr_skeleton(pc, 10.0).edge_count() == 30 * 29 / 2);
}

TEST_CASE("precomputed distances behave like points") {
    auto tri = unit_triangle();
    DenseMatrix<double> d(3, 3, 0.0);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) d(i, j) = tri.distance(i, j);
    auto pc = PointCloud::from_distances(d);
    CHECK(vr_skeleton(pc, 1.5) == vr_skeleton(tri, 1.5));
}
