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

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "matrix.hpp"

namespace mvh {

enum class Metric { euclidean, manhattan, precomputed };

// A finite metric space: either coordinates plus a norm, or an explicit
// distance matrix.
class PointCloud {
  public:
    PointCloud() = default;

    static PointCloud from_points(std::vector<std::vector<double>> points, Metric metric = Metric::euclidean) {
        if (metric == Metric::precomputed) throw DomainError("use from_distances for a precomputed metric");
        PointCloud pc;
        if (!points.empty()) {
            const auto d = points.front().size();
            if (d == 0) throw FormatError("points must have dimension >= 1");
            for (std::size_t i = 0; i < points.size(); ++i)
                if (points[i].size() != d)
                    throw FormatError("point " + std::to_string(i) + " has dimension " +
                                      std::to_string(points[i].size()) + ", expected " + std::to_string(d));
        }
        pc.points_ = std::move(points);
        pc.metric_ = metric;
        return pc;
    }

    static PointCloud from_distances(DenseMatrix<double> dist) {
        if (dist.rows() != dist.cols()) throw FormatError("distance matrix must be square");
        for (std::size_t i = 0; i < dist.rows(); ++i) {
            if (dist(i, i) != 0.0) throw FormatError("distance matrix must have a zero diagonal");
            for (std::size_t j = 0; j < dist.cols(); ++j) {
                if (!(dist(i, j) >= 0.0)) throw FormatError("distances must be non-negative");
                if (dist(i, j) != dist(j, i)) throw FormatError("distance matrix must be symmetric");
            }
        }
        PointCloud pc;
        pc.dist_ = std::move(dist);
        pc.metric_ = Metric::precomputed;
        return pc;
    }

    std::size_t size() const { return metric_ == Metric::precomputed ? dist_.rows() : points_.size(); }
    std::size_t dimension() const { return points_.empty() ? 0 : points_.front().size(); }
    Metric metric() const { return metric_; }
    const std::vector<std::vector<double>> &points() const { return points_; }

    double distance(std::size_t i, std::size_t j) const {
        switch (metric_) {
            case Metric::precomputed: return dist_(i, j);
            case Metric::manhattan: {
                double s = 0.0;
                for (std::size_t t = 0; t < points_[i].size(); ++t) s += std::abs(points_[i][t] - points_[j][t]);
                return s;
            }
            case Metric::euclidean: break;
        }
        double s = 0.0;
        for (std::size_t t = 0; t < points_[i].size(); ++t) {
            const double d = points_[i][t] - points_[j][t];
            s += d * d;
        }
        return std::sqrt(s);
    }

  private:
    std::vector<std::vector<double>> points_;
    DenseMatrix<double> dist_;
    Metric metric_ = Metric::euclidean;
};

enum class LandmarkStrategy { maxmin, random, explicit_list };

struct LandmarkSet {
    std::vector<std::size_t> indices;  // selection order
    LandmarkStrategy strategy = LandmarkStrategy::explicit_list;
    std::uint64_t seed = 0;
};

// Validates an explicitly chosen landmark list against the cloud.
inline LandmarkSet make_landmarks(const PointCloud &cloud, std::vector<std::size_t> indices) {
    if (indices.empty()) throw DomainError("landmark set must be non-empty");
    std::set<std::size_t> seen;
    for (auto i : indices) {
        if (i >= cloud.size()) throw DomainError("landmark index " + std::to_string(i) + " out of range");
        if (!seen.insert(i).second) throw DomainError("duplicate landmark index " + std::to_string(i));
    }
    return LandmarkSet{std::move(indices), LandmarkStrategy::explicit_list, 0};
}

// maxmin starts from point 0 and repeatedly adds the point farthest from the
// current set (ties -> lowest index). random is a seeded partial shuffle.
inline LandmarkSet select_landmarks(const PointCloud &cloud, std::size_t count, LandmarkStrategy strategy,
                                    std::uint64_t seed = 0) {
    const std::size_t n = cloud.size();
    if (count < 1 || count > n)
        throw DomainError("landmark count " + std::to_string(count) + " outside [1, " + std::to_string(n) + "]");
    LandmarkSet out;
    out.strategy = strategy;
    out.seed = seed;
    if (strategy == LandmarkStrategy::explicit_list)
        throw DomainError("explicit landmarks must be given with make_landmarks");

    if (strategy == LandmarkStrategy::random) {
        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i) perm[i] = i;
        std::mt19937_64 rng(seed);
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng() % (n - i));
            std::swap(perm[i], perm[j]);
        }
        out.indices.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(count));
        return out;
    }

    std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
    std::vector<char> taken(n, 0);
    std::size_t next = 0;
    for (std::size_t round = 0; round < count; ++round) {
        out.indices.push_back(next);
        taken[next] = 1;
        for (std::size_t i = 0; i < n; ++i) nearest[i] = std::min(nearest[i], cloud.distance(i, next));
        double best = -1.0;
        for (std::size_t i = 0; i < n; ++i)
            if (!taken[i] && nearest[i] > best) {
                best = nearest[i];
                next = i;
            }
    }
    return out;
}

// strict: d < eps; inclusive: d <= eps.
enum class Comparison { strict, inclusive };

inline bool compare_within(double d, double threshold, Comparison cmp) {
    return cmp == Comparison::strict ? d < threshold : d <= threshold;
}

inline SkeletonGraph vr_skeleton(const PointCloud &cloud, double epsilon, Comparison cmp = Comparison::strict) {
    if (!(epsilon >= 0.0)) throw DomainError("epsilon must be non-negative");
    const std::size_t n = cloud.size();
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (compare_within(cloud.distance(i, j), epsilon, cmp))
                edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
    return SkeletonGraph(n, std::move(edges));
}

// Vertex t of the result is landmarks.indices[t]; labels carry the point ids.
// {l,l'} is an edge iff some x has max(d(x,l), d(x,l')) <= m_x + eps, which
// holds exactly when both landmarks are within m_x + eps of x.
inline SkeletonGraph witness_skeleton(const PointCloud &cloud, const LandmarkSet &landmarks, double epsilon,
                                      Comparison cmp = Comparison::inclusive) {
    if (!(epsilon >= 0.0)) throw DomainError("epsilon must be non-negative");
    make_landmarks(cloud, landmarks.indices);
    const auto &ls = landmarks.indices;
    std::vector<Edge> edges;
    std::vector<double> d(ls.size());
    std::vector<Vertex> close;
    for (std::size_t x = 0; x < cloud.size(); ++x) {
        double mx = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < ls.size(); ++t) {
            d[t] = cloud.distance(x, ls[t]);
            mx = std::min(mx, d[t]);
        }
        close.clear();
        for (std::size_t t = 0; t < ls.size(); ++t)
            if (compare_within(d[t], mx + epsilon, cmp)) close.push_back(static_cast<Vertex>(t));
        for (std::size_t a = 0; a < close.size(); ++a)
            for (std::size_t b = a + 1; b < close.size(); ++b) edges.emplace_back(close[a], close[b]);
    }
    SkeletonGraph g(ls.size(), std::move(edges));
    g.set_labels(ls);
    return g;
}

}  // namespace mvh
