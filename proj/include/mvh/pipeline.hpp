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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "blowup.hpp"
#include "cover.hpp"
#include "error.hpp"
#include "geometry.hpp"
#include "homology.hpp"
#include "io.hpp"
#include "qubo.hpp"
#include "solver.hpp"

namespace mvh {

enum class SkeletonKind { vr, witness };
enum class SolverKind { automatic, exhaustive, anneal, external };

inline SolverKind parse_solver(const std::string &s) {
    if (s == "auto") return SolverKind::automatic;
    if (s == "exhaustive") return SolverKind::exhaustive;
    if (s == "anneal") return SolverKind::anneal;
    if (s == "external") return SolverKind::external;
    throw FormatError("unknown solver '" + s + "'");
}

// Everything needed to go from a point cloud (or a graph) to Betti numbers.
struct PipelineConfig {
    SkeletonKind skeleton = SkeletonKind::vr;
    Comparison vr_comparison = Comparison::strict;
    Comparison witness_comparison = Comparison::inclusive;
    std::size_t landmark_count = 0;  // witness only; 0 = every point
    LandmarkStrategy landmark_strategy = LandmarkStrategy::maxmin;

    CoverMethod method = CoverMethod::edecc;
    SolverKind solver = SolverKind::automatic;
    std::optional<std::size_t> k;  // nullopt = estimate_k
    std::optional<double> alpha;   // nullopt = n
    EdeccStop edecc_stop;
    AnnealConfig anneal;
    std::size_t exhaustive_limit = default_exhaustive_limit;
    std::filesystem::path external_problem;   // external solver only
    std::filesystem::path external_solution;

    int lmax = 1;
    HomologyOptions homology;
    std::uint64_t seed = 0;

    void validate() const {
        if (lmax < 0) throw DomainError("lmax must be non-negative");
        if (solver == SolverKind::external && (external_problem.empty() || external_solution.empty()))
            throw DomainError("external solver needs a problem path and a solution path");
        if (solver == SolverKind::external && method == CoverMethod::edecc)
            throw DomainError("ED-ECC is iterative and cannot use a one-shot external solver");
        if (alpha && !(*alpha > 0.0)) throw DomainError("alpha must be positive");
        if (method == CoverMethod::kcut || method == CoverMethod::explicit_sets)
            throw DomainError(std::string("method ") + to_string(method) + " cannot be computed by the pipeline");
        anneal.validate();
    }
};

inline QuboSolver make_solver(const PipelineConfig &cfg,
                              std::function<void(const std::string &)> on_warning = {}) {
    AnnealConfig ac = cfg.anneal;
    ac.seed = cfg.seed;
    switch (cfg.solver) {
        case SolverKind::exhaustive:
            return [limit = cfg.exhaustive_limit](const QuboProblem &q) { return solve_exhaustive(q, limit); };
        case SolverKind::anneal:
            return [ac](const QuboProblem &q) { return solve_annealing(q, ac); };
        case SolverKind::external:
            return [p = cfg.external_problem, s = cfg.external_solution, on_warning](const QuboProblem &q) {
                return io::roundtrip_external(q, p, s, on_warning);
            };
        case SolverKind::automatic: break;
    }
    return [ac, limit = cfg.exhaustive_limit](const QuboProblem &q) {
        return q.size() <= limit ? solve_exhaustive(q, limit) : solve_annealing(q, ac);
    };
}

inline LandmarkSet pipeline_landmarks(const PointCloud &cloud, const PipelineConfig &cfg) {
    const std::size_t count = cfg.landmark_count == 0 ? cloud.size() : cfg.landmark_count;
    return select_landmarks(cloud, count, cfg.landmark_strategy, cfg.seed);
}

inline SkeletonGraph make_skeleton(const PointCloud &cloud, double epsilon, const PipelineConfig &cfg,
                                   const std::optional<LandmarkSet> &landmarks = std::nullopt) {
    if (cfg.skeleton == SkeletonKind::vr) return vr_skeleton(cloud, epsilon, cfg.vr_comparison);
    return witness_skeleton(cloud, landmarks ? *landmarks : pipeline_landmarks(cloud, cfg), epsilon,
                            cfg.witness_comparison);
}

inline CliqueCover run_cover(const SkeletonGraph &g, const PipelineConfig &cfg,
                             std::function<void(const std::string &)> on_warning = {}) {
    cfg.validate();
    const auto solver = make_solver(cfg, std::move(on_warning));
    const auto n = static_cast<double>(g.vertex_count());
    switch (cfg.method) {
        case CoverMethod::ecc:
            if (g.edge_count() == 0) {
                CliqueCover c{CoverMethod::ecc, {}, {}};
                detail::add_singletons(g, c);
                return c;
            }
            return cover_ecc(g, cfg.k.value_or(g.vertex_count() < 2 ? 1 : estimate_k(g, CoverMethod::ecc)), solver);
        case CoverMethod::vcc:
            return cover_vcc(g, cfg.k.value_or(g.vertex_count() < 2 ? 1 : estimate_k(g, CoverMethod::vcc)),
                             cfg.alpha.value_or(std::max(1.0, n)), solver);
        default: break;
    }
    return cover_edecc(g, solver, cfg.edecc_stop);
}

struct PipelineResult {
    CliqueCover cover;
    BettiProfile betti;
    NerveStats nerve;
};

// graph + cover -> Betti numbers through the blow-up complex.
inline PipelineResult betti_from_cover(const SkeletonGraph &g, const CliqueCover &cover, int lmax,
                                       const HomologyOptions &opts = {}) {
    const auto cc = remainder_subcomplex(g, cover, lmax + 1);
    const auto cx = build_blowup(cc, lmax + 1);
    return PipelineResult{cover, betti(cx, lmax, opts), nerve_stats(cc, static_cast<std::size_t>(lmax))};
}

inline PipelineResult run_pipeline(const SkeletonGraph &g, const PipelineConfig &cfg,
                                   std::function<void(const std::string &)> on_warning = {}) {
    auto cover = run_cover(g, cfg, std::move(on_warning));
    return betti_from_cover(g, cover, cfg.lmax, cfg.homology);
}

struct BarcodeRow {
    double epsilon = 0.0;
    std::optional<BettiProfile> betti;
    std::string error;  // set when this epsilon failed
};

// Betti numbers over a grid of scale parameters. A failing epsilon is
// recorded in its row and the sweep carries on.
inline std::vector<BarcodeRow> barcode(const PointCloud &cloud, const std::vector<double> &grid,
                                       const PipelineConfig &cfg) {
    std::vector<BarcodeRow> rows;
    std::optional<LandmarkSet> landmarks;
    if (cfg.skeleton == SkeletonKind::witness && !grid.empty()) landmarks = pipeline_landmarks(cloud, cfg);
    for (double eps : grid) {
        BarcodeRow row;
        row.epsilon = eps;
        try {
            const auto g = make_skeleton(cloud, eps, cfg, landmarks);
            row.betti = run_pipeline(g, cfg).betti;
        } catch (const std::exception &ex) {
            row.error = ex.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline void write_barcode_csv(std::ostream &out, const std::vector<BarcodeRow> &rows, int lmax) {
    io::write_betti_csv_header(out, lmax);
    for (const auto &r : rows) {
        out << io::format_double(r.epsilon);
        for (int l = 0; l <= lmax; ++l) {
            out << ',';
            if (r.betti) out << r.betti->betti[static_cast<std::size_t>(l)];
        }
        out << '\n';
    }
}

}  // namespace mvh
