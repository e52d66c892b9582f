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

// Command-line front end. Each subcommand is one pipeline stage reading and
// writing the text formats from mvh/io.hpp, so stages can be chained through
// files or swapped for external tools (e.g. a hardware annealer for `solve`).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mvh/mvh.hpp"

namespace {

enum ExitCode : int {
    exit_ok = 0,
    exit_internal = 1,
    exit_usage = 2,
    exit_io = 3,
    exit_format = 4,
    exit_capacity = 5,
    exit_domain = 6,
};

int exit_code_for(const mvh::Error &e) {
    if (dynamic_cast<const mvh::IoError *>(&e)) return exit_io;
    if (dynamic_cast<const mvh::FormatError *>(&e)) return exit_format;
    if (dynamic_cast<const mvh::CapacityError *>(&e)) return exit_capacity;
    if (dynamic_cast<const mvh::DomainError *>(&e)) return exit_domain;
    return exit_internal;
}

void report_error(const std::string &kind, const std::string &message) {
    nlohmann::json j{{"error", kind}, {"message", message}};
    std::cerr << j.dump() << '\n';
}

void warn(const std::string &message) {
    nlohmann::json j{{"warning", message}};
    std::cerr << j.dump() << '\n';
}

// Writes to `path`, or stdout when the path is empty or "-".
class Output {
  public:
    explicit Output(const std::string &path) {
        if (!path.empty() && path != "-") file_ = std::make_unique<std::ofstream>(mvh::io::open_out(path));
    }
    std::ostream &stream() { return file_ ? *file_ : std::cout; }

  private:
    std::unique_ptr<std::ofstream> file_;
};

mvh::SkeletonGraph load_graph(const std::string &path) {
    auto in = mvh::io::open_in(path);
    return mvh::io::read_edge_list(in);
}

mvh::Metric parse_metric(const std::string &s) {
    if (s == "euclidean") return mvh::Metric::euclidean;
    if (s == "manhattan") return mvh::Metric::manhattan;
    throw mvh::FormatError("unknown metric '" + s + "'");
}

struct CloudArgs {
    std::string points, distances, metric = "euclidean";

    void add(CLI::App *app) {
        auto *p = app->add_option("--points", points, "CSV point cloud, one point per row");
        auto *d = app->add_option("--distances", distances, "CSV square distance matrix");
        p->excludes(d);
        app->add_option("--metric", metric, "euclidean or manhattan (with --points)")
            ->check(CLI::IsMember({"euclidean", "manhattan"}));
    }

    mvh::PointCloud load() const {
        if (!points.empty()) {
            auto in = mvh::io::open_in(points);
            return mvh::io::read_points_csv(in, parse_metric(metric));
        }
        if (!distances.empty()) {
            auto in = mvh::io::open_in(distances);
            return mvh::io::read_distance_csv(in);
        }
        throw mvh::DomainError("one of --points or --distances is required");
    }
};

struct SkeletonArgs {
    std::string complex = "vr", strategy = "maxmin", comparison;
    std::size_t landmarks = 0;

    void add(CLI::App *app) {
        app->add_option("--complex", complex, "vr or witness")->check(CLI::IsMember({"vr", "witness"}));
        app->add_option("--landmarks", landmarks, "witness landmark count (0 = all points)");
        app->add_option("--landmark-strategy", strategy, "maxmin or random")
            ->check(CLI::IsMember({"maxmin", "random"}));
        app->add_option("--comparison", comparison,
                        "strict (<) or inclusive (<=); default strict for vr, inclusive for witness")
            ->check(CLI::IsMember({"strict", "inclusive"}));
    }

    void apply(mvh::PipelineConfig &cfg) const {
        cfg.skeleton = complex == "witness" ? mvh::SkeletonKind::witness : mvh::SkeletonKind::vr;
        cfg.landmark_count = landmarks;
        cfg.landmark_strategy = strategy == "random" ? mvh::LandmarkStrategy::random : mvh::LandmarkStrategy::maxmin;
        if (!comparison.empty()) {
            const auto c = comparison == "strict" ? mvh::Comparison::strict : mvh::Comparison::inclusive;
            cfg.vr_comparison = cfg.witness_comparison = c;
        }
    }
};

struct AnnealArgs {
    std::size_t sweeps = 10000, restarts = 20;
    std::optional<double> t0;
    double t1 = 0.01;

    void add(CLI::App *app) {
        app->add_option("--sweeps", sweeps, "annealing sweeps per restart");
        app->add_option("--restarts", restarts, "annealing restarts");
        app->add_option("--t0", t0, "initial temperature (default 10*max|Q|)");
        app->add_option("--t1", t1, "final temperature");
    }

    mvh::AnnealConfig config(std::uint64_t seed, unsigned threads) const {
        mvh::AnnealConfig c;
        c.seed = seed;
        c.sweeps = sweeps;
        c.restarts = restarts;
        c.t_initial = t0;
        c.t_final = t1;
        c.threads = threads;
        return c;
    }
};

struct CoverArgs {
    std::string method = "edecc", solver = "auto", k = "auto", problem_out, solution;
    std::optional<double> alpha;
    std::size_t exhaustive_limit = mvh::default_exhaustive_limit, min_clique = 2, max_iterations = 0;
    AnnealArgs anneal;

    void add(CLI::App *app) {
        app->add_option("--method", method, "ecc, vcc or edecc")->check(CLI::IsMember({"ecc", "vcc", "edecc"}));
        app->add_option("--solver", solver, "auto, exhaustive, anneal or external")
            ->check(CLI::IsMember({"auto", "exhaustive", "anneal", "external"}));
        app->add_option("--k", k, "number of cliques, or 'auto' for the bound estimate");
        app->add_option("--alpha", alpha, "VCC one-hot penalty (default n)");
        app->add_option("--exhaustive-limit", exhaustive_limit, "max variables for exhaustive solving");
        app->add_option("--min-clique-size", min_clique, "ED-ECC: stop when the max clique is smaller");
        app->add_option("--max-iterations", max_iterations, "ED-ECC: iteration cap (0 = unlimited)");
        app->add_option("--problem-out", problem_out, "external solver: where to write the QUBO");
        app->add_option("--solution", solution, "external solver: solution file to read back");
        anneal.add(app);
    }

    void apply(mvh::PipelineConfig &cfg, std::uint64_t seed, unsigned threads) const {
        cfg.method = mvh::parse_cover_method(method);
        cfg.solver = mvh::parse_solver(solver);
        if (k != "auto") cfg.k = mvh::io::parse_index(k, "--k");
        cfg.alpha = alpha;
        cfg.exhaustive_limit = exhaustive_limit;
        cfg.edecc_stop.min_clique_size = min_clique;
        if (max_iterations > 0) cfg.edecc_stop.max_iterations = max_iterations;
        cfg.external_problem = problem_out;
        cfg.external_solution = solution;
        cfg.anneal = anneal.config(seed, threads);
        cfg.seed = seed;
    }
};

std::vector<double> parse_grid(const std::string &grid) {
    std::vector<double> out;
    std::stringstream ss(grid);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(mvh::io::parse_double(tok, "--grid"));
    return out;
}

unsigned default_threads() {
    if (const char *env = std::getenv("MVH_THREADS")) {
        try {
            return static_cast<unsigned>(std::max(1L, std::stol(env)));
        } catch (...) {
        }
    }
    return 1;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Betti numbers of point clouds through clique covers and the Mayer-Vietoris blow-up complex"};
    app.require_subcommand(1);
    std::uint64_t seed = 0;
    unsigned threads = default_threads();
    app.add_option("--seed", seed, "seed for every random choice")->capture_default_str();
    app.add_option("--threads", threads, "worker threads (default $MVH_THREADS or 1)");

    // skeleton
    auto *sk = app.add_subcommand("skeleton", "point cloud -> 1-skeleton edge list");
    CloudArgs sk_cloud;
    SkeletonArgs sk_args;
    double sk_eps = 0.0;
    std::string sk_out;
    sk_cloud.add(sk);
    sk_args.add(sk);
    sk->add_option("--epsilon", sk_eps, "scale parameter")->required();
    sk->add_option("-o,--output", sk_out, "edge list output (default stdout)");

    // cover
    auto *cv = app.add_subcommand("cover", "graph -> clique cover JSON");
    std::string cv_graph, cv_out;
    CoverArgs cv_args;
    cv->add_option("--graph", cv_graph, "edge list")->required();
    cv_args.add(cv);
    cv->add_option("-o,--output", cv_out, "cover JSON output (default stdout)");

    // qubo
    auto *qb = app.add_subcommand("qubo", "graph -> QUBO and Ising files");
    std::string qb_graph, qb_method = "ecc", qb_out, qb_ising;
    std::size_t qb_k = 1;
    std::optional<double> qb_alpha, qb_beta;
    qb->add_option("--graph", qb_graph, "edge list")->required();
    qb->add_option("--method", qb_method, "ecc, vcc, maxclique or kcut")
        ->check(CLI::IsMember({"ecc", "vcc", "maxclique", "kcut"}));
    qb->add_option("--k", qb_k, "number of cliques / classes / parts");
    qb->add_option("--alpha", qb_alpha, "VCC / k-cut orthogonality weight (default n)");
    qb->add_option("--beta", qb_beta, "k-cut cardinality weight (default n)");
    qb->add_option("-o,--output", qb_out, "QUBO output (default stdout)");
    qb->add_option("--ising", qb_ising, "also write the Ising form here");

    // solve
    auto *sv = app.add_subcommand("solve", "QUBO file -> solution bitstring");
    std::string sv_qubo, sv_solver = "anneal", sv_out;
    std::size_t sv_limit = mvh::default_exhaustive_limit;
    AnnealArgs sv_anneal;
    sv->add_option("--qubo", sv_qubo, "QUBO triplet file")->required();
    sv->add_option("--solver", sv_solver, "exhaustive or anneal")->check(CLI::IsMember({"exhaustive", "anneal"}));
    sv->add_option("--exhaustive-limit", sv_limit, "max variables for exhaustive solving");
    sv_anneal.add(sv);
    sv->add_option("-o,--output", sv_out, "solution output (default stdout)");

    // betti
    auto *bt = app.add_subcommand("betti", "graph + cover -> Betti numbers");
    std::string bt_graph, bt_cover, bt_field = "gf2", bt_format = "json", bt_out;
    int bt_lmax = 1;
    std::optional<double> bt_eps;
    bt->add_option("--graph", bt_graph, "edge list")->required();
    bt->add_option("--cover", bt_cover, "cover JSON")->required();
    bt->add_option("--lmax", bt_lmax, "highest Betti degree");
    bt->add_option("--field", bt_field, "gf2 or rational")->check(CLI::IsMember({"gf2", "rational"}));
    bt->add_option("--format", bt_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    bt->add_option("--epsilon", bt_eps, "epsilon value for the CSV row");
    bt->add_option("-o,--output", bt_out, "output (default stdout)");

    // barcode
    auto *bc = app.add_subcommand("barcode", "point cloud -> Betti numbers over an epsilon grid (CSV)");
    CloudArgs bc_cloud;
    SkeletonArgs bc_sk;
    CoverArgs bc_cover;
    std::string bc_grid, bc_field = "gf2", bc_out;
    std::optional<double> bc_min, bc_max;
    std::size_t bc_steps = 0;
    int bc_lmax = 1;
    bc_cloud.add(bc);
    bc_sk.add(bc);
    bc_cover.add(bc);
    bc->add_option("--grid", bc_grid, "comma separated epsilon values");
    bc->add_option("--eps-min", bc_min, "grid start (with --eps-max, --eps-steps)");
    bc->add_option("--eps-max", bc_max, "grid end");
    bc->add_option("--eps-steps", bc_steps, "number of grid points");
    bc->add_option("--lmax", bc_lmax, "highest Betti degree");
    bc->add_option("--field", bc_field, "gf2 or rational")->check(CLI::IsMember({"gf2", "rational"}));
    bc->add_option("-o,--output", bc_out, "CSV output (default stdout)");

    // oracle
    auto *oc = app.add_subcommand("oracle", "graph -> Betti numbers of its clique complex, computed directly");
    std::string oc_graph, oc_field = "gf2", oc_format = "json", oc_out;
    int oc_lmax = 1;
    std::size_t oc_cap = mvh::default_oracle_simplex_cap;
    std::optional<double> oc_eps;
    oc->add_option("--graph", oc_graph, "edge list")->required();
    oc->add_option("--lmax", oc_lmax, "highest Betti degree");
    oc->add_option("--field", oc_field, "gf2 or rational")->check(CLI::IsMember({"gf2", "rational"}));
    oc->add_option("--format", oc_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    oc->add_option("--epsilon", oc_eps, "epsilon value for the CSV row");
    oc->add_option("--simplex-cap", oc_cap, "refuse complexes larger than this");
    oc->add_option("-o,--output", oc_out, "output (default stdout)");

    // stats
    auto *st = app.add_subcommand("stats", "graph + cover -> nerve diagnostics (omega, kappa, nu, bound)");
    std::string st_graph, st_cover, st_out;
    int st_lmax = 1;
    bool st_rem = false;
    st->add_option("--graph", st_graph, "edge list")->required();
    st->add_option("--cover", st_cover, "cover JSON")->required();
    st->add_option("--lmax", st_lmax, "highest degree for nu and bound");
    st->add_flag("--include-remainder", st_rem, "count the remainder piece as a covering set");
    st->add_option("-o,--output", st_out, "output (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        report_error("usage", e.what());
        return exit_usage;
    }

    const auto write_betti = [](std::ostream &out, const mvh::BettiProfile &p, const std::string &format,
                                std::optional<double> eps, const mvh::NerveStats *nerve) {
        if (format == "csv") {
            mvh::io::write_betti_csv_header(out, static_cast<int>(p.betti.size()) - 1);
            out << (eps ? mvh::io::format_double(*eps) : "");
            for (auto b : p.betti) out << ',' << b;
            out << '\n';
            return;
        }
        auto j = mvh::io::betti_to_json(p);
        if (nerve) j["nerve"] = mvh::io::nerve_to_json(*nerve);
        out << j.dump(2) << '\n';
    };

    try {
        if (*sk) {
            mvh::PipelineConfig cfg;
            cfg.seed = seed;
            sk_args.apply(cfg);
            const auto g = mvh::make_skeleton(sk_cloud.load(), sk_eps, cfg);
            Output out(sk_out);
            mvh::io::write_edge_list(out.stream(), g);
        } else if (*cv) {
            mvh::PipelineConfig cfg;
            cv_args.apply(cfg, seed, threads);
            const auto g = load_graph(cv_graph);
            const auto cover = mvh::run_cover(g, cfg, warn);
            Output out(cv_out);
            out.stream() << mvh::io::cover_to_json(cover).dump(2) << '\n';
        } else if (*qb) {
            const auto g = load_graph(qb_graph);
            const double n = std::max<double>(1.0, static_cast<double>(g.vertex_count()));
            mvh::QuboProblem q;
            if (qb_method == "ecc") q = mvh::build_ecc_qubo(g, qb_k);
            else if (qb_method == "vcc") q = mvh::build_vcc_qubo(g, qb_k, qb_alpha.value_or(n));
            else if (qb_method == "maxclique") q = mvh::build_max_clique_qubo(g);
            else q = mvh::build_kcut_qubo(g, qb_k, qb_alpha.value_or(n), qb_beta.value_or(n));
            Output out(qb_out);
            mvh::io::write_qubo(out.stream(), q);
            if (!qb_ising.empty()) {
                auto is = mvh::io::open_out(qb_ising);
                mvh::io::write_ising(is, mvh::to_ising(q));
            }
        } else if (*sv) {
            auto in = mvh::io::open_in(sv_qubo);
            const auto q = mvh::io::read_qubo(in);
            const auto s = sv_solver == "exhaustive" ? mvh::solve_exhaustive(q, sv_limit)
                                                     : mvh::solve_annealing(q, sv_anneal.config(seed, threads));
            Output out(sv_out);
            mvh::io::write_solution(out.stream(), s);
        } else if (*bt) {
            const auto g = load_graph(bt_graph);
            auto in = mvh::io::open_in(bt_cover);
            const auto cover = mvh::io::read_cover(in);
            if (cover.method == mvh::CoverMethod::explicit_sets &&
                !mvh::remainder_subcomplex(g, cover, bt_lmax + 1).covers_graph())
                throw mvh::DomainError("explicit cover does not cover the clique complex of the graph");
            mvh::HomologyOptions ho;
            ho.field = mvh::parse_field(bt_field);
            ho.threads = threads;
            const auto res = mvh::betti_from_cover(g, cover, bt_lmax, ho);
            Output out(bt_out);
            write_betti(out.stream(), res.betti, bt_format, bt_eps, &res.nerve);
        } else if (*bc) {
            mvh::PipelineConfig cfg;
            bc_sk.apply(cfg);
            bc_cover.apply(cfg, seed, threads);
            cfg.lmax = bc_lmax;
            cfg.homology.field = mvh::parse_field(bc_field);
            cfg.homology.threads = threads;
            std::vector<double> grid = parse_grid(bc_grid);
            if (bc_min || bc_max || bc_steps) {
                if (!bc_min || !bc_max || bc_steps == 0)
                    throw mvh::DomainError("--eps-min, --eps-max and --eps-steps go together");
                for (std::size_t i = 0; i < bc_steps; ++i)
                    grid.push_back(bc_steps == 1 ? *bc_min
                                                 : *bc_min + (*bc_max - *bc_min) * static_cast<double>(i) /
                                                                 static_cast<double>(bc_steps - 1));
            }
            const auto rows = mvh::barcode(bc_cloud.load(), grid, cfg);
            for (const auto &r : rows)
                if (!r.error.empty())
                    warn("epsilon " + mvh::io::format_double(r.epsilon) + ": " + r.error);
            Output out(bc_out);
            mvh::write_barcode_csv(out.stream(), rows, bc_lmax);
        } else if (*oc) {
            const auto g = load_graph(oc_graph);
            const auto p = mvh::oracle_betti(g, oc_lmax, mvh::parse_field(oc_field), oc_cap);
            Output out(oc_out);
            write_betti(out.stream(), p, oc_format, oc_eps, nullptr);
        } else if (*st) {
            const auto g = load_graph(st_graph);
            auto in = mvh::io::open_in(st_cover);
            const auto cover = mvh::io::read_cover(in);
            const auto cc = mvh::remainder_subcomplex(g, cover, st_lmax + 1);
            const auto stats = mvh::nerve_stats(cc, static_cast<std::size_t>(st_lmax), {st_rem});
            Output out(st_out);
            out.stream() << mvh::io::nerve_to_json(stats).dump(2) << '\n';
        }
    } catch (const mvh::Error &e) {
        report_error(e.kind(), e.what());
        return exit_code_for(e);
    } catch (const std::exception &e) {
        report_error("internal", e.what());
        return exit_internal;
    }
    return exit_ok;
}
