#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "liftlab/builtins.hpp"
#include "liftlab/certificates.hpp"
#include "liftlab/ensembles.hpp"
#include "liftlab/exact.hpp"
#include "liftlab/graph_io.hpp"
#include "liftlab/harness.hpp"
#include "liftlab/local_stats.hpp"
#include "liftlab/path_stats.hpp"
#include "liftlab/spectral.hpp"

namespace {

using nlohmann::json;
using namespace liftlab;

struct GlobalOpts {
    std::uint64_t seed = 1;
    int threads = 1;
    std::string out;
    std::string format = "json";
};

void emit(const GlobalOpts& opts, const std::string& text) {
    if (opts.out.empty()) {
        std::cout << text << "\n";
    } else {
        write_text_file(opts.out, text);
    }
}

Multigraph load_base(const std::string& spec) {
    try {
        return resolve_builtin(spec);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::UnknownBuiltin) throw;
        return read_multigraph(spec);
    }
}

SimpleGraph load_graph(const std::string& path) { return read_simple_graph(path); }

json certificate_to_json(const CertificateResult& r) {
    json j{{"quantity", quantity_name(r.quantity)},
           {"bound", r.bound},
           {"direction", r.direction == BoundDirection::Upper ? "upper" : "lower"},
           {"d", r.d},
           {"spectral_input", r.spectral_input}};
    if (r.t > 0) j["t"] = r.t;
    if (r.epsilon > 0) j["eps"] = r.epsilon;
    if (!r.correction.empty()) j["correction"] = r.correction;
    return j;
}

json exact_to_json(const ExactResult& r) {
    json j{{"quantity", quantity_name(r.quantity)}, {"value", r.value.str()},
           {"value_float", r.value.to_double()},   {"n", r.n}};
    if (!r.labels.empty()) j["labels"] = r.labels;
    if (!r.vertex_set.empty()) j["vertex_set"] = r.vertex_set;
    return j;
}

json report_to_json(const FeasibilityReport& report) {
    json checks = json::array();
    for (const auto& c : report.constraints) {
        checks.push_back({{"name", c.name},
                          {"pass", c.pass},
                          {"residual_past_window", c.residual},
                          {"window", c.tolerance}});
    }
    return json{{"feasible", report.feasible},
                {"slack_abs", report.slack_abs},
                {"slack_c0", report.slack_c0},
                {"constraints", checks}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"workbench for random regular graphs, lifts, spectral certificates and "
                 "feasibility checks"};
    app.require_subcommand(1);

    GlobalOpts opts;
    app.add_option("--seed", opts.seed, "random seed");
    app.add_option("--threads", opts.threads, "worker threads for trial loops");
    app.add_option("--out", opts.out, "output file (stdout if omitted)");
    app.add_option("--format", opts.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    int exit_code = 0;

    // gen regular | bipartite | lift
    auto* gen = app.add_subcommand("gen", "sample graphs");
    gen->require_subcommand(1);
    {
        auto* reg = gen->add_subcommand("regular", "uniform simple d-regular graph");
        auto n = std::make_shared<int>(100);
        auto d = std::make_shared<int>(3);
        reg->add_option("--n", *n, "vertices")->required();
        reg->add_option("--d", *d, "degree")->required();
        reg->callback([&opts, n, d]() {
            emit(opts, simple_graph_to_json(sample_regular(*n, *d, opts.seed)));
        });

        auto* bi = gen->add_subcommand("bipartite", "uniform simple bipartite d-regular graph");
        auto bn = std::make_shared<int>(100);
        auto bd = std::make_shared<int>(3);
        bi->add_option("--n", *bn, "vertices (even)")->required();
        bi->add_option("--d", *bd, "degree")->required();
        bi->callback([&opts, bn, bd]() {
            auto [g, layout] = sample_bipartite_regular(*bn, *bd, opts.seed);
            emit(opts, simple_graph_to_json(g));
        });

        auto* lift = gen->add_subcommand("lift", "random lift of a base multigraph");
        auto base = std::make_shared<std::string>("fig1_d3");
        auto m = std::make_shared<int>(50);
        lift->add_option("--base", *base, "builtin name or JSON file")->required();
        lift->add_option("--m", *m, "fiber size")->required();
        lift->callback([&opts, base, m]() {
            LiftedGraph lg = random_lift(load_base(*base), *m, opts.seed);
            json j = json::parse(simple_graph_to_json(lg.graph));
            j["sigma"] = lg.sigma;
            j["m"] = lg.m;
            emit(opts, j.dump());
        });
    }

    // noise
    {
        auto* noise = app.add_subcommand("noise", "resample edges of a d-regular graph");
        auto graph_path = std::make_shared<std::string>();
        auto base = std::make_shared<std::string>();
        auto m = std::make_shared<int>(0);
        auto eps = std::make_shared<double>(0.01);
        auto mode = std::make_shared<std::string>("rand");
        noise->add_option("--graph", *graph_path, "input simple graph JSON (omit to lift --base)");
        noise->add_option("--base", *base, "base multigraph (required for respectful modes)");
        noise->add_option("--m", *m, "fiber size when lifting --base");
        noise->add_option("--eps", *eps, "noise fraction")->required();
        noise->add_option("--mode", *mode, "rand|rand_bi|respectful_rand|respectful_rand_bi");
        noise->callback([&opts, graph_path, base, m, eps, mode]() {
            NoiseSpec spec;
            spec.epsilon = *eps;
            if (*mode == "rand") spec.mode = NoiseMode::Rand;
            else if (*mode == "rand_bi") spec.mode = NoiseMode::RandBi;
            else if (*mode == "respectful_rand") spec.mode = NoiseMode::RespectfulRand;
            else if (*mode == "respectful_rand_bi") spec.mode = NoiseMode::RespectfulRandBi;
            else fail(ErrorCode::InvalidArgument, "unknown noise mode " + *mode);

            std::optional<LiftedGraph> lift;
            SimpleGraph g;
            if (!graph_path->empty()) {
                g = load_graph(*graph_path);
            } else {
                if (base->empty() || *m <= 0) {
                    fail(ErrorCode::InvalidArgument, "need --graph or (--base and --m)");
                }
                lift = random_lift(load_base(*base), *m, opts.seed);
                g = lift->graph;
            }
            auto res = apply_noise(g, spec, opts.seed + 1, lift ? &*lift : nullptr);
            json j = json::parse(simple_graph_to_json(res.graph));
            j["meta"] = {{"edges_deleted", res.edges_deleted},
                         {"edges_added", res.edges_added},
                         {"completion_restarts", res.completion_restarts},
                         {"repair_switches", res.repair_switches},
                         {"seed", opts.seed}};
            emit(opts, j.dump());
        });
    }

    // spectrum
    {
        auto* spectrum = app.add_subcommand("spectrum", "eigenvalues, radius, Ramanujan margin");
        auto graph_path = std::make_shared<std::string>();
        auto base = std::make_shared<std::string>();
        auto bipartite = std::make_shared<bool>(false);
        spectrum->add_option("--graph", *graph_path, "simple graph JSON file");
        spectrum->add_option("--base", *base, "builtin or multigraph JSON file");
        spectrum->add_flag("--bipartite", *bipartite, "deflate -d as well");
        spectrum->callback([&opts, graph_path, base, bipartite]() {
            Spectrum spec;
            RamanujanResult ram;
            if (!base->empty()) {
                Multigraph h = load_base(*base);
                spec = graph_spectrum(h, *bipartite);
                ram = is_ramanujan(h, *bipartite);
            } else if (!graph_path->empty()) {
                SimpleGraph g = load_graph(*graph_path);
                spec = graph_spectrum(g, *bipartite);
                ram = is_ramanujan(g, *bipartite);
            } else {
                fail(ErrorCode::InvalidArgument, "need --graph or --base");
            }
            json j{{"values", spec.values},
                   {"rho", spec.extreme_nontrivial()},
                   {"ramanujan", ram.ramanujan},
                   {"margin", ram.margin}};
            emit(opts, j.dump(2));
        });
    }

    // certify
    {
        auto* certify = app.add_subcommand("certify", "polynomial-time certificate bounds");
        auto graph_path = std::make_shared<std::string>();
        auto quantity = std::make_shared<std::string>();
        auto t = std::make_shared<int>(2);
        auto eps = std::make_shared<double>(0.01);
        certify->add_option("--graph", *graph_path, "simple graph JSON file")->required();
        certify->add_option("--quantity", *quantity,
                            "max_t_cut|chromatic|independence|domination|vertex_expansion|"
                            "edge_expansion")
            ->required();
        certify->add_option("--t", *t, "cut arity");
        certify->add_option("--eps", *eps, "small-set fraction");
        certify->callback([&opts, graph_path, quantity, t, eps]() {
            SimpleGraph g = load_graph(*graph_path);
            CertificateResult r;
            if (*quantity == "max_t_cut") r = hoffman_max_t_cut(g, *t);
            else if (*quantity == "chromatic") r = hoffman_chromatic(g);
            else if (*quantity == "independence") r = hoffman_independence(g);
            else if (*quantity == "domination") r = trivial_domination(g.regular_degree().value());
            else if (*quantity == "vertex_expansion")
                r = kahale_bound(g, *eps, ExpansionMode::Vertex);
            else if (*quantity == "edge_expansion") r = kahale_bound(g, *eps, ExpansionMode::Edge);
            else fail(ErrorCode::InvalidArgument, "unknown quantity " + *quantity);
            emit(opts, certificate_to_json(r).dump(2));
        });
    }

    // exact
    {
        auto* exact = app.add_subcommand("exact", "exact optimizers with witnesses");
        auto graph_path = std::make_shared<std::string>();
        auto base = std::make_shared<std::string>();
        auto quantity = std::make_shared<std::string>();
        auto t = std::make_shared<int>(2);
        auto eps = std::make_shared<double>(0.25);
        auto mode = std::make_shared<std::string>("vertex");
        exact->add_option("--graph", *graph_path, "simple graph JSON file");
        exact->add_option("--base", *base, "builtin or multigraph JSON file");
        exact->add_option("--quantity", *quantity,
                          "max_t_cut|chromatic|independence|modified_independence|domination|"
                          "expansion")
            ->required();
        exact->add_option("--t", *t, "cut arity");
        exact->add_option("--eps", *eps, "small-set fraction");
        exact->add_option("--mode", *mode, "vertex|edge");
        exact->callback([&opts, graph_path, base, quantity, t, eps, mode]() {
            Multigraph g = base->empty() ? load_graph(*graph_path).as_multigraph()
                                         : load_base(*base);
            ExactResult r;
            if (*quantity == "max_t_cut") r = max_t_cut_exact(g, *t);
            else if (*quantity == "chromatic") r = chromatic_exact(g);
            else if (*quantity == "independence") r = independence_exact(g);
            else if (*quantity == "modified_independence") r = modified_independence(g);
            else if (*quantity == "domination") r = domination_exact(g);
            else if (*quantity == "expansion")
                r = small_set_expansion_exact(
                    g, *eps, *mode == "edge" ? ExpansionMode::Edge : ExpansionMode::Vertex);
            else fail(ErrorCode::InvalidArgument, "unknown quantity " + *quantity);
            emit(opts, exact_to_json(r).dump(2));
        });
    }

    // sdp path-stats | sym-path-stats | lost2
    auto* sdp = app.add_subcommand("sdp", "feasibility machinery");
    sdp->require_subcommand(1);
    {
        auto* ps = sdp->add_subcommand("path-stats", "check or construct pseudo-partitions");
        auto graph_path = std::make_shared<std::string>();
        auto base = std::make_shared<std::string>();
        auto D = std::make_shared<int>(3);
        auto delta = std::make_shared<double>(0.1);
        auto witness = std::make_shared<std::string>("null");
        ps->add_option("--graph", *graph_path, "input simple graph JSON")->required();
        ps->add_option("--base", *base, "instance base (builtin or file)")->required();
        ps->add_option("--D", *D, "level");
        ps->add_option("--delta", *delta, "error tolerance");
        ps->add_option("--witness", *witness, "null|certificate");
        ps->callback([&opts, graph_path, base, D, delta, witness]() -> void {
            SimpleGraph g = load_graph(*graph_path);
            auto inst = PathStatsInstance::from_base(load_base(*base), *D, *delta);
            json j{{"kind", "path_stats"}, {"D", *D}, {"delta", *delta}, {"base", *base}};
            if (*witness == "certificate") {
                auto cert = infeasibility_certificate(inst);
                if (cert) {
                    j["certificate"] = {{"S", cert->S},
                                        {"delta_star", cert->delta_star},
                                        {"mean_f_nontrivial", cert->mean_f_nontrivial}};
                } else {
                    j["certificate"] = "none";
                }
                emit(opts, j.dump(2));
                return;
            }
            NullWitnessLog log;
            Eigen::MatrixXd p = null_witness(g, inst, nullptr, &log);
            auto report = path_stats_check(g, p, inst);
            j["witness_log"] = {{"kernel_degree", log.kernel_degree},
                                {"kernel_verified", log.kernel_verified},
                                {"aggregate_residual", log.worst_aggregate_residual},
                                {"clamped_eigenvalues", log.clamped_eigenvalues}};
            j["report"] = report_to_json(report);
            emit(opts, j.dump(2));
        });

        auto* sps = sdp->add_subcommand("sym-path-stats", "symmetric variant, parametrized by "
                                                          "lambda");
        auto graph_path2 = std::make_shared<std::string>();
        auto lambda = std::make_shared<double>(0.0);
        auto k = std::make_shared<int>(12);
        auto D2 = std::make_shared<int>(3);
        auto delta2 = std::make_shared<double>(0.1);
        auto bip = std::make_shared<bool>(false);
        sps->add_option("--graph", *graph_path2, "input simple graph JSON")->required();
        sps->add_option("--lambda", *lambda, "replicated nontrivial eigenvalue")->required();
        sps->add_option("--k", *k, "label count");
        sps->add_option("--D", *D2, "level");
        sps->add_option("--delta", *delta2, "error tolerance");
        sps->add_flag("--bipartite", *bip, "bipartite variant");
        sps->callback([&opts, graph_path2, lambda, k, D2, delta2, bip]() {
            SimpleGraph g = load_graph(*graph_path2);
            auto decision = symmetric_path_stats(g, *lambda, *k, *D2, *delta2, *bip);
            json j{{"kind", "symmetric_path_stats"},
                   {"lambda", *lambda},
                   {"feasible", decision.feasible}};
            if (decision.certificate) {
                j["certificate"] = {{"S", decision.certificate->S},
                                    {"delta_star", decision.certificate->delta_star}};
            } else {
                j["report"] = report_to_json(decision.report);
            }
            emit(opts, j.dump(2));
        });

        auto* lost = sdp->add_subcommand("lost2", "degree-(2,D) local statistics");
        auto graph_path3 = std::make_shared<std::string>();
        auto base3 = std::make_shared<std::string>();
        auto D3 = std::make_shared<int>(3);
        auto delta3 = std::make_shared<double>(0.1);
        auto witness3 = std::make_shared<std::string>("lower");
        auto m3 = std::make_shared<int>(50);
        lost->add_option("--graph", *graph_path3, "input graph (lower witness mode)");
        lost->add_option("--base", *base3, "base multigraph")->required();
        lost->add_option("--D", *D3, "level");
        lost->add_option("--delta", *delta3, "error tolerance");
        lost->add_option("--witness", *witness3, "lower|planted");
        lost->add_option("--m", *m3, "fiber size (planted mode)");
        lost->callback([&opts, graph_path3, base3, D3, delta3, witness3, m3]() {
            Multigraph base_mg = load_base(*base3);
            json j{{"kind", "local_stats"}, {"D", *D3}, {"delta", *delta3}, {"base", *base3}};
            if (*witness3 == "planted") {
                LiftedGraph lift = random_lift(base_mg, *m3, opts.seed);
                auto cons = lost2_build_constraints(lift.graph, base_mg, *D3, *delta3);
                auto pm = planted_pseudomoment(lift);
                j["report"] = report_to_json(lost2_check(*pm, cons));
                auto reduced = lost2_reduce(*pm);
                auto inst =
                    PathStatsInstance::from_base(base_mg, *D3, (base_mg.n() + 1) * *delta3);
                j["reduced_report"] = report_to_json(path_stats_check(lift.graph, reduced, inst));
            } else {
                SimpleGraph g = load_graph(*graph_path3);
                auto cons = lost2_build_constraints(g, base_mg, *D3, *delta3);
                auto pm = lost2_lower_witness(g, base_mg, *D3, *delta3);
                j["report"] = report_to_json(lost2_check(*pm, cons));
            }
            emit(opts, j.dump(2));
        });
    }

    // detect
    {
        auto* detect = app.add_subcommand("detect", "hypothesis-testing error estimates");
        auto base = std::make_shared<std::string>("fig1_d3");
        auto n = std::make_shared<int>(1200);
        auto eps = std::make_shared<double>(0.0);
        auto trials = std::make_shared<int>(40);
        auto lo = std::make_shared<double>(2.78);
        auto hi = std::make_shared<double>(3.05);
        auto steps = std::make_shared<int>(10);
        detect->add_option("--base", *base, "planted base graph");
        detect->add_option("--n", *n, "graph size");
        detect->add_option("--eps", *eps, "noise applied to the planted side");
        detect->add_option("--trials", *trials, "trial pairs");
        detect->add_option("--threshold-lo", *lo, "threshold grid start");
        detect->add_option("--threshold-hi", *hi, "threshold grid end");
        detect->add_option("--threshold-steps", *steps, "threshold grid points");
        detect->callback([&opts, base, n, eps, trials, lo, hi, steps]() {
            ExperimentConfig cfg;
            cfg.kind = "detect";
            cfg.base = *base;
            cfg.n = *n;
            cfg.eps = *eps;
            cfg.trials = *trials;
            cfg.threads = opts.threads;
            cfg.seed = opts.seed;
            cfg.threshold_lo = *lo;
            cfg.threshold_hi = *hi;
            cfg.threshold_steps = *steps;
            auto art = run(cfg);
            emit(opts, opts.format == "csv" ? art.csv : art.json);
        });
    }

    // repro
    auto* repro = app.add_subcommand("repro", "reproduction suites");
    repro->require_subcommand(1);
    {
        auto* figures = repro->add_subcommand("figures", "committed figure-graph ground truth");
        figures->callback([&opts, &exit_code]() {
            auto checks = repro_figures();
            emit(opts, figure_checks_to_json(checks));
            if (!all_pass(checks)) exit_code = 1;
        });

        auto* table = repro->add_subcommand("table1", "summary-table rows");
        auto row = std::make_shared<std::string>("max_2_cut_d3");
        auto n = std::make_shared<int>(2000);
        auto trials = std::make_shared<int>(20);
        table->add_option("--row", *row, "row name (or 'all')");
        table->add_option("--n", *n, "sample size for the certificate column");
        table->add_option("--trials", *trials, "seeds for the certificate column");
        table->callback([&opts, row, n, trials]() {
            if (*row == "all") {
                json all = json::array();
                for (const auto& name : table1_row_names()) {
                    all.push_back(
                        json::parse(table_row_to_json(repro_table1(name, *n, *trials, opts.seed))));
                }
                emit(opts, all.dump(2));
            } else {
                emit(opts, table_row_to_json(repro_table1(*row, *n, *trials, opts.seed)));
            }
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
