#include "liftlab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "liftlab/builtins.hpp"
#include "liftlab/certificates.hpp"
#include "liftlab/ensembles.hpp"
#include "liftlab/path_stats.hpp"
#include "liftlab/spectral.hpp"

namespace liftlab {

using nlohmann::json;

namespace {

FigureCheck make_check(const std::string& name, const std::string& quantity, Rational value,
                       Rational expected, const Multigraph& g) {
    FigureCheck c;
    c.name = name;
    c.d = g.regular_degree().value_or(-1);
    c.regular = g.regular_degree().has_value();
    auto ram = is_ramanujan(g);
    c.ramanujan = ram.ramanujan;
    c.extreme = ram.extreme;
    c.margin = ram.margin;
    c.quantity = quantity;
    c.value = value.str();
    c.expected = expected.str();
    c.pass = c.regular && value == expected;
    return c;
}

} // namespace

std::vector<FigureCheck> repro_figures() {
    std::vector<FigureCheck> out;
    {
        Multigraph g = resolve_builtin("fig1_d3");
        out.push_back(make_check("fig1_d3", "max_2_cut", max_t_cut_exact(g, 2).value,
                                 Rational(17, 18), g));
        out.push_back(make_check("fig1_d3", "modified_independence", modified_independence(g).value,
                                 Rational(11, 24), g));
    }
    {
        Multigraph g = resolve_builtin("fig2_d4");
        out.push_back(
            make_check("fig2_d4", "max_2_cut", max_t_cut_exact(g, 2).value, Rational(7, 8), g));
    }
    {
        Multigraph g = resolve_builtin("fig3_d4");
        out.push_back(make_check("fig3_d4", "independence", independence_exact(g).value,
                                 Rational(3, 7), g));
    }
    {
        Multigraph g = resolve_builtin("fig4_d7");
        out.push_back(
            make_check("fig4_d7", "chromatic", chromatic_exact(g).value, Rational(3), g));
    }
    return out;
}

std::string figure_checks_to_json(const std::vector<FigureCheck>& checks) {
    json rows = json::array();
    for (const auto& c : checks) {
        rows.push_back({{"name", c.name},
                        {"d", c.d},
                        {"regular", c.regular},
                        {"ramanujan", c.ramanujan},
                        {"extreme", c.extreme},
                        {"margin", c.margin},
                        {"quantity", c.quantity},
                        {"value", c.value},
                        {"expected", c.expected},
                        {"pass", c.pass}});
    }
    return rows.dump(2);
}

bool all_pass(const std::vector<FigureCheck>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const FigureCheck& c) { return c.pass; });
}

std::vector<std::string> table1_row_names() {
    return {"max_2_cut_d3",  "max_2_cut_d4",       "independence_d3",    "independence_d4",
            "chromatic_d7",  "domination_d3",      "vertex_expansion_d3", "edge_expansion_d5"};
}

namespace {

struct SampledCertificate {
    double mean = 0.0;
    double sd = 0.0;
};

SampledCertificate sample_certificate(int n, int d, int trials, std::uint64_t seed,
                                      const std::function<double(const SimpleGraph&)>& value) {
    std::vector<double> vals(trials);
    for (int t = 0; t < trials; ++t) {
        Rng rng = Rng::derived(seed, t);
        SimpleGraph g = sample_regular(n, d, rng.next_u64());
        vals[t] = value(g);
    }
    SampledCertificate out;
    for (double v : vals) out.mean += v;
    out.mean /= trials;
    for (double v : vals) out.sd += (v - out.mean) * (v - out.mean);
    out.sd = trials > 1 ? std::sqrt(out.sd / (trials - 1)) : 0.0;
    return out;
}

} // namespace

TableRow repro_table1(const std::string& row, int n, int trials, std::uint64_t seed) {
    TableRow out;
    out.row = row;
    out.n = n;
    out.trials = trials;
    out.seed = seed;

    auto hoffman_cut_value = [](const SimpleGraph& g) { return hoffman_max_t_cut(g, 2).bound; };
    auto hoffman_ind_value = [](const SimpleGraph& g) { return hoffman_independence(g).bound; };
    auto hoffman_chrom_value = [](const SimpleGraph& g) { return hoffman_chromatic(g).bound; };

    if (row == "max_2_cut_d3" || row == "max_2_cut_d4") {
        out.d = row.back() - '0';
        auto cert = sample_certificate(n, out.d, trials, seed, hoffman_cut_value);
        out.certificate_mean = cert.mean;
        out.certificate_sd = cert.sd;
        out.certificate_formula = "(t-1)/t (1 + |lambda_n|/d), t = 2";
        Multigraph base = resolve_builtin(out.d == 3 ? "fig1_d3" : "fig2_d4");
        out.lower_bound = max_t_cut_exact(base, 2).value.str();
        out.true_value = out.d == 3 ? "[0.906, 0.925]" : "[0.833, 0.869]";
    } else if (row == "independence_d3" || row == "independence_d4") {
        out.d = row.back() - '0';
        auto cert = sample_certificate(n, out.d, trials, seed, hoffman_ind_value);
        out.certificate_mean = cert.mean;
        out.certificate_sd = cert.sd;
        out.certificate_formula = "|lambda_n| / (d + |lambda_n|)";
        if (out.d == 3) {
            out.lower_bound = modified_independence(resolve_builtin("fig1_d3")).value.str();
            out.true_value = "[0.445, 0.451]";
        } else {
            out.lower_bound = independence_exact(resolve_builtin("fig3_d4")).value.str();
            out.true_value = "[0.404, 0.412]";
        }
    } else if (row == "chromatic_d7") {
        out.d = 7;
        auto cert = sample_certificate(n, 7, trials, seed, hoffman_chrom_value);
        out.certificate_mean = cert.mean;
        out.certificate_sd = cert.sd;
        out.certificate_formula = "1 + ceil(d / |lambda_n|)";
        out.lower_bound = chromatic_exact(resolve_builtin("fig4_d7")).value.str();
        out.true_value = "{4, 5, 6}";
    } else if (row.rfind("domination_d", 0) == 0) {
        out.d = std::stoi(row.substr(12));
        out.certificate_mean = trivial_domination(out.d).bound;
        out.certificate_sd = 0.0;
        out.certificate_formula = "1 / (d + 1), graph-independent";
        Multigraph base = complete_regular(out.d);
        out.lower_bound = domination_exact(base).value.str();
        out.true_value = "Theta(log d / d)";
    } else if (row.rfind("vertex_expansion_d", 0) == 0) {
        out.d = std::stoi(row.substr(18));
        auto value = [](const SimpleGraph& g) {
            return kahale_bound(g, 0.01, ExpansionMode::Vertex).bound;
        };
        auto cert = sample_certificate(n, out.d, trials, seed, value);
        out.certificate_mean = cert.mean;
        out.certificate_sd = cert.sd;
        out.certificate_formula = "d/2 (1 - sqrt(1 - 4(d-1)/lt^2)), leading order";
        out.lower_bound = "d/2 = " + std::to_string(out.d / 2.0);
        out.lower_bound_cited = true; // matching extremal family cited, not constructed
        out.true_value = "d - 1 (small sets)";
    } else if (row.rfind("edge_expansion_d", 0) == 0) {
        out.d = std::stoi(row.substr(16));
        auto value = [](const SimpleGraph& g) {
            return kahale_bound(g, 0.01, ExpansionMode::Edge).bound;
        };
        auto cert = sample_certificate(n, out.d, trials, seed, value);
        out.certificate_mean = cert.mean;
        out.certificate_sd = cert.sd;
        out.certificate_formula = "d - (1 + lt/2 + sqrt(lt^2/4 - (d-1))), leading order";
        double bound = out.d - 1 - std::sqrt(out.d - 1.0);
        out.lower_bound = "d - 1 - sqrt(d-1) = " + std::to_string(bound);
        out.lower_bound_cited = true;
        out.true_value = "d - 2 (small sets)";
    } else {
        fail(ErrorCode::UnknownRow, "no table row named " + row);
    }
    return out;
}

std::string table_row_to_json(const TableRow& row) {
    json j{{"row", row.row},
           {"d", row.d},
           {"n", row.n},
           {"trials", row.trials},
           {"seed", row.seed},
           {"certificate_mean", row.certificate_mean},
           {"certificate_sd", row.certificate_sd},
           {"certificate_formula", row.certificate_formula},
           {"lower_bound", row.lower_bound},
           {"lower_bound_cited", row.lower_bound_cited},
           {"true_value", row.true_value}};
    return j.dump(2);
}

namespace {

std::string format_double(double v) {
    std::ostringstream ss;
    ss.precision(10);
    ss << v;
    return ss.str();
}

ExperimentArtifacts run_detect(const ExperimentConfig& cfg) {
    Multigraph base = resolve_builtin(cfg.base);
    int k = base.n();
    int d = base.regular_degree().value();
    int m = cfg.n / k;
    if (base.has_loops() && m % 2 != 0) --m;
    if (m < 1) fail(ErrorCode::InvalidArgument, "n too small for the base");

    GraphSampler null_sampler = [n = k * m, d](Rng& rng) {
        return sample_regular(n, d, rng.next_u64());
    };
    double eps = cfg.eps;
    GraphSampler planted_sampler = [base, m, eps](Rng& rng) {
        LiftedGraph lift = random_lift(base, m, rng.next_u64());
        if (eps <= 0.0) return lift.graph;
        NoiseSpec spec;
        spec.epsilon = eps;
        spec.mode = NoiseMode::Rand;
        return apply_noise(lift.graph, spec, rng.next_u64(), &lift).graph;
    };
    GraphStatistic stat = spectral_radius_statistic();

    std::ostringstream csv;
    csv << "threshold,type_i,type_ii\n";
    json results = json::array();
    for (int i = 0; i < cfg.threshold_steps; ++i) {
        double theta = cfg.threshold_lo +
                       (cfg.threshold_hi - cfg.threshold_lo) * i /
                           std::max(1, cfg.threshold_steps - 1);
        auto res = detect_experiment(null_sampler, planted_sampler, stat, theta, cfg.trials,
                                     cfg.seed, cfg.threads);
        csv << format_double(theta) << "," << format_double(res.type_i) << ","
            << format_double(res.type_ii) << "\n";
        results.push_back({{"threshold", theta}, {"type_i", res.type_i}, {"type_ii", res.type_ii}});
    }
    ExperimentArtifacts art;
    art.csv = csv.str();
    art.json = json{{"kind", "detect"},
                    {"base", cfg.base},
                    {"n", k * m},
                    {"eps", cfg.eps},
                    {"trials", cfg.trials},
                    {"seed", cfg.seed},
                    {"statistic", "spectral_radius"},
                    {"results", results}}
                   .dump(2);
    return art;
}

ExperimentArtifacts run_sdp_sweep(const ExperimentConfig& cfg) {
    Multigraph base = resolve_builtin(cfg.base);
    int d = base.regular_degree().value();
    std::vector<double> deltas = cfg.sweep;
    if (deltas.empty()) deltas = {0.02, 0.05, 0.1, 0.2};

    json per_delta = json::array();
    bool all_ok = true;
    for (double delta : deltas) {
        int pass = 0;
        json seeds = json::array();
        for (int t = 0; t < cfg.trials; ++t) {
            Rng rng = Rng::derived(cfg.seed, t);
            SimpleGraph g = sample_regular(cfg.n, d, rng.next_u64());
            auto inst = PathStatsInstance::from_base(base, cfg.D, delta);
            NullWitnessLog log;
            bool ok = false;
            try {
                Eigen::MatrixXd p = null_witness(g, inst, nullptr, &log);
                ok = path_stats_check(g, p, inst).feasible;
            } catch (const Error&) {
                ok = false;
            }
            pass += ok ? 1 : 0;
            seeds.push_back({{"seed_index", t},
                             {"feasible", ok},
                             {"kernel_degree", log.kernel_degree},
                             {"kernel_residual", log.worst_aggregate_residual}});
        }
        per_delta.push_back({{"delta", delta}, {"pass", pass}, {"trials", cfg.trials},
                             {"seeds", seeds}});
        if (pass == 0) all_ok = false;
    }
    ExperimentArtifacts art;
    art.all_pass = all_ok;
    std::ostringstream csv;
    csv << "delta,pass,trials\n";
    for (const auto& row : per_delta) {
        csv << format_double(row["delta"].get<double>()) << "," << row["pass"].get<int>() << ","
            << cfg.trials << "\n";
    }
    art.csv = csv.str();
    art.json = json{{"kind", "sdp_sweep"},
                    {"base", cfg.base},
                    {"n", cfg.n},
                    {"D", cfg.D},
                    {"seed", cfg.seed},
                    {"per_delta", per_delta}}
                   .dump(2);
    return art;
}

ExperimentArtifacts run_noise_sweep(const ExperimentConfig& cfg) {
    Multigraph base = resolve_builtin(cfg.base);
    int k = base.n();
    int m = cfg.n / k;
    if (base.has_loops() && m % 2 != 0) --m;
    std::vector<double> eps_grid = cfg.sweep;
    if (eps_grid.empty()) eps_grid = {0.0, 0.005, 0.01, 0.02};

    auto inst = PathStatsInstance::from_base(base, cfg.D, cfg.delta);
    std::ostringstream csv;
    csv << "eps,s,residual,residual_per_eps_n\n";
    json rows = json::array();
    for (double eps : eps_grid) {
        for (int t = 0; t < cfg.trials; ++t) {
            Rng rng = Rng::derived(cfg.seed, static_cast<std::uint64_t>(t) * 101 +
                                                 static_cast<std::uint64_t>(eps * 1e6));
            LiftedGraph lift = random_lift(base, m, rng.next_u64());
            SimpleGraph noisy = lift.graph;
            if (eps > 0.0) {
                NoiseSpec spec;
                spec.epsilon = eps;
                spec.mode = NoiseMode::Rand;
                noisy = apply_noise(lift.graph, spec, rng.next_u64(), &lift).graph;
            }
            Eigen::MatrixXd p = planted_witness(lift);
            auto moments = nb_inner_products(noisy, p, cfg.D);
            int n = noisy.n();
            for (int s = 0; s <= cfg.D; ++s) {
                double residual = std::abs(moments[s] - inst.moment_target(s) * n);
                double slope = eps > 0.0 ? residual / (eps * n) : 0.0;
                csv << format_double(eps) << "," << s << "," << format_double(residual) << ","
                    << format_double(slope) << "\n";
                rows.push_back({{"eps", eps},
                                {"seed_index", t},
                                {"s", s},
                                {"residual", residual},
                                {"residual_per_eps_n", slope}});
            }
        }
    }
    ExperimentArtifacts art;
    art.csv = csv.str();
    art.json = json{{"kind", "noise_sweep"},
                    {"base", cfg.base},
                    {"n", k * m},
                    {"D", cfg.D},
                    {"delta", cfg.delta},
                    {"trials", cfg.trials},
                    {"seed", cfg.seed},
                    {"rows", rows}}
                   .dump(2);
    return art;
}

} // namespace

ExperimentArtifacts run(const ExperimentConfig& config) {
    if (config.trials < 1) fail(ErrorCode::InvalidArgument, "trials must be >= 1");
    if (config.kind == "detect") return run_detect(config);
    if (config.kind == "sdp_sweep") return run_sdp_sweep(config);
    if (config.kind == "noise_sweep") return run_noise_sweep(config);
    fail(ErrorCode::InvalidArgument, "unknown experiment kind " + config.kind);
}

} // namespace liftlab
