#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "liftlab/exact.hpp"
#include "liftlab/rational.hpp"

namespace liftlab {

struct FigureCheck {
    std::string name;
    int d = 0;
    bool regular = false;
    bool ramanujan = false;
    double extreme = 0.0;
    double margin = 0.0;
    std::string quantity;
    std::string value;    // exact rational, as text
    std::string expected; // exact rational, as text
    bool pass = false;
};

/// Regularity, Ramanujan margin and the captioned combinatorial value of
/// every committed figure graph, PASS/FAIL per row.
std::vector<FigureCheck> repro_figures();
std::string figure_checks_to_json(const std::vector<FigureCheck>& checks);
bool all_pass(const std::vector<FigureCheck>& checks);

struct TableRow {
    std::string row;
    int d = 0;
    int n = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    double certificate_mean = 0.0; // sampled certificate column
    double certificate_sd = 0.0;
    std::string certificate_formula;
    std::string lower_bound;      // witnessing construction value (exact) or cited constant
    bool lower_bound_cited = false; // true when reported from literature, not constructed
    std::string true_value;         // literature numbers, report-only
};

/// Rows: max_2_cut_d3, max_2_cut_d4, independence_d3, independence_d4,
/// chromatic_d7, domination_d<d>, vertex_expansion_d<d>, edge_expansion_d<d>.
TableRow repro_table1(const std::string& row, int n, int trials, std::uint64_t seed);
std::string table_row_to_json(const TableRow& row);
std::vector<std::string> table1_row_names();

struct ExperimentConfig {
    std::string kind; // detect | sdp_sweep | noise_sweep
    std::string base = "fig1_d3";
    int n = 1200;
    int m = 100;
    int D = 3;
    double eps = 0.0;
    double delta = 0.1;
    int trials = 20;
    int threads = 1;
    std::uint64_t seed = 1;
    double threshold_lo = 2.78;
    double threshold_hi = 3.05;
    int threshold_steps = 10;
    std::vector<double> sweep; // delta or eps grid, kind-dependent
};

struct ExperimentArtifacts {
    std::string json;
    std::string csv;
    bool all_pass = true;
};

/// Validates the config, dispatches to the modules, and renders the outputs;
/// every stochastic number carries (seed, trials, tolerance) metadata.
ExperimentArtifacts run(const ExperimentConfig& config);

} // namespace liftlab
