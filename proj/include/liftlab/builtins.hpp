#pragma once

#include <string>
#include <vector>

#include "liftlab/graphs.hpp"

namespace liftlab {

/// Canonical base-graph registry. Figure matrices live as committed data
/// files; parametric families are generated:
///   fig1_d3, fig2_d4, fig3_d4, fig4_d7   (data files)
///   complete_<d>                          K_{d+1}, d <= 16
///   hkd(<k>,<d>)                          (d/(k-1)) (J - I), needs (k-1) | d
Multigraph resolve_builtin(const std::string& name);

/// Names of the four committed figure graphs.
std::vector<std::string> figure_builtin_names();

/// Path of a committed builtin's data file.
std::string builtin_data_path(const std::string& name);

/// K_{d+1}: complete graph, all nontrivial eigenvalues -1.
Multigraph complete_regular(int d);

/// (d/(k-1)) (J_k - I_k): all nontrivial eigenvalues -d/(k-1); Ramanujan
/// exactly when k >= d / (2 sqrt(d-1)) + 1.
Multigraph hkd_graph(int k, int d);

} // namespace liftlab
