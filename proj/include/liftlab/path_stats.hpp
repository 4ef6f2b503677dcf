#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "liftlab/ensembles.hpp"
#include "liftlab/graphs.hpp"
#include "liftlab/spectral.hpp"

namespace liftlab {

/// q_s(x) by the three-term scalar recurrence (no coefficient overflow).
double nb_eval(int s, int d, double x);

/// One feasibility instance: level D, tolerance delta, and the base spectrum
/// whose path statistics the pseudo-partition must reproduce.
struct PathStatsInstance {
    int D = 2;
    double delta = 0.1;
    int k = 0;
    int d = 0;
    std::vector<double> base_spectrum; // all k eigenvalues, descending
    bool bipartite = false;
    /// Additive o(n) slack absorbed into every moment window:
    /// slack_abs(n) = slack_c0 * log(n). Reported in every check.
    double slack_c0 = 12.0;

    static PathStatsInstance from_base(const Multigraph& h, int D, double delta);
    /// Symmetric variant: all nontrivial eigenvalues set to lambda.
    static PathStatsInstance symmetric(double lambda, int k, int d, int D, double delta,
                                       bool bipartite = false);

    /// (1/k) sum_i q_s(lambda_i), over the full spectrum.
    double moment_target(int s) const;
    /// Spectrum minus one copy of d (and one of -d when bipartite).
    std::vector<double> nontrivial_spectrum() const;
    double slack_abs(int n) const;
};

struct ConstraintCheck {
    std::string name;
    bool pass = false;
    double residual = 0.0;  // signed distance past the allowed window (<= 0 ok)
    double tolerance = 0.0; // window half-width used
};

struct FeasibilityReport {
    bool feasible = false;
    std::vector<ConstraintCheck> constraints;
    double slack_abs = 0.0; // the c0*log(n) absorbed into moment windows
    double slack_c0 = 0.0;

    const ConstraintCheck* find(const std::string& name) const;
};

/// Verify the pseudo-partition constraints: unit diagonal, <P,J> = n^2/k,
/// moment windows for s = 0..D, and P - J/k >= -tol_psd (bipartite mode adds
/// the zero cross blocks and the signed-block PSD inequality).
FeasibilityReport path_stats_check(const SimpleGraph& g, const Eigen::MatrixXd& P,
                                   const PathStatsInstance& inst);

/// Exact planted witness P = sum_i x_i x_i^T (1 exactly when fibers agree).
Eigen::MatrixXd planted_witness(const LiftedGraph& lift);

/// Cached eigendecomposition of an adjacency matrix (ascending order).
struct GraphEigen {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
};
GraphEigen graph_eigen(const SimpleGraph& g);

struct NullWitnessLog {
    int kernel_degree = 0;            // final surrogate degree S
    bool kernel_verified = false;     // aggregate moments within delta/4
    double worst_aggregate_residual = 0.0;
    double worst_single_residual = 0.0; // per-eigenvalue worst (informational)
    int repair_iterations = 0;
    double repair_sum_residual = 0.0;
    int clamped_eigenvalues = 0; // input eigenvalues clamped into the bulk
};

/// Null-model witness g(A_G) + J/k with exact unit diagonal restored by a
/// norm-projection repair of the Gram vectors. Throws KernelMomentFailure
/// when the kernel surrogate cannot meet its delta/4 moment budget (pass
/// require_kernel = false to build the best-effort witness anyway).
Eigen::MatrixXd null_witness(const SimpleGraph& g, const PathStatsInstance& inst,
                             const GraphEigen* pre = nullptr, NullWitnessLog* log = nullptr,
                             bool require_kernel = true);

/// Dual certificate f(x) = 2 - T_S(x / (2 sqrt(d-1))): strictly >= 1 on the
/// bulk, with sum of f over the instance's nontrivial spectrum negative.
struct InfeasibilityCertificate {
    int S = 0;               // even Chebyshev degree
    double delta_star = 0.0; // tolerances below this are provably infeasible
    double mean_f_nontrivial = 0.0; // (1/k) sum of f over nontrivial spectrum
    double coeff_l1 = 0.0;          // sum_s |<f,q_s>| / ||q_s||^2
};

/// Searches even S <= s_cap maximizing delta_star; nullopt when the spectrum
/// is Ramanujan (no certificate exists). Throws SCapExceeded when the
/// spectrum is non-Ramanujan but no S <= s_cap works.
std::optional<InfeasibilityCertificate> infeasibility_certificate(const PathStatsInstance& inst,
                                                                  int s_cap = 64);

/// Numeric demonstration of the contradiction on a concrete (g, P): returns
/// (psd_side, moment_side) with psd_side >= 0 always and moment_side < 0 for
/// any P passing the non-moment constraints at tolerance < delta_star.
std::pair<double, double> certificate_pairing(const SimpleGraph& g, const Eigen::MatrixXd& P,
                                              const InfeasibilityCertificate& cert,
                                              const PathStatsInstance& inst);

struct SymmetricDecision {
    bool feasible = false;
    FeasibilityReport report;                       // witness check, when built
    std::optional<InfeasibilityCertificate> certificate; // when infeasible
};

/// Decide the symmetric instance on g: construct the kernel witness when
/// |lambda| <= 2 sqrt(d-1), otherwise search for the dual certificate.
SymmetricDecision symmetric_path_stats(const SimpleGraph& g, double lambda, int k, int D,
                                       double delta, bool bipartite = false,
                                       const GraphEigen* pre = nullptr);

} // namespace liftlab
