#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "liftlab/path_stats.hpp"
#include "liftlab/rational.hpp"

namespace liftlab {

/// A small graph with a distinguished labelled subset: the index family of
/// the degree-2 moment constraints. In bipartite mode every vertex carries a
/// side and the labelling must respect the sides.
struct PartiallyLabelledGraph {
    SimpleGraph alpha;
    std::vector<int> distinguished; // S, vertex ids of alpha
    std::vector<int> labels;        // tau, parallel to distinguished, values in [0, k)
    bool bipartite = false;
    std::vector<int> alpha_side; // 0/1 per alpha vertex (bipartite mode only)

    int cc() const;
    int zeta() const; // |V| - |E|

    /// Path with s edges, endpoints labelled i and j.
    static PartiallyLabelledGraph path(int s, int label_i, int label_j);
    /// Isolated labelled vertices.
    static PartiallyLabelledGraph edgeless(const std::vector<int>& labels);
    /// Bipartite variants: sides per vertex; the labelling must map side-0
    /// vertices into one label group and side-1 into the other.
    static PartiallyLabelledGraph bipartite_path(int s, int label_i, int label_j, int k);
    static PartiallyLabelledGraph bipartite_edgeless(const std::vector<int>& labels,
                                                     const std::vector<int>& sides, int k);
};

/// Exact occurrence count: injective homomorphisms that agree with sigma on
/// the distinguished labels (bipartite mode: partition-preserving only, with
/// the graph in canonical side layout).
long long count_occurrences(const PartiallyLabelledGraph& plg, const SimpleGraph& g,
                            const std::vector<int>& sigma);

/// The falling-factorial label-extension weight of the base multigraph;
/// multiplicative over disjoint unions, and equal to q_s(M)_{ij} on
/// endpoint-labelled s-paths.
Rational m_weight(const PartiallyLabelledGraph& plg, const Multigraph& m);

/// Exact occurrence count of an edgeless partially labelled graph in any
/// balanced-labelled graph on n vertices with k labels.
Rational n_edgeless(const PartiallyLabelledGraph& plg, long long n, int k);

/// Degree-2 pseudomoment data: ell[(u,i)] = E~[x_{u,i}] and the matrix
/// Q[(u,i),(v,j)] = E~[x_{u,i} x_{v,j}], held in a structured representation
/// (the dense matrix is quadratic in n*k and never materialized).
class PseudoMoment {
public:
    virtual ~PseudoMoment() = default;

    int n() const { return n_; }
    int k() const { return k_; }

    virtual double ell(int u, int i) const = 0;
    virtual double pair(int u, int i, int v, int j) const = 0;
    /// k x k matrix of sum_{u,v} pair(u,i,v,j) * weight(u,v).
    virtual Eigen::MatrixXd pair_contraction(const Eigen::MatrixXd& weight) const = 0;
    /// k x k matrix of sum_{u != v} pair(u,i,v,j).
    virtual Eigen::MatrixXd label_pair_sums() const = 0;
    /// P~ = sum_i Q_{i,i} as an n x n matrix.
    virtual Eigen::MatrixXd diag_block_sum() const = 0;
    /// Certified lower bound on the minimum eigenvalue of Q - ell ell^T
    /// (0 when the representation is a Gram/tensor-PSD construction).
    virtual double psd_floor() const = 0;
    /// Dense bordered pseudomoment matrix [[1, l^T], [l, Q]]; only for small
    /// n*k (used by tests to cross-check psd_floor against an eigensolver).
    Eigen::MatrixXd dense_bordered() const;

protected:
    PseudoMoment(int n, int k) : n_(n), k_(k) {}
    int n_;
    int k_;
};

/// Pseudomoments of an actual labelling x (0/1 point evaluation).
std::unique_ptr<PseudoMoment> planted_pseudomoment(const LiftedGraph& lift);

/// Tensor-sum pseudomoment Q = sum_t A_t (x) B_t with constant ell = 1/k.
class TensorPseudoMoment : public PseudoMoment {
public:
    TensorPseudoMoment(int n, int k) : PseudoMoment(n, k) {}

    void add_term(Eigen::MatrixXd a, Eigen::MatrixXd b);
    /// Declare the PSD decomposition floor (verified structurally by the
    /// construction; tests cross-check it densely on small instances).
    void set_psd_floor(double floor) { floor_ = floor; }

    double ell(int u, int i) const override;
    double pair(int u, int i, int v, int j) const override;
    Eigen::MatrixXd pair_contraction(const Eigen::MatrixXd& weight) const override;
    Eigen::MatrixXd label_pair_sums() const override;
    Eigen::MatrixXd diag_block_sum() const override;
    double psd_floor() const override { return floor_; }

private:
    std::vector<Eigen::MatrixXd> a_terms_;
    std::vector<Eigen::MatrixXd> b_terms_;
    double floor_ = 0.0;
};

/// The degree-(2, D) constraint set: hard/label constraints, pruned-forest
/// moment windows (endpoint-labelled paths + edgeless pairs), PSD.
struct LoStConstraints {
    int D = 2;
    double delta = 0.1;
    int n = 0;
    int k = 0;
    int d = 0;
    bool bipartite = false;
    double slack_c0 = 12.0;
    std::vector<Eigen::MatrixXd> saw;          // A^<s>, s = 0..D
    std::vector<Eigen::MatrixXd> path_targets; // (n/k) q_s(M) per s
};

LoStConstraints lost2_build_constraints(const SimpleGraph& g, const Multigraph& m, int D,
                                        double delta);

FeasibilityReport lost2_check(const PseudoMoment& pm, const LoStConstraints& cons);

/// P~ = sum_i Q_{i,i}; requires the hard constraints to hold first.
Eigen::MatrixXd lost2_reduce(const PseudoMoment& pm, double hard_tol = 1e-6);

/// Lower-bound construction: ell = 1/k and
/// Q = 1/(k-1) sum_i P~(lambda_i) (x) v_i v_i^T + 1/(k(k-1)) J (x) (J - I)
/// from Symmetric Path Statistics witnesses (bipartite: the (k-2)-normalized
/// signed-block analogue). Requires a (bipartite-)Ramanujan base.
std::unique_ptr<TensorPseudoMoment> lost2_lower_witness(const SimpleGraph& g, const Multigraph& m,
                                                        int D, double delta,
                                                        const GraphEigen* pre = nullptr);

} // namespace liftlab
