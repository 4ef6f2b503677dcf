#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "liftlab/graphs.hpp"

namespace liftlab {

/// Ordered eigenvalues with flags marking deflated trivial values
/// (d for connected regular graphs; also -d in bipartite mode).
struct Spectrum {
    std::vector<double> values; // descending
    std::vector<char> trivial;  // parallel to values

    double extreme_nontrivial() const;
};

/// Adjacency matrix; a loop contributes 1 to the diagonal entry.
Eigen::MatrixXd adjacency_matrix(const Multigraph& g);
Eigen::MatrixXd adjacency_matrix(const SimpleGraph& g);

/// Dense symmetric eigendecomposition -> descending eigenvalues.
Spectrum symmetric_spectrum(const Eigen::MatrixXd& m);
/// Same, flagging trivial eigenvalues of a connected d-regular (bi)graph.
Spectrum graph_spectrum(const Multigraph& g, bool bipartite = false);
Spectrum graph_spectrum(const SimpleGraph& g, bool bipartite = false);

/// Largest and smallest eigenvalue after projecting out the all-ones
/// eigenvector (and the signed bipartition vector in bipartite mode).
/// Dense below `dense_cutoff`, Lanczos with full reorthogonalization above.
struct DeflatedExtremes {
    double lambda_max; // largest nontrivial eigenvalue (clamped at 0 in iterative mode)
    double lambda_min;
};
DeflatedExtremes deflated_extremes(const SimpleGraph& g, bool bipartite = false,
                                   std::uint64_t seed = 1, int dense_cutoff = 1024);

/// rho(G) = max nontrivial |lambda| of a connected d-regular graph.
double spectral_radius(const SimpleGraph& g, bool bipartite = false, std::uint64_t seed = 1);

struct RamanujanResult {
    bool ramanujan;
    double extreme; // max nontrivial |lambda|
    double margin;  // 2 sqrt(d-1) - extreme
};
RamanujanResult is_ramanujan(const Multigraph& h, bool bipartite = false);
RamanujanResult is_ramanujan(const SimpleGraph& g, bool bipartite = false);

/// Monic orthogonal polynomials of the Kesten-McKay measure:
/// q_0 = 1, q_1 = x, q_2 = x^2 - d, q_{s+1} = x q_s - (d-1) q_{s-1}.
struct NBPolynomial {
    int s = 0;
    int d = 0;
    std::vector<long long> coeffs; // coeffs[i] multiplies x^i

    double eval(double x) const;
};
NBPolynomial nb_polynomial(int s, int d);

/// q_s(A_G) by the matrix recurrence (adjacency applied sparsely).
Eigen::MatrixXd nb_matrix(const SimpleGraph& g, int s);
/// Exact integer q_s(M) for a multigraph adjacency matrix.
std::vector<std::vector<long long>> nb_matrix_exact(const Multigraph& m, int s);

/// y_s = q_s(A_G) x for s = 0..smax.
std::vector<Eigen::VectorXd> nb_apply(const SimpleGraph& g, const Eigen::VectorXd& x, int smax);
/// Frobenius inner products <A^(s), A^(t)> for 0 <= s,t <= smax (column-streamed).
Eigen::MatrixXd nb_gram(const SimpleGraph& g, int smax);
/// <X, A^(s)> for s = 0..smax, X symmetric dense.
std::vector<double> nb_inner_products(const SimpleGraph& g, const Eigen::MatrixXd& X, int smax);

/// Simple-path counts: entry (u, v) = number of s-edge simple paths u -> v.
Eigen::MatrixXd self_avoiding_matrix(const SimpleGraph& g, int s, int depth_cap = 8);

/// Quadrature rule for the Kesten-McKay measure on [-2 sqrt(d-1), 2 sqrt(d-1)].
/// The endpoint square-root singularity is absorbed by x = 2 sqrt(d-1) sin(theta).
struct KMQuadrature {
    int d = 0;
    std::vector<double> nodes;
    std::vector<double> weights;

    static KMQuadrature make(int d, int node_count);

    double integrate(const std::function<double(double)>& f) const;
};

/// Integral of p against the Kesten-McKay measure, node-doubled to < 1e-11.
double km_moment(const std::vector<double>& poly_coeffs, int d);
double km_moment(const std::function<double(double)>& f, int d);
/// E[q_s q_t]: 0 for s != t, 1 for s = t = 0, d (d-1)^{s-1} for s = t >= 1.
double km_nb_norm2(int s, int d);

// Dense-coefficient polynomial helpers (ascending powers).
std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b);
std::vector<double> poly_coeffs(const NBPolynomial& p);
double poly_eval(const std::vector<double>& coeffs, double x);

/// Chebyshev polynomial of the first kind; coefficient form requires s <= 62.
std::vector<long long> chebyshev_T(int s);
/// T_s(x) for |x| > 1 via ((x - sqrt(x^2-1))^s + (x + sqrt(x^2-1))^s) / 2.
double chebyshev_eval_outside(int s, double x);
/// T_s(x) anywhere (three-term recurrence).
double chebyshev_eval(int s, double x);

/// Vertices within BFS distance L of a simple cycle of length <= C.
std::vector<int> bad_vertices(const SimpleGraph& g, int L, int C);

} // namespace liftlab
