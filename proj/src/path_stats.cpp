#include "liftlab/path_stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "liftlab/rng.hpp"

namespace liftlab {

double nb_eval(int s, int d, double x) {
    if (s == 0) return 1.0;
    if (s == 1) return x;
    double prev = 1.0, cur = x;
    for (int t = 2; t <= s; ++t) {
        double next = x * cur - (t == 2 ? d : d - 1.0) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

PathStatsInstance PathStatsInstance::from_base(const Multigraph& h, int D, double delta) {
    auto dr = h.regular_degree();
    if (!dr) fail(ErrorCode::NotRegular, "instance base must be regular");
    PathStatsInstance inst;
    inst.D = D;
    inst.delta = delta;
    inst.k = h.n();
    inst.d = *dr;
    inst.bipartite = h.bipartite();
    inst.base_spectrum = symmetric_spectrum(adjacency_matrix(h)).values;
    return inst;
}

PathStatsInstance PathStatsInstance::symmetric(double lambda, int k, int d, int D, double delta,
                                               bool bipartite) {
    if (std::abs(lambda) > d) fail(ErrorCode::InvalidArgument, "|lambda| must be <= d");
    PathStatsInstance inst;
    inst.D = D;
    inst.delta = delta;
    inst.k = k;
    inst.d = d;
    inst.bipartite = bipartite;
    inst.base_spectrum.assign(1, static_cast<double>(d));
    if (!inst.bipartite) {
        for (int i = 0; i < k - 1; ++i) inst.base_spectrum.push_back(lambda);
    } else {
        // Bipartite spectra come in +/- pairs, and the zero-cross-block
        // constraint forces every odd moment of a feasible witness to 0; the
        // only constructible reading replicates the pair {lambda, -lambda}.
        if (k % 2 != 0) fail(ErrorCode::InvalidArgument, "bipartite instances need even k");
        for (int i = 0; i < (k - 2) / 2; ++i) {
            inst.base_spectrum.push_back(lambda);
            inst.base_spectrum.push_back(-lambda);
        }
        inst.base_spectrum.push_back(-static_cast<double>(d));
    }
    std::sort(inst.base_spectrum.rbegin(), inst.base_spectrum.rend());
    return inst;
}

double PathStatsInstance::moment_target(int s) const {
    double sum = 0.0;
    for (double lam : base_spectrum) sum += nb_eval(s, d, lam);
    return sum / k;
}

std::vector<double> PathStatsInstance::nontrivial_spectrum() const {
    std::vector<double> out = base_spectrum;
    auto drop = [&out](double value) {
        auto it = std::min_element(out.begin(), out.end(), [value](double a, double b) {
            return std::abs(a - value) < std::abs(b - value);
        });
        if (it != out.end()) out.erase(it);
    };
    drop(static_cast<double>(d));
    if (bipartite) drop(-static_cast<double>(d));
    return out;
}

double PathStatsInstance::slack_abs(int n) const { return slack_c0 * std::log(n); }

const ConstraintCheck* FeasibilityReport::find(const std::string& name) const {
    for (const auto& c : constraints) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

namespace {

constexpr double kEqTol = 1e-7; // equality constraints are exact by construction

void add_check(FeasibilityReport& report, const std::string& name, double residual,
               double tolerance) {
    ConstraintCheck c;
    c.name = name;
    c.residual = residual - tolerance;
    c.tolerance = tolerance;
    c.pass = residual <= tolerance;
    report.constraints.push_back(c);
    if (!c.pass) report.feasible = false;
}

Eigen::MatrixXd signed_block_matrix(int n) {
    Eigen::MatrixXd b(n, n);
    int half = n / 2;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            b(i, j) = ((i < half) == (j < half)) ? 1.0 : -1.0;
        }
    }
    return b;
}

bool canonical_bipartite_layout(const SimpleGraph& g) {
    int half = g.n() / 2;
    for (auto [u, v] : g.edges()) {
        if ((u < half) == (v < half)) return false;
    }
    return true;
}

} // namespace

FeasibilityReport path_stats_check(const SimpleGraph& g, const Eigen::MatrixXd& P,
                                   const PathStatsInstance& inst) {
    const int n = g.n();
    if (P.rows() != n || P.cols() != n) fail(ErrorCode::SizeMismatch, "P has wrong dimensions");
    if (!g.connected()) fail(ErrorCode::DisconnectedInput, "checker requires a connected graph");
    if (inst.bipartite && !canonical_bipartite_layout(g)) {
        fail(ErrorCode::LayoutMissing, "bipartite checks need the canonical side layout");
    }

    FeasibilityReport report;
    report.feasible = true;
    report.slack_abs = inst.slack_abs(n);
    report.slack_c0 = inst.slack_c0;

    double diag_res = 0.0;
    for (int u = 0; u < n; ++u) diag_res = std::max(diag_res, std::abs(P(u, u) - 1.0));
    add_check(report, "unit_diagonal", diag_res, kEqTol);

    double j_res = std::abs(P.sum() - static_cast<double>(n) * n / inst.k);
    add_check(report, "j_inner_product", j_res, kEqTol * n * n);

    auto moments = nb_inner_products(g, P, inst.D);
    for (int s = 0; s <= inst.D; ++s) {
        double target = inst.moment_target(s) * n;
        double window = inst.delta * n + report.slack_abs;
        add_check(report, "moment_s" + std::to_string(s), std::abs(moments[s] - target), window);
    }

    const double tol_psd = 1e-8 * n;
    {
        Eigen::MatrixXd m = P;
        m.array() -= 1.0 / inst.k;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
        add_check(report, "psd_vs_uniform_block", std::max(0.0, -es.eigenvalues()(0)), tol_psd);
    }
    if (inst.bipartite) {
        int half = n / 2;
        double cross = 0.0;
        for (int u = 0; u < half; ++u) {
            for (int v = half; v < n; ++v) cross = std::max(cross, std::abs(P(u, v)));
        }
        add_check(report, "zero_cross_blocks", cross, kEqTol);

        Eigen::MatrixXd m = P - signed_block_matrix(n) / inst.k;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
        add_check(report, "psd_vs_signed_block", std::max(0.0, -es.eigenvalues()(0)), tol_psd);
    }
    return report;
}

Eigen::MatrixXd planted_witness(const LiftedGraph& lift) {
    const int n = lift.graph.n();
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (lift.sigma[u] == lift.sigma[v]) p(u, v) = 1.0;
        }
    }
    return p;
}

GraphEigen graph_eigen(const SimpleGraph& g) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(adjacency_matrix(g));
    return {es.eigenvalues(), es.eigenvectors()};
}

namespace {

/// Degree-S tail-damped reproducing kernel
///   K_S(a, x) = sum_s (1 - s/(S+1)) q_s(a) q_s(x) / ||q_s||^2.
/// The triangular damping removes the 1/(x-a)^2 tails of the raw kernel, so
/// the squared-kernel measure concentrates fast enough for the delta/4
/// moment budget (the undamped square converges only like 1/S).
double km_kernel(int S, int d, double a, double x) {
    double qa_prev = 1.0, qx_prev = 1.0;
    double acc = 1.0; // s = 0 term
    if (S == 0) return acc;
    double qa = a, qx = x;
    acc += (1.0 - 1.0 / (S + 1.0)) * qa * qx / km_nb_norm2(1, d);
    for (int s = 2; s <= S; ++s) {
        double c = (s == 2) ? d : d - 1.0;
        double qa_next = a * qa - c * qa_prev;
        double qx_next = x * qx - c * qx_prev;
        qa_prev = qa;
        qa = qa_next;
        qx_prev = qx;
        qx = qx_next;
        acc += (1.0 - static_cast<double>(s) / (S + 1.0)) * qa * qx / km_nb_norm2(s, d);
    }
    return acc;
}

/// Fixed quadrature grid with a precomputed q_s table; the moment integrals
/// of every surrogate run over this grid in O(nodes) per moment.
struct KernelGrid {
    KMQuadrature rule;
    std::vector<std::vector<double>> q; // q[s][node]

    static const KernelGrid& get(int d, int smax) {
        static std::map<std::pair<int, int>, KernelGrid> cache;
        auto key = std::make_pair(d, smax);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        KernelGrid grid;
        grid.rule = KMQuadrature::make(d, 1024);
        const std::size_t nn = grid.rule.nodes.size();
        grid.q.assign(smax + 1, std::vector<double>(nn));
        for (std::size_t i = 0; i < nn; ++i) {
            double x = grid.rule.nodes[i];
            grid.q[0][i] = 1.0;
            if (smax >= 1) grid.q[1][i] = x;
            for (int s = 2; s <= smax; ++s) {
                double c = (s == 2) ? d : d - 1.0;
                grid.q[s][i] = x * grid.q[s - 1][i] - c * grid.q[s - 2][i];
            }
        }
        return cache.emplace(key, std::move(grid)).first->second;
    }
};

struct KernelSurrogate {
    int S;
    int d;
    std::vector<double> lambdas;              // nontrivial spectrum entries
    std::vector<double> norms;                // int K_S(lambda, x)^2 dmu per entry
    std::vector<std::vector<double>> on_grid; // K_S(lambda, node)^2 / Z per entry
    int k;

    /// g(x) = (1/k) sum_l K_S(l, x)^2 / Z_l.
    double eval(double x) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < lambdas.size(); ++i) {
            double kx = km_kernel(S, d, lambdas[i], x);
            acc += kx * kx / norms[i];
        }
        return acc / k;
    }

    /// E[g_l q_s] over the grid.
    double grid_moment_single(std::size_t i, int s, const KernelGrid& grid) const {
        double acc = 0.0;
        for (std::size_t t = 0; t < grid.rule.nodes.size(); ++t) {
            acc += grid.rule.weights[t] * on_grid[i][t] * grid.q[s][t];
        }
        return acc;
    }
};

KernelSurrogate make_surrogate(int S, int d, const std::vector<double>& lambdas, int k,
                               const KernelGrid& grid) {
    KernelSurrogate s;
    s.S = S;
    s.d = d;
    s.lambdas = lambdas;
    s.k = k;
    const std::size_t nn = grid.rule.nodes.size();
    std::vector<double> qlam(S + 1);
    for (double lam : lambdas) {
        qlam[0] = 1.0;
        if (S >= 1) qlam[1] = lam;
        for (int t = 2; t <= S; ++t) {
            double c = (t == 2) ? d : d - 1.0;
            qlam[t] = lam * qlam[t - 1] - c * qlam[t - 2];
        }
        std::vector<double> ksq(nn);
        double z = 0.0;
        for (std::size_t i = 0; i < nn; ++i) {
            double acc = 0.0;
            for (int t = 0; t <= S; ++t) {
                acc += (1.0 - static_cast<double>(t) / (S + 1.0)) * qlam[t] * grid.q[t][i] /
                       km_nb_norm2(t, d);
            }
            ksq[i] = acc * acc;
            z += grid.rule.weights[i] * ksq[i];
        }
        for (double& v : ksq) v /= z;
        s.norms.push_back(z);
        s.on_grid.push_back(std::move(ksq));
    }
    return s;
}

/// Repair Gram-vector columns to exact norm rho while keeping their sum:
/// alternate "recenter sum" and "rescale to sphere", ending on a rescale so
/// the diagonal is exact to machine precision.
struct RepairStats {
    int iterations = 0;
    double sum_residual = 0.0;
};

RepairStats repair_columns(Eigen::MatrixXd& cols, double rho) {
    const int n = static_cast<int>(cols.cols());
    const Eigen::VectorXd target_sum = cols.rowwise().sum();
    RepairStats stats;
    const double tol = 1e-12 * std::sqrt(rho) * n;
    for (int iter = 0; iter < 200; ++iter) {
        stats.iterations = iter + 1;
        Eigen::VectorXd xi = cols.rowwise().sum() - target_sum;
        if (iter > 0 && xi.norm() < tol) break;
        for (int u = 0; u < n; ++u) cols.col(u) -= xi / n;
        for (int u = 0; u < n; ++u) {
            double norm = cols.col(u).norm();
            if (norm < 1e-14) fail(ErrorCode::RepairInfeasible, "degenerate Gram column");
            cols.col(u) *= std::sqrt(rho) / norm;
        }
    }
    stats.sum_residual = (cols.rowwise().sum() - target_sum).norm();
    if (stats.sum_residual > 1e-6 * std::sqrt(rho) * n) {
        fail(ErrorCode::RepairInfeasible, "sum-preserving repair did not converge");
    }
    return stats;
}

} // namespace

Eigen::MatrixXd null_witness(const SimpleGraph& g, const PathStatsInstance& inst,
                             const GraphEigen* pre, NullWitnessLog* log, bool require_kernel) {
    const int n = g.n();
    const int d = inst.d;
    const int k = inst.k;
    const double bulk_edge = 2.0 * std::sqrt(static_cast<double>(d - 1));
    if (inst.bipartite && !canonical_bipartite_layout(g)) {
        fail(ErrorCode::LayoutMissing, "bipartite witness needs the canonical side layout");
    }

    NullWitnessLog local_log;
    NullWitnessLog& lg = log ? *log : local_log;

    auto lambdas = inst.nontrivial_spectrum();

    // Choose the kernel degree: double S until every per-eigenvalue moment
    // E[g_l q_s] sits within delta/4 of q_s(l) for s <= D (the aggregate,
    // which is what the checker needs, is then within budget as well).
    const KernelGrid& grid = KernelGrid::get(d, std::max(64, inst.D));
    KernelSurrogate surrogate = make_surrogate(4, d, lambdas, k, grid);
    bool verified = false;
    for (int S = 4; S <= 64; S *= 2) {
        surrogate = make_surrogate(S, d, lambdas, k, grid);
        double worst_agg = 0.0, worst_single = 0.0;
        for (int s = 0; s <= inst.D; ++s) {
            double agg = 0.0, agg_target = 0.0;
            for (std::size_t i = 0; i < lambdas.size(); ++i) {
                double single = surrogate.grid_moment_single(i, s, grid);
                double target = nb_eval(s, d, lambdas[i]);
                worst_single = std::max(worst_single, std::abs(single - target));
                agg += single;
                agg_target += target;
            }
            worst_agg = std::max(worst_agg, std::abs(agg - agg_target) / k);
        }
        lg.kernel_degree = S;
        lg.worst_aggregate_residual = worst_agg;
        lg.worst_single_residual = worst_single;
        if (worst_single <= inst.delta / 4.0) {
            verified = true;
            break;
        }
    }
    lg.kernel_verified = verified;
    if (!verified && require_kernel) {
        fail(ErrorCode::KernelMomentFailure,
             "kernel surrogate misses the delta/4 moment budget at degree cap");
    }

    GraphEigen local_eigen;
    const GraphEigen* eig = pre;
    if (!eig) {
        local_eigen = graph_eigen(g);
        eig = &local_eigen;
    }

    // Trivial directions of A_G: the top eigenvalue (d) and, in bipartite
    // mode, the bottom one (-d).
    int idx_top = n - 1;
    int idx_bottom = 0;

    // Evaluate g at eigenvalues clamped into the bulk. Finite-size samples
    // put a few eigenvalues slightly outside [-2 sqrt(d-1), 2 sqrt(d-1)],
    // where the kernel square explodes; clamping keeps their weight at the
    // edge value while A's true eigenvalue still drives the moments.
    Eigen::VectorXd weight = Eigen::VectorXd::Zero(n);
    int clamped = 0;
    for (int u = 0; u < n; ++u) {
        if (u == idx_top || (inst.bipartite && u == idx_bottom)) continue;
        double mu = eig->values(u);
        double mu_hat = std::clamp(mu, -bulk_edge, bulk_edge);
        if (mu_hat != mu) ++clamped;
        weight(u) = surrogate.eval(mu_hat);
    }
    lg.clamped_eigenvalues = clamped;

    const double rho = inst.bipartite ? (k - 2.0) / k : (k - 1.0) / k;

    // Scale so the typical diagonal entry hits rho before repair.
    Eigen::VectorXd diag_unscaled(n);
    for (int u = 0; u < n; ++u) {
        double acc = 0.0;
        for (int v = 0; v < n; ++v) acc += weight(v) * eig->vectors(u, v) * eig->vectors(u, v);
        diag_unscaled(u) = acc;
    }
    std::vector<double> diag_sorted(diag_unscaled.data(), diag_unscaled.data() + n);
    std::nth_element(diag_sorted.begin(), diag_sorted.begin() + n / 2, diag_sorted.end());
    double median_diag = diag_sorted[n / 2];
    if (median_diag < 1e-12) fail(ErrorCode::RepairInfeasible, "degenerate witness diagonal");
    double scale = rho / median_diag;

    RepairStats repair;
    Eigen::MatrixXd y;
    if (!inst.bipartite) {
        // Gram columns: B = diag(sqrt(scale * weight)) * W^T.
        Eigen::MatrixXd cols = eig->vectors.transpose();
        for (int r = 0; r < n; ++r) cols.row(r) *= std::sqrt(scale * weight(r));
        repair = repair_columns(cols, rho);
        y = cols.transpose() * cols;
    } else {
        // g even + bipartite graph make g(A) block diagonal; factor each
        // diagonal block separately so cross-block Gram vectors stay
        // orthogonal through the repair.
        Eigen::MatrixXd ytilde = eig->vectors *
                                 (scale * weight.array()).matrix().asDiagonal() *
                                 eig->vectors.transpose();
        int half = n / 2;
        y = Eigen::MatrixXd::Zero(n, n);
        for (int b = 0; b < 2; ++b) {
            int off = b * half;
            Eigen::MatrixXd block = ytilde.block(off, off, half, half);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block);
            Eigen::VectorXd vals = es.eigenvalues().cwiseMax(0.0);
            Eigen::MatrixXd cols = es.eigenvectors().transpose();
            for (int r = 0; r < half; ++r) cols.row(r) *= std::sqrt(vals(r));
            RepairStats rs = repair_columns(cols, rho);
            repair.iterations = std::max(repair.iterations, rs.iterations);
            repair.sum_residual = std::max(repair.sum_residual, rs.sum_residual);
            y.block(off, off, half, half) = cols.transpose() * cols;
        }
    }
    lg.repair_iterations = repair.iterations;
    lg.repair_sum_residual = repair.sum_residual;

    Eigen::MatrixXd p = y;
    p.array() += 1.0 / k;
    if (inst.bipartite) p += signed_block_matrix(n) / k;
    return p;
}

std::optional<InfeasibilityCertificate> infeasibility_certificate(const PathStatsInstance& inst,
                                                                  int s_cap) {
    const int d = inst.d;
    const double bulk_edge = 2.0 * std::sqrt(static_cast<double>(d - 1));
    auto lambdas = inst.nontrivial_spectrum();
    double extreme = 0.0;
    for (double lam : lambdas) extreme = std::max(extreme, std::abs(lam));
    if (extreme <= bulk_edge + 1e-9) return std::nullopt; // Ramanujan: no certificate

    std::optional<InfeasibilityCertificate> best;
    for (int S = 2; S <= s_cap; S += 2) {
        auto f = [S, bulk_edge](double x) { return 2.0 - chebyshev_eval(S, x / bulk_edge); };
        double sum_f = 0.0;
        for (double lam : lambdas) {
            double arg = lam / bulk_edge;
            double val = std::abs(arg) > 1.0 ? 2.0 - chebyshev_eval_outside(S, arg) : f(lam);
            sum_f += val;
        }
        if (sum_f >= 0.0) continue;
        // c_s = <f, q_s> / ||q_s||^2; windows of half-width w shift the
        // moment side by at most (sum_s |c_s|) * w.
        double coeff_l1 = 0.0;
        for (int s = 0; s <= S; ++s) {
            double fhat =
                km_moment([&f, s, d](double x) { return f(x) * nb_eval(s, d, x); }, d);
            coeff_l1 += std::abs(fhat) / km_nb_norm2(s, d);
        }
        double delta_star = -sum_f / inst.k / coeff_l1;
        if (!best || delta_star > best->delta_star) {
            InfeasibilityCertificate cert;
            cert.S = S;
            cert.delta_star = delta_star;
            cert.mean_f_nontrivial = sum_f / inst.k;
            cert.coeff_l1 = coeff_l1;
            best = cert;
        }
    }
    if (!best) fail(ErrorCode::SCapExceeded, "non-Ramanujan spectrum but no certificate below cap");
    return best;
}

std::pair<double, double> certificate_pairing(const SimpleGraph& g, const Eigen::MatrixXd& P,
                                              const InfeasibilityCertificate& cert,
                                              const PathStatsInstance& inst) {
    const int n = g.n();
    const int d = inst.d;
    const double bulk_edge = 2.0 * std::sqrt(static_cast<double>(d - 1));
    auto f = [&cert, bulk_edge](double x) {
        double arg = x / bulk_edge;
        return std::abs(arg) > 1.0 ? 2.0 - chebyshev_eval_outside(cert.S, arg)
                                   : 2.0 - chebyshev_eval(cert.S, arg);
    };
    // Moment-side estimate: sum_s c_s <P, A^(s)> - f(d) n / k.
    std::vector<double> c(cert.S + 1);
    for (int s = 0; s <= cert.S; ++s) {
        c[s] = km_moment([&f, s, d](double x) { return f(x) * nb_eval(s, d, x); }, d) /
               km_nb_norm2(s, d);
    }
    auto moments = nb_inner_products(g, P, cert.S);
    double moment_side = 0.0;
    for (int s = 0; s <= cert.S; ++s) moment_side += c[s] * moments[s];
    moment_side -= f(static_cast<double>(d)) * n / inst.k;

    // PSD side: <P, f(A) - f(d) J/n> computed through the eigendecomposition.
    GraphEigen eig = graph_eigen(g);
    Eigen::MatrixXd pw = P * eig.vectors;
    double psd_side = 0.0;
    for (int u = 0; u < n - 1; ++u) { // skip the top (trivial) eigenvalue
        double fu = f(eig.values(u));
        psd_side += fu * eig.vectors.col(u).dot(pw.col(u));
    }
    return {psd_side, moment_side};
}

SymmetricDecision symmetric_path_stats(const SimpleGraph& g, double lambda, int k, int D,
                                       double delta, bool bipartite, const GraphEigen* pre) {
    auto dr = g.regular_degree();
    if (!dr) fail(ErrorCode::NotRegular, "symmetric path statistics need a regular graph");
    auto inst = PathStatsInstance::symmetric(lambda, k, *dr, D, delta, bipartite);
    SymmetricDecision decision;
    const double bulk_edge = 2.0 * std::sqrt(static_cast<double>(*dr - 1));
    if (std::abs(lambda) > bulk_edge + 1e-9) {
        decision.certificate = infeasibility_certificate(inst);
        decision.feasible = false;
        return decision;
    }
    Eigen::MatrixXd witness = null_witness(g, inst, pre);
    decision.report = path_stats_check(g, witness, inst);
    decision.feasible = decision.report.feasible;
    return decision;
}

} // namespace liftlab
