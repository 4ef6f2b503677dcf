#include "liftlab/local_stats.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace liftlab {

int PartiallyLabelledGraph::cc() const {
    std::vector<int> comp(alpha.n(), -1);
    int count = 0;
    for (int s = 0; s < alpha.n(); ++s) {
        if (comp[s] != -1) continue;
        ++count;
        std::vector<int> stack{s};
        comp[s] = count;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : alpha.neighbors(u)) {
                if (comp[v] == -1) {
                    comp[v] = count;
                    stack.push_back(v);
                }
            }
        }
    }
    return count;
}

int PartiallyLabelledGraph::zeta() const { return alpha.n() - alpha.edge_count(); }

PartiallyLabelledGraph PartiallyLabelledGraph::path(int s, int label_i, int label_j) {
    PartiallyLabelledGraph plg;
    plg.alpha = SimpleGraph(s + 1);
    for (int t = 0; t < s; ++t) plg.alpha.add_edge(t, t + 1);
    plg.distinguished = {0, s};
    plg.labels = {label_i, label_j};
    if (s == 0) {
        plg.distinguished = {0};
        plg.labels = {label_i};
    }
    return plg;
}

PartiallyLabelledGraph PartiallyLabelledGraph::edgeless(const std::vector<int>& labels) {
    PartiallyLabelledGraph plg;
    plg.alpha = SimpleGraph(static_cast<int>(labels.size()));
    plg.labels = labels;
    for (int v = 0; v < plg.alpha.n(); ++v) plg.distinguished.push_back(v);
    return plg;
}

PartiallyLabelledGraph PartiallyLabelledGraph::bipartite_path(int s, int label_i, int label_j,
                                                              int k) {
    PartiallyLabelledGraph plg = path(s, label_i, label_j);
    plg.bipartite = true;
    plg.alpha_side.resize(s + 1);
    for (int t = 0; t <= s; ++t) plg.alpha_side[t] = t % 2;
    // The labelling must respect sides: endpoint 0 carries label_i, endpoint
    // s carries label_j, and they sit in the same alpha side iff s is even.
    bool i_left = label_i < k / 2;
    bool j_left = label_j < k / 2;
    bool same_side_labels = i_left == j_left;
    if (same_side_labels != (s % 2 == 0)) {
        fail(ErrorCode::InvalidArgument, "path endpoint labels violate the side parity");
    }
    return plg;
}

PartiallyLabelledGraph PartiallyLabelledGraph::bipartite_edgeless(const std::vector<int>& labels,
                                                                  const std::vector<int>& sides,
                                                                  int k) {
    if (labels.size() != sides.size()) fail(ErrorCode::InvalidArgument, "labels/sides mismatch");
    PartiallyLabelledGraph plg = edgeless(labels);
    plg.bipartite = true;
    plg.alpha_side = sides;
    // Side-respecting check: one orientation must place every label in the
    // group matching its vertex side.
    for (int orient = 0; orient < 2; ++orient) {
        bool ok = true;
        for (std::size_t t = 0; t < labels.size(); ++t) {
            bool left_group = labels[t] < k / 2;
            bool side0 = sides[t] == 0;
            if ((side0 == (orient == 0)) != left_group) ok = false;
        }
        if (ok) return plg;
    }
    fail(ErrorCode::InvalidArgument, "labels do not respect the sides");
}

long long count_occurrences(const PartiallyLabelledGraph& plg, const SimpleGraph& g,
                            const std::vector<int>& sigma) {
    const int va = plg.alpha.n();
    if (va > 8) fail(ErrorCode::SizeCapExceeded, "pattern capped at 8 vertices");
    const int n = g.n();
    std::vector<int> label_of(va, -1);
    for (std::size_t t = 0; t < plg.distinguished.size(); ++t) {
        label_of[plg.distinguished[t]] = plg.labels[t];
    }

    // Assignment order: expand connected pieces so images are pruned by
    // adjacency as early as possible.
    std::vector<int> order;
    {
        std::vector<char> placed(va, 0);
        for (int s = 0; s < va; ++s) {
            if (placed[s]) continue;
            std::vector<int> queue{s};
            placed[s] = 1;
            while (!queue.empty()) {
                int u = queue.front();
                queue.erase(queue.begin());
                order.push_back(u);
                for (int w : plg.alpha.neighbors(u)) {
                    if (!placed[w]) {
                        placed[w] = 1;
                        queue.push_back(w);
                    }
                }
            }
        }
    }

    const int half = n / 2;
    long long total = 0;
    std::vector<int> image(va, -1);
    std::vector<char> used(n, 0);

    std::function<void(int, int)> rec = [&](int idx, int orient) {
        if (idx == va) {
            ++total;
            return;
        }
        int a = order[idx];
        // Candidates: neighbors of an already-placed alpha-neighbor if any.
        int anchor = -1;
        for (int w : plg.alpha.neighbors(a)) {
            if (image[w] != -1) {
                anchor = w;
                break;
            }
        }
        auto try_vertex = [&](int v) {
            if (used[v]) return;
            if (label_of[a] != -1 && sigma[v] != label_of[a]) return;
            if (plg.bipartite) {
                int want = plg.alpha_side[a] ^ orient;
                if ((v < half ? 0 : 1) != want) return;
            }
            for (int w : plg.alpha.neighbors(a)) {
                if (image[w] != -1 && !g.has_edge(v, image[w])) return;
            }
            image[a] = v;
            used[v] = 1;
            rec(idx + 1, orient);
            image[a] = -1;
            used[v] = 0;
        };
        if (anchor != -1) {
            for (int v : g.neighbors(image[anchor])) try_vertex(v);
        } else {
            for (int v = 0; v < n; ++v) try_vertex(v);
        }
    };

    if (!plg.bipartite) {
        rec(0, 0);
    } else {
        if (n % 2 != 0) fail(ErrorCode::LayoutMissing, "bipartite counting needs even n");
        rec(0, 0);
        if (va > 0) rec(0, 1);
    }
    return total;
}

Rational m_weight(const PartiallyLabelledGraph& plg, const Multigraph& m) {
    const int va = plg.alpha.n();
    const int k = m.n();
    std::vector<int> fixed(va, -1);
    for (std::size_t t = 0; t < plg.distinguished.size(); ++t) {
        fixed[plg.distinguished[t]] = plg.labels[t];
    }
    std::vector<int> free_vertices;
    for (int v = 0; v < va; ++v) {
        if (fixed[v] == -1) free_vertices.push_back(v);
    }
    if (free_vertices.size() > 6) {
        fail(ErrorCode::SizeCapExceeded, "label-extension sum capped at 6 free vertices");
    }

    std::vector<int> tau(fixed);
    Rational total(0);
    std::vector<int> deg(k, 0);

    auto term_value = [&]() -> Rational {
        // Skip extensions with an edge mapped to multiplicity 0.
        for (auto [u, v] : plg.alpha.edges()) {
            if (m.mult(tau[u], tau[v]) == 0) return Rational(0);
        }
        if (plg.bipartite) {
            bool ok_any = false;
            for (int orient = 0; orient < 2 && !ok_any; ++orient) {
                bool ok = true;
                for (int v = 0; v < va && ok; ++v) {
                    bool left_group = tau[v] < k / 2;
                    bool side0 = plg.alpha_side[v] == 0;
                    if ((side0 == (orient == 0)) != left_group) ok = false;
                }
                ok_any = ok;
            }
            if (!ok_any) return Rational(0);
        }
        Rational num(1);
        for (int v = 0; v < va; ++v) {
            std::fill(deg.begin(), deg.end(), 0);
            for (int w : plg.alpha.neighbors(v)) ++deg[tau[w]];
            for (int i = 0; i < k; ++i) {
                for (int r = 0; r < deg[i]; ++r) num *= Rational(m.mult(tau[v], i) - r);
            }
        }
        Rational den(1);
        for (auto [u, v] : plg.alpha.edges()) den *= Rational(m.mult(tau[u], tau[v]));
        return num / den;
    };

    std::function<void(std::size_t)> rec = [&](std::size_t idx) {
        if (idx == free_vertices.size()) {
            total += term_value();
            return;
        }
        for (int i = 0; i < k; ++i) {
            tau[free_vertices[idx]] = i;
            rec(idx + 1);
        }
        tau[free_vertices[idx]] = -1;
    };
    rec(0);
    return total;
}

Rational n_edgeless(const PartiallyLabelledGraph& plg, long long n, int k) {
    if (plg.alpha.edge_count() != 0) fail(ErrorCode::InvalidArgument, "pattern must be edgeless");
    if (n % k != 0) fail(ErrorCode::InvalidArgument, "n must be a multiple of k");
    std::vector<int> tau_count(k, 0);
    for (int lab : plg.labels) ++tau_count[lab];
    Rational out(1);
    for (int i = 0; i < k; ++i) {
        for (int r = 0; r < tau_count[i]; ++r) out *= Rational(n / k - r);
    }
    if (!plg.bipartite) {
        long long s = static_cast<long long>(plg.distinguished.size());
        for (long long v = s; v < plg.alpha.n(); ++v) out *= Rational(n - v);
        return out;
    }
    // Bipartite: undistinguished slots fill within their own side.
    for (int side = 0; side < 2; ++side) {
        long long s_side = 0, v_side = 0;
        for (int v = 0; v < plg.alpha.n(); ++v) {
            if (plg.alpha_side[v] == side) {
                ++v_side;
                if (std::find(plg.distinguished.begin(), plg.distinguished.end(), v) !=
                    plg.distinguished.end()) {
                    ++s_side;
                }
            }
        }
        for (long long r = s_side; r < v_side; ++r) out *= Rational(n / 2 - r);
    }
    return out;
}

Eigen::MatrixXd PseudoMoment::dense_bordered() const {
    const std::size_t dim = 1 + static_cast<std::size_t>(n_) * k_;
    if (dim > 4001) fail(ErrorCode::SizeCapExceeded, "dense bordered matrix is test-only");
    Eigen::MatrixXd out(dim, dim);
    out(0, 0) = 1.0;
    for (int u = 0; u < n_; ++u) {
        for (int i = 0; i < k_; ++i) {
            double l = ell(u, i);
            out(0, 1 + u * k_ + i) = l;
            out(1 + u * k_ + i, 0) = l;
        }
    }
    for (int u = 0; u < n_; ++u) {
        for (int i = 0; i < k_; ++i) {
            for (int v = 0; v < n_; ++v) {
                for (int j = 0; j < k_; ++j) {
                    out(1 + u * k_ + i, 1 + v * k_ + j) = pair(u, i, v, j);
                }
            }
        }
    }
    return out;
}

namespace {

class PlantedPseudoMoment final : public PseudoMoment {
public:
    PlantedPseudoMoment(const LiftedGraph& lift)
        : PseudoMoment(lift.graph.n(), lift.base.n()), sigma_(lift.sigma) {}

    double ell(int u, int i) const override { return sigma_[u] == i ? 1.0 : 0.0; }

    double pair(int u, int i, int v, int j) const override {
        return (sigma_[u] == i && sigma_[v] == j) ? 1.0 : 0.0;
    }

    Eigen::MatrixXd pair_contraction(const Eigen::MatrixXd& weight) const override {
        Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n_, k_);
        for (int u = 0; u < n_; ++u) x(u, sigma_[u]) = 1.0;
        return x.transpose() * weight * x;
    }

    Eigen::MatrixXd label_pair_sums() const override {
        Eigen::VectorXd sizes = Eigen::VectorXd::Zero(k_);
        for (int u = 0; u < n_; ++u) sizes(sigma_[u]) += 1.0;
        Eigen::MatrixXd out = sizes * sizes.transpose();
        out.diagonal() -= sizes;
        return out;
    }

    Eigen::MatrixXd diag_block_sum() const override {
        Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n_, n_);
        for (int u = 0; u < n_; ++u) {
            for (int v = 0; v < n_; ++v) {
                if (sigma_[u] == sigma_[v]) p(u, v) = 1.0;
            }
        }
        return p;
    }

    double psd_floor() const override { return 0.0; } // rank-1 point evaluation

private:
    std::vector<int> sigma_;
};

} // namespace

std::unique_ptr<PseudoMoment> planted_pseudomoment(const LiftedGraph& lift) {
    return std::make_unique<PlantedPseudoMoment>(lift);
}

void TensorPseudoMoment::add_term(Eigen::MatrixXd a, Eigen::MatrixXd b) {
    if (a.rows() != n_ || b.rows() != k_) fail(ErrorCode::SizeMismatch, "tensor term dimensions");
    a_terms_.push_back(std::move(a));
    b_terms_.push_back(std::move(b));
}

double TensorPseudoMoment::ell(int, int) const { return 1.0 / k_; }

double TensorPseudoMoment::pair(int u, int i, int v, int j) const {
    double acc = 0.0;
    for (std::size_t t = 0; t < a_terms_.size(); ++t) acc += a_terms_[t](u, v) * b_terms_[t](i, j);
    return acc;
}

Eigen::MatrixXd TensorPseudoMoment::pair_contraction(const Eigen::MatrixXd& weight) const {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(k_, k_);
    for (std::size_t t = 0; t < a_terms_.size(); ++t) {
        out += a_terms_[t].cwiseProduct(weight).sum() * b_terms_[t];
    }
    return out;
}

Eigen::MatrixXd TensorPseudoMoment::label_pair_sums() const {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(k_, k_);
    for (std::size_t t = 0; t < a_terms_.size(); ++t) {
        out += (a_terms_[t].sum() - a_terms_[t].trace()) * b_terms_[t];
    }
    return out;
}

Eigen::MatrixXd TensorPseudoMoment::diag_block_sum() const {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n_, n_);
    for (std::size_t t = 0; t < a_terms_.size(); ++t) out += b_terms_[t].trace() * a_terms_[t];
    return out;
}

LoStConstraints lost2_build_constraints(const SimpleGraph& g, const Multigraph& m, int D,
                                        double delta) {
    auto dr = m.regular_degree();
    if (!dr) fail(ErrorCode::NotRegular, "base must be regular");
    LoStConstraints cons;
    cons.D = D;
    cons.delta = delta;
    cons.n = g.n();
    cons.k = m.n();
    cons.d = *dr;
    cons.bipartite = m.bipartite();
    for (int s = 0; s <= D; ++s) {
        cons.saw.push_back(self_avoiding_matrix(g, s, std::max(8, D)));
        auto qm = nb_matrix_exact(m, s);
        Eigen::MatrixXd target(cons.k, cons.k);
        for (int i = 0; i < cons.k; ++i) {
            for (int j = 0; j < cons.k; ++j) {
                target(i, j) = static_cast<double>(qm[i][j]) * cons.n / cons.k;
            }
        }
        cons.path_targets.push_back(target);
    }
    return cons;
}

FeasibilityReport lost2_check(const PseudoMoment& pm, const LoStConstraints& cons) {
    const int n = pm.n();
    const int k = pm.k();
    if (n != cons.n || k != cons.k) fail(ErrorCode::SizeMismatch, "constraints built for other size");

    FeasibilityReport report;
    report.feasible = true;
    report.slack_c0 = cons.slack_c0;
    report.slack_abs = cons.slack_c0 * std::log(n);
    const double eq_tol = 1e-7;

    auto add = [&report](const std::string& name, double residual, double tol) {
        ConstraintCheck c;
        c.name = name;
        c.residual = residual - tol;
        c.tolerance = tol;
        c.pass = residual <= tol;
        report.constraints.push_back(c);
        if (!c.pass) report.feasible = false;
    };

    // Hard constraints: booleanity on the diagonal blocks and the
    // one-label-per-vertex row sums.
    double hard_res = 0.0;
    for (int u = 0; u < n; ++u) {
        double row = 0.0;
        for (int i = 0; i < k; ++i) {
            row += pm.ell(u, i);
            hard_res = std::max(hard_res, std::abs(pm.pair(u, i, u, i) - pm.ell(u, i)));
        }
        hard_res = std::max(hard_res, std::abs(row - 1.0));
    }
    // Row-label sums E~[(sum_j x_{u,j}) x_{v,i}] = E~[x_{v,i}] on sampled pairs.
    const int pair_samples = n <= 120 ? n : 64;
    for (int a = 0; a < pair_samples; ++a) {
        int u = (a * 2654435761U) % n;
        int v = (a * 40503U + 17) % n;
        if (u == v) v = (v + 1) % n;
        for (int i = 0; i < k; ++i) {
            double acc = 0.0;
            for (int j = 0; j < k; ++j) acc += pm.pair(u, j, v, i);
            hard_res = std::max(hard_res, std::abs(acc - pm.ell(v, i)));
        }
    }
    add("hard_constraints", hard_res, eq_tol);

    // Label constraints (exact): single labelled vertices and labelled pairs.
    double label_res = 0.0;
    for (int i = 0; i < k; ++i) {
        double acc = 0.0;
        for (int u = 0; u < n; ++u) acc += pm.ell(u, i);
        label_res = std::max(label_res, std::abs(acc - static_cast<double>(n) / k));
    }
    Eigen::MatrixXd pair_sums = pm.label_pair_sums();
    const double fiber = static_cast<double>(n) / k;
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            double target = (i == j) ? fiber * (fiber - 1.0) : fiber * fiber;
            label_res = std::max(label_res, std::abs(pair_sums(i, j) - target));
        }
    }
    add("label_constraints", label_res, eq_tol * n * n);

    if (cons.bipartite) {
        // Cross-side same-group products vanish (ideal generators).
        double cross_res = 0.0;
        const int half_n = n / 2, half_k = k / 2;
        for (int a = 0; a < pair_samples; ++a) {
            int u = (a * 2654435761U) % half_n;
            int v = half_n + (a * 48271U + 5) % half_n;
            for (int i = 0; i < k; ++i) {
                for (int j = 0; j < k; ++j) {
                    if ((i < half_k) == (j < half_k)) {
                        cross_res = std::max(cross_res, std::abs(pm.pair(u, i, v, j)));
                    }
                }
            }
        }
        add("cross_side_ideal", cross_res, eq_tol);
    }

    // Pruned-forest moment windows: endpoint-labelled paths, s = 1..D.
    for (int s = 1; s <= cons.D; ++s) {
        Eigen::MatrixXd got = pm.pair_contraction(cons.saw[s]);
        double res = (got - cons.path_targets[s]).cwiseAbs().maxCoeff();
        add("moment_path_s" + std::to_string(s), res, cons.delta * n + report.slack_abs);
    }

    add("psd_bordered", std::max(0.0, -pm.psd_floor()), 1e-8 * n);
    return report;
}

Eigen::MatrixXd lost2_reduce(const PseudoMoment& pm, double hard_tol) {
    const int n = pm.n();
    const int k = pm.k();
    double hard_res = 0.0;
    for (int u = 0; u < n; ++u) {
        double row = 0.0;
        for (int i = 0; i < k; ++i) {
            row += pm.ell(u, i);
            hard_res = std::max(hard_res, std::abs(pm.pair(u, i, u, i) - pm.ell(u, i)));
        }
        hard_res = std::max(hard_res, std::abs(row - 1.0));
    }
    if (hard_res > hard_tol) {
        fail(ErrorCode::HardConstraintsViolated, "reduction requires the hard constraints");
    }
    return pm.diag_block_sum();
}

namespace {

Eigen::MatrixXd signed_block(int dim) {
    Eigen::MatrixXd b(dim, dim);
    int half = dim / 2;
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) b(i, j) = ((i < half) == (j < half)) ? 1.0 : -1.0;
    }
    return b;
}

} // namespace

std::unique_ptr<TensorPseudoMoment> lost2_lower_witness(const SimpleGraph& g, const Multigraph& m,
                                                        int D, double delta,
                                                        const GraphEigen* pre) {
    auto dr = m.regular_degree();
    if (!dr) fail(ErrorCode::NotRegular, "base must be regular");
    const int k = m.n();
    const int n = g.n();
    const bool bipartite = m.bipartite();
    auto ram = is_ramanujan(m, bipartite);
    if (!ram.ramanujan) {
        fail(ErrorCode::WitnessUnavailable, "lower-bound witness needs a Ramanujan base");
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(adjacency_matrix(m));
    GraphEigen local;
    const GraphEigen* eig = pre;
    if (!eig) {
        local = graph_eigen(g);
        eig = &local;
    }

    auto witness = std::make_unique<TensorPseudoMoment>(n, k);
    // Nontrivial base eigenpairs: skip the top (d) and, bipartite, bottom (-d).
    int lo = bipartite ? 1 : 0;
    int hi = k - 1; // indices [lo, hi) in ascending order
    double denom = bipartite ? k - 2.0 : k - 1.0;
    for (int idx = lo; idx < hi; ++idx) {
        double lambda = es.eigenvalues()(idx);
        Eigen::VectorXd v = es.eigenvectors().col(idx);
        auto inst = PathStatsInstance::symmetric(lambda, k, *dr, D, delta, bipartite);
        Eigen::MatrixXd p = null_witness(g, inst, eig);
        witness->add_term(p / denom, v * v.transpose());
    }
    if (!bipartite) {
        Eigen::MatrixXd jk = Eigen::MatrixXd::Ones(k, k) - Eigen::MatrixXd::Identity(k, k);
        witness->add_term(Eigen::MatrixXd::Ones(n, n) / (k * denom), jk);
    } else {
        Eigen::MatrixXd bk = signed_block(k);
        Eigen::MatrixXd jk = Eigen::MatrixXd::Ones(k, k);
        Eigen::MatrixXd ik = Eigen::MatrixXd::Identity(k, k);
        witness->add_term(Eigen::MatrixXd::Ones(n, n) / (k * denom),
                          (k - 1.0) / k * jk + bk / k - ik);
        witness->add_term(signed_block(n) / (k * denom), (k - 1.0) / k * bk + jk / k - ik);
    }
    // Q - ll^T telescopes to sum_i (P~(lambda_i) - J/k [- B/k]) (x) v_i v_i^T
    // [+ B_n (x) B_k / k^2]; every left factor is a Gram matrix by
    // construction, so the bordered pseudomoment matrix is PSD.
    witness->set_psd_floor(0.0);
    return witness;
}

} // namespace liftlab
