#include "liftlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "liftlab/rng.hpp"

namespace liftlab {

namespace {

constexpr double kSymTol = 1e-12;

void require_symmetric(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) fail(ErrorCode::NotSymmetric, "matrix is not square");
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
            if (std::abs(m(i, j) - m(j, i)) > kSymTol * std::max(1.0, std::abs(m(i, j)))) {
                fail(ErrorCode::NotSymmetric, "matrix is not symmetric");
            }
        }
    }
}

std::vector<int> bipartition_sign(const SimpleGraph& g) {
    auto layout = find_bipartition(g);
    if (!layout) fail(ErrorCode::InvalidArgument, "graph is not bipartite");
    std::vector<int> sign(g.n(), 1);
    for (int v : layout->right) sign[v] = -1;
    return sign;
}

/// Symmetric Lanczos with full reorthogonalization for the extreme
/// eigenvalues of a linear operator on R^n.
struct LanczosResult {
    double lambda_max;
    double lambda_min;
};

LanczosResult lanczos_extremes(const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& apply,
                               int n, std::uint64_t seed, int max_iter = 400, double tol = 1e-10) {
    max_iter = std::min(max_iter, n);
    Rng rng(seed);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = rng.uniform() - 0.5;
    v.normalize();

    Eigen::MatrixXd basis(n, max_iter);
    std::vector<double> alpha, beta;
    Eigen::VectorXd w(n);

    basis.col(0) = v;
    double prev_max = 0.0, prev_min = 0.0;
    for (int j = 0; j < max_iter; ++j) {
        apply(basis.col(j), w);
        double a = basis.col(j).dot(w);
        alpha.push_back(a);
        w -= a * basis.col(j);
        if (j > 0) w -= beta[j - 1] * basis.col(j - 1);
        // Full reorthogonalization keeps Ritz values honest at n ~ 10^3..10^4.
        for (int r = 0; r <= j; ++r) w -= basis.col(r).dot(w) * basis.col(r);
        double b = w.norm();

        if ((j + 1) % 8 == 0 || b < 1e-14 || j + 1 == max_iter) {
            int m = j + 1;
            Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
            for (int i = 0; i < m; ++i) {
                tri(i, i) = alpha[i];
                if (i + 1 < m) tri(i, i + 1) = tri(i + 1, i) = beta.size() > static_cast<std::size_t>(i)
                                                                  ? beta[i]
                                                                  : 0.0;
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri, Eigen::EigenvaluesOnly);
            double cur_max = es.eigenvalues()(m - 1);
            double cur_min = es.eigenvalues()(0);
            bool converged = j > 16 && std::abs(cur_max - prev_max) < tol && std::abs(cur_min - prev_min) < tol;
            prev_max = cur_max;
            prev_min = cur_min;
            if (converged || b < 1e-14 || j + 1 == max_iter) {
                return {cur_max, cur_min};
            }
        }
        beta.push_back(b);
        basis.col(j + 1) = w / b;
    }
    return {prev_max, prev_min};
}

} // namespace

double Spectrum::extreme_nontrivial() const {
    double best = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!trivial[i]) best = std::max(best, std::abs(values[i]));
    }
    return best;
}

Eigen::MatrixXd adjacency_matrix(const Multigraph& g) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.n(), g.n());
    for (int i = 0; i < g.n(); ++i) {
        for (int j = 0; j < g.n(); ++j) a(i, j) = g.mult(i, j);
    }
    return a;
}

Eigen::MatrixXd adjacency_matrix(const SimpleGraph& g) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.n(), g.n());
    for (auto [u, v] : g.edges()) {
        a(u, v) = 1.0;
        a(v, u) = 1.0;
    }
    return a;
}

Spectrum symmetric_spectrum(const Eigen::MatrixXd& m) {
    require_symmetric(m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    Spectrum spec;
    spec.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + m.rows());
    std::reverse(spec.values.begin(), spec.values.end());
    spec.trivial.assign(spec.values.size(), 0);
    return spec;
}

namespace {

Spectrum flag_trivial(Spectrum spec, int d, bool bipartite) {
    if (!spec.values.empty()) spec.trivial.front() = 1; // lambda_1 = d
    if (bipartite && spec.values.size() > 1) spec.trivial.back() = 1; // lambda_n = -d
    (void)d;
    return spec;
}

} // namespace

Spectrum graph_spectrum(const Multigraph& g, bool bipartite) {
    auto d = g.regular_degree();
    if (!d) fail(ErrorCode::NotRegular, "spectrum flagging requires a regular graph");
    return flag_trivial(symmetric_spectrum(adjacency_matrix(g)), *d, bipartite);
}

Spectrum graph_spectrum(const SimpleGraph& g, bool bipartite) {
    auto d = g.regular_degree();
    if (!d) fail(ErrorCode::NotRegular, "spectrum flagging requires a regular graph");
    return flag_trivial(symmetric_spectrum(adjacency_matrix(g)), *d, bipartite);
}

DeflatedExtremes deflated_extremes(const SimpleGraph& g, bool bipartite, std::uint64_t seed,
                                   int dense_cutoff) {
    if (!g.connected()) fail(ErrorCode::DisconnectedInput, "deflation requires a connected graph");
    auto dr = g.regular_degree();
    if (!dr) fail(ErrorCode::NotRegular, "deflation requires a regular graph");
    const int n = g.n();
    const double d = static_cast<double>(*dr);

    std::vector<int> sign;
    if (bipartite) sign = bipartition_sign(g);

    if (n <= dense_cutoff) {
        Eigen::MatrixXd b = adjacency_matrix(g);
        b.array() -= d / n;
        if (bipartite) {
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) b(i, j) += d / n * sign[i] * sign[j];
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b, Eigen::EigenvaluesOnly);
        // The projected-out directions sit at 0; drop one zero per projector.
        std::vector<double> vals(es.eigenvalues().data(), es.eigenvalues().data() + n);
        std::sort(vals.begin(), vals.end());
        auto drop_zero = [&vals]() {
            auto it = std::min_element(vals.begin(), vals.end(),
                                       [](double a, double b) { return std::abs(a) < std::abs(b); });
            vals.erase(it);
        };
        drop_zero();
        if (bipartite) drop_zero();
        return {vals.back(), vals.front()};
    }

    auto apply = [&g, d, n, bipartite, &sign](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
        y.setZero();
        for (int u = 0; u < n; ++u) {
            double acc = 0.0;
            for (int v : g.neighbors(u)) acc += x[v];
            y[u] = acc;
        }
        double ones_dot = x.sum();
        y.array() -= d / n * ones_dot;
        if (bipartite) {
            double sign_dot = 0.0;
            for (int u = 0; u < n; ++u) sign_dot += sign[u] * x[u];
            for (int u = 0; u < n; ++u) y[u] -= d / n * sign_dot * sign[u];
        }
    };
    auto res = lanczos_extremes(apply, n, seed);
    return {res.lambda_max, res.lambda_min};
}

double spectral_radius(const SimpleGraph& g, bool bipartite, std::uint64_t seed) {
    auto ext = deflated_extremes(g, bipartite, seed);
    return std::max(std::abs(ext.lambda_max), std::abs(ext.lambda_min));
}

namespace {

RamanujanResult ramanujan_from_extreme(double extreme, int d) {
    const double bound = 2.0 * std::sqrt(static_cast<double>(d - 1));
    return {extreme <= bound + 1e-9, extreme, bound - extreme};
}

} // namespace

RamanujanResult is_ramanujan(const Multigraph& h, bool bipartite) {
    if (!h.connected()) fail(ErrorCode::DisconnectedInput, "Ramanujan test requires a connected graph");
    auto dr = h.regular_degree();
    if (!dr) fail(ErrorCode::NotRegular, "Ramanujan test requires a regular graph");
    const int k = h.n();
    const double d = static_cast<double>(*dr);
    Eigen::MatrixXd b = adjacency_matrix(h);
    b.array() -= d / k;
    if (bipartite) {
        std::vector<int> side;
        if (!h.bipartite(&side)) fail(ErrorCode::InvalidArgument, "bipartite flag on non-bipartite graph");
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) {
                double si = side[i] == 0 ? 1.0 : -1.0;
                double sj = side[j] == 0 ? 1.0 : -1.0;
                b(i, j) += d / k * si * sj;
            }
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b, Eigen::EigenvaluesOnly);
    double extreme = std::max(std::abs(es.eigenvalues()(0)), std::abs(es.eigenvalues()(k - 1)));
    return ramanujan_from_extreme(extreme, *dr);
}

RamanujanResult is_ramanujan(const SimpleGraph& g, bool bipartite) {
    auto dr = g.regular_degree();
    if (!dr) fail(ErrorCode::NotRegular, "Ramanujan test requires a regular graph");
    auto ext = deflated_extremes(g, bipartite);
    double extreme = std::max(std::abs(ext.lambda_max), std::abs(ext.lambda_min));
    return ramanujan_from_extreme(extreme, *dr);
}

double NBPolynomial::eval(double x) const {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + static_cast<double>(*it);
    return acc;
}

NBPolynomial nb_polynomial(int s, int d) {
    if (s < 0) fail(ErrorCode::InvalidArgument, "negative degree");
    std::vector<std::vector<long long>> q(std::max(s + 1, 2));
    q[0] = {1};
    q[1] = {0, 1};
    if (s >= 2) q[2] = {-static_cast<long long>(d), 0, 1};
    for (int t = 3; t <= s; ++t) {
        std::vector<long long> next(t + 1, 0);
        for (int i = 0; i < static_cast<int>(q[t - 1].size()); ++i) {
            long long prod;
            if (__builtin_mul_overflow(q[t - 1][i], 1LL, &prod)) fail(ErrorCode::Overflow, "nb coeff");
            next[i + 1] += q[t - 1][i];
        }
        for (int i = 0; i < static_cast<int>(q[t - 2].size()); ++i) {
            long long term;
            if (__builtin_mul_overflow(q[t - 2][i], static_cast<long long>(d - 1), &term)) {
                fail(ErrorCode::Overflow, "nb coefficient overflow");
            }
            if (__builtin_sub_overflow(next[i], term, &next[i])) {
                fail(ErrorCode::Overflow, "nb coefficient overflow");
            }
        }
        q[t] = std::move(next);
    }
    NBPolynomial out;
    out.s = s;
    out.d = d;
    out.coeffs = q[s];
    return out;
}

namespace {

void sparse_adjacency_product(const SimpleGraph& g, const Eigen::MatrixXd& x, Eigen::MatrixXd& out) {
    out.setZero();
    for (int u = 0; u < g.n(); ++u) {
        for (int v : g.neighbors(u)) out.row(u) += x.row(v);
    }
}

} // namespace

Eigen::MatrixXd nb_matrix(const SimpleGraph& g, int s) {
    auto dr = g.regular_degree();
    if (!dr) fail(ErrorCode::NotRegular, "non-backtracking matrices need a regular graph");
    const int n = g.n();
    const double d = static_cast<double>(*dr);
    Eigen::MatrixXd prev = Eigen::MatrixXd::Identity(n, n);
    if (s == 0) return prev;
    Eigen::MatrixXd cur = adjacency_matrix(g);
    if (s == 1) return cur;
    Eigen::MatrixXd tmp(n, n);
    for (int t = 2; t <= s; ++t) {
        sparse_adjacency_product(g, cur, tmp);
        if (t == 2) {
            tmp -= d * prev;
        } else {
            tmp -= (d - 1.0) * prev;
        }
        prev.swap(cur);
        cur.swap(tmp);
    }
    return cur;
}

std::vector<std::vector<long long>> nb_matrix_exact(const Multigraph& m, int s) {
    auto dr = m.regular_degree();
    if (!dr) fail(ErrorCode::NotRegular, "non-backtracking matrices need a regular graph");
    const int k = m.n();
    const long long d = *dr;
    using Mat = std::vector<std::vector<long long>>;
    auto mat_mul_adj = [&](const Mat& x) {
        Mat out(k, std::vector<long long>(k, 0));
        for (int i = 0; i < k; ++i) {
            for (int l = 0; l < k; ++l) {
                long long mil = m.mult(i, l);
                if (mil == 0) continue;
                for (int j = 0; j < k; ++j) {
                    long long term;
                    if (__builtin_mul_overflow(mil, x[l][j], &term) ||
                        __builtin_add_overflow(out[i][j], term, &out[i][j])) {
                        fail(ErrorCode::Overflow, "exact nb matrix overflow");
                    }
                }
            }
        }
        return out;
    };
    Mat prev(k, std::vector<long long>(k, 0));
    for (int i = 0; i < k; ++i) prev[i][i] = 1;
    if (s == 0) return prev;
    Mat cur(k, std::vector<long long>(k, 0));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) cur[i][j] = m.mult(i, j);
    }
    for (int t = 2; t <= s; ++t) {
        Mat next = mat_mul_adj(cur);
        long long c = (t == 2) ? d : (d - 1);
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) {
                long long term;
                if (__builtin_mul_overflow(c, prev[i][j], &term) ||
                    __builtin_sub_overflow(next[i][j], term, &next[i][j])) {
                    fail(ErrorCode::Overflow, "exact nb matrix overflow");
                }
            }
        }
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

std::vector<Eigen::VectorXd> nb_apply(const SimpleGraph& g, const Eigen::VectorXd& x, int smax) {
    auto dr = g.regular_degree();
    if (!dr) fail(ErrorCode::NotRegular, "non-backtracking application needs a regular graph");
    const double d = static_cast<double>(*dr);
    const int n = g.n();
    std::vector<Eigen::VectorXd> out;
    out.reserve(smax + 1);
    out.push_back(x);
    if (smax == 0) return out;
    Eigen::VectorXd ax(n);
    auto adj_apply = [&g, n](const Eigen::VectorXd& in, Eigen::VectorXd& res) {
        for (int u = 0; u < n; ++u) {
            double acc = 0.0;
            for (int v : g.neighbors(u)) acc += in[v];
            res[u] = acc;
        }
    };
    adj_apply(x, ax);
    out.push_back(ax);
    Eigen::VectorXd next(n);
    for (int s = 2; s <= smax; ++s) {
        adj_apply(out[s - 1], next);
        next -= (s == 2 ? d : d - 1.0) * out[s - 2];
        out.push_back(next);
    }
    return out;
}

Eigen::MatrixXd nb_gram(const SimpleGraph& g, int smax) {
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(smax + 1, smax + 1);
    const int n = g.n();
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    for (int c = 0; c < n; ++c) {
        e[c] = 1.0;
        auto cols = nb_apply(g, e, smax);
        e[c] = 0.0;
        for (int s = 0; s <= smax; ++s) {
            for (int t = s; t <= smax; ++t) gram(s, t) += cols[s].dot(cols[t]);
        }
    }
    for (int s = 0; s <= smax; ++s) {
        for (int t = 0; t < s; ++t) gram(s, t) = gram(t, s);
    }
    return gram;
}

std::vector<double> nb_inner_products(const SimpleGraph& g, const Eigen::MatrixXd& X, int smax) {
    const int n = g.n();
    std::vector<double> acc(smax + 1, 0.0);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    for (int c = 0; c < n; ++c) {
        e[c] = 1.0;
        auto cols = nb_apply(g, e, smax);
        e[c] = 0.0;
        for (int s = 0; s <= smax; ++s) acc[s] += X.col(c).dot(cols[s]);
    }
    return acc;
}

Eigen::MatrixXd self_avoiding_matrix(const SimpleGraph& g, int s, int depth_cap) {
    if (s > depth_cap) fail(ErrorCode::DepthCapExceeded, "self-avoiding depth exceeds cap");
    const int n = g.n();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    if (s == 0) return Eigen::MatrixXd::Identity(n, n);
    std::vector<char> on_path(n, 0);
    std::vector<int> stack;
    // Depth-first enumeration of simple paths of length exactly s from each u.
    std::function<void(int, int, int)> dfs = [&](int start, int v, int depth) {
        if (depth == s) {
            out(start, v) += 1.0;
            return;
        }
        for (int w : g.neighbors(v)) {
            if (!on_path[w]) {
                on_path[w] = 1;
                dfs(start, w, depth + 1);
                on_path[w] = 0;
            }
        }
    };
    for (int u = 0; u < n; ++u) {
        on_path[u] = 1;
        dfs(u, u, 0);
        on_path[u] = 0;
    }
    return out;
}

namespace {

/// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
}

} // namespace

KMQuadrature KMQuadrature::make(int d, int node_count) {
    std::vector<double> gl_nodes, gl_weights;
    gauss_legendre(node_count, gl_nodes, gl_weights);
    KMQuadrature q;
    q.d = d;
    const double r = 2.0 * std::sqrt(static_cast<double>(d - 1));
    q.nodes.resize(node_count);
    q.weights.resize(node_count);
    for (int i = 0; i < node_count; ++i) {
        double theta = gl_nodes[i] * M_PI / 2.0;
        double x = r * std::sin(theta);
        // After x = r sin(theta): dmu = (d / 2 pi) r^2 cos^2(theta) / (d^2 - x^2) dtheta.
        double density = d / (2.0 * M_PI) * r * r * std::cos(theta) * std::cos(theta) /
                         (static_cast<double>(d) * d - x * x);
        q.nodes[i] = x;
        q.weights[i] = gl_weights[i] * (M_PI / 2.0) * density;
    }
    return q;
}

double KMQuadrature::integrate(const std::function<double(double)>& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
}

double km_moment(const std::function<double(double)>& f, int d) {
    double prev = 0.0;
    bool have_prev = false;
    for (int n = 64; n <= 8192; n *= 2) {
        double cur = KMQuadrature::make(d, n).integrate(f);
        if (have_prev && std::abs(cur - prev) < 1e-11) return cur;
        prev = cur;
        have_prev = true;
    }
    return prev;
}

double km_moment(const std::vector<double>& poly_coeffs, int d) {
    return km_moment([&poly_coeffs](double x) { return poly_eval(poly_coeffs, x); }, d);
}

double km_nb_norm2(int s, int d) {
    if (s == 0) return 1.0;
    return static_cast<double>(d) * std::pow(static_cast<double>(d - 1), s - 1);
}

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

std::vector<double> poly_coeffs(const NBPolynomial& p) {
    return std::vector<double>(p.coeffs.begin(), p.coeffs.end());
}

double poly_eval(const std::vector<double>& coeffs, double x) {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::vector<long long> chebyshev_T(int s) {
    if (s < 0) fail(ErrorCode::InvalidArgument, "negative degree");
    if (s > 62) fail(ErrorCode::Overflow, "Chebyshev coefficients exceed 64-bit range beyond s = 62");
    std::vector<std::vector<long long>> t(std::max(s + 1, 2));
    t[0] = {1};
    t[1] = {0, 1};
    for (int k = 2; k <= s; ++k) {
        std::vector<long long> next(k + 1, 0);
        for (int i = 0; i < static_cast<int>(t[k - 1].size()); ++i) {
            long long term;
            if (__builtin_mul_overflow(2LL, t[k - 1][i], &term) ||
                __builtin_add_overflow(next[i + 1], term, &next[i + 1])) {
                fail(ErrorCode::Overflow, "Chebyshev coefficient overflow");
            }
        }
        for (int i = 0; i < static_cast<int>(t[k - 2].size()); ++i) {
            if (__builtin_sub_overflow(next[i], t[k - 2][i], &next[i])) {
                fail(ErrorCode::Overflow, "Chebyshev coefficient overflow");
            }
        }
        t[k] = std::move(next);
    }
    return t[s];
}

double chebyshev_eval_outside(int s, double x) {
    double root = std::sqrt(x * x - 1.0);
    return 0.5 * (std::pow(x - root, s) + std::pow(x + root, s));
}

double chebyshev_eval(int s, double x) {
    if (s == 0) return 1.0;
    double prev = 1.0, cur = x;
    for (int k = 2; k <= s; ++k) {
        double next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

std::vector<int> bad_vertices(const SimpleGraph& g, int L, int C) {
    const int n = g.n();
    std::vector<char> on_cycle(n, 0);
    // Mark every vertex lying on a simple cycle of length <= C by DFS over
    // simple paths from each start vertex (closing edge back to the start).
    std::vector<char> on_path(n, 0);
    std::vector<int> path;
    std::function<void(int, int)> dfs = [&](int start, int v) {
        if (static_cast<int>(path.size()) >= 3 && g.has_edge(v, start)) {
            for (int w : path) on_cycle[w] = 1;
        }
        if (static_cast<int>(path.size()) == C) return;
        for (int w : g.neighbors(v)) {
            if (w > start && !on_path[w]) { // canonical start = smallest vertex
                on_path[w] = 1;
                path.push_back(w);
                dfs(start, w);
                path.pop_back();
                on_path[w] = 0;
            }
        }
    };
    for (int u = 0; u < n; ++u) {
        on_path[u] = 1;
        path.assign(1, u);
        dfs(u, u);
        on_path[u] = 0;
    }
    // BFS ball of radius L around the short-cycle vertices.
    std::vector<int> dist(n, -1);
    std::queue<int> q;
    for (int v = 0; v < n; ++v) {
        if (on_cycle[v]) {
            dist[v] = 0;
            q.push(v);
        }
    }
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        if (dist[u] == L) continue;
        for (int v : g.neighbors(u)) {
            if (dist[v] == -1) {
                dist[v] = dist[u] + 1;
                q.push(v);
            }
        }
    }
    std::vector<int> bad;
    for (int v = 0; v < n; ++v) {
        if (dist[v] != -1) bad.push_back(v);
    }
    return bad;
}

} // namespace liftlab
