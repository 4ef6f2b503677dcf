#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "liftlab/builtins.hpp"
#include "liftlab/ensembles.hpp"
#include "liftlab/path_stats.hpp"
#include "liftlab/spectral.hpp"

using namespace liftlab;

namespace {

SimpleGraph cycle(int n) {
    SimpleGraph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

SimpleGraph complete_simple(int n) {
    SimpleGraph g(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    }
    return g;
}

} // namespace

TEST_CASE("symmetric spectrum matches closed forms") {
    auto spec = symmetric_spectrum(adjacency_matrix(complete_simple(4)));
    CHECK(spec.values[0] == doctest::Approx(3.0).epsilon(1e-12));
    for (int i = 1; i < 4; ++i) CHECK(spec.values[i] == doctest::Approx(-1.0).epsilon(1e-12));

    Eigen::MatrixXd bad(2, 2);
    bad << 0, 1, 0, 0;
    CHECK_THROWS_AS(symmetric_spectrum(bad), Error);

    auto fig3 = graph_spectrum(resolve_builtin("fig3_d4"));
    CHECK(fig3.extreme_nontrivial() == doctest::Approx(3.0).epsilon(1e-9));

    auto fig1 = graph_spectrum(resolve_builtin("fig1_d3"));
    CHECK(fig1.extreme_nontrivial() == doctest::Approx(2.8251).epsilon(1e-3));
}

TEST_CASE("spectral radius deflates the trivial eigenvalues") {
    CHECK(spectral_radius(complete_simple(4)) == doctest::Approx(1.0).epsilon(1e-9));
    // 6-cycle: circulant eigenvalues 2 cos(pi j / 3).
    CHECK(spectral_radius(cycle(6), /*bipartite=*/true) == doctest::Approx(1.0).epsilon(1e-9));

    auto fig4 = is_ramanujan(resolve_builtin("fig4_d7"));
    CHECK(fig4.extreme == doctest::Approx(3.791).epsilon(1e-3));

    SimpleGraph disconnected(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
    CHECK_THROWS_AS(spectral_radius(disconnected), Error);
}

TEST_CASE("deflation agrees with the full-spectrum oracle on the builtins") {
    for (const auto& name : figure_builtin_names()) {
        Multigraph h = resolve_builtin(name);
        int d = h.regular_degree().value();
        auto spec = symmetric_spectrum(adjacency_matrix(h));
        // Oracle: delete exactly one copy of d, take max |.| of the rest.
        std::multiset<double> vals(spec.values.begin(), spec.values.end());
        auto it_top = vals.end();
        --it_top;
        vals.erase(it_top);
        double oracle = 0.0;
        for (double v : vals) oracle = std::max(oracle, std::abs(v));
        CHECK(is_ramanujan(h).extreme == doctest::Approx(oracle).epsilon(1e-9));
    }
}

TEST_CASE("Ramanujan verdicts") {
    for (int d : {3, 5, 9, 16}) {
        auto res = is_ramanujan(complete_regular(d));
        CHECK(res.ramanujan);
        CHECK(res.extreme == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(res.margin == doctest::Approx(2.0 * std::sqrt(d - 1.0) - 1.0).epsilon(1e-9));
    }
    auto fig2 = is_ramanujan(resolve_builtin("fig2_d4"));
    CHECK(fig2.ramanujan);
    CHECK(fig2.extreme == doctest::Approx(3.2360679).epsilon(1e-6));

    // (d/(k-1))(J - I) is Ramanujan exactly when k - 1 >= d / (2 sqrt(d-1)).
    CHECK(is_ramanujan(hkd_graph(4, 3)).ramanujan);
    CHECK(is_ramanujan(hkd_graph(5, 4)).ramanujan);
    CHECK_FALSE(is_ramanujan(hkd_graph(2, 9)).ramanujan);
}

TEST_CASE("non-backtracking polynomial coefficients") {
    auto q0 = nb_polynomial(0, 3);
    CHECK(q0.coeffs == std::vector<long long>{1});
    auto q2 = nb_polynomial(2, 3);
    CHECK(q2.coeffs == std::vector<long long>{-3, 0, 1});
    auto q3 = nb_polynomial(3, 5);
    // x^3 - (2d - 1) x
    CHECK(q3.coeffs == std::vector<long long>{0, -9, 0, 1});
    // Scalar recurrence agrees with the coefficient form.
    for (int s = 0; s <= 8; ++s) {
        for (double x : {-2.5, 0.3, 1.0, 2.9}) {
            CHECK(nb_polynomial(s, 3).eval(x) == doctest::Approx(nb_eval(s, 3, x)).epsilon(1e-12));
        }
    }
}

TEST_CASE("non-backtracking matrices count non-backtracking walks") {
    SimpleGraph c6 = cycle(6);
    auto a1 = nb_matrix(c6, 1);
    CHECK(a1.isApprox(adjacency_matrix(c6), 1e-12));

    // On a cycle, the unique non-backtracking continuation keeps walking, so
    // A^(2) is the distance-2 indicator.
    auto a2 = nb_matrix(c6, 2);
    for (int u = 0; u < 6; ++u) {
        for (int v = 0; v < 6; ++v) {
            int dist = std::min((u - v + 6) % 6, (v - u + 6) % 6);
            CHECK(a2(u, v) == doctest::Approx(dist == 2 ? 1.0 : 0.0));
        }
    }

    // trace A^(2) = 0 on any simple regular graph.
    SimpleGraph g = sample_regular(60, 3, 11);
    CHECK(nb_matrix(g, 2).trace() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("matrix recurrence equals polynomial expansion on small graphs") {
    SimpleGraph g = sample_regular(80, 3, 5);
    Eigen::MatrixXd a = adjacency_matrix(g);
    for (int s = 0; s <= 5; ++s) {
        auto poly = nb_polynomial(s, 3);
        Eigen::MatrixXd expanded = Eigen::MatrixXd::Zero(g.n(), g.n());
        Eigen::MatrixXd power = Eigen::MatrixXd::Identity(g.n(), g.n());
        for (std::size_t i = 0; i < poly.coeffs.size(); ++i) {
            expanded += static_cast<double>(poly.coeffs[i]) * power;
            power = power * a;
        }
        CHECK((nb_matrix(g, s) - expanded).cwiseAbs().maxCoeff() <= 1e-6 * g.n());
    }
}

TEST_CASE("self-avoiding matrices count simple paths") {
    SimpleGraph triangle = complete_simple(3);
    auto saw1 = self_avoiding_matrix(triangle, 1);
    CHECK(saw1.isApprox(adjacency_matrix(triangle), 1e-12));
    auto saw2 = self_avoiding_matrix(triangle, 2);
    for (int u = 0; u < 3; ++u) {
        for (int v = 0; v < 3; ++v) {
            CHECK(saw2(u, v) == doctest::Approx(u == v ? 0.0 : 1.0));
        }
    }
    CHECK_THROWS_AS(self_avoiding_matrix(triangle, 9), Error);
}

TEST_CASE("self-avoiding vs non-backtracking Frobenius gap stays logarithmic") {
    const int n = 500;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SimpleGraph g = sample_regular(n, 3, seed);
        double gap = (self_avoiding_matrix(g, 4) - nb_matrix(g, 4)).squaredNorm();
        CHECK(gap <= 50.0 * std::log(n));
    }
}

TEST_CASE("Kesten-McKay quadrature") {
    for (int d : {3, 4, 7}) {
        CHECK(km_moment(std::vector<double>{1.0}, d) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(km_moment(std::vector<double>{0.0, 1.0}, d) == doctest::Approx(0.0).epsilon(1e-10));
    }
    // Orthogonality and the closed-form tree-walk norms d (d-1)^{s-1}.
    for (int s = 0; s <= 10; ++s) {
        for (int t = 0; t <= 10; ++t) {
            double m = km_moment(
                poly_mul(poly_coeffs(nb_polynomial(s, 3)), poly_coeffs(nb_polynomial(t, 3))), 3);
            if (s != t) {
                CHECK(std::abs(m) <= 1e-9);
            } else {
                CHECK(m == doctest::Approx(km_nb_norm2(s, 3)).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("Chebyshev utilities") {
    CHECK(chebyshev_T(2) == std::vector<long long>{-1, 0, 2});
    auto t4 = chebyshev_T(4);
    double via_coeffs = 0.0;
    double x = 1.1;
    double power = 1.0;
    for (long long c : t4) {
        via_coeffs += static_cast<double>(c) * power;
        power *= x;
    }
    CHECK(chebyshev_eval_outside(4, 1.1) == doctest::Approx(via_coeffs).epsilon(1e-12));
    // Even degree on |x| > 1: T_s(x) >= x^s / 2.
    for (int s : {2, 4, 8, 16}) {
        CHECK(chebyshev_eval_outside(s, 1.2) >= std::pow(1.2, s) / 2.0);
    }
    CHECK_THROWS_AS(chebyshev_T(63), Error);
}

TEST_CASE("bad vertices") {
    // A tree has none.
    SimpleGraph path(8);
    for (int i = 0; i + 1 < 8; ++i) path.add_edge(i, i + 1);
    CHECK(bad_vertices(path, 3, 4).empty());

    // Triangle with a pendant path: everything within L of the triangle.
    SimpleGraph g(6, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 5}});
    auto bad1 = bad_vertices(g, 1, 3);
    CHECK(bad1 == std::vector<int>{0, 1, 2, 3});
    auto bad3 = bad_vertices(g, 3, 3);
    CHECK(bad3 == std::vector<int>{0, 1, 2, 3, 4, 5});
    auto bad0 = bad_vertices(g, 0, 3);
    CHECK(bad0 == std::vector<int>{0, 1, 2});
}

TEST_CASE("bad vertex counts stay logarithmic on random cubic graphs") {
    const int n = 2000;
    int ok = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SimpleGraph g = sample_regular(n, 3, seed);
        auto bad = bad_vertices(g, 4, 4);
        if (static_cast<double>(bad.size()) <= 40.0 * std::log(n)) ++ok;
    }
    CHECK(ok >= 9);
}

TEST_CASE("Lanczos extremes agree with dense decomposition") {
    SimpleGraph g = sample_regular(600, 3, 3);
    auto dense = deflated_extremes(g, false, 1, /*dense_cutoff=*/4096);
    auto lanczos = deflated_extremes(g, false, 1, /*dense_cutoff=*/16);
    CHECK(lanczos.lambda_max == doctest::Approx(dense.lambda_max).epsilon(1e-7));
    CHECK(lanczos.lambda_min == doctest::Approx(dense.lambda_min).epsilon(1e-7));
}
