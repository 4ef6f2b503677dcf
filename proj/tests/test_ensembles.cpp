#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <thread>

#include "liftlab/builtins.hpp"
#include "liftlab/ensembles.hpp"
#include "liftlab/spectral.hpp"

using namespace liftlab;

TEST_CASE("the only cubic graph on 4 vertices is complete") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        SimpleGraph g = sample_regular(4, 3, seed);
        CHECK(g.edge_count() == 6);
    }
    CHECK_THROWS_WITH_AS(sample_regular(5, 3, 1), doctest::Contains("ParityViolation"), Error);
}

TEST_CASE("sampler determinism across calls") {
    SimpleGraph a = sample_regular(200, 3, 42);
    SimpleGraph b = sample_regular(200, 3, 42);
    CHECK(a.edges() == b.edges());
    SimpleGraph c = sample_regular(200, 3, 43);
    CHECK(a.edges() != c.edges());
}

TEST_CASE("sampled cubic graphs concentrate their spectral gap") {
    int ok = 0;
    const double bound = 2.0 * std::sqrt(2.0) + 0.2;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        SimpleGraph g = sample_regular(1000, 3, seed);
        REQUIRE(g.is_regular(3));
        if (deflated_extremes(g).lambda_max <= bound) ++ok;
    }
    CHECK(ok >= 18);
}

TEST_CASE("bipartite sampler: degrees, sides, trivial eigenvalues") {
    auto [g, layout] = sample_bipartite_regular(2 * 3, 3, 9);
    CHECK(g.is_regular(3));
    for (auto [u, v] : g.edges()) CHECK(((u < 3) != (v < 3)));

    auto [g2, layout2] = sample_bipartite_regular(400, 3, 5);
    auto spec = symmetric_spectrum(adjacency_matrix(g2));
    CHECK(spec.values.front() == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(spec.values.back() == doctest::Approx(-3.0).epsilon(1e-9));

    int ok = 0;
    const double bound = 2.0 * std::sqrt(2.0) + 0.2;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto [gb, lb] = sample_bipartite_regular(2000, 3, seed);
        if (deflated_extremes(gb, /*bipartite=*/true).lambda_max <= bound) ++ok;
    }
    CHECK(ok >= 18);
}

TEST_CASE("lift of a triple loop is a union of matchings") {
    Multigraph loops(1);
    loops.add_edges(0, 0, 3);
    LiftedGraph lift = random_lift(loops, 100, 3);
    CHECK(lift.graph.n() == 100);
    CHECK(lift.graph.is_regular(3));
    check_lift_invariants(lift);
    CHECK_THROWS_WITH_AS(random_lift(loops, 99, 3), doctest::Contains("OddFiberWithLoops"), Error);
}

TEST_CASE("m = 1 lift of a simple base is the base itself") {
    Multigraph k4 = complete_regular(3);
    LiftedGraph lift = random_lift(k4, 1, 7);
    CHECK(lift.graph.n() == 4);
    CHECK(lift.graph.edge_count() == 6);
    check_lift_invariants(lift);
}

TEST_CASE("lift invariants and spectrum containment for the cubic figure base") {
    Multigraph fig1 = resolve_builtin("fig1_d3");
    LiftedGraph lift = random_lift(fig1, 50, 123);
    CHECK(lift.graph.n() == 600);
    CHECK(lift.graph.is_regular(3));
    check_lift_invariants(lift);

    // Every base eigenpair lifts to a fiber-constant eigenvector.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(adjacency_matrix(fig1));
    for (int i = 0; i < fig1.n(); ++i) {
        double lambda = es.eigenvalues()(i);
        Eigen::VectorXd lifted(lift.graph.n());
        for (int v = 0; v < lift.graph.n(); ++v) lifted[v] = es.eigenvectors()(lift.sigma[v], i);
        Eigen::VectorXd av = Eigen::VectorXd::Zero(lift.graph.n());
        for (auto [u, v] : lift.graph.edges()) {
            av[u] += lifted[v];
            av[v] += lifted[u];
        }
        CHECK((av - lambda * lifted).cwiseAbs().maxCoeff() <= 1e-8);
    }
}

TEST_CASE("zero-budget noise is the identity") {
    Multigraph fig1 = resolve_builtin("fig1_d3");
    LiftedGraph lift = random_lift(fig1, 10, 1);
    NoiseSpec spec;
    spec.epsilon = 1e-4; // floor(eps n) = 0
    auto res = apply_noise(lift.graph, spec, 5, &lift);
    CHECK(res.graph.edges() == lift.graph.edges());
    CHECK(res.edges_deleted == 0);
}

TEST_CASE("random noise keeps regularity and the distance budget") {
    Multigraph fig1 = resolve_builtin("fig1_d3");
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        LiftedGraph lift = random_lift(fig1, 84, seed); // n = 1008
        NoiseSpec spec;
        spec.epsilon = 0.01;
        auto res = apply_noise(lift.graph, spec, seed * 7, &lift);
        CHECK(res.graph.is_regular(3));
        Rational dist = graph_distance(lift.graph, res.graph);
        CHECK(dist <= Rational(1, 100));
        CHECK(res.edges_deleted == static_cast<int>(0.01 * lift.graph.n()));
    }
}

TEST_CASE("respectful noise only adds edges over base edges") {
    Multigraph fig1 = resolve_builtin("fig1_d3");
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        LiftedGraph lift = random_lift(fig1, 20, seed);
        NoiseSpec spec;
        spec.epsilon = 0.02;
        spec.mode = NoiseMode::RespectfulRand;
        auto res = apply_noise(lift.graph, spec, seed + 1000, &lift);
        CHECK(res.graph.is_regular(3));
        for (auto [u, v] : res.graph.edges()) {
            if (!lift.graph.has_edge(u, v)) {
                CHECK(fig1.mult(lift.sigma[u], lift.sigma[v]) > 0);
            }
        }
    }
    NoiseSpec spec;
    spec.epsilon = 0.02;
    spec.mode = NoiseMode::RespectfulRand;
    LiftedGraph lift = random_lift(fig1, 20, 1);
    CHECK_THROWS_WITH_AS(apply_noise(lift.graph, spec, 1), doctest::Contains("MissingBase"),
                         Error);
}

TEST_CASE("bipartite noise preserves the bipartition") {
    Multigraph cover = double_cover(resolve_builtin("fig1_d3")); // 24-vertex bipartite
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        LiftedGraph lift = random_lift(cover, 20, seed); // 480 vertices
        NoiseSpec spec;
        spec.epsilon = 0.01;
        spec.mode = NoiseMode::RandBi;
        auto res = apply_noise(lift.graph, spec, seed, &lift);
        CHECK(res.graph.is_regular(3));
        auto layout = find_bipartition(res.graph);
        REQUIRE(layout.has_value());
        // Same sides as before the noise: every new edge still crosses.
        auto before = find_bipartition(lift.graph);
        REQUIRE(before.has_value());
        std::vector<int> side(lift.graph.n(), 0);
        for (int v : before->right) side[v] = 1;
        for (auto [u, v] : res.graph.edges()) CHECK(side[u] != side[v]);
    }
}

TEST_CASE("switching adversaries stay within budget") {
    Multigraph fig1 = resolve_builtin("fig1_d3");
    LiftedGraph lift = random_lift(fig1, 50, 2);
    Rng rng(17);
    SimpleGraph out = switching_adversary()(lift, 0.02, rng);
    CHECK(out.is_regular(3));
    CHECK(graph_distance(lift.graph, out) <= Rational(2, 100));

    Rng rng2(18);
    SimpleGraph out2 = respectful_switching_adversary()(lift, 0.02, rng2);
    CHECK(out2.is_regular(3));
    for (auto [u, v] : out2.edges()) {
        if (!lift.graph.has_edge(u, v)) CHECK(fig1.mult(lift.sigma[u], lift.sigma[v]) > 0);
    }
}

TEST_CASE("detection experiment separates planted eigenvalue membership") {
    Multigraph fig1 = resolve_builtin("fig1_d3");
    auto spec = symmetric_spectrum(adjacency_matrix(fig1));
    double lambda2 = spec.values[1];

    GraphSampler null_sampler = [](Rng& rng) { return sample_regular(240, 3, rng.next_u64()); };
    GraphSampler planted_sampler = [&fig1](Rng& rng) {
        return random_lift(fig1, 20, rng.next_u64()).graph;
    };
    auto res = detect_experiment(null_sampler, planted_sampler,
                                 eigenvalue_membership_statistic(lambda2), 0.5, 20, 7);
    CHECK(res.type_i == doctest::Approx(0.0));
    CHECK(res.type_ii == doctest::Approx(0.0));

    // Identical samplers: no statistic separates them.
    auto blind = detect_experiment(null_sampler, null_sampler, spectral_radius_statistic(),
                                   2.0 * std::sqrt(2.0), 20, 7);
    CHECK(blind.type_i + blind.type_ii == doctest::Approx(1.0).epsilon(0.3));
}

TEST_CASE("trial results are independent of the thread count") {
    Multigraph fig1 = resolve_builtin("fig1_d3");
    GraphSampler null_sampler = [](Rng& rng) { return sample_regular(120, 3, rng.next_u64()); };
    GraphSampler planted_sampler = [&fig1](Rng& rng) {
        return random_lift(fig1, 10, rng.next_u64()).graph;
    };
    auto stat = spectral_radius_statistic();
    auto lone = detect_experiment(null_sampler, planted_sampler, stat, 2.87, 12, 3, 1);
    auto pooled = detect_experiment(null_sampler, planted_sampler, stat, 2.87, 12, 3, 4);
    CHECK(lone.type_i == pooled.type_i);
    CHECK(lone.type_ii == pooled.type_ii);
}
