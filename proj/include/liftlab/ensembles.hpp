#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "liftlab/graphs.hpp"
#include "liftlab/rng.hpp"

namespace liftlab {

/// A simple graph together with the fiber map tying it to its base multigraph.
struct LiftedGraph {
    SimpleGraph graph;
    Multigraph base;
    std::vector<int> sigma; // vertex -> base vertex
    int m = 0;              // fiber size

    std::vector<std::vector<int>> fibers() const;
};

/// Throws unless fibers are balanced and every fiber pair induces a
/// mult[i][j]-regular block (loops: mult[i][i]-regular inside the fiber).
void check_lift_invariants(const LiftedGraph& lift);

enum class NoiseMode {
    Rand,
    RandBi,
    RespectfulRand,
    RespectfulRandBi,
};

struct NoiseSpec {
    double epsilon = 0.0;
    NoiseMode mode = NoiseMode::Rand;
    int retry_cap = 64;
};

/// Output graph plus a log of how the completion went.
struct NoiseResult {
    SimpleGraph graph;
    int edges_deleted = 0;
    int edges_added = 0;
    int completion_restarts = 0; // fresh deletion sets drawn
    int repair_switches = 0;     // added edges switched during completion
};

/// Uniform simple d-regular graph: configuration-model pairing with
/// whole-sample rejection until simple. retry_cap < 0 picks a cap from the
/// asymptotic acceptance rate exp(-(d^2-1)/4).
SimpleGraph sample_regular(int n, int d, std::uint64_t seed, long long retry_cap = -1);

/// Uniform-after-rejection simple bipartite d-regular graph on balanced
/// sides (union of d random permutations, rejected to simple).
std::pair<SimpleGraph, BipartiteLayout> sample_bipartite_regular(int n, int d, std::uint64_t seed,
                                                                 long long retry_cap = -1);

/// Random m-lift: every non-loop edge contributes an independent uniform
/// matching between fibers, every loop a uniform perfect matching inside its
/// fiber. Fiber i occupies vertices [i*m, (i+1)*m). The whole lift is
/// rejection-sampled until simple.
LiftedGraph random_lift(const Multigraph& h, int m, std::uint64_t seed,
                        long long retry_cap = 100000);

/// Diagnostic variant without the simplicity rejection; the result may have
/// parallel edges and is returned as a multigraph.
Multigraph random_lift_multigraph(const Multigraph& h, int m, std::uint64_t seed);

/// Delete floor(eps*n) edges uniformly, then add the same number back by
/// uniform matching on the deficiency half-edges conditional on simplicity,
/// d-regularity and the mode's side/fiber constraints. Dead ends are resolved
/// by undoing random added edges (local repairs) and, past retry_cap undos,
/// by redrawing the deletion set; both are counted in the result metadata.
NoiseResult apply_noise(const SimpleGraph& g, const NoiseSpec& spec, std::uint64_t seed,
                        const LiftedGraph* base = nullptr);

/// An adversary maps (lift, eps, rng) to a d-regular graph within distance eps.
using Adversary = std::function<SimpleGraph(const LiftedGraph&, double, Rng&)>;

Adversary identity_adversary();
/// floor(eps*n/2) random 2-switchings {a,b},{c,d} -> {a,c},{b,d}.
Adversary switching_adversary();
/// Same, but switchings never create an edge between fibers i, j with
/// mult[i][j] = 0.
Adversary respectful_switching_adversary();

struct DetectionResult {
    double type_i;  // null classified as planted
    double type_ii; // planted classified as null
};

using GraphSampler = std::function<SimpleGraph(Rng&)>;
using GraphStatistic = std::function<double(const SimpleGraph&)>;

/// Empirical errors of the thresholded statistic (decide planted iff
/// statistic > threshold) over `trials` independent seeded pairs.
DetectionResult detect_experiment(const GraphSampler& null_sampler,
                                  const GraphSampler& planted_sampler,
                                  const GraphStatistic& statistic, double threshold, int trials,
                                  std::uint64_t seed, int threads = 1);

/// Default detection statistic: deflated spectral radius.
GraphStatistic spectral_radius_statistic(bool bipartite = false);
/// 1.0 when some adjacency eigenvalue lies within tol of target, else 0.0.
GraphStatistic eigenvalue_membership_statistic(double target, double tol = 1e-6);

} // namespace liftlab
