#include "liftlab/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "liftlab/spectral.hpp"

namespace liftlab {

namespace {

/// Mutable adjacency with O(d) membership checks, for sampler inner loops.
struct WorkGraph {
    int n;
    std::vector<std::vector<int>> adj;

    explicit WorkGraph(int n) : n(n), adj(n) {}
    explicit WorkGraph(const SimpleGraph& g) : n(g.n()), adj(g.n()) {
        for (int v = 0; v < n; ++v) adj[v] = g.neighbors(v);
    }

    bool has(int u, int v) const {
        const auto& nb = adj[u];
        return std::find(nb.begin(), nb.end(), v) != nb.end();
    }
    void add(int u, int v) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    void remove(int u, int v) {
        adj[u].erase(std::find(adj[u].begin(), adj[u].end(), v));
        adj[v].erase(std::find(adj[v].begin(), adj[v].end(), u));
    }

    SimpleGraph to_graph() const {
        SimpleGraph g(n);
        for (int u = 0; u < n; ++u) {
            for (int v : adj[u]) {
                if (u < v) g.add_edge(u, v);
            }
        }
        return g;
    }
};

long long default_regular_cap(int d) {
    double mean = std::exp((static_cast<double>(d) * d - 1.0) / 4.0);
    return 1000 + static_cast<long long>(200.0 * mean);
}

} // namespace

std::vector<std::vector<int>> LiftedGraph::fibers() const {
    std::vector<std::vector<int>> f(base.n());
    for (int v = 0; v < graph.n(); ++v) f[sigma[v]].push_back(v);
    return f;
}

void check_lift_invariants(const LiftedGraph& lift) {
    const int k = lift.base.n();
    auto fibers = lift.fibers();
    for (int i = 0; i < k; ++i) {
        if (static_cast<int>(fibers[i].size()) != lift.m) {
            fail(ErrorCode::InvalidArgument, "unbalanced fiber");
        }
    }
    // Per-block degree counts must match the base multiplicities.
    for (int i = 0; i < k; ++i) {
        for (int j = i; j < k; ++j) {
            for (int u : fibers[i]) {
                int count = 0;
                for (int w : lift.graph.neighbors(u)) {
                    if (lift.sigma[w] == j && (i != j || w != u)) ++count;
                }
                if (count != lift.base.mult(i, j)) {
                    fail(ErrorCode::InvalidArgument, "fiber block is not mult[i][j]-regular");
                }
            }
        }
    }
}

SimpleGraph sample_regular(int n, int d, std::uint64_t seed, long long retry_cap) {
    if (static_cast<long long>(n) * d % 2 != 0) {
        fail(ErrorCode::ParityViolation, "dn must be even");
    }
    if (d < 1 || n <= d) fail(ErrorCode::InvalidArgument, "need n > d >= 1");
    if (retry_cap < 0) retry_cap = default_regular_cap(d);

    Rng rng(seed);
    const int stub_count = n * d;
    std::vector<int> stubs(stub_count);
    for (int i = 0; i < stub_count; ++i) stubs[i] = i / d;
    std::vector<int> deg(n, 0);
    std::vector<int> nbr(static_cast<std::size_t>(n) * d, -1);
    std::vector<std::pair<int, int>> edges;
    edges.reserve(stub_count / 2);

    auto adjacent = [&](int u, int v) {
        for (int t = 0; t < deg[u]; ++t) {
            if (nbr[static_cast<std::size_t>(u) * d + t] == v) return true;
        }
        return false;
    };

    for (long long attempt = 0; attempt < retry_cap; ++attempt) {
        std::fill(deg.begin(), deg.end(), 0);
        edges.clear();
        int active = stub_count;
        bool ok = true;
        while (active > 0) {
            int a = stubs[active - 1];
            std::size_t j = rng.next_below(active - 1);
            int b = stubs[j];
            if (a == b || adjacent(a, b)) {
                ok = false;
                break;
            }
            std::swap(stubs[j], stubs[active - 2]);
            active -= 2;
            nbr[static_cast<std::size_t>(a) * d + deg[a]++] = b;
            nbr[static_cast<std::size_t>(b) * d + deg[b]++] = a;
            edges.emplace_back(a, b);
        }
        if (ok) return SimpleGraph(n, edges);
    }
    fail(ErrorCode::RetryCapExceeded, "configuration model produced no simple graph within cap");
}

std::pair<SimpleGraph, BipartiteLayout> sample_bipartite_regular(int n, int d, std::uint64_t seed,
                                                                 long long retry_cap) {
    if (n % 2 != 0) fail(ErrorCode::ParityViolation, "n must be even");
    if (d < 1 || n / 2 < d) fail(ErrorCode::InvalidArgument, "need n/2 >= d >= 1");
    if (retry_cap < 0) {
        retry_cap = 1000 + static_cast<long long>(
                               200.0 * std::exp(static_cast<double>(d) * (d - 1) / 2.0));
    }
    Rng rng(seed);
    const int half = n / 2;
    std::vector<int> perm(half);
    std::vector<int> deg(half, 0);
    std::vector<int> nbr(static_cast<std::size_t>(half) * d, -1);
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(half) * d);

    auto adjacent = [&](int u, int w) {
        for (int t = 0; t < deg[u]; ++t) {
            if (nbr[static_cast<std::size_t>(u) * d + t] == w) return true;
        }
        return false;
    };

    for (long long attempt = 0; attempt < retry_cap; ++attempt) {
        std::fill(deg.begin(), deg.end(), 0);
        edges.clear();
        bool ok = true;
        for (int t = 0; t < d && ok; ++t) {
            for (int i = 0; i < half; ++i) perm[i] = i;
            rng.shuffle(perm);
            for (int i = 0; i < half; ++i) {
                if (adjacent(i, perm[i])) {
                    ok = false;
                    break;
                }
                nbr[static_cast<std::size_t>(i) * d + deg[i]++] = perm[i];
                edges.emplace_back(i, half + perm[i]);
            }
        }
        if (ok) return {SimpleGraph(n, edges), BipartiteLayout::canonical(n)};
    }
    fail(ErrorCode::RetryCapExceeded, "bipartite sampler produced no simple graph within cap");
}

namespace {

void lift_precheck(const Multigraph& h, int m) {
    if (!h.regular_degree()) fail(ErrorCode::NotRegular, "lift base must be regular");
    if (h.has_loops() && m % 2 != 0) {
        fail(ErrorCode::OddFiberWithLoops, "loops need an even fiber size");
    }
}

/// One lift sample into `out` (a multigraph accumulator); returns true when
/// no parallel edges arose.
bool sample_lift_once(const Multigraph& h, int m, Rng& rng, Multigraph& out) {
    const int k = h.n();
    bool simple = true;
    std::vector<int> perm(m), pairing(m);
    for (int i = 0; i < k; ++i) {
        // Loops: each contributes a uniform perfect matching inside fiber i.
        for (int l = 0; l < h.mult(i, i); ++l) {
            for (int t = 0; t < m; ++t) pairing[t] = i * m + t;
            rng.shuffle(pairing);
            for (int t = 0; t + 1 < m; t += 2) out.add_edges(pairing[t], pairing[t + 1]);
        }
        // Non-loop bundles: independent uniform bijections between fibers.
        for (int j = i + 1; j < k; ++j) {
            for (int b = 0; b < h.mult(i, j); ++b) {
                for (int t = 0; t < m; ++t) perm[t] = t;
                rng.shuffle(perm);
                for (int t = 0; t < m; ++t) out.add_edges(i * m + t, j * m + perm[t]);
            }
        }
    }
    for (int u = 0; u < out.n() && simple; ++u) {
        for (int v = u; v < out.n() && simple; ++v) {
            if (out.mult(u, v) > 1) simple = false;
        }
    }
    return simple;
}

} // namespace

LiftedGraph random_lift(const Multigraph& h, int m, std::uint64_t seed, long long retry_cap) {
    lift_precheck(h, m);
    const int k = h.n();
    const int n = k * m;
    Rng rng(seed);
    for (long long attempt = 0; attempt < retry_cap; ++attempt) {
        Multigraph sample(n);
        if (!sample_lift_once(h, m, rng, sample)) continue;
        LiftedGraph lift;
        lift.graph = SimpleGraph(n);
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) {
                if (sample.mult(u, v) > 0) lift.graph.add_edge(u, v);
            }
        }
        lift.base = h;
        lift.m = m;
        lift.sigma.resize(n);
        for (int v = 0; v < n; ++v) lift.sigma[v] = v / m;
        return lift;
    }
    fail(ErrorCode::RetryCapExceeded, "no simple lift found within cap");
}

Multigraph random_lift_multigraph(const Multigraph& h, int m, std::uint64_t seed) {
    lift_precheck(h, m);
    Rng rng(seed);
    Multigraph sample(h.n() * m);
    sample_lift_once(h, m, rng, sample);
    return sample;
}

namespace {

struct NoiseContext {
    const LiftedGraph* base;
    std::vector<int> side; // 0/1 per vertex in bipartite modes, else empty
    bool respectful;
    bool bipartite;
};

bool allowed_pair(const NoiseContext& ctx, int u, int v) {
    if (u == v) return false;
    if (ctx.bipartite && ctx.side[u] == ctx.side[v]) return false;
    if (ctx.respectful) {
        int i = ctx.base->sigma[u];
        int j = ctx.base->sigma[v];
        if (ctx.base->base.mult(i, j) == 0) return false;
    }
    return true;
}

} // namespace

NoiseResult apply_noise(const SimpleGraph& g, const NoiseSpec& spec, std::uint64_t seed,
                        const LiftedGraph* base) {
    auto dr = g.regular_degree();
    if (!dr) fail(ErrorCode::NotRegular, "noise requires a d-regular input");
    const int n = g.n();
    const int budget = static_cast<int>(spec.epsilon * n);

    NoiseContext ctx;
    ctx.base = base;
    ctx.respectful =
        spec.mode == NoiseMode::RespectfulRand || spec.mode == NoiseMode::RespectfulRandBi;
    ctx.bipartite = spec.mode == NoiseMode::RandBi || spec.mode == NoiseMode::RespectfulRandBi;
    if (ctx.respectful && base == nullptr) {
        fail(ErrorCode::MissingBase, "respectful noise needs the lift it acts on");
    }
    if (ctx.bipartite) {
        auto layout = find_bipartition(g);
        if (!layout) fail(ErrorCode::InvalidArgument, "bipartite noise on non-bipartite graph");
        ctx.side.assign(n, 0);
        for (int v : layout->right) ctx.side[v] = 1;
    }

    NoiseResult result;
    result.graph = g;
    if (budget == 0) return result;

    Rng rng(seed);
    std::vector<int> edge_idx(g.edge_count());
    std::vector<int> stubs;
    std::vector<std::pair<int, int>> added;

    for (int restart = 0; restart <= spec.retry_cap; ++restart) {
        // Uniform deletion of `budget` distinct edges (partial Fisher-Yates).
        for (int i = 0; i < g.edge_count(); ++i) edge_idx[i] = i;
        for (int i = 0; i < budget; ++i) {
            int j = i + static_cast<int>(rng.next_below(g.edge_count() - i));
            std::swap(edge_idx[i], edge_idx[j]);
        }
        WorkGraph work(g);
        stubs.clear();
        for (int i = 0; i < budget; ++i) {
            auto [u, v] = g.edges()[edge_idx[i]];
            work.remove(u, v);
            stubs.push_back(u);
            stubs.push_back(v);
        }

        // Phase 1: whole-matching rejection. A uniformly random matching of
        // the deficiency stubs, accepted only if every pair is valid, is a
        // uniform sample from the valid completions.
        for (int round = 0; round < spec.retry_cap; ++round) {
            rng.shuffle(stubs);
            bool ok = true;
            added.clear();
            for (std::size_t t = 0; t + 1 < stubs.size(); t += 2) {
                int u = stubs[t], v = stubs[t + 1];
                if (!allowed_pair(ctx, u, v) || work.has(u, v)) {
                    ok = false;
                    break;
                }
                work.add(u, v);
                added.emplace_back(u, v);
            }
            if (ok) {
                result.graph = work.to_graph();
                result.edges_deleted = budget;
                result.edges_added = budget;
                return result;
            }
            for (auto [u, v] : added) work.remove(u, v);
        }

        // Phase 2: greedy pairing, then switch leftover stubs against edges
        // added in this round. Switching added edges keeps the deleted and
        // added counts at `budget`, so Delta <= eps still holds exactly.
        for (int round = 0; round < spec.retry_cap; ++round) {
            rng.shuffle(stubs);
            std::vector<int> leftover;
            added.clear();
            std::vector<char> used(stubs.size(), 0);
            for (std::size_t t = 0; t < stubs.size(); ++t) {
                if (used[t]) continue;
                bool paired = false;
                for (std::size_t r = t + 1; r < stubs.size() && !paired; ++r) {
                    if (used[r]) continue;
                    int u = stubs[t], v = stubs[r];
                    if (allowed_pair(ctx, u, v) && !work.has(u, v)) {
                        work.add(u, v);
                        added.emplace_back(u, v);
                        used[t] = used[r] = 1;
                        paired = true;
                    }
                }
                if (!paired) leftover.push_back(stubs[t]);
            }
            bool ok = true;
            int switches = 0;
            for (std::size_t t = 0; t + 1 < leftover.size() && ok; t += 2) {
                int u = leftover[t], v = leftover[t + 1];
                bool fixed = false;
                std::size_t offset = added.empty() ? 0 : rng.next_below(added.size());
                for (std::size_t idx = 0; idx < added.size() && !fixed; ++idx) {
                    auto [x, y] = added[(idx + offset) % added.size()];
                    if (x == u || x == v || y == u || y == v) continue;
                    for (int orient = 0; orient < 2 && !fixed; ++orient) {
                        int xu = orient == 0 ? x : y;
                        int yv = orient == 0 ? y : x;
                        if (allowed_pair(ctx, u, xu) && !work.has(u, xu) &&
                            allowed_pair(ctx, v, yv) && !work.has(v, yv)) {
                            work.remove(x, y);
                            work.add(u, xu);
                            work.add(v, yv);
                            added[(idx + offset) % added.size()] = {u, xu};
                            added.emplace_back(v, yv);
                            ++switches;
                            fixed = true;
                        }
                    }
                }
                if (!fixed) ok = false;
            }
            if (ok && leftover.size() % 2 == 0) {
                result.graph = work.to_graph();
                result.edges_deleted = budget;
                result.edges_added = budget;
                result.repair_switches += switches;
                return result;
            }
            for (auto [u, v] : added) work.remove(u, v);
        }
        ++result.completion_restarts;
    }
    fail(ErrorCode::CompletionFailed, "noise completion failed past the retry cap");
}

Adversary identity_adversary() {
    return [](const LiftedGraph& lift, double, Rng&) { return lift.graph; };
}

namespace {

SimpleGraph switching_noise(const LiftedGraph& lift, double eps, Rng& rng, bool respectful) {
    const SimpleGraph& g = lift.graph;
    const int n = g.n();
    int count = static_cast<int>(eps * n / 2.0);
    WorkGraph work(g);
    std::vector<std::pair<int, int>> edges = g.edges();
    auto allowed = [&](int u, int v) {
        if (!respectful) return true;
        return lift.base.mult(lift.sigma[u], lift.sigma[v]) > 0;
    };
    int done = 0, guard = 0;
    while (done < count && guard < 1000 * (count + 1)) {
        ++guard;
        std::size_t i = rng.next_below(edges.size());
        std::size_t j = rng.next_below(edges.size());
        if (i == j) continue;
        auto [a, b] = edges[i];
        auto [c, d2] = edges[j];
        if (rng.next_below(2) == 1) std::swap(c, d2);
        if (a == c || a == d2 || b == c || b == d2) continue;
        if (work.has(a, c) || work.has(b, d2)) continue;
        if (!allowed(a, c) || !allowed(b, d2)) continue;
        work.remove(a, b);
        work.remove(c, d2);
        work.add(a, c);
        work.add(b, d2);
        edges[i] = {a, c};
        edges[j] = {b, d2};
        ++done;
    }
    return work.to_graph();
}

} // namespace

Adversary switching_adversary() {
    return [](const LiftedGraph& lift, double eps, Rng& rng) {
        return switching_noise(lift, eps, rng, false);
    };
}

Adversary respectful_switching_adversary() {
    return [](const LiftedGraph& lift, double eps, Rng& rng) {
        return switching_noise(lift, eps, rng, true);
    };
}

DetectionResult detect_experiment(const GraphSampler& null_sampler,
                                  const GraphSampler& planted_sampler,
                                  const GraphStatistic& statistic, double threshold, int trials,
                                  std::uint64_t seed, int threads) {
    if (trials < 1) fail(ErrorCode::InvalidArgument, "trials must be >= 1");
    std::vector<double> null_stat(trials), planted_stat(trials);
    auto run_range = [&](int lo, int hi) {
        for (int t = lo; t < hi; ++t) {
            Rng rng_null = Rng::derived(seed, 2 * static_cast<std::uint64_t>(t));
            Rng rng_planted = Rng::derived(seed, 2 * static_cast<std::uint64_t>(t) + 1);
            null_stat[t] = statistic(null_sampler(rng_null));
            planted_stat[t] = statistic(planted_sampler(rng_planted));
        }
    };
    threads = std::max(1, std::min(threads, trials));
    if (threads == 1) {
        run_range(0, trials);
    } else {
        std::vector<std::thread> pool;
        int chunk = (trials + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            int lo = t * chunk, hi = std::min(trials, lo + chunk);
            if (lo < hi) pool.emplace_back(run_range, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    int false_planted = 0, false_null = 0;
    for (int t = 0; t < trials; ++t) {
        if (null_stat[t] > threshold) ++false_planted;
        if (planted_stat[t] <= threshold) ++false_null;
    }
    return {static_cast<double>(false_planted) / trials, static_cast<double>(false_null) / trials};
}

GraphStatistic spectral_radius_statistic(bool bipartite) {
    return [bipartite](const SimpleGraph& g) { return spectral_radius(g, bipartite); };
}

GraphStatistic eigenvalue_membership_statistic(double target, double tol) {
    return [target, tol](const SimpleGraph& g) {
        auto spec = symmetric_spectrum(adjacency_matrix(g));
        for (double v : spec.values) {
            if (std::abs(v - target) <= tol) return 1.0;
        }
        return 0.0;
    };
}

} // namespace liftlab
