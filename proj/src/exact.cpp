#include "liftlab/exact.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "liftlab/spectral.hpp"

namespace liftlab {

namespace {

long long cut_weight(const Multigraph& g, const std::vector<int>& labels) {
    long long cut = 0;
    for (int i = 0; i < g.n(); ++i) {
        for (int j = i + 1; j < g.n(); ++j) {
            if (labels[i] != labels[j]) cut += g.mult(i, j);
        }
    }
    return cut;
}

/// Total edge count with loops weighted 1/2: |E| = (sum of degrees) / 2.
Rational edge_normalizer(const Multigraph& g) {
    long long degsum = 0;
    for (int i = 0; i < g.n(); ++i) degsum += g.degree(i);
    return Rational(degsum, 2);
}

std::uint64_t fingerprint(const Multigraph& g) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t v) {
        h ^= v + 0x9E3779B97F4A7C15ULL;
        h *= 0x100000001b3ULL;
    };
    mix(static_cast<std::uint64_t>(g.n()));
    for (int i = 0; i < g.n(); ++i) {
        for (int j = i; j < g.n(); ++j) mix(static_cast<std::uint64_t>(g.mult(i, j)));
    }
    return h;
}

std::vector<char> in_set_mask(int n, const std::vector<int>& vs) {
    std::vector<char> mask(n, 0);
    for (int v : vs) mask[v] = 1;
    return mask;
}

bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

} // namespace

Rational cut_fraction(const Multigraph& g, const std::vector<int>& labels) {
    return Rational(cut_weight(g, labels)) / edge_normalizer(g);
}

bool coloring_is_proper(const Multigraph& g, const std::vector<int>& colors) {
    for (int i = 0; i < g.n(); ++i) {
        if (g.mult(i, i) > 0) return false;
        for (int j = i + 1; j < g.n(); ++j) {
            if (g.mult(i, j) > 0 && colors[i] == colors[j]) return false;
        }
    }
    return true;
}

bool set_is_independent(const Multigraph& g, const std::vector<int>& vs) {
    auto mask = in_set_mask(g.n(), vs);
    for (int v : vs) {
        if (g.mult(v, v) > 0) return false;
        for (int u : vs) {
            if (u != v && g.mult(u, v) > 0) return false;
        }
    }
    (void)mask;
    return true;
}

bool set_is_dominating(const Multigraph& g, const std::vector<int>& vs) {
    auto mask = in_set_mask(g.n(), vs);
    for (int u = 0; u < g.n(); ++u) {
        if (mask[u]) continue;
        bool covered = false;
        for (int v : vs) {
            if (g.mult(u, v) > 0) {
                covered = true;
                break;
            }
        }
        if (!covered) return false;
    }
    return true;
}

Rational expansion_ratio(const Multigraph& g, const std::vector<int>& vs, ExpansionMode mode,
                         bool exclude_set_from_boundary) {
    if (vs.empty()) fail(ErrorCode::InvalidArgument, "expansion of the empty set");
    auto mask = in_set_mask(g.n(), vs);
    if (mode == ExpansionMode::Vertex) {
        long long boundary = 0;
        for (int u = 0; u < g.n(); ++u) {
            if (exclude_set_from_boundary && mask[u]) continue;
            bool hit = false;
            for (int v : vs) {
                if (g.mult(u, v) > 0 || (u == v && g.mult(u, u) > 0)) {
                    hit = true;
                    break;
                }
            }
            if (hit) ++boundary;
        }
        return Rational(boundary, static_cast<long long>(vs.size()));
    }
    long long boundary = 0;
    for (int u = 0; u < g.n(); ++u) {
        if (!mask[u]) continue;
        for (int v = 0; v < g.n(); ++v) {
            if (v != u && !mask[v]) boundary += g.mult(u, v);
        }
    }
    return Rational(boundary, static_cast<long long>(vs.size()));
}

Rational modified_independence_value(const Multigraph& g, const std::vector<int>& vs) {
    Rational total(0);
    for (int v : vs) {
        int loops = g.mult(v, v);
        if (loops == 0) {
            total += Rational(1);
        } else if (loops == 1) {
            total += Rational(1, 2);
        }
    }
    return total / Rational(g.n());
}

namespace {

ExactResult gray_code_max_cut(const Multigraph& g) {
    const int n = g.n();
    std::vector<int> side(n, 0);
    long long cut = 0;
    long long best = 0;
    std::vector<int> best_side = side;

    // Standard reflected Gray order: step i flips vertex ctz(i)+1 (vertex 0
    // stays fixed to kill the global swap symmetry).
    const unsigned long long total = 1ULL << (n - 1);
    for (unsigned long long i = 1; i < total; ++i) {
        int v = __builtin_ctzll(i) + 1;
        long long delta = 0;
        for (int u = 0; u < n; ++u) {
            if (u == v) continue;
            int w = g.mult(u, v);
            if (w == 0) continue;
            delta += (side[u] == side[v]) ? w : -w;
        }
        side[v] ^= 1;
        cut += delta;
        if (cut > best || (cut == best && lex_less(side, best_side))) {
            best = cut;
            best_side = side;
        }
    }
    ExactResult r;
    r.quantity = Quantity::MaxTCut;
    r.t = 2;
    r.n = n;
    r.base_fingerprint = fingerprint(g);
    r.labels = best_side;
    r.value = Rational(best) / edge_normalizer(g);
    return r;
}

ExactResult branch_and_bound_cut(const Multigraph& g, int t) {
    const int n = g.n();
    long long cuttable = 0; // loops can never be cut
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) cuttable += g.mult(i, j);
    }
    // Hoffman certificate caps the achievable cut weight.
    long long hoffman_cap = cuttable;
    if (auto d = g.regular_degree()) {
        auto spec = symmetric_spectrum(adjacency_matrix(g));
        double lambda_n = spec.values.back();
        double bound = hoffman_max_t_cut(*d, lambda_n, t).bound;
        Rational norm = edge_normalizer(g);
        hoffman_cap = std::min<long long>(
            cuttable, static_cast<long long>(std::floor(bound * norm.to_double() + 1e-9)));
    }

    std::vector<int> labels(n, -1);
    std::vector<int> best_labels;
    long long best = -1;
    std::function<void(int, long long, long long)> rec = [&](int v, long long cut,
                                                             long long remaining) {
        if (cut + remaining <= best && best >= 0) return;
        if (v == n) {
            if (cut > best || (cut == best && lex_less(labels, best_labels))) {
                best = cut;
                best_labels = labels;
            }
            return;
        }
        int used = 0;
        for (int u = 0; u < v; ++u) used = std::max(used, labels[u] + 1);
        int limit = std::min(t, used + 1); // label-permutation symmetry break
        for (int c = 0; c < limit; ++c) {
            labels[v] = c;
            long long gained = 0, decided = 0;
            for (int u = 0; u < v; ++u) {
                int w = g.mult(u, v);
                decided += w;
                if (labels[u] != c) gained += w;
            }
            rec(v + 1, cut + gained, remaining - decided);
            labels[v] = -1;
            if (best >= hoffman_cap) return;
        }
    };
    rec(0, 0, cuttable);

    ExactResult r;
    r.quantity = Quantity::MaxTCut;
    r.t = t;
    r.n = n;
    r.base_fingerprint = fingerprint(g);
    r.labels = best_labels;
    r.value = Rational(best) / edge_normalizer(g);
    return r;
}

} // namespace

ExactResult max_t_cut_exact(const Multigraph& g, int t) {
    if (t < 2) fail(ErrorCode::InvalidArgument, "t-cut needs t >= 2");
    if (t == 2) {
        if (g.n() > 28) fail(ErrorCode::SizeCapExceeded, "max 2-cut sweep capped at n = 28");
        return gray_code_max_cut(g);
    }
    if (g.n() > 16) fail(ErrorCode::SizeCapExceeded, "max t-cut branch and bound capped at n = 16");
    return branch_and_bound_cut(g, t);
}

namespace {

/// Weighted maximum independent set on up to 64 vertices (branch and bound).
/// Weights are in half-units to stay integral (1 -> 2, 1/2 -> 1, 0 -> 0).
struct MisSolver {
    int n;
    std::vector<std::uint64_t> nbr;
    std::vector<int> weight2;
    std::uint64_t best_set = 0;
    long long best = -1;

    void run() {
        std::uint64_t all = n == 64 ? ~0ULL : ((1ULL << n) - 1);
        recurse(all, 0, 0);
    }

    void recurse(std::uint64_t avail, std::uint64_t chosen, long long value) {
        // Reductions: isolated vertices are always safe to take; a degree-1
        // vertex is safe when its weight is >= its neighbor's.
        bool changed = true;
        while (changed) {
            changed = false;
            std::uint64_t scan = avail;
            while (scan) {
                int v = __builtin_ctzll(scan);
                scan &= scan - 1;
                if (!(avail >> v & 1)) continue; // removed earlier in this pass
                std::uint64_t nb = nbr[v] & avail;
                int deg = __builtin_popcountll(nb);
                if (deg == 0) {
                    avail &= ~(1ULL << v);
                    if (weight2[v] > 0) {
                        chosen |= 1ULL << v;
                        value += weight2[v];
                    }
                    changed = true;
                } else if (deg == 1) {
                    int u = __builtin_ctzll(nb);
                    if (weight2[v] >= weight2[u]) {
                        chosen |= 1ULL << v;
                        value += weight2[v];
                        avail &= ~((1ULL << v) | (1ULL << u));
                        changed = true;
                    }
                }
            }
        }
        if (avail == 0) {
            if (value > best || (value == best && chosen < best_set)) {
                best = value;
                best_set = chosen;
            }
            return;
        }
        long long upper = value;
        std::uint64_t scan = avail;
        while (scan) {
            int v = __builtin_ctzll(scan);
            scan &= scan - 1;
            upper += weight2[v];
        }
        if (upper <= best) return;

        // Branch on a maximum-degree vertex.
        int pick = -1, pick_deg = -1;
        scan = avail;
        while (scan) {
            int v = __builtin_ctzll(scan);
            scan &= scan - 1;
            int deg = __builtin_popcountll(nbr[v] & avail);
            if (deg > pick_deg) {
                pick_deg = deg;
                pick = v;
            }
        }
        // Include pick.
        recurse(avail & ~(nbr[pick] | (1ULL << pick)), chosen | (1ULL << pick),
                value + weight2[pick]);
        // Exclude pick.
        recurse(avail & ~(1ULL << pick), chosen, value);
    }
};

std::vector<int> bits_to_set(std::uint64_t bits) {
    std::vector<int> out;
    while (bits) {
        out.push_back(__builtin_ctzll(bits));
        bits &= bits - 1;
    }
    return out;
}

} // namespace

ExactResult independence_exact(const Multigraph& g) {
    if (g.n() > 60) fail(ErrorCode::SizeCapExceeded, "independent set solver capped at n = 60");
    MisSolver solver;
    solver.n = g.n();
    solver.nbr.assign(g.n(), 0);
    solver.weight2.assign(g.n(), 2);
    for (int i = 0; i < g.n(); ++i) {
        if (g.mult(i, i) > 0) solver.weight2[i] = 0; // self-adjacent
        for (int j = 0; j < g.n(); ++j) {
            if (j != i && g.mult(i, j) > 0) solver.nbr[i] |= 1ULL << j;
        }
    }
    // A looped vertex can never join an independent set: drop it up front by
    // making it adjacent to everything of positive weight.
    for (int i = 0; i < g.n(); ++i) {
        if (g.mult(i, i) > 0) {
            for (int j = 0; j < g.n(); ++j) {
                if (j != i) {
                    solver.nbr[i] |= 1ULL << j;
                    solver.nbr[j] |= 1ULL << i;
                }
            }
        }
    }
    solver.run();
    ExactResult r;
    r.quantity = Quantity::Independence;
    r.n = g.n();
    r.base_fingerprint = fingerprint(g);
    r.vertex_set = bits_to_set(solver.best_set);
    r.value = Rational(solver.best, 2) / Rational(g.n());
    return r;
}

ExactResult modified_independence(const Multigraph& h) {
    if (h.n() > 60) fail(ErrorCode::SizeCapExceeded, "independent set solver capped at n = 60");
    MisSolver solver;
    solver.n = h.n();
    solver.nbr.assign(h.n(), 0);
    solver.weight2.assign(h.n(), 0);
    for (int i = 0; i < h.n(); ++i) {
        int loops = h.mult(i, i);
        solver.weight2[i] = loops == 0 ? 2 : (loops == 1 ? 1 : 0);
        for (int j = 0; j < h.n(); ++j) {
            if (j != i && h.mult(i, j) > 0) solver.nbr[i] |= 1ULL << j;
        }
    }
    solver.run();
    ExactResult r;
    r.quantity = Quantity::ModifiedIndependence;
    r.n = h.n();
    r.base_fingerprint = fingerprint(h);
    r.vertex_set = bits_to_set(solver.best_set);
    r.value = Rational(solver.best, 2) / Rational(h.n());
    return r;
}

ExactResult chromatic_exact(const Multigraph& g) {
    if (g.n() > 20) fail(ErrorCode::SizeCapExceeded, "chromatic solver capped at n = 20");
    if (g.has_loops()) fail(ErrorCode::LoopsForbidden, "chromatic number undefined with loops");
    const int n = g.n();
    // Order vertices by descending degree for earlier conflicts.
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&g](int a, int b) { return g.degree(a) > g.degree(b); });

    std::vector<int> colors(n, -1);
    auto colorable = [&](int k) {
        std::function<bool(int, int)> rec = [&](int idx, int used) {
            if (idx == n) return true;
            int v = order[idx];
            int limit = std::min(k, used + 1);
            for (int c = 0; c < limit; ++c) {
                bool ok = true;
                for (int u = 0; u < n && ok; ++u) {
                    if (u != v && g.mult(u, v) > 0 && colors[u] == c) ok = false;
                }
                if (!ok) continue;
                colors[v] = c;
                if (rec(idx + 1, std::max(used, c + 1))) return true;
                colors[v] = -1;
            }
            return false;
        };
        std::fill(colors.begin(), colors.end(), -1);
        return rec(0, 0);
    };

    int lower = g.total_edges() > 0 ? 2 : 1;
    for (int k = lower; k <= n; ++k) {
        if (colorable(k)) {
            ExactResult r;
            r.quantity = Quantity::Chromatic;
            r.n = n;
            r.base_fingerprint = fingerprint(g);
            r.labels = colors;
            r.value = Rational(k);
            return r;
        }
    }
    fail(ErrorCode::InvalidArgument, "unreachable: n colors always suffice");
}

ExactResult domination_exact(const Multigraph& g) {
    if (g.n() > 30) fail(ErrorCode::SizeCapExceeded, "domination solver capped at n = 30");
    const int n = g.n();
    std::vector<std::uint64_t> closed(n);
    int max_cover = 0;
    for (int v = 0; v < n; ++v) {
        closed[v] = 1ULL << v;
        for (int u = 0; u < n; ++u) {
            if (u != v && g.mult(u, v) > 0) closed[v] |= 1ULL << u;
        }
        max_cover = std::max(max_cover, __builtin_popcountll(closed[v]));
    }
    const std::uint64_t all = (n == 64) ? ~0ULL : ((1ULL << n) - 1);
    int best = n + 1;
    std::uint64_t best_set = 0;
    std::function<void(std::uint64_t, std::uint64_t, int)> rec = [&](std::uint64_t dominated,
                                                                     std::uint64_t chosen,
                                                                     int size) {
        std::uint64_t uncovered = all & ~dominated;
        if (uncovered == 0) {
            if (size < best || (size == best && chosen < best_set)) {
                best = size;
                best_set = chosen;
            }
            return;
        }
        int lower = (__builtin_popcountll(uncovered) + max_cover - 1) / max_cover;
        if (size + lower >= best) return;
        // Branch over the dominators of the lowest uncovered vertex.
        int u = __builtin_ctzll(uncovered);
        for (int v = 0; v < n; ++v) {
            if (closed[v] & (1ULL << u)) {
                rec(dominated | closed[v], chosen | (1ULL << v), size + 1);
            }
        }
    };
    rec(0, 0, 0);
    ExactResult r;
    r.quantity = Quantity::Domination;
    r.n = n;
    r.base_fingerprint = fingerprint(g);
    r.vertex_set = bits_to_set(best_set);
    r.value = Rational(best, n);
    return r;
}

namespace {

struct ExpansionScan {
    const Multigraph* g;
    ExpansionMode mode;
    bool exclude_self;
    Rational best;
    std::vector<int> best_set;
    bool have = false;

    void consider(const std::vector<int>& vs) {
        Rational ratio = expansion_ratio(*g, vs, mode, exclude_self);
        std::vector<int> sorted = vs;
        std::sort(sorted.begin(), sorted.end());
        if (!have || ratio < best || (ratio == best && lex_less(sorted, best_set))) {
            best = ratio;
            best_set = sorted;
            have = true;
        }
    }
};

/// Enumerate connected vertex sets of size <= cap exactly once each
/// (root = minimum vertex; candidates expand in discovery order).
void enumerate_connected(const Multigraph& g, int cap,
                         const std::function<void(const std::vector<int>&)>& visit) {
    const int n = g.n();
    std::vector<std::vector<int>> adj(n);
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (v != u && g.mult(u, v) > 0) adj[u].push_back(v);
        }
    }
    std::vector<int> set;
    std::vector<char> seen(n, 0);
    std::function<void(int, std::vector<int>&)> rec = [&](int root, std::vector<int>& frontier) {
        visit(set);
        if (static_cast<int>(set.size()) == cap) return;
        // Each frontier vertex is either skipped forever (in this branch) or
        // added; this yields every connected superset exactly once.
        for (std::size_t i = 0; i < frontier.size(); ++i) {
            int v = frontier[i];
            std::vector<int> next(frontier.begin() + i + 1, frontier.end());
            std::vector<int> added;
            for (int w : adj[v]) {
                if (w > root && !seen[w]) {
                    seen[w] = 1;
                    added.push_back(w);
                    next.push_back(w);
                }
            }
            set.push_back(v);
            rec(root, next);
            set.pop_back();
            for (int w : added) seen[w] = 0;
        }
    };
    for (int root = 0; root < n; ++root) {
        std::fill(seen.begin(), seen.end(), 0);
        seen[root] = 1;
        set.assign(1, root);
        std::vector<int> frontier;
        for (int w : adj[root]) {
            if (w > root) {
                seen[w] = 1;
                frontier.push_back(w);
            }
        }
        rec(root, frontier);
        set.clear();
    }
}

} // namespace

ExactResult small_set_expansion_exact(const Multigraph& g, double epsilon, ExpansionMode mode,
                                      bool connected_only, bool exclude_set_from_boundary) {
    const int n = g.n();
    int cap = static_cast<int>(epsilon * n);
    if (cap < 1) fail(ErrorCode::InvalidArgument, "eps*n < 1 leaves no candidate sets");
    if (cap > 8) fail(ErrorCode::SizeCapExceeded, "expansion enumeration capped at |S| = 8");
    ExpansionScan scan{&g, mode, exclude_set_from_boundary, Rational(0), {}, false};
    if (connected_only) {
        enumerate_connected(g, cap, [&scan](const std::vector<int>& vs) { scan.consider(vs); });
    } else {
        if (n > 20) fail(ErrorCode::SizeCapExceeded, "full subset sweep capped at n = 20");
        for (std::uint64_t bits = 1; bits < (1ULL << n); ++bits) {
            if (__builtin_popcountll(bits) > cap) continue;
            scan.consider(bits_to_set(bits));
        }
    }
    ExactResult r;
    r.quantity = mode == ExpansionMode::Vertex ? Quantity::VertexExpansion : Quantity::EdgeExpansion;
    r.n = n;
    r.base_fingerprint = fingerprint(g);
    r.epsilon = epsilon;
    r.mode = mode;
    r.vertex_set = scan.best_set;
    r.value = scan.best;
    return r;
}

namespace {

/// Half-fiber pick for a singly-looped base vertex: one endpoint per edge of
/// the matching the loop induced on the fiber.
std::vector<int> half_fiber(const LiftedGraph& lift, int base_vertex) {
    std::vector<int> picked;
    std::vector<char> used(lift.graph.n(), 0);
    for (int v = 0; v < lift.graph.n(); ++v) {
        if (lift.sigma[v] != base_vertex || used[v]) continue;
        for (int w : lift.graph.neighbors(v)) {
            if (lift.sigma[w] == base_vertex && !used[w]) {
                picked.push_back(v);
                used[v] = used[w] = 1;
                break;
            }
        }
    }
    return picked;
}

} // namespace

ExactResult lift_assignment(const ExactResult& base_result, const LiftedGraph& lift) {
    if (base_result.n != lift.base.n() ||
        (base_result.base_fingerprint != 0 &&
         base_result.base_fingerprint != fingerprint(lift.base))) {
        fail(ErrorCode::BaseMismatch, "witness comes from a different base graph");
    }
    const int n = lift.graph.n();
    Multigraph lifted_mg = lift.graph.as_multigraph();
    ExactResult out;
    out.quantity = base_result.quantity;
    out.n = n;
    out.t = base_result.t;
    out.epsilon = base_result.epsilon;
    out.mode = base_result.mode;

    switch (base_result.quantity) {
        case Quantity::MaxTCut: {
            out.labels.resize(n);
            for (int v = 0; v < n; ++v) out.labels[v] = base_result.labels[lift.sigma[v]];
            out.value = cut_fraction(lifted_mg, out.labels);
            break;
        }
        case Quantity::Chromatic: {
            out.labels.resize(n);
            for (int v = 0; v < n; ++v) out.labels[v] = base_result.labels[lift.sigma[v]];
            if (!coloring_is_proper(lifted_mg, out.labels)) {
                fail(ErrorCode::BaseMismatch, "lifted coloring is not proper");
            }
            out.value = base_result.value;
            break;
        }
        case Quantity::Independence: {
            for (int v = 0; v < n; ++v) {
                if (std::find(base_result.vertex_set.begin(), base_result.vertex_set.end(),
                              lift.sigma[v]) != base_result.vertex_set.end()) {
                    out.vertex_set.push_back(v);
                }
            }
            if (!set_is_independent(lifted_mg, out.vertex_set)) {
                fail(ErrorCode::BaseMismatch, "lifted set is not independent");
            }
            out.value = Rational(static_cast<long long>(out.vertex_set.size()), n);
            break;
        }
        case Quantity::ModifiedIndependence: {
            for (int i : base_result.vertex_set) {
                int loops = lift.base.mult(i, i);
                if (loops == 0) {
                    for (int v = 0; v < n; ++v) {
                        if (lift.sigma[v] == i) out.vertex_set.push_back(v);
                    }
                } else if (loops == 1) {
                    auto half = half_fiber(lift, i);
                    out.vertex_set.insert(out.vertex_set.end(), half.begin(), half.end());
                }
            }
            std::sort(out.vertex_set.begin(), out.vertex_set.end());
            if (!set_is_independent(lifted_mg, out.vertex_set)) {
                fail(ErrorCode::BaseMismatch, "lifted modified set is not independent");
            }
            out.value = Rational(static_cast<long long>(out.vertex_set.size()), n);
            break;
        }
        case Quantity::Domination: {
            for (int v = 0; v < n; ++v) {
                if (std::find(base_result.vertex_set.begin(), base_result.vertex_set.end(),
                              lift.sigma[v]) != base_result.vertex_set.end()) {
                    out.vertex_set.push_back(v);
                }
            }
            if (!set_is_dominating(lifted_mg, out.vertex_set)) {
                fail(ErrorCode::BaseMismatch, "lifted set is not dominating");
            }
            out.value = Rational(static_cast<long long>(out.vertex_set.size()), n);
            break;
        }
        case Quantity::VertexExpansion:
        case Quantity::EdgeExpansion: {
            for (int v = 0; v < n; ++v) {
                if (std::find(base_result.vertex_set.begin(), base_result.vertex_set.end(),
                              lift.sigma[v]) != base_result.vertex_set.end()) {
                    out.vertex_set.push_back(v);
                }
            }
            out.value = expansion_ratio(lifted_mg, out.vertex_set, base_result.mode);
            break;
        }
    }
    return out;
}

std::vector<int> corrupted_vertices(const SimpleGraph& before, const SimpleGraph& after) {
    if (before.n() != after.n()) fail(ErrorCode::SizeMismatch, "graphs differ in size");
    std::vector<int> out;
    for (int v = 0; v < before.n(); ++v) {
        if (before.neighbors(v) != after.neighbors(v)) out.push_back(v);
    }
    return out;
}

ExactResult transfer_witness(const ExactResult& lifted, const SimpleGraph& before,
                             const SimpleGraph& after) {
    if (lifted.n != after.n()) fail(ErrorCode::SizeMismatch, "witness is for a different size");
    Multigraph after_mg = after.as_multigraph();
    auto corrupted = corrupted_vertices(before, after);
    std::vector<char> bad(after.n(), 0);
    for (int v : corrupted) bad[v] = 1;

    ExactResult out;
    out.quantity = lifted.quantity;
    out.n = lifted.n;
    out.t = lifted.t;
    out.epsilon = lifted.epsilon;
    out.mode = lifted.mode;

    switch (lifted.quantity) {
        case Quantity::MaxTCut: {
            out.labels = lifted.labels;
            out.value = cut_fraction(after_mg, out.labels);
            break;
        }
        case Quantity::Independence:
        case Quantity::ModifiedIndependence: {
            for (int v : lifted.vertex_set) {
                if (!bad[v]) out.vertex_set.push_back(v);
            }
            if (!set_is_independent(after_mg, out.vertex_set)) {
                fail(ErrorCode::InvalidArgument, "transfer produced a dependent set");
            }
            out.value = Rational(static_cast<long long>(out.vertex_set.size()), out.n);
            break;
        }
        case Quantity::Domination: {
            std::vector<char> in(after.n(), 0);
            for (int v : lifted.vertex_set) in[v] = 1;
            for (int v : corrupted) in[v] = 1;
            for (int v = 0; v < after.n(); ++v) {
                if (in[v]) out.vertex_set.push_back(v);
            }
            if (!set_is_dominating(after_mg, out.vertex_set)) {
                fail(ErrorCode::InvalidArgument, "transfer produced a non-dominating set");
            }
            out.value = Rational(static_cast<long long>(out.vertex_set.size()), out.n);
            break;
        }
        case Quantity::VertexExpansion:
        case Quantity::EdgeExpansion: {
            out.vertex_set = lifted.vertex_set;
            out.value = expansion_ratio(after_mg, out.vertex_set, lifted.mode);
            break;
        }
        case Quantity::Chromatic:
            fail(ErrorCode::InvalidArgument, "colorings do not survive arbitrary noise");
    }
    return out;
}

} // namespace liftlab
