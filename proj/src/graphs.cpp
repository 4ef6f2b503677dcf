#include "liftlab/graphs.hpp"

#include <algorithm>
#include <queue>

namespace liftlab {

Multigraph::Multigraph(int n, std::vector<std::vector<int>> mult) : n_(n), mult_(std::move(mult)) {
    if (static_cast<int>(mult_.size()) != n_) {
        fail(ErrorCode::InvalidArgument, "multiplicity matrix has wrong row count");
    }
    for (int i = 0; i < n_; ++i) {
        if (static_cast<int>(mult_[i].size()) != n_) {
            fail(ErrorCode::InvalidArgument, "multiplicity matrix is not square");
        }
        for (int j = 0; j < n_; ++j) {
            if (mult_[i][j] < 0) fail(ErrorCode::InvalidArgument, "negative multiplicity");
            if (mult_[i][j] != mult_[j][i]) {
                fail(ErrorCode::NotSymmetric, "multiplicity matrix is not symmetric");
            }
        }
    }
}

void Multigraph::add_edges(int i, int j, int count) {
    if (i == j) {
        mult_[i][i] += count;
    } else {
        mult_[i][j] += count;
        mult_[j][i] += count;
    }
}

int Multigraph::degree(int i) const {
    int d = mult_[i][i]; // each loop adds 1
    for (int j = 0; j < n_; ++j) {
        if (j != i) d += mult_[i][j];
    }
    return d;
}

std::vector<int> Multigraph::degree_profile() const {
    std::vector<int> deg(n_);
    for (int i = 0; i < n_; ++i) deg[i] = degree(i);
    return deg;
}

std::optional<int> Multigraph::regular_degree() const {
    if (n_ == 0) return std::nullopt;
    int d = degree(0);
    for (int i = 1; i < n_; ++i) {
        if (degree(i) != d) return std::nullopt;
    }
    return d;
}

bool Multigraph::connected() const {
    if (n_ == 0) return true;
    std::vector<char> seen(n_, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v = 0; v < n_; ++v) {
            if (v != u && mult_[u][v] > 0 && !seen[v]) {
                seen[v] = 1;
                ++count;
                q.push(v);
            }
        }
    }
    return count == n_;
}

bool Multigraph::bipartite(std::vector<int>* side) const {
    std::vector<int> color(n_, -1);
    for (int s = 0; s < n_; ++s) {
        if (color[s] != -1) continue;
        color[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            if (mult_[u][u] > 0) return false; // loop = odd cycle
            for (int v = 0; v < n_; ++v) {
                if (v == u || mult_[u][v] == 0) continue;
                if (color[v] == -1) {
                    color[v] = 1 - color[u];
                    q.push(v);
                } else if (color[v] == color[u]) {
                    return false;
                }
            }
        }
    }
    if (side) *side = color;
    return true;
}

bool Multigraph::has_loops() const {
    for (int i = 0; i < n_; ++i) {
        if (mult_[i][i] > 0) return true;
    }
    return false;
}

int Multigraph::total_edges() const {
    int e = 0;
    for (int i = 0; i < n_; ++i) {
        e += mult_[i][i];
        for (int j = i + 1; j < n_; ++j) e += mult_[i][j];
    }
    return e;
}

SimpleGraph::SimpleGraph(int n, const std::vector<std::pair<int, int>>& edges) : n_(n), adj_(n) {
    for (auto [u, v] : edges) add_edge(u, v);
}

bool SimpleGraph::has_edge(int u, int v) const {
    const auto& nb = adj_[u];
    return std::binary_search(nb.begin(), nb.end(), v);
}

void SimpleGraph::add_edge(int u, int v) {
    if (u == v) fail(ErrorCode::InvalidArgument, "loop in simple graph");
    if (u < 0 || v < 0 || u >= n_ || v >= n_) {
        fail(ErrorCode::InvalidArgument, "edge endpoint out of range");
    }
    if (has_edge(u, v)) fail(ErrorCode::InvalidArgument, "duplicate edge in simple graph");
    if (u > v) std::swap(u, v);
    edges_.emplace_back(u, v);
    adj_[u].insert(std::upper_bound(adj_[u].begin(), adj_[u].end(), v), v);
    adj_[v].insert(std::upper_bound(adj_[v].begin(), adj_[v].end(), u), u);
}

std::vector<int> SimpleGraph::degree_profile() const {
    std::vector<int> deg(n_);
    for (int v = 0; v < n_; ++v) deg[v] = degree(v);
    return deg;
}

std::optional<int> SimpleGraph::regular_degree() const {
    if (n_ == 0) return std::nullopt;
    int d = degree(0);
    for (int v = 1; v < n_; ++v) {
        if (degree(v) != d) return std::nullopt;
    }
    return d;
}

bool SimpleGraph::connected() const {
    if (n_ == 0) return true;
    std::vector<char> seen(n_, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : adj_[u]) {
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                q.push(v);
            }
        }
    }
    return count == n_;
}

Multigraph SimpleGraph::as_multigraph() const {
    Multigraph m(n_);
    for (auto [u, v] : edges_) m.add_edges(u, v);
    return m;
}

SimpleGraph SimpleGraph::relabeled(const std::vector<int>& perm) const {
    SimpleGraph out(n_);
    for (auto [u, v] : edges_) out.add_edge(perm[u], perm[v]);
    return out;
}

int BipartiteLayout::side_of(int v) const {
    return perm[v] < static_cast<int>(left.size()) ? 0 : 1;
}

BipartiteLayout BipartiteLayout::canonical(int n) {
    BipartiteLayout layout;
    layout.perm.resize(n);
    for (int v = 0; v < n; ++v) {
        layout.perm[v] = v;
        (v < n / 2 ? layout.left : layout.right).push_back(v);
    }
    return layout;
}

std::vector<int> degree_profile(const Multigraph& g) { return g.degree_profile(); }

std::optional<BipartiteLayout> find_bipartition(const SimpleGraph& g) {
    if (!g.connected()) fail(ErrorCode::DisconnectedInput, "find_bipartition requires a connected graph");
    std::vector<int> color(g.n(), -1);
    std::queue<int> q;
    color[0] = 0;
    q.push(0);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : g.neighbors(u)) {
            if (color[v] == -1) {
                color[v] = 1 - color[u];
                q.push(v);
            } else if (color[v] == color[u]) {
                return std::nullopt;
            }
        }
    }
    BipartiteLayout layout;
    for (int v = 0; v < g.n(); ++v) (color[v] == 0 ? layout.left : layout.right).push_back(v);
    if (layout.left.size() != layout.right.size()) {
        fail(ErrorCode::UnbalancedBipartition, "bipartition sides have unequal sizes");
    }
    layout.perm.assign(g.n(), -1);
    int idx = 0;
    for (int v : layout.left) layout.perm[v] = idx++;
    for (int v : layout.right) layout.perm[v] = idx++;
    return layout;
}

Rational graph_distance(const SimpleGraph& g1, const SimpleGraph& g2) {
    if (g1.n() != g2.n()) fail(ErrorCode::SizeMismatch, "graphs on different vertex counts");
    auto d1 = g1.regular_degree();
    auto d2 = g2.regular_degree();
    if (!d1 || !d2 || *d1 != *d2) fail(ErrorCode::NotRegular, "distance requires d-regular graphs of equal degree");
    long long symdiff = 0;
    for (auto [u, v] : g1.edges()) {
        if (!g2.has_edge(u, v)) ++symdiff;
    }
    for (auto [u, v] : g2.edges()) {
        if (!g1.has_edge(u, v)) ++symdiff;
    }
    return Rational(symdiff, 2LL * g1.n());
}

Multigraph double_cover(const Multigraph& h) {
    if (!h.regular_degree()) fail(ErrorCode::NotRegular, "double cover defined for regular multigraphs");
    int k = h.n();
    Multigraph out(2 * k);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            if (h.mult(i, j) > 0 && i <= j) {
                // Block form [[0, M], [M, 0]]; a loop (i == j) becomes a
                // single bundle of parallel edges between the two copies.
                out.add_edges(i, k + j, h.mult(i, j));
                if (i != j) out.add_edges(j, k + i, h.mult(i, j));
            }
        }
    }
    return out;
}

} // namespace liftlab
