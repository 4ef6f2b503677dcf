#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "liftlab/errors.hpp"
#include "liftlab/rational.hpp"

namespace liftlab {

/// Multigraph stored as a symmetric nonnegative integer multiplicity matrix.
/// mult[i][j] (i != j) counts parallel edges; mult[i][i] counts loops.
/// A loop contributes exactly 1 to its vertex's degree: a loop lifts to a
/// perfect matching on its fiber, so the fiber stays mult[i][i]-regular.
class Multigraph {
public:
    Multigraph() : n_(0) {}
    explicit Multigraph(int n) : n_(n), mult_(n, std::vector<int>(n, 0)) {}
    Multigraph(int n, std::vector<std::vector<int>> mult);

    int n() const { return n_; }
    int mult(int i, int j) const { return mult_[i][j]; }
    const std::vector<std::vector<int>>& mult_matrix() const { return mult_; }

    void add_edges(int i, int j, int count = 1);

    int degree(int i) const;
    std::vector<int> degree_profile() const;

    /// Degree if regular, otherwise nullopt.
    std::optional<int> regular_degree() const;
    bool is_regular(int d) const { return regular_degree() == d; }

    bool connected() const;
    /// Bipartite on the support graph (loops break bipartiteness).
    bool bipartite(std::vector<int>* side = nullptr) const;
    bool has_loops() const;
    int total_edges() const; // loops count once

private:
    int n_;
    std::vector<std::vector<int>> mult_;
};

/// Loop-free graph with 0/1 adjacency; edges stored once with u < v.
class SimpleGraph {
public:
    SimpleGraph() : n_(0) {}
    explicit SimpleGraph(int n) : n_(n), adj_(n) {}
    SimpleGraph(int n, const std::vector<std::pair<int, int>>& edges);

    int n() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    bool has_edge(int u, int v) const;
    void add_edge(int u, int v);

    std::vector<int> degree_profile() const;
    std::optional<int> regular_degree() const;
    bool is_regular(int d) const { return regular_degree() == d; }
    bool connected() const;

    Multigraph as_multigraph() const;

    /// Relabel vertices: vertex v becomes perm[v].
    SimpleGraph relabeled(const std::vector<int>& perm) const;

private:
    int n_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_; // sorted neighbor lists
};

/// Balanced two-sided layout: canonical order puts `left` first, `right` second.
struct BipartiteLayout {
    std::vector<int> left;
    std::vector<int> right;
    /// perm[v] = canonical index of vertex v (left block then right block).
    std::vector<int> perm;

    int side_of(int v) const; // 0 = left, 1 = right

    static BipartiteLayout canonical(int n); // {0..n/2-1} | {n/2..n-1}
};

// --- graph_core operations ---

std::vector<int> degree_profile(const Multigraph& g);

/// Unique balanced bipartition of a connected graph, or nullopt when not
/// bipartite. Unbalanced bipartitions and disconnected inputs are errors.
std::optional<BipartiteLayout> find_bipartition(const SimpleGraph& g);

/// Edit metric |E(g1) symdiff E(g2)| / (2n) between d-regular graphs on [n].
Rational graph_distance(const SimpleGraph& g1, const SimpleGraph& g2);

/// Kronecker double cover: block adjacency [[0, M], [M, 0]] on 2k vertices.
Multigraph double_cover(const Multigraph& h);

} // namespace liftlab
