#pragma once

#include <vector>

#include "liftlab/certificates.hpp"
#include "liftlab/ensembles.hpp"
#include "liftlab/graphs.hpp"
#include "liftlab/rational.hpp"

namespace liftlab {

/// Exact optimum plus the witness that attains it. Loops count 1/2 edge in
/// cut normalizations (|E| = dk/2), matching the degree convention.
struct ExactResult {
    Quantity quantity;
    Rational value;
    int n = 0;                   // vertex count of the graph solved
    std::uint64_t base_fingerprint = 0; // hash of the solved multiplicity matrix
    std::vector<int> labels;     // cut labels / colors (empty when unused)
    std::vector<int> vertex_set; // independent / dominating / expanding set
    int t = 0;                   // cut arity
    double epsilon = 0.0;        // expansion size fraction
    ExpansionMode mode = ExpansionMode::Vertex;
};

// --- independent witness evaluators (used to re-check every result) ---

Rational cut_fraction(const Multigraph& g, const std::vector<int>& labels);
bool coloring_is_proper(const Multigraph& g, const std::vector<int>& colors);
bool set_is_independent(const Multigraph& g, const std::vector<int>& vs);
bool set_is_dominating(const Multigraph& g, const std::vector<int>& vs);
/// |boundary(S)| / |S|; vertex mode follows the inclusive boundary reading
/// (a member of S with a neighbor in S is in the boundary). Set
/// exclude_set_from_boundary to use the alternative reading.
Rational expansion_ratio(const Multigraph& g, const std::vector<int>& vs, ExpansionMode mode,
                         bool exclude_set_from_boundary = false);
Rational modified_independence_value(const Multigraph& g, const std::vector<int>& vs);

// --- exact optimizers ---

/// t = 2: Gray-code sweep (n <= 28); t >= 3: branch and bound (n <= 16) with
/// the Hoffman certificate as a stopping bound.
ExactResult max_t_cut_exact(const Multigraph& g, int t);
ExactResult independence_exact(const Multigraph& g);                  // n <= 60 sparse
/// Loops removed; a vertex with one loop counts 1/2, more loops 0. Value is
/// normalized by the vertex count.
ExactResult modified_independence(const Multigraph& h);
ExactResult chromatic_exact(const Multigraph& g);                     // n <= 20
ExactResult domination_exact(const Multigraph& g);                    // n <= 30
/// floor(eps*n) <= 8. Enumerates connected candidate sets by default; pass
/// connected_only = false (n <= 20) to sweep all subsets as an oracle.
ExactResult small_set_expansion_exact(const Multigraph& g, double epsilon, ExpansionMode mode,
                                      bool connected_only = true,
                                      bool exclude_set_from_boundary = false);

// --- lift assignment: push a base witness through the fibers ---

/// Returns the lifted witness and its exactly evaluated objective; for every
/// supported quantity the normalized objective equals the base value.
ExactResult lift_assignment(const ExactResult& base_result, const LiftedGraph& lift);

/// Witness transfer to a noisy version of the lift: cut labels are kept,
/// independent sets drop corrupted vertices, dominating sets absorb them.
/// Each result is re-validated; degradations obey the noise-slack bounds.
std::vector<int> corrupted_vertices(const SimpleGraph& before, const SimpleGraph& after);
ExactResult transfer_witness(const ExactResult& lifted, const SimpleGraph& before,
                             const SimpleGraph& after);

} // namespace liftlab
