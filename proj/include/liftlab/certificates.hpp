#pragma once

#include <string>

#include "liftlab/graphs.hpp"

namespace liftlab {

enum class Quantity {
    MaxTCut,
    Chromatic,
    Independence,
    Domination,
    VertexExpansion,
    EdgeExpansion,
    ModifiedIndependence,
};

const char* quantity_name(Quantity q);

enum class BoundDirection { Upper, Lower };

/// A certified bound, valid for every graph with the recorded spectral data.
struct CertificateResult {
    Quantity quantity;
    double bound = 0.0;
    BoundDirection direction = BoundDirection::Upper;
    int d = 0;
    double spectral_input = 0.0; // lambda_n or lambda-tilde, as used
    int t = 0;                   // cut arity, when relevant
    double epsilon = 0.0;        // small-set size fraction, when relevant
    /// Multiplicative correction reported symbolically, never applied
    /// numerically (its absolute constant is unspecified).
    std::string correction;
};

// Formula-level entry points (spectral quantity supplied by the caller).
CertificateResult hoffman_max_t_cut(int d, double lambda_n, int t);
CertificateResult hoffman_chromatic(int d, double lambda_n);
CertificateResult hoffman_independence(int d, double lambda_n);
CertificateResult trivial_domination(int d);
enum class ExpansionMode { Vertex, Edge };
CertificateResult kahale_bound(int d, double lambda_2, double epsilon, ExpansionMode mode);

// Graph-level entry points: compute the spectral quantity, then evaluate.
// lambda_n comes from the deflated spectrum when bipartite (there -d is
// trivial); otherwise the raw most-negative eigenvalue is used.
CertificateResult hoffman_max_t_cut(const SimpleGraph& g, int t, bool bipartite = false);
CertificateResult hoffman_chromatic(const SimpleGraph& g, bool bipartite = false);
CertificateResult hoffman_independence(const SimpleGraph& g, bool bipartite = false);
CertificateResult kahale_bound(const SimpleGraph& g, double epsilon, ExpansionMode mode,
                               bool bipartite = false);

} // namespace liftlab
