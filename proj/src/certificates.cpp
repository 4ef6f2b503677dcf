#include "liftlab/certificates.hpp"

#include <cmath>

#include "liftlab/spectral.hpp"

namespace liftlab {

const char* quantity_name(Quantity q) {
    switch (q) {
        case Quantity::MaxTCut: return "max_t_cut";
        case Quantity::Chromatic: return "chromatic";
        case Quantity::Independence: return "independence";
        case Quantity::Domination: return "domination";
        case Quantity::VertexExpansion: return "vertex_expansion";
        case Quantity::EdgeExpansion: return "edge_expansion";
        case Quantity::ModifiedIndependence: return "modified_independence";
    }
    return "?";
}

CertificateResult hoffman_max_t_cut(int d, double lambda_n, int t) {
    if (t < 2) fail(ErrorCode::InvalidArgument, "t-cut needs t >= 2");
    CertificateResult r;
    r.quantity = Quantity::MaxTCut;
    r.direction = BoundDirection::Upper;
    r.d = d;
    r.t = t;
    r.spectral_input = lambda_n;
    r.bound = (t - 1.0) / t * (1.0 + std::abs(lambda_n) / d);
    return r;
}

CertificateResult hoffman_chromatic(int d, double lambda_n) {
    CertificateResult r;
    r.quantity = Quantity::Chromatic;
    r.direction = BoundDirection::Lower;
    r.d = d;
    r.spectral_input = lambda_n;
    r.bound = 1.0 + std::ceil(static_cast<double>(d) / std::abs(lambda_n) - 1e-12);
    return r;
}

CertificateResult hoffman_independence(int d, double lambda_n) {
    CertificateResult r;
    r.quantity = Quantity::Independence;
    r.direction = BoundDirection::Upper;
    r.d = d;
    r.spectral_input = lambda_n;
    r.bound = std::abs(lambda_n) / (d + std::abs(lambda_n));
    return r;
}

CertificateResult trivial_domination(int d) {
    if (d < 1) fail(ErrorCode::InvalidArgument, "degree must be positive");
    CertificateResult r;
    r.quantity = Quantity::Domination;
    r.direction = BoundDirection::Lower;
    r.d = d;
    r.bound = 1.0 / (d + 1.0);
    return r;
}

CertificateResult kahale_bound(int d, double lambda_2, double epsilon, ExpansionMode mode) {
    if (epsilon <= 0.0 || epsilon >= 1.0) fail(ErrorCode::InvalidArgument, "epsilon in (0,1)");
    const double ram = 2.0 * std::sqrt(static_cast<double>(d - 1));
    const double tilde = std::max(lambda_2, ram);
    CertificateResult r;
    r.d = d;
    r.epsilon = epsilon;
    r.spectral_input = tilde;
    r.direction = BoundDirection::Lower;
    if (mode == ExpansionMode::Vertex) {
        r.quantity = Quantity::VertexExpansion;
        r.bound = d / 2.0 * (1.0 - std::sqrt(std::max(0.0, 1.0 - 4.0 * (d - 1) / (tilde * tilde))));
        r.correction = "(1 - C*log(d)/log(1/eps)), C unspecified";
    } else {
        r.quantity = Quantity::EdgeExpansion;
        double disc = std::sqrt(std::max(0.0, tilde * tilde / 4.0 - (d - 1)));
        r.bound = d - (1.0 + tilde / 2.0 + disc);
        r.correction = "(1 + C*log(d)/log(1/eps)) on the subtracted term, C unspecified";
    }
    return r;
}

namespace {

double lambda_n_for(const SimpleGraph& g, bool bipartite) {
    return deflated_extremes(g, bipartite).lambda_min;
}

} // namespace

CertificateResult hoffman_max_t_cut(const SimpleGraph& g, int t, bool bipartite) {
    auto d = g.regular_degree();
    if (!d) fail(ErrorCode::NotRegular, "certificate requires a regular graph");
    return hoffman_max_t_cut(*d, lambda_n_for(g, bipartite), t);
}

CertificateResult hoffman_chromatic(const SimpleGraph& g, bool bipartite) {
    auto d = g.regular_degree();
    if (!d) fail(ErrorCode::NotRegular, "certificate requires a regular graph");
    return hoffman_chromatic(*d, lambda_n_for(g, bipartite));
}

CertificateResult hoffman_independence(const SimpleGraph& g, bool bipartite) {
    auto d = g.regular_degree();
    if (!d) fail(ErrorCode::NotRegular, "certificate requires a regular graph");
    return hoffman_independence(*d, lambda_n_for(g, bipartite));
}

CertificateResult kahale_bound(const SimpleGraph& g, double epsilon, ExpansionMode mode,
                               bool bipartite) {
    auto d = g.regular_degree();
    if (!d) fail(ErrorCode::NotRegular, "certificate requires a regular graph");
    double lambda2 = deflated_extremes(g, bipartite).lambda_max;
    return kahale_bound(*d, lambda2, epsilon, mode);
}

} // namespace liftlab
