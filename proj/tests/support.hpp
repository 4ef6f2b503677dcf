#pragma once

#include "liftlab/graphs.hpp"

namespace liftlab::testsupport {

/// Ring of B diamond blocks (K_4 minus one edge), chained into a cycle:
/// 3-regular, connected, non-bipartite, and for B >= 6 the cycle structure
/// pushes lambda_2 above 2 sqrt(2) (B = 8 gives lambda_2 about 2.924).
inline Multigraph ring_of_diamonds(int blocks) {
    const int n = 4 * blocks;
    Multigraph g(n);
    for (int b = 0; b < blocks; ++b) {
        int o = 4 * b;
        for (auto [i, j] : {std::pair{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}) {
            g.add_edges(o + i, o + j);
        }
        g.add_edges(o + 1, (o + 4) % n);
    }
    return g;
}

} // namespace liftlab::testsupport
