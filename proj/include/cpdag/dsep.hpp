#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cpdag/pdag.hpp"

namespace cpdag {

/// d-separation test, phrased through the moral graph: A and B are
/// d-separated by S iff S separates A from B in the moralized subgraph
/// induced by the ancestral closure of A, B and S.
///
/// A and B must be non-empty and A, B, S pairwise disjoint.
inline bool d_separated(const Dag& g, VertexMask a, VertexMask b, VertexMask s) {
    if (!a || !b) throw std::invalid_argument("d_separated: A and B must be non-empty");
    if ((a & b) || (a & s) || (b & s))
        throw std::invalid_argument("d_separated: A, B, S must be pairwise disjoint");
    VertexMask unknown = (a | b | s) & ~g.graph().vertex_mask();
    if (unknown)
        throw std::invalid_argument("d_separated: vertex id out of range");

    VertexMask anc = ancestral_closure(g, a | b | s);

    // Moral graph restricted to anc: keep every edge, drop direction, and
    // marry the parents of each vertex.
    int n = g.vertex_count();
    std::vector<VertexMask> moral(static_cast<size_t>(n), 0);
    for (VertexMask m = anc; m; m &= m - 1) {
        int v = std::countr_zero(m);
        VertexMask ps = g.parents_mask(v) & anc;
        moral[static_cast<size_t>(v)] |= ps;
        for (VertexMask mp = ps; mp; mp &= mp - 1) {
            int p = std::countr_zero(mp);
            moral[static_cast<size_t>(p)] |= vertex_bit(v);
            moral[static_cast<size_t>(p)] |= ps & ~vertex_bit(p);
        }
    }

    VertexMask allowed = anc & ~s;
    VertexMask reached = a & allowed;
    VertexMask frontier = reached;
    while (frontier) {
        VertexMask next = 0;
        for (VertexMask m = frontier; m; m &= m - 1)
            next |= moral[static_cast<size_t>(std::countr_zero(m))];
        next &= allowed;
        frontier = next & ~reached;
        reached |= next;
    }
    return (reached & b) == 0;
}

inline VertexMask names_to_mask(const Pdag& g, const std::vector<std::string>& names) {
    VertexMask m = 0;
    for (const auto& n : names) m |= vertex_bit(g.vertex(n));
    return m;
}

inline bool d_separated(const Dag& g, const std::vector<std::string>& a,
                        const std::vector<std::string>& b,
                        const std::vector<std::string>& s) {
    return d_separated(g, names_to_mask(g.graph(), a), names_to_mask(g.graph(), b),
                       names_to_mask(g.graph(), s));
}

}  // namespace cpdag
