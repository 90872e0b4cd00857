#pragma once

#include <stdexcept>

#include "cpdag/pdag.hpp"

namespace cpdag {

/// The pattern of a DAG: same adjacencies, and an edge is directed exactly
/// when it takes part in an unshielded collider of g.  Two DAGs entail the
/// same conditional independencies iff they have the same pattern.
inline Pdag pattern_of(const Dag& g) {
    Pdag out(g.vertex_names());
    int n = g.vertex_count();
    std::vector<VertexMask> collider_in(static_cast<size_t>(n), 0);
    for (const auto& [a, b, c] : unshielded_colliders(g)) {
        collider_in[static_cast<size_t>(b)] |= vertex_bit(a) | vertex_bit(c);
    }
    for (const auto& [tail, head] : g.directed_edges()) {
        if (collider_in[static_cast<size_t>(head)] & vertex_bit(tail))
            out.add_directed(tail, head);
        else
            out.add_undirected(tail, head);
    }
    return out;
}

inline void require_same_vertices(const Pdag& a, const Pdag& b) {
    if (a.vertex_names() != b.vertex_names())
        throw std::invalid_argument("graphs are over different vertex sets");
}

/// True if d1 and d2 represent the same independence structure, decided by
/// pattern equality.
inline bool markov_equivalent(const Dag& d1, const Dag& d2) {
    require_same_vertices(d1.graph(), d2.graph());
    return pattern_of(d1) == pattern_of(d2);
}

/// True if g is a consistent extension of h: identical adjacencies, every
/// directed edge of h kept with its orientation, and identical unshielded
/// colliders.
inline bool is_consistent_dag_extension(const Dag& g, const Pdag& h) {
    require_same_vertices(g.graph(), h);
    int n = h.vertex_count();
    for (int v = 0; v < n; ++v)
        if (g.adjacency_mask(v) != h.adjacency_mask(v)) return false;
    for (const auto& [tail, head] : h.directed_edges())
        if (!g.has_directed(tail, head)) return false;
    return unshielded_colliders(g) == unshielded_colliders(h);
}

}  // namespace cpdag
