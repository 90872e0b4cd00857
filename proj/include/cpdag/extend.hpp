#pragma once

#include <stdexcept>

#include "cpdag/pattern.hpp"
#include "cpdag/pdag.hpp"
#include "cpdag/result.hpp"
#include "cpdag/rules.hpp"

namespace cpdag {

/// Phase III: extends a maximally oriented graph to a member of the class
/// it describes.  Repeatedly commits the smallest undirected edge to its
/// low-to-high direction and re-closes under R1-R4; for valid input no
/// choice can lead into a dead end, so nothing ever backtracks.
///
/// The result is validated rather than the input: a wrong input (one that
/// was not maximally oriented) surfaces as a cyclic or class-changing
/// extension, and that is reported as a failure instead of a wrong DAG.
inline Result<Dag> try_extend_to_dag(Pdag g) {
    const Pdag input = g;
    while (true) {
        int tail = -1, head = -1;
        for (int a = 0; a < g.vertex_count(); ++a) {
            VertexMask m = g.undirected_mask(a);
            if (m) {
                tail = a;
                head = std::countr_zero(m);
                break;
            }
        }
        if (tail < 0) break;
        g.orient(tail, head);
        g = close_under(std::move(g), std::span<const OrientationRule>(kAllRules));
    }
    if (has_directed_cycle(g))
        return Result<Dag>::failure("phase III", "extension is cyclic");
    Dag d(std::move(g));
    if (!is_consistent_dag_extension(d, input))
        return Result<Dag>::failure("phase III", "extension is not consistent with the input");
    return d;
}

/// Same as try_extend_to_dag but treats failure as a precondition breach.
inline Dag extend_to_dag(const Pdag& g) {
    auto r = try_extend_to_dag(g);
    if (!r)
        throw std::logic_error("extend_to_dag: " + r.error().reason +
                               "; input was not maximally oriented");
    return std::move(r).take();
}

}  // namespace cpdag
