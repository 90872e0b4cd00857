#pragma once

#include <optional>
#include <string>

#include "cpdag/ci.hpp"
#include "cpdag/dsep.hpp"
#include "cpdag/pdag.hpp"

namespace cpdag {

struct VerificationReport {
    bool ok;
    int failed_step;     // 0 when ok, else the step (1..3) that failed
    std::string reason;  // empty when ok
};

/// Phase IV: checks that a candidate graph is a complete causal explanation
/// of the model.
///
///   step 1: the candidate is a DAG (no undirected edges, no cycle);
///   step 2: every listed statement is entailed by the DAG;
///   step 3: nothing beyond the list is entailed.  For each vertex v and the
///           non-parent predecessors R in a topological order, the fact
///           "v _||_ R | parents(v)" must be in the model, either literally
///           or as the chain of pairwise facts "v _||_ r | parents(v) and
///           prior r's" that composes to it.
///
/// The chain fallback matters for pairwise models, which never list a
/// set-valued fact explicitly; for models closed under the DAG-entailed
/// independencies the two readings agree.
///
/// Every vertex the model mentions must be a vertex of the candidate; the
/// candidate may have vertices the model never mentions.
inline VerificationReport verify_explanation(const Pdag& candidate, const DependencyModel& m) {
    detail::ModelView::require_covered(m, candidate);
    detail::ModelView view(m, candidate);

    if (candidate.undirected_edge_count() != 0)
        return {false, 1, "undirected edges remain"};
    if (has_directed_cycle(candidate))
        return {false, 1, "cyclic"};
    Dag d(candidate);

    for (const auto& st : m.statements()) {
        if (!d_separated(d, names_to_mask(candidate, st.a()), names_to_mask(candidate, st.b()),
                         names_to_mask(candidate, st.s())))
            return {false, 2, "statement not entailed: " + st.to_string()};
    }

    VertexMask before = 0;
    for (int v : topological_order(d)) {
        VertexMask pa = d.parents_mask(v);
        VertexMask rest = before & ~pa;
        before |= vertex_bit(v);
        if (!rest) continue;
        if (view.independent_sets(vertex_bit(v), rest, pa)) continue;
        bool composed = true;
        VertexMask cond = pa;
        for (VertexMask mr = rest; mr; mr &= mr - 1) {
            int r = std::countr_zero(mr);
            if (!view.independent(v, r, cond)) {
                composed = false;
                break;
            }
            cond |= vertex_bit(r);
        }
        if (!composed) {
            CiStatement missing(candidate.mask_names(vertex_bit(v)), candidate.mask_names(rest),
                                candidate.mask_names(pa));
            return {false, 3, "missing independence fact: " + missing.to_string()};
        }
    }
    return {true, 0, ""};
}

/// First statement over the graph's universe on which the model and the
/// DAG's entailments disagree, or nullopt when they agree everywhere.  The
/// model side counts a statement as held when it is listed or when it
/// composes from listed pairwise facts, so a pairwise list stands in for
/// the full entailment set it determines.  Exhaustive over all disjoint
/// set triples, hence the vertex cap.
inline std::optional<CiStatement> full_equivalence_mismatch(const Dag& g,
                                                            const DependencyModel& m,
                                                            int cap = 8) {
    const Pdag& graph = g.graph();
    detail::ModelView::require_covered(m, graph);
    detail::ModelView view(m, graph);
    int n = graph.vertex_count();
    if (n > cap)
        throw std::length_error("full equivalence check: vertex count " + std::to_string(n) +
                                " exceeds cap " + std::to_string(cap));

    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) total *= 4;
    for (std::uint64_t code = 0; code < total; ++code) {
        VertexMask a = 0, b = 0, s = 0;
        std::uint64_t c = code;
        for (int v = 0; v < n; ++v, c /= 4) {
            switch (c % 4) {
                case 1: a |= vertex_bit(v); break;
                case 2: b |= vertex_bit(v); break;
                case 3: s |= vertex_bit(v); break;
                default: break;
            }
        }
        if (!a || !b || mask_set_lex_less(b, a)) continue;
        if (view.entails_sets(a, b, s) != d_separated(g, a, b, s))
            return CiStatement(graph.mask_names(a), graph.mask_names(b), graph.mask_names(s));
    }
    return std::nullopt;
}

/// True when the model's statements, read with pairwise composition, are
/// exactly the DAG's entailments.
inline bool full_equivalence_check(const Dag& g, const DependencyModel& m, int cap = 8) {
    return !full_equivalence_mismatch(g, m, cap).has_value();
}

}  // namespace cpdag
