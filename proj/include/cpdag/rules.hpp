#pragma once

#include <array>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cpdag/pdag.hpp"

namespace cpdag {

/// The four orientation rules.  Each replaces one undirected edge x -- y
/// with x -> y when the local configuration around it forces that direction
/// in every acyclic, collider-preserving completion:
///
///   R1:  w -> x,  x -- y,  w and y non-adjacent            =>  x -> y
///   R2:  x -> w -> y,  x -- y                              =>  x -> y
///   R3:  x -- y,  x -- v,  x -- w,  v -> y,  w -> y,
///        v and w non-adjacent                              =>  x -> y
///   R4:  x -- y,  x -- v,  v -> w,  w -> y,
///        v and y non-adjacent, x and w adjacent            =>  x -> y
///
/// R1 propagates along non-adjacent chains, R2 closes directed triangles,
/// and R3/R4 only become reachable once background knowledge has oriented
/// edges that no pattern alone would orient.
enum class OrientationRule { R1, R2, R3, R4 };

inline const char* rule_name(OrientationRule r) {
    switch (r) {
        case OrientationRule::R1: return "R1";
        case OrientationRule::R2: return "R2";
        case OrientationRule::R3: return "R3";
        default: return "R4";
    }
}

inline constexpr std::array<OrientationRule, 3> kPatternRules = {
    OrientationRule::R1, OrientationRule::R2, OrientationRule::R3};

inline constexpr std::array<OrientationRule, 4> kAllRules = {
    OrientationRule::R1, OrientationRule::R2, OrientationRule::R3, OrientationRule::R4};

/// One concrete way a rule fires: orient tail -> head, with the one or two
/// other vertices of the matched configuration recorded as witnesses.
struct RuleApplication {
    OrientationRule rule;
    int tail;
    int head;
    std::array<int, 2> witnesses;
    int witness_count;

    std::string describe(const Pdag& g) const {
        std::string s = std::string(rule_name(rule)) + ": " + g.name_of(tail) + " -> " +
                        g.name_of(head) + " (via " + g.name_of(witnesses[0]);
        if (witness_count > 1) s += ", " + g.name_of(witnesses[1]);
        s += ")";
        return s;
    }
};

namespace detail {

/// Witnesses for rule r at the undirected edge x -- y (first match in id
/// order), or nullopt when the rule does not fire there.  The third slot is
/// the witness count.
inline std::optional<std::array<int, 3>> rule_match(const Pdag& g, OrientationRule r, int x,
                                                    int y) {
    switch (r) {
        case OrientationRule::R1: {
            VertexMask ws = g.parents_mask(x) & ~g.adjacency_mask(y) & ~vertex_bit(y);
            if (ws) return std::array<int, 3>{std::countr_zero(ws), -1, 1};
            return std::nullopt;
        }
        case OrientationRule::R2: {
            VertexMask ws = g.children_mask(x) & g.parents_mask(y);
            if (ws) return std::array<int, 3>{std::countr_zero(ws), -1, 1};
            return std::nullopt;
        }
        case OrientationRule::R3: {
            VertexMask pool = g.undirected_mask(x) & g.parents_mask(y);
            for (VertexMask mv = pool; mv; mv &= mv - 1) {
                int v = std::countr_zero(mv);
                for (VertexMask mw = mv & (mv - 1); mw; mw &= mw - 1) {
                    int w = std::countr_zero(mw);
                    if (!g.adjacent(v, w)) return std::array<int, 3>{v, w, 2};
                }
            }
            return std::nullopt;
        }
        default: {  // R4
            VertexMask vs = g.undirected_mask(x) & ~g.adjacency_mask(y) & ~vertex_bit(y);
            for (VertexMask mv = vs; mv; mv &= mv - 1) {
                int v = std::countr_zero(mv);
                VertexMask ws = g.children_mask(v) & g.parents_mask(y) & g.adjacency_mask(x);
                if (ws) return std::array<int, 3>{v, std::countr_zero(ws), 2};
            }
            return std::nullopt;
        }
    }
}

}  // namespace detail

/// First configuration where rule r fires, scanning undirected edges in both
/// directions ordered by (tail, head).  Deterministic in the graph.
inline std::optional<RuleApplication> find_rule_application(const Pdag& g, OrientationRule r) {
    int n = g.vertex_count();
    for (int x = 0; x < n; ++x) {
        for (VertexMask my = g.undirected_mask(x); my; my &= my - 1) {
            int y = std::countr_zero(my);
            if (auto m = detail::rule_match(g, r, x, y))
                return RuleApplication{r, x, y, {(*m)[0], (*m)[1]}, (*m)[2]};
        }
    }
    return std::nullopt;
}

/// Every configuration where rule r fires on the current graph.
inline std::vector<RuleApplication> all_rule_applications(const Pdag& g, OrientationRule r) {
    std::vector<RuleApplication> out;
    int n = g.vertex_count();
    for (int x = 0; x < n; ++x) {
        for (VertexMask my = g.undirected_mask(x); my; my &= my - 1) {
            int y = std::countr_zero(my);
            if (auto m = detail::rule_match(g, r, x, y))
                out.push_back(RuleApplication{r, x, y, {(*m)[0], (*m)[1]}, (*m)[2]});
        }
    }
    return out;
}

/// Applies rule r once if possible, returning the oriented graph and what
/// fired.
inline std::optional<std::pair<Pdag, RuleApplication>> apply_rule(const Pdag& g,
                                                                  OrientationRule r) {
    auto app = find_rule_application(g, r);
    if (!app) return std::nullopt;
    Pdag out = g;
    out.orient(app->tail, app->head);
    return std::pair(std::move(out), *app);
}

inline bool any_rule_applies(const Pdag& g, std::span<const OrientationRule> rules) {
    for (OrientationRule r : rules)
        if (find_rule_application(g, r)) return true;
    return false;
}

/// Closes g under the given rules: repeatedly applies the first rule in the
/// list that fires anywhere, until none does.  The rule set is confluent, so
/// the fixpoint does not depend on the scan order; this particular order
/// just makes runs reproducible.
inline Pdag close_under(Pdag g, std::span<const OrientationRule> rules) {
    bool fired = true;
    while (fired) {
        fired = false;
        for (OrientationRule r : rules) {
            if (auto app = find_rule_application(g, r)) {
                g.orient(app->tail, app->head);
                fired = true;
                break;
            }
        }
    }
    return g;
}

inline Pdag close_under(Pdag g, std::initializer_list<OrientationRule> rules) {
    return close_under(std::move(g), std::span<const OrientationRule>(rules.begin(), rules.size()));
}

/// Closure of a pattern under R1-R3: directs every edge that has the same
/// orientation in all consistent extensions, and leaves exactly the
/// underdetermined ones undirected.
inline Pdag max_orient(const Pdag& pattern) {
    return close_under(pattern, std::span<const OrientationRule>(kPatternRules));
}

}  // namespace cpdag
