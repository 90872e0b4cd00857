#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cpdag/pdag.hpp"
#include "cpdag/result.hpp"
#include "cpdag/rules.hpp"
#include "cpdag/text.hpp"

namespace cpdag {

/// Background knowledge: directed edges that must appear, and directed
/// edges that must not.  Requiring an edge in both directions, or both
/// requiring and forbidding the same edge, is rejected outright; forbidding
/// both directions of a pair is allowed and means the pair must end up
/// non-adjacent.
class BackgroundKnowledge {
public:
    using Edge = std::pair<std::string, std::string>;

    BackgroundKnowledge() = default;

    BackgroundKnowledge(std::vector<Edge> forbidden, std::vector<Edge> required)
        : forbidden_(normalize(std::move(forbidden))), required_(normalize(std::move(required))) {
        for (const auto& e : required_) {
            if (std::binary_search(forbidden_.begin(), forbidden_.end(), e))
                throw std::invalid_argument("edge " + e.first + " -> " + e.second +
                                            " both required and forbidden");
            Edge reversed{e.second, e.first};
            if (std::binary_search(required_.begin(), required_.end(), reversed) &&
                e.first < e.second)
                throw std::invalid_argument("both directions required between " + e.first +
                                            " and " + e.second);
        }
    }

    bool empty() const noexcept { return forbidden_.empty() && required_.empty(); }
    const std::vector<Edge>& forbidden() const noexcept { return forbidden_; }
    const std::vector<Edge>& required() const noexcept { return required_; }

    /// Parses the knowledge format, one constraint per line:
    ///
    ///     require A -> B
    ///     forbid  A -> B
    ///
    /// Comments start at '#'.
    static BackgroundKnowledge parse(std::string_view text) {
        std::vector<Edge> forbidden, required;
        detail::for_each_line(text, [&](int lineno, std::string_view raw) {
            auto tokens = detail::content_tokens(raw);
            if (tokens.empty()) return;
            if (tokens.size() != 4 || tokens[2] != "->" ||
                (tokens[0] != "require" && tokens[0] != "forbid"))
                throw ParseError(lineno, "expected 'require A -> B' or 'forbid A -> B'");
            detail::check_name(lineno, tokens[1]);
            detail::check_name(lineno, tokens[3]);
            if (tokens[1] == tokens[3]) throw ParseError(lineno, "self loop on '" + tokens[1] + "'");
            (tokens[0] == "require" ? required : forbidden).emplace_back(tokens[1], tokens[3]);
        });
        try {
            return BackgroundKnowledge(std::move(forbidden), std::move(required));
        } catch (const std::invalid_argument& e) {
            throw ParseError(0, e.what());
        }
    }

    bool operator==(const BackgroundKnowledge&) const = default;

private:
    static std::vector<Edge> normalize(std::vector<Edge> edges) {
        for (const auto& [a, b] : edges) {
            if (!is_valid_vertex_name(a) || !is_valid_vertex_name(b))
                throw std::invalid_argument("invalid vertex name in background knowledge");
            if (a == b) throw std::invalid_argument("self loop on '" + a + "'");
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        return edges;
    }

    std::vector<Edge> forbidden_;
    std::vector<Edge> required_;
};

/// What to do with a forbidden edge that is currently undirected.
enum class ForbiddenSemantics {
    orient_reverse,  // commit to the only permitted direction, then re-close
    check_only,      // leave it; only already-directed violations fail
};

namespace detail {

struct IdEdge {
    int tail, head;
};

inline std::optional<Failure> knowledge_violation(const Pdag& g,
                                                  const std::vector<IdEdge>& required,
                                                  const std::vector<IdEdge>& forbidden) {
    for (const auto& e : required) {
        if (g.has_directed(e.head, e.tail))
            return Failure{"phase II", "required edge " + g.name_of(e.tail) + " -> " +
                                           g.name_of(e.head) + " is oriented " +
                                           g.name_of(e.head) + " -> " + g.name_of(e.tail)};
        if (!g.adjacent(e.tail, e.head))
            return Failure{"phase II", "required edge " + g.name_of(e.tail) + " -> " +
                                           g.name_of(e.head) + " joins non-adjacent vertices"};
    }
    for (const auto& e : forbidden) {
        if (g.has_directed(e.tail, e.head))
            return Failure{"phase II", "forbidden edge " + g.name_of(e.tail) + " -> " +
                                           g.name_of(e.head) + " is oriented"};
    }
    return std::nullopt;
}

}  // namespace detail

/// Folds background knowledge into a rule-closed graph.
///
/// Required edges are committed one at a time (lexicographically), each
/// commitment followed by closure under R1-R4 and a violation check.
/// Forbidden edges that are still undirected are then committed to the
/// opposite direction the same way; under check_only semantics they are
/// left alone instead, and only an already-directed forbidden edge fails.
///
/// Succeeds with the unique maximal graph consistent with the knowledge, or
/// fails if no consistent extension satisfies it.  Constraint endpoints must
/// be vertices of the graph.
inline Result<Pdag> incorporate_background(
    const Pdag& max_graph, const BackgroundKnowledge& k,
    ForbiddenSemantics semantics = ForbiddenSemantics::orient_reverse) {
    std::vector<detail::IdEdge> required, forbidden;
    required.reserve(k.required().size());
    forbidden.reserve(k.forbidden().size());
    for (const auto& [a, b] : k.required())
        required.push_back({max_graph.vertex(a), max_graph.vertex(b)});
    for (const auto& [a, b] : k.forbidden())
        forbidden.push_back({max_graph.vertex(a), max_graph.vertex(b)});

    Pdag g = max_graph;
    if (auto v = detail::knowledge_violation(g, required, forbidden)) return *v;

    auto commit = [&](int tail, int head) -> std::optional<Failure> {
        g.orient(tail, head);
        g = close_under(std::move(g), std::span<const OrientationRule>(kAllRules));
        return detail::knowledge_violation(g, required, forbidden);
    };

    for (const auto& e : required) {
        if (g.has_directed(e.tail, e.head)) continue;
        if (auto v = commit(e.tail, e.head)) return *v;
    }
    if (semantics == ForbiddenSemantics::orient_reverse) {
        for (const auto& e : forbidden) {
            if (!g.has_undirected(e.tail, e.head)) continue;
            if (auto v = commit(e.head, e.tail)) return *v;
        }
    }
    return g;
}

}  // namespace cpdag
