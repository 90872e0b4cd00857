#pragma once

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "cpdag/pdag.hpp"
#include "cpdag/result.hpp"
#include "cpdag/text.hpp"

namespace cpdag {

/// Parses the line-oriented graph format:
///
///     node X        declares an isolated vertex
///     A -> B        directed edge
///     A -- B        undirected edge
///     # ...         comment (also allowed at end of line)
///
/// Edge endpoints declare their vertices implicitly.  A second line touching
/// an already-covered vertex pair is an error.  `extra_vertices` join the
/// vertex set as if declared by node lines.
inline Pdag parse_graph(std::string_view text,
                        const std::vector<std::string>& extra_vertices = {}) {
    std::set<std::string> names(extra_vertices.begin(), extra_vertices.end());
    for (const auto& n : names)
        if (!is_valid_vertex_name(n))
            throw std::invalid_argument("invalid vertex name: '" + n + "'");

    struct EdgeLine {
        bool directed;
        std::string tail, head;  // as written
    };
    std::map<std::pair<std::string, std::string>, EdgeLine> edges;

    detail::for_each_line(text, [&](int lineno, std::string_view line) {
        auto tokens = detail::content_tokens(line);
        if (tokens.empty()) return;
        if (tokens.size() == 2 && tokens[0] == "node") {
            detail::check_name(lineno, tokens[1]);
            names.insert(tokens[1]);
            return;
        }
        if (tokens.size() == 3 && (tokens[1] == "->" || tokens[1] == "--")) {
            detail::check_name(lineno, tokens[0]);
            detail::check_name(lineno, tokens[2]);
            if (tokens[0] == tokens[2])
                throw ParseError(lineno, "self loop on '" + tokens[0] + "'");
            EdgeLine e{tokens[1] == "->", tokens[0], tokens[2]};
            auto key = std::minmax(e.tail, e.head);
            auto [it, inserted] = edges.emplace(std::pair(key.first, key.second), e);
            if (!inserted) {
                const EdgeLine& prev = it->second;
                bool same = prev.directed == e.directed && prev.tail == e.tail;
                throw ParseError(lineno, std::string(same ? "duplicate" : "conflicting") +
                                             " edge between '" + key.first + "' and '" +
                                             key.second + "'");
            }
            names.insert(e.tail);
            names.insert(e.head);
            return;
        }
        throw ParseError(lineno, "unrecognized line");
    });

    Pdag g(std::vector<std::string>(names.begin(), names.end()));
    for (const auto& [key, e] : edges) {
        if (e.directed)
            g.add_directed(e.tail, e.head);
        else
            g.add_undirected(e.tail, e.head);
    }
    return g;
}

namespace detail {

// (first endpoint, second endpoint, directed?) in output order
inline std::vector<std::tuple<int, int, bool>> edge_lines(const Pdag& g) {
    std::vector<std::tuple<int, int, bool>> lines;
    for (const auto& [tail, head] : g.directed_edges()) lines.emplace_back(tail, head, true);
    for (const auto& [a, b] : g.undirected_edges()) lines.emplace_back(a, b, false);
    std::sort(lines.begin(), lines.end());
    return lines;
}

}  // namespace detail

/// Serializes g in the format accepted by parse_graph.  Isolated vertices
/// come first as node lines; edges follow, sorted by endpoints.  Vertex ids
/// order the same as names, so the output is deterministic in the graph.
inline std::string serialize_graph(const Pdag& g) {
    std::ostringstream out;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.adjacency_mask(v) == 0) out << "node " << g.name_of(v) << "\n";
    for (const auto& [x, y, directed] : detail::edge_lines(g)) {
        out << g.name_of(x) << (directed ? " -> " : " -- ") << g.name_of(y) << "\n";
    }
    return out.str();
}

inline std::string serialize_graph(const Dag& g) { return serialize_graph(g.graph()); }

/// Graphviz rendering; undirected edges are drawn without arrowheads.
inline std::string serialize_dot(const Pdag& g) {
    std::ostringstream out;
    out << "digraph {\n";
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.adjacency_mask(v) == 0) out << "  \"" << g.name_of(v) << "\";\n";
    for (const auto& [x, y, directed] : detail::edge_lines(g)) {
        out << "  \"" << g.name_of(x) << "\" -> \"" << g.name_of(y) << "\"";
        if (!directed) out << " [dir=none]";
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

inline std::string serialize_dot(const Dag& g) { return serialize_dot(g.graph()); }

}  // namespace cpdag
