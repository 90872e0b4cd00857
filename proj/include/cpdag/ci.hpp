#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cpdag/dsep.hpp"
#include "cpdag/pdag.hpp"
#include "cpdag/result.hpp"
#include "cpdag/text.hpp"

namespace cpdag {

/// One conditional independence statement "A is independent of B given S".
/// A, B, S are sets of vertex names; stored sorted, with A not after B in
/// set order, so structurally equal statements compare equal.
class CiStatement {
public:
    CiStatement(std::vector<std::string> a, std::vector<std::string> b,
                std::vector<std::string> s = {})
        : a_(normalize(std::move(a))), b_(normalize(std::move(b))), s_(normalize(std::move(s))) {
        if (a_.empty() || b_.empty())
            throw std::invalid_argument("independence statement: A and B must be non-empty");
        if (intersects(a_, b_) || intersects(a_, s_) || intersects(b_, s_))
            throw std::invalid_argument(
                "independence statement: A, B, S must be pairwise disjoint");
        if (b_ < a_) std::swap(a_, b_);
    }

    const std::vector<std::string>& a() const noexcept { return a_; }
    const std::vector<std::string>& b() const noexcept { return b_; }
    const std::vector<std::string>& s() const noexcept { return s_; }

    std::string to_string() const {
        std::ostringstream out;
        write_set(out, a_);
        out << ' ';
        write_set(out, b_);
        if (!s_.empty()) {
            out << " | ";
            write_set(out, s_);
        }
        return out.str();
    }

    bool operator==(const CiStatement&) const = default;
    bool operator<(const CiStatement& o) const {
        if (a_ != o.a_) return a_ < o.a_;
        if (b_ != o.b_) return b_ < o.b_;
        return s_ < o.s_;
    }

private:
    static std::vector<std::string> normalize(std::vector<std::string> xs) {
        for (const auto& x : xs)
            if (!is_valid_vertex_name(x))
                throw std::invalid_argument("invalid vertex name: '" + x + "'");
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        return xs;
    }

    static bool intersects(const std::vector<std::string>& x, const std::vector<std::string>& y) {
        auto i = x.begin();
        auto j = y.begin();
        while (i != x.end() && j != y.end()) {
            if (*i == *j) return true;
            (*i < *j) ? ++i : ++j;
        }
        return false;
    }

    static void write_set(std::ostringstream& out, const std::vector<std::string>& xs) {
        for (size_t i = 0; i < xs.size(); ++i) {
            if (i) out << ',';
            out << xs[i];
        }
    }

    std::vector<std::string> a_, b_, s_;
};

/// A finite list of independence statements over a fixed vertex universe.
/// `holds` is pure membership: nothing is inferred from the list.
class DependencyModel {
public:
    DependencyModel() = default;

    explicit DependencyModel(std::vector<CiStatement> statements,
                             const std::vector<std::string>& extra_vertices = {}) {
        std::set<std::string> names(extra_vertices.begin(), extra_vertices.end());
        for (const auto& n : names)
            if (!is_valid_vertex_name(n))
                throw std::invalid_argument("invalid vertex name: '" + n + "'");
        for (const auto& st : statements) {
            names.insert(st.a().begin(), st.a().end());
            names.insert(st.b().begin(), st.b().end());
            names.insert(st.s().begin(), st.s().end());
        }
        if (static_cast<int>(names.size()) > kMaxVertices)
            throw std::length_error("vertex capacity exceeded (max 64)");
        vertices_.assign(names.begin(), names.end());

        std::sort(statements.begin(), statements.end());
        statements.erase(std::unique(statements.begin(), statements.end()), statements.end());
        statements_ = std::move(statements);

        keys_.reserve(statements_.size());
        for (const auto& st : statements_)
            keys_.push_back(key(set_mask(st.a()), set_mask(st.b()), set_mask(st.s())));
        std::sort(keys_.begin(), keys_.end());
    }

    const std::vector<std::string>& vertices() const noexcept { return vertices_; }
    const std::vector<CiStatement>& statements() const noexcept { return statements_; }
    size_t size() const noexcept { return statements_.size(); }

    std::optional<int> find_vertex(std::string_view name) const {
        auto it = std::lower_bound(vertices_.begin(), vertices_.end(), name);
        if (it == vertices_.end() || *it != name) return std::nullopt;
        return static_cast<int>(it - vertices_.begin());
    }

    bool holds(const CiStatement& st) const {
        VertexMask a = 0, b = 0, s = 0;
        if (!accumulate(st.a(), a) || !accumulate(st.b(), b) || !accumulate(st.s(), s))
            return false;  // mentions a vertex outside the universe
        return holds_ids(a, b, s);
    }

    /// Membership query with vertex sets given as masks over this model's
    /// universe (ids index into vertices()).
    bool holds_ids(VertexMask a, VertexMask b, VertexMask s) const {
        if (!a || !b || (a & b) || (a & s) || (b & s))
            throw std::invalid_argument("holds: A, B non-empty and A, B, S pairwise disjoint");
        return std::binary_search(keys_.begin(), keys_.end(), key(a, b, s));
    }

private:
    static std::array<VertexMask, 3> key(VertexMask a, VertexMask b, VertexMask s) {
        if (mask_set_lex_less(b, a)) std::swap(a, b);
        return {a, b, s};
    }

    VertexMask set_mask(const std::vector<std::string>& names) const {
        VertexMask m = 0;
        for (const auto& n : names) m |= vertex_bit(*find_vertex(n));
        return m;
    }

    bool accumulate(const std::vector<std::string>& names, VertexMask& m) const {
        for (const auto& n : names) {
            auto v = find_vertex(n);
            if (!v) return false;
            m |= vertex_bit(*v);
        }
        return true;
    }

    std::vector<std::string> vertices_;
    std::vector<CiStatement> statements_;
    std::vector<std::array<VertexMask, 3>> keys_;
};

namespace detail {

/// Membership queries against a model from the id space of a graph.  Graph
/// vertices the model has never seen make any statement mentioning them
/// fail the test, since no listed statement can involve them.
class ModelView {
public:
    ModelView(const DependencyModel& m, const Pdag& g) : m_(m) {
        map_.reserve(static_cast<size_t>(g.vertex_count()));
        for (const auto& name : g.vertex_names()) {
            auto id = m.find_vertex(name);
            map_.push_back(id ? *id : -1);
        }
    }

    /// Requires every model vertex to exist in the graph; the adapter works
    /// without this, but pipeline entry points want the misuse reported.
    static void require_covered(const DependencyModel& m, const Pdag& g) {
        for (const auto& name : m.vertices())
            if (!g.find_vertex(name))
                throw std::invalid_argument("model mentions a vertex outside the graph: '" +
                                            name + "'");
    }

    bool independent(int a, int b, VertexMask s) const {
        VertexMask ma = 0, mb = 0, ms = 0;
        if (!translate(vertex_bit(a), ma) || !translate(vertex_bit(b), mb) ||
            !translate(s, ms))
            return false;
        return m_.holds_ids(ma, mb, ms);
    }

    bool independent_sets(VertexMask a, VertexMask b, VertexMask s) const {
        VertexMask ma = 0, mb = 0, ms = 0;
        if (!translate(a, ma) || !translate(b, mb) || !translate(s, ms)) return false;
        return m_.holds_ids(ma, mb, ms);
    }

    /// Literal membership, or the composed reading: the statement telescopes
    /// into the pairwise facts x _||_ y | s + earlier elements of both sets,
    /// each of which must be listed.  Composition and its inverse are exact
    /// for separation in a directed acyclic graph, so on a pairwise list
    /// this asks whether a graph with those entailments would entail the
    /// set-valued statement too.
    bool entails_sets(VertexMask a, VertexMask b, VertexMask s) const {
        if (independent_sets(a, b, s)) return true;
        if (std::popcount(a) + std::popcount(b) <= 2) return false;
        VertexMask prefix_a = 0;
        for (VertexMask ma = a; ma; ma &= ma - 1) {
            int x = std::countr_zero(ma);
            VertexMask prefix_b = 0;
            for (VertexMask mb = b; mb; mb &= mb - 1) {
                int y = std::countr_zero(mb);
                if (!independent(x, y, s | prefix_a | prefix_b)) return false;
                prefix_b |= vertex_bit(y);
            }
            prefix_a |= vertex_bit(x);
        }
        return true;
    }

private:
    bool translate(VertexMask graph_ids, VertexMask& model_ids) const {
        for (VertexMask m = graph_ids; m; m &= m - 1) {
            int v = map_[static_cast<size_t>(std::countr_zero(m))];
            if (v < 0) return false;
            model_ids |= vertex_bit(v);
        }
        return true;
    }

    const DependencyModel& m_;
    std::vector<int> map_;
};

}  // namespace detail

enum class GenerationMode { pairwise, full };

/// All independencies entailed by a DAG under d-separation.
///
/// pairwise: statements X _||_ Y | S for single vertices X, Y and every
/// conditioning set S.  full: statements for every disjoint triple of
/// non-empty A, B and arbitrary S; exponential enough that vertex counts
/// above `full_cap` are rejected.
inline DependencyModel from_dag(const Dag& g, GenerationMode mode = GenerationMode::pairwise,
                                int full_cap = 8) {
    const Pdag& graph = g.graph();
    int n = graph.vertex_count();
    std::vector<CiStatement> out;

    if (mode == GenerationMode::pairwise) {
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                VertexMask rest = graph.vertex_mask() & ~(vertex_bit(a) | vertex_bit(b));
                VertexMask s = rest;
                while (true) {
                    if (d_separated(g, vertex_bit(a), vertex_bit(b), s))
                        out.emplace_back(graph.mask_names(vertex_bit(a)),
                                         graph.mask_names(vertex_bit(b)), graph.mask_names(s));
                    if (!s) break;
                    s = (s - 1) & rest;
                }
            }
        }
    } else {
        if (n > full_cap)
            throw std::length_error("from_dag full mode: vertex count " + std::to_string(n) +
                                    " exceeds cap " + std::to_string(full_cap));
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
            if (d_separated(g, a, b, s))
                out.emplace_back(graph.mask_names(a), graph.mask_names(b), graph.mask_names(s));
        }
    }
    return DependencyModel(std::move(out), graph.vertex_names());
}

namespace detail {

inline std::vector<std::string> parse_name_set(int lineno, std::string_view token) {
    std::vector<std::string> names;
    size_t pos = 0;
    while (true) {
        size_t comma = token.find(',', pos);
        std::string_view part =
            comma == std::string_view::npos ? token.substr(pos) : token.substr(pos, comma - pos);
        if (part.empty()) throw ParseError(lineno, "empty vertex name in set");
        if (!is_valid_vertex_name(part))
            throw ParseError(lineno, "invalid vertex name: '" + std::string(part) + "'");
        names.emplace_back(part);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return names;
}

}  // namespace detail

/// Parses the independence-list format, one statement per line:
///
///     ASET BSET | SSET
///     ASET BSET
///
/// where each SET is a comma-separated list of names with no internal
/// whitespace; an omitted or empty SSET means marginal independence.
/// Comments start at '#'.  `extra_vertices` widen the universe beyond the
/// names that appear in statements.
inline DependencyModel parse_ci(std::string_view text,
                                const std::vector<std::string>& extra_vertices = {}) {
    std::vector<CiStatement> statements;
    detail::for_each_line(text, [&](int lineno, std::string_view raw) {
        std::string_view line = detail::strip_comment(raw);
        if (line.empty()) return;

        size_t bar = line.find('|');
        if (bar != std::string_view::npos && line.find('|', bar + 1) != std::string_view::npos)
            throw ParseError(lineno, "more than one '|'");
        std::string_view left = bar == std::string_view::npos ? line : line.substr(0, bar);
        std::string_view right =
            bar == std::string_view::npos ? std::string_view{} : line.substr(bar + 1);

        auto sets = detail::split_ws(left);
        if (sets.size() != 2)
            throw ParseError(lineno, "expected two vertex sets before '|'");
        auto cond = detail::split_ws(right);
        if (cond.size() > 1)
            throw ParseError(lineno, "expected one vertex set after '|'");

        std::vector<std::string> s;
        if (!cond.empty()) s = detail::parse_name_set(lineno, cond[0]);
        try {
            statements.emplace_back(detail::parse_name_set(lineno, sets[0]),
                                    detail::parse_name_set(lineno, sets[1]), std::move(s));
        } catch (const std::invalid_argument& e) {
            throw ParseError(lineno, e.what());
        }
    });
    return DependencyModel(std::move(statements), extra_vertices);
}

inline std::string serialize_ci(const DependencyModel& m) {
    std::ostringstream out;
    for (const auto& st : m.statements()) out << st.to_string() << "\n";
    return out.str();
}

}  // namespace cpdag
