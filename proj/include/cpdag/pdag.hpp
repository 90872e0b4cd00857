#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cpdag {

/// Graphs hold at most 64 vertices so that vertex sets fit in one word.
inline constexpr int kMaxVertices = 64;

/// A set of vertices, one bit per vertex id.
using VertexMask = std::uint64_t;

inline constexpr VertexMask vertex_bit(int v) noexcept {
    return VertexMask{1} << v;
}

/// Compares two vertex sets by the lexicographic order of their sorted id
/// sequences, e.g. {0} < {0,1} < {0,2} < {1}.
inline bool mask_set_lex_less(VertexMask x, VertexMask y) {
    while (x && y) {
        int bx = std::countr_zero(x);
        int by = std::countr_zero(y);
        if (bx != by) return bx < by;
        x &= x - 1;
        y &= y - 1;
    }
    return !x && y;
}

/// Vertex names are free-form tokens.  Whitespace and the characters used by
/// the file formats (`,`, `;`, `|`, `#`, `-`, `>`) are excluded so that any
/// valid name survives a round trip through every serializer.
inline bool is_valid_vertex_name(std::string_view name) {
    if (name.empty()) return false;
    for (char c : name) {
        if (c == ',' || c == ';' || c == '|' || c == '#' || c == '-' || c == '>')
            return false;
        if (std::isspace(static_cast<unsigned char>(c)) || !std::isprint(static_cast<unsigned char>(c)))
            return false;
    }
    return true;
}

/// Partially directed acyclic graph: at most one edge per vertex pair, each
/// edge either directed or undirected.  Despite the name, no acyclicity is
/// enforced here; fully directed acyclic graphs get the `Dag` wrapper below.
///
/// Vertex ids are ranks in the lexicographic order of the vertex names, so
/// two graphs over the same names agree on ids and every id-based routine is
/// deterministic in the names alone.
class Pdag {
public:
    Pdag() = default;

    explicit Pdag(std::vector<std::string> names) : names_(std::move(names)) {
        if (static_cast<int>(names_.size()) > kMaxVertices)
            throw std::length_error("vertex capacity exceeded (max 64)");
        for (const auto& n : names_) {
            if (!is_valid_vertex_name(n))
                throw std::invalid_argument("invalid vertex name: '" + n + "'");
        }
        std::sort(names_.begin(), names_.end());
        auto dup = std::adjacent_find(names_.begin(), names_.end());
        if (dup != names_.end())
            throw std::invalid_argument("duplicate vertex name: '" + *dup + "'");
        parents_.assign(names_.size(), 0);
        children_.assign(names_.size(), 0);
        undirected_.assign(names_.size(), 0);
    }

    int vertex_count() const noexcept { return static_cast<int>(names_.size()); }

    const std::vector<std::string>& vertex_names() const noexcept { return names_; }

    std::optional<int> find_vertex(std::string_view name) const {
        auto it = std::lower_bound(names_.begin(), names_.end(), name);
        if (it == names_.end() || *it != name) return std::nullopt;
        return static_cast<int>(it - names_.begin());
    }

    int vertex(std::string_view name) const {
        auto v = find_vertex(name);
        if (!v) throw std::invalid_argument("vertex not in graph: '" + std::string(name) + "'");
        return *v;
    }

    const std::string& name_of(int v) const {
        check_vertex(v);
        return names_[v];
    }

    void add_directed(int tail, int head) {
        check_new_edge(tail, head);
        parents_[head] |= vertex_bit(tail);
        children_[tail] |= vertex_bit(head);
    }

    void add_undirected(int a, int b) {
        check_new_edge(a, b);
        undirected_[a] |= vertex_bit(b);
        undirected_[b] |= vertex_bit(a);
    }

    void add_directed(std::string_view tail, std::string_view head) {
        add_directed(vertex(tail), vertex(head));
    }

    void add_undirected(std::string_view a, std::string_view b) {
        add_undirected(vertex(a), vertex(b));
    }

    /// Replaces the undirected edge a -- b with tail -> head.
    void orient(int tail, int head) {
        check_vertex(tail);
        check_vertex(head);
        if (!has_undirected(tail, head))
            throw std::invalid_argument("no undirected edge between '" + names_[tail] +
                                        "' and '" + names_[head] + "'");
        undirected_[tail] &= ~vertex_bit(head);
        undirected_[head] &= ~vertex_bit(tail);
        parents_[head] |= vertex_bit(tail);
        children_[tail] |= vertex_bit(head);
    }

    void orient(std::string_view tail, std::string_view head) {
        orient(vertex(tail), vertex(head));
    }

    VertexMask parents_mask(int v) const {
        check_vertex(v);
        return parents_[v];
    }
    VertexMask children_mask(int v) const {
        check_vertex(v);
        return children_[v];
    }
    VertexMask undirected_mask(int v) const {
        check_vertex(v);
        return undirected_[v];
    }
    VertexMask adjacency_mask(int v) const {
        check_vertex(v);
        return parents_[v] | children_[v] | undirected_[v];
    }

    VertexMask vertex_mask() const noexcept {
        if (names_.empty()) return 0;
        if (names_.size() == kMaxVertices) return ~VertexMask{0};
        return vertex_bit(static_cast<int>(names_.size())) - 1;
    }

    bool has_directed(int tail, int head) const {
        check_vertex(tail);
        check_vertex(head);
        return (children_[tail] & vertex_bit(head)) != 0;
    }
    bool has_directed(std::string_view tail, std::string_view head) const {
        return has_directed(vertex(tail), vertex(head));
    }
    bool has_undirected(int a, int b) const {
        check_vertex(a);
        check_vertex(b);
        return (undirected_[a] & vertex_bit(b)) != 0;
    }
    bool has_undirected(std::string_view a, std::string_view b) const {
        return has_undirected(vertex(a), vertex(b));
    }
    bool adjacent(int a, int b) const {
        return (adjacency_mask(a) & vertex_bit(b)) != 0;
    }
    bool adjacent(std::string_view a, std::string_view b) const {
        return adjacent(vertex(a), vertex(b));
    }

    int directed_edge_count() const {
        int total = 0;
        for (VertexMask m : children_) total += std::popcount(m);
        return total;
    }
    int undirected_edge_count() const {
        int total = 0;
        for (VertexMask m : undirected_) total += std::popcount(m);
        return total / 2;
    }
    int edge_count() const { return directed_edge_count() + undirected_edge_count(); }

    /// Directed edges as (tail, head), sorted.
    std::vector<std::pair<int, int>> directed_edges() const {
        std::vector<std::pair<int, int>> edges;
        for (int tail = 0; tail < vertex_count(); ++tail)
            for (VertexMask m = children_[tail]; m; m &= m - 1)
                edges.emplace_back(tail, std::countr_zero(m));
        return edges;
    }

    /// Undirected edges as (a, b) with a < b, sorted.
    std::vector<std::pair<int, int>> undirected_edges() const {
        std::vector<std::pair<int, int>> edges;
        for (int a = 0; a < vertex_count(); ++a)
            for (VertexMask m = undirected_[a] & ~(vertex_bit(a) | (vertex_bit(a) - 1)); m; m &= m - 1)
                edges.emplace_back(a, std::countr_zero(m));
        return edges;
    }

    /// Parent names of v, sorted.
    std::vector<std::string> parents(std::string_view v) const {
        return mask_names(parents_mask(vertex(v)));
    }

    /// Names adjacent to v by any edge, sorted.
    std::vector<std::string> adjacents(std::string_view v) const {
        return mask_names(adjacency_mask(vertex(v)));
    }

    std::vector<std::string> mask_names(VertexMask m) const {
        std::vector<std::string> out;
        out.reserve(static_cast<size_t>(std::popcount(m)));
        for (; m; m &= m - 1) out.push_back(names_[std::countr_zero(m)]);
        return out;
    }

    bool operator==(const Pdag&) const = default;

private:
    void check_vertex(int v) const {
        if (v < 0 || v >= vertex_count())
            throw std::out_of_range("vertex id out of range: " + std::to_string(v));
    }

    void check_new_edge(int a, int b) const {
        check_vertex(a);
        check_vertex(b);
        if (a == b)
            throw std::invalid_argument("self loops are not allowed: '" + names_[a] + "'");
        VertexMask occupied = (parents_[a] | children_[a] | undirected_[a]) & vertex_bit(b);
        if (occupied)
            throw std::invalid_argument("edge already present between '" + names_[a] +
                                        "' and '" + names_[b] + "'");
    }

    std::vector<std::string> names_;
    std::vector<VertexMask> parents_;
    std::vector<VertexMask> children_;
    std::vector<VertexMask> undirected_;
};

/// True if the directed part of g contains a cycle.  Undirected edges are
/// ignored.
inline bool has_directed_cycle(const Pdag& g) {
    int n = g.vertex_count();
    std::vector<int> indegree(n, 0);
    for (int v = 0; v < n; ++v) indegree[v] = std::popcount(g.parents_mask(v));
    VertexMask removed = 0;
    int processed = 0;
    bool progress = true;
    while (progress) {
        progress = false;
        for (int v = 0; v < n; ++v) {
            if ((removed & vertex_bit(v)) || indegree[v] != 0) continue;
            removed |= vertex_bit(v);
            ++processed;
            progress = true;
            for (VertexMask m = g.children_mask(v) & ~removed; m; m &= m - 1)
                --indegree[std::countr_zero(m)];
        }
    }
    return processed != n;
}

/// True if g contains a partially directed cycle: a directed edge u -> v
/// together with a path from v back to u that never traverses a directed
/// edge against its direction.
inline bool has_partially_directed_cycle(const Pdag& g) {
    int n = g.vertex_count();
    for (int u = 0; u < n; ++u) {
        VertexMask heads = g.children_mask(u);
        if (!heads) continue;
        VertexMask reached = heads;
        VertexMask frontier = heads;
        while (frontier) {
            VertexMask next = 0;
            for (VertexMask m = frontier; m; m &= m - 1) {
                int w = std::countr_zero(m);
                next |= g.children_mask(w) | g.undirected_mask(w);
            }
            frontier = next & ~reached;
            reached |= next;
        }
        if (reached & vertex_bit(u)) return true;
    }
    return false;
}

/// Fully directed acyclic graph.  Construction validates; afterwards the
/// wrapped Pdag is immutable.
class Dag {
public:
    explicit Dag(Pdag g) : g_(std::move(g)) {
        if (g_.undirected_edge_count() != 0)
            throw std::invalid_argument("not a DAG: undirected edges present");
        if (has_directed_cycle(g_))
            throw std::invalid_argument("not a DAG: directed cycle present");
    }

    const Pdag& graph() const noexcept { return g_; }

    int vertex_count() const noexcept { return g_.vertex_count(); }
    VertexMask vertex_mask() const noexcept { return g_.vertex_mask(); }
    const std::vector<std::string>& vertex_names() const noexcept { return g_.vertex_names(); }
    std::optional<int> find_vertex(std::string_view name) const { return g_.find_vertex(name); }
    int vertex(std::string_view name) const { return g_.vertex(name); }
    const std::string& name_of(int v) const { return g_.name_of(v); }
    VertexMask parents_mask(int v) const { return g_.parents_mask(v); }
    VertexMask children_mask(int v) const { return g_.children_mask(v); }
    VertexMask adjacency_mask(int v) const { return g_.adjacency_mask(v); }
    bool adjacent(int a, int b) const { return g_.adjacent(a, b); }
    bool has_directed(int tail, int head) const { return g_.has_directed(tail, head); }
    bool has_directed(std::string_view tail, std::string_view head) const {
        return g_.has_directed(tail, head);
    }
    std::vector<std::pair<int, int>> directed_edges() const { return g_.directed_edges(); }

    bool operator==(const Dag&) const = default;

private:
    Pdag g_;
};

/// Unshielded colliders a -> b <- c with a, c non-adjacent, as (a, b, c)
/// triples with a < c, sorted.
inline std::vector<std::array<int, 3>> unshielded_colliders(const Pdag& g) {
    std::vector<std::array<int, 3>> triples;
    for (int b = 0; b < g.vertex_count(); ++b) {
        VertexMask ps = g.parents_mask(b);
        for (VertexMask ma = ps; ma; ma &= ma - 1) {
            int a = std::countr_zero(ma);
            for (VertexMask mc = ma & (ma - 1); mc; mc &= mc - 1) {
                int c = std::countr_zero(mc);
                if (!g.adjacent(a, c)) triples.push_back({a, b, c});
            }
        }
    }
    std::sort(triples.begin(), triples.end());
    return triples;
}

inline std::vector<std::array<int, 3>> unshielded_colliders(const Dag& g) {
    return unshielded_colliders(g.graph());
}

/// Topological order of a DAG, lexicographically least among all valid
/// orders (smallest vertex id first whenever there is a choice).
inline std::vector<int> topological_order(const Dag& g) {
    int n = g.vertex_count();
    std::vector<int> order;
    order.reserve(static_cast<size_t>(n));
    VertexMask placed = 0;
    for (int step = 0; step < n; ++step) {
        for (int v = 0; v < n; ++v) {
            if (placed & vertex_bit(v)) continue;
            if ((g.parents_mask(v) & ~placed) == 0) {
                order.push_back(v);
                placed |= vertex_bit(v);
                break;
            }
        }
    }
    return order;
}

/// Subgraph induced by the vertices in `keep`: those vertices and every
/// edge of g with both endpoints among them.  Vertex ids are re-ranked
/// within the subgraph.
inline Pdag induced_subgraph(const Pdag& g, VertexMask keep) {
    Pdag out(g.mask_names(keep));
    for (VertexMask m = keep; m; m &= m - 1) {
        int v = std::countr_zero(m);
        int lv = out.vertex(g.name_of(v));
        for (VertexMask mc = g.children_mask(v) & keep; mc; mc &= mc - 1)
            out.add_directed(lv, out.vertex(g.name_of(std::countr_zero(mc))));
        for (VertexMask mu = g.undirected_mask(v) & keep; mu; mu &= mu - 1) {
            int w = std::countr_zero(mu);
            if (w > v) out.add_undirected(lv, out.vertex(g.name_of(w)));
        }
    }
    return out;
}

/// Vertices with a directed path into any vertex of `seed`, plus `seed`
/// itself.
inline VertexMask ancestral_closure(const Pdag& g, VertexMask seed) {
    VertexMask closed = seed;
    VertexMask frontier = seed;
    while (frontier) {
        VertexMask next = 0;
        for (VertexMask m = frontier; m; m &= m - 1)
            next |= g.parents_mask(std::countr_zero(m));
        frontier = next & ~closed;
        closed |= next;
    }
    return closed;
}

inline VertexMask ancestral_closure(const Dag& g, VertexMask seed) {
    return ancestral_closure(g.graph(), seed);
}

}  // namespace cpdag
