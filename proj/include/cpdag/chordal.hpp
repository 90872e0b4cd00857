#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cpdag/pattern.hpp"
#include "cpdag/pdag.hpp"
#include "cpdag/rules.hpp"

namespace cpdag {

/// Same vertices, every edge of g kept but made undirected.
inline Pdag underlying_undirected(const Pdag& g) {
    Pdag out(g.vertex_names());
    for (const auto& [tail, head] : g.directed_edges()) out.add_undirected(tail, head);
    for (const auto& [a, b] : g.undirected_edges()) out.add_undirected(a, b);
    return out;
}

/// Same vertices, only the undirected edges of g.
inline Pdag undirected_part(const Pdag& g) {
    Pdag out(g.vertex_names());
    for (const auto& [a, b] : g.undirected_edges()) out.add_undirected(a, b);
    return out;
}

namespace detail {

inline void require_undirected(const Pdag& h, const char* who) {
    if (h.directed_edge_count() != 0)
        throw std::invalid_argument(std::string(who) + ": expected an undirected graph");
}

/// Lexicographically least topological order of the successor relation, or
/// nullopt when the relation is cyclic.
inline std::optional<std::vector<int>> lex_min_topo(const std::vector<VertexMask>& after) {
    int n = static_cast<int>(after.size());
    std::vector<VertexMask> before(static_cast<size_t>(n), 0);
    for (int u = 0; u < n; ++u)
        for (VertexMask m = after[static_cast<size_t>(u)]; m; m &= m - 1)
            before[static_cast<size_t>(std::countr_zero(m))] |= vertex_bit(u);
    std::vector<int> order;
    order.reserve(static_cast<size_t>(n));
    VertexMask placed = 0;
    for (int step = 0; step < n; ++step) {
        int pick = -1;
        for (int v = 0; v < n; ++v) {
            if (placed & vertex_bit(v)) continue;
            if ((before[static_cast<size_t>(v)] & ~placed) == 0) {
                pick = v;
                break;
            }
        }
        if (pick < 0) return std::nullopt;
        order.push_back(pick);
        placed |= vertex_bit(pick);
    }
    return order;
}

}  // namespace detail

/// Perfect elimination order of an undirected graph, or nullopt when the
/// graph is not chordal.  Found by maximum cardinality search (ties to the
/// smallest id) and validated vertex by vertex, so a returned order is
/// always genuine.
inline std::optional<std::vector<int>> perfect_elimination_order(const Pdag& h) {
    detail::require_undirected(h, "perfect_elimination_order");
    int n = h.vertex_count();
    std::vector<int> weight(static_cast<size_t>(n), 0);
    std::vector<int> visit;
    visit.reserve(static_cast<size_t>(n));
    VertexMask visited = 0;
    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int v = 0; v < n; ++v) {
            if (visited & vertex_bit(v)) continue;
            if (best < 0 || weight[static_cast<size_t>(v)] > weight[static_cast<size_t>(best)])
                best = v;
        }
        visited |= vertex_bit(best);
        visit.push_back(best);
        for (VertexMask m = h.undirected_mask(best) & ~visited; m; m &= m - 1)
            ++weight[static_cast<size_t>(std::countr_zero(m))];
    }

    std::vector<int> peo(visit.rbegin(), visit.rend());
    std::vector<int> pos(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) pos[static_cast<size_t>(peo[static_cast<size_t>(i)])] = i;
    for (int i = 0; i < n; ++i) {
        int v = peo[static_cast<size_t>(i)];
        VertexMask later = 0;
        for (VertexMask m = h.undirected_mask(v); m; m &= m - 1) {
            int w = std::countr_zero(m);
            if (pos[static_cast<size_t>(w)] > i) later |= vertex_bit(w);
        }
        if (!later) continue;
        int follower = -1, follower_pos = n + 1;
        for (VertexMask m = later; m; m &= m - 1) {
            int w = std::countr_zero(m);
            if (pos[static_cast<size_t>(w)] < follower_pos) {
                follower_pos = pos[static_cast<size_t>(w)];
                follower = w;
            }
        }
        if ((later & ~vertex_bit(follower)) & ~h.undirected_mask(follower)) return std::nullopt;
    }
    return peo;
}

inline bool is_chordal(const Pdag& h) { return perfect_elimination_order(h).has_value(); }

/// Maximal cliques of a chordal graph as vertex masks, sorted by set order.
/// Throws if the graph is not chordal.
inline std::vector<VertexMask> maximal_cliques(const Pdag& h) {
    auto peo = perfect_elimination_order(h);
    if (!peo) throw std::invalid_argument("maximal_cliques: graph is not chordal");
    int n = h.vertex_count();
    std::vector<int> pos(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) pos[static_cast<size_t>((*peo)[static_cast<size_t>(i)])] = i;

    std::vector<VertexMask> all;
    all.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        int v = (*peo)[static_cast<size_t>(i)];
        VertexMask c = vertex_bit(v);
        for (VertexMask m = h.undirected_mask(v); m; m &= m - 1) {
            int w = std::countr_zero(m);
            if (pos[static_cast<size_t>(w)] > i) c |= vertex_bit(w);
        }
        all.push_back(c);
    }
    std::vector<VertexMask> out;
    for (VertexMask c : all) {
        bool maximal = true;
        for (VertexMask d : all)
            if (c != d && (c & d) == c) {
                maximal = false;
                break;
            }
        if (maximal) out.push_back(c);
    }
    std::sort(out.begin(), out.end(), mask_set_lex_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Join tree (forest, one tree per connected component): maximal cliques
/// joined by a maximum-weight spanning forest under intersection size, which
/// for chordal graphs realizes the junction property (each shared vertex set
/// is contained in every clique along the connecting path).
struct JoinTree {
    struct Edge {
        int i, j;          // clique indices, i < j
        VertexMask label;  // cliques[i] & cliques[j]
        bool operator==(const Edge&) const = default;
    };

    std::vector<VertexMask> cliques;
    std::vector<Edge> edges;
    std::vector<std::uint64_t> adjacency;  // clique-index adjacency masks

    int clique_count() const noexcept { return static_cast<int>(cliques.size()); }
};

inline JoinTree build_join_tree(const Pdag& h) {
    JoinTree t;
    t.cliques = maximal_cliques(h);
    int k = t.clique_count();
    t.adjacency.assign(static_cast<size_t>(k), 0);

    struct Candidate {
        int weight, i, j;
    };
    std::vector<Candidate> candidates;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            int w = std::popcount(t.cliques[static_cast<size_t>(i)] &
                                  t.cliques[static_cast<size_t>(j)]);
            if (w > 0) candidates.push_back({w, i, j});
        }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
        if (x.weight != y.weight) return x.weight > y.weight;
        if (x.i != y.i) return x.i < y.i;
        return x.j < y.j;
    });

    std::vector<int> root(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) root[static_cast<size_t>(i)] = i;
    auto find = [&](int x) {
        while (root[static_cast<size_t>(x)] != x) {
            root[static_cast<size_t>(x)] = root[static_cast<size_t>(root[static_cast<size_t>(x)])];
            x = root[static_cast<size_t>(x)];
        }
        return x;
    };
    for (const auto& c : candidates) {
        int ri = find(c.i), rj = find(c.j);
        if (ri == rj) continue;
        root[static_cast<size_t>(ri)] = rj;
        t.edges.push_back({c.i, c.j,
                           t.cliques[static_cast<size_t>(c.i)] & t.cliques[static_cast<size_t>(c.j)]});
        t.adjacency[static_cast<size_t>(c.i)] |= std::uint64_t{1} << c.j;
        t.adjacency[static_cast<size_t>(c.j)] |= std::uint64_t{1} << c.i;
    }
    std::sort(t.edges.begin(), t.edges.end(), [](const JoinTree::Edge& a, const JoinTree::Edge& b) {
        return std::pair(a.i, a.j) < std::pair(b.i, b.j);
    });
    return t;
}

/// A rooted join tree: cliques compare by distance from the root of their
/// tree, so cliques at smaller depth come first.
struct TreeOrder {
    std::vector<int> parent;  // -1 at roots
    std::vector<int> depth;

    bool is_root(int i) const { return parent[static_cast<size_t>(i)] < 0; }
    bool precedes(int i, int j) const {
        return depth[static_cast<size_t>(i)] < depth[static_cast<size_t>(j)];
    }
    bool ancestor(int i, int j) const {
        for (int p = parent[static_cast<size_t>(j)]; p >= 0; p = parent[static_cast<size_t>(p)])
            if (p == i) return true;
        return false;
    }
};

/// Roots the forest at the given cliques, exactly one per tree.
inline TreeOrder root_join_tree(const JoinTree& t, const std::vector<int>& roots) {
    int k = t.clique_count();
    TreeOrder out{std::vector<int>(static_cast<size_t>(k), -1),
                  std::vector<int>(static_cast<size_t>(k), -1)};
    for (int r : roots) {
        if (r < 0 || r >= k) throw std::invalid_argument("root_join_tree: bad clique index");
        if (out.depth[static_cast<size_t>(r)] >= 0)
            throw std::invalid_argument("root_join_tree: two roots in one tree");
        out.depth[static_cast<size_t>(r)] = 0;
        std::vector<int> queue{r};
        while (!queue.empty()) {
            int c = queue.back();
            queue.pop_back();
            for (std::uint64_t m = t.adjacency[static_cast<size_t>(c)]; m; m &= m - 1) {
                int nb = std::countr_zero(m);
                if (out.depth[static_cast<size_t>(nb)] >= 0) continue;
                out.depth[static_cast<size_t>(nb)] = out.depth[static_cast<size_t>(c)] + 1;
                out.parent[static_cast<size_t>(nb)] = c;
                queue.push_back(nb);
            }
        }
    }
    for (int i = 0; i < k; ++i)
        if (out.depth[static_cast<size_t>(i)] < 0)
            throw std::invalid_argument("root_join_tree: a tree has no root");
    return out;
}

/// Strict partial order over vertices, kept as successor masks.
class VertexOrder {
public:
    explicit VertexOrder(int n) : after_(static_cast<size_t>(n), 0) {}

    int size() const noexcept { return static_cast<int>(after_.size()); }
    void add(int a, int b) { after_[static_cast<size_t>(a)] |= vertex_bit(b); }
    bool precedes(int a, int b) const { return (after_[static_cast<size_t>(a)] >> b) & 1; }
    const std::vector<VertexMask>& successors() const noexcept { return after_; }

    /// Transitive closure; throws if the declared relation was cyclic.
    void close() {
        int n = size();
        for (int k = 0; k < n; ++k)
            for (int v = 0; v < n; ++v)
                if (after_[static_cast<size_t>(v)] & vertex_bit(k))
                    after_[static_cast<size_t>(v)] |= after_[static_cast<size_t>(k)];
        for (int v = 0; v < n; ++v)
            if (after_[static_cast<size_t>(v)] & vertex_bit(v))
                throw std::logic_error("VertexOrder: relation is cyclic");
    }

    bool total() const {
        int n = size();
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (!precedes(a, b) && !precedes(b, a)) return false;
        return true;
    }

    /// Lexicographically least linear extension; the order itself when the
    /// relation is total.
    std::vector<int> sequence() const {
        auto seq = detail::lex_min_topo(after_);
        if (!seq) throw std::logic_error("VertexOrder: relation is cyclic");
        return *seq;
    }

private:
    std::vector<VertexMask> after_;
};

/// The vertex order a rooted join tree induces.  For every pair of cliques
/// Ci, Cj where Ci is a strict ancestor of Cj and the intersection is
/// non-empty, the shared vertices precede the private vertices of Cj; the
/// transitive closure of these constraints is the order.  Every constraint
/// strictly raises the depth of the shallowest clique containing the
/// vertex, so the relation is acyclic for every rooting, and vertices that
/// share a root clique stay mutually unordered.
inline VertexOrder induced_vertex_order(const Pdag& h, const JoinTree& t, const TreeOrder& pi) {
    detail::require_undirected(h, "induced_vertex_order");
    VertexOrder ord(h.vertex_count());
    int k = t.clique_count();
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            if (i == j || !pi.ancestor(i, j)) continue;
            VertexMask ci = t.cliques[static_cast<size_t>(i)];
            VertexMask cj = t.cliques[static_cast<size_t>(j)];
            VertexMask shared = ci & cj;
            if (!shared) continue;
            for (VertexMask mb = shared; mb; mb &= mb - 1) {
                int b = std::countr_zero(mb);
                for (VertexMask mc = cj & ~ci; mc; mc &= mc - 1) ord.add(b, std::countr_zero(mc));
            }
        }
    }
    ord.close();
    return ord;
}

/// A total vertex order whose greedy orientation creates no unshielded
/// collider, or nullopt iff the graph is not chordal.
inline std::optional<std::vector<int>> consistent_ordering(const Pdag& h) {
    detail::require_undirected(h, "consistent_ordering");
    if (!is_chordal(h)) return std::nullopt;
    JoinTree t = build_join_tree(h);
    int k = t.clique_count();

    // one root per tree: the smallest clique index in each
    std::vector<int> roots;
    std::vector<bool> seen(static_cast<size_t>(k), false);
    for (int i = 0; i < k; ++i) {
        if (seen[static_cast<size_t>(i)]) continue;
        roots.push_back(i);
        std::vector<int> queue{i};
        seen[static_cast<size_t>(i)] = true;
        while (!queue.empty()) {
            int c = queue.back();
            queue.pop_back();
            for (std::uint64_t m = t.adjacency[static_cast<size_t>(c)]; m; m &= m - 1) {
                int nb = std::countr_zero(m);
                if (!seen[static_cast<size_t>(nb)]) {
                    seen[static_cast<size_t>(nb)] = true;
                    queue.push_back(nb);
                }
            }
        }
    }
    TreeOrder pi = root_join_tree(t, roots);
    return induced_vertex_order(h, t, pi).sequence();
}

/// Directs every edge of the undirected graph h from the earlier vertex of
/// alpha to the later.  alpha must be a permutation of the vertex ids.
inline Dag orient_by_order(const Pdag& h, const std::vector<int>& alpha) {
    detail::require_undirected(h, "orient_by_order");
    int n = h.vertex_count();
    std::vector<int> rank(static_cast<size_t>(n), -1);
    if (static_cast<int>(alpha.size()) != n)
        throw std::invalid_argument("orient_by_order: alpha must order every vertex");
    for (int i = 0; i < n; ++i) {
        int v = alpha[static_cast<size_t>(i)];
        if (v < 0 || v >= n || rank[static_cast<size_t>(v)] >= 0)
            throw std::invalid_argument("orient_by_order: alpha is not a permutation");
        rank[static_cast<size_t>(v)] = i;
    }
    Pdag out(h.vertex_names());
    for (const auto& [a, b] : h.undirected_edges()) {
        if (rank[static_cast<size_t>(a)] < rank[static_cast<size_t>(b)])
            out.add_directed(a, b);
        else
            out.add_directed(b, a);
    }
    return Dag(std::move(out));
}

/// Clique orders of a partially oriented chordal component h over its join
/// tree t.  gamma relates tree-adjacent cliques (Ci, Cj) when every edge
/// from the shared vertices into the rest of Cj is directed that way while
/// the edges into the rest of Ci are not all directed; epsilon is gamma's
/// transitive closure along the tree.
struct CliqueOrders {
    std::vector<std::uint64_t> gamma;
    std::vector<std::uint64_t> epsilon;
};

inline CliqueOrders clique_orders(const Pdag& h, const JoinTree& t) {
    int k = t.clique_count();
    CliqueOrders co{std::vector<std::uint64_t>(static_cast<size_t>(k), 0),
                    std::vector<std::uint64_t>(static_cast<size_t>(k), 0)};
    auto fully_directed = [&](VertexMask from, VertexMask to) {
        for (VertexMask ma = from; ma; ma &= ma - 1) {
            int a = std::countr_zero(ma);
            for (VertexMask mb = to; mb; mb &= mb - 1)
                if (!h.has_directed(a, std::countr_zero(mb))) return false;
        }
        return true;
    };
    for (const auto& e : t.edges) {
        VertexMask rest_i = t.cliques[static_cast<size_t>(e.i)] & ~e.label;
        VertexMask rest_j = t.cliques[static_cast<size_t>(e.j)] & ~e.label;
        bool into_j = fully_directed(e.label, rest_j);
        bool into_i = fully_directed(e.label, rest_i);
        if (into_j && !into_i) co.gamma[static_cast<size_t>(e.i)] |= std::uint64_t{1} << e.j;
        if (into_i && !into_j) co.gamma[static_cast<size_t>(e.j)] |= std::uint64_t{1} << e.i;
    }
    co.epsilon = co.gamma;
    for (int mid = 0; mid < k; ++mid)
        for (int i = 0; i < k; ++i)
            if (co.epsilon[static_cast<size_t>(i)] & (std::uint64_t{1} << mid))
                co.epsilon[static_cast<size_t>(i)] |= co.epsilon[static_cast<size_t>(mid)];
    return co;
}

/// Maximal vertex sets connected through undirected edges (at least two
/// vertices each), ordered by smallest member.
inline std::vector<VertexMask> undirected_components(const Pdag& g) {
    std::vector<VertexMask> comps;
    VertexMask seen = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if ((seen & vertex_bit(v)) || !g.undirected_mask(v)) continue;
        VertexMask comp = vertex_bit(v);
        VertexMask frontier = comp;
        while (frontier) {
            VertexMask next = 0;
            for (VertexMask m = frontier; m; m &= m - 1)
                next |= g.undirected_mask(std::countr_zero(m));
            frontier = next & ~comp;
            comp |= next;
        }
        comps.push_back(comp);
        seen |= comp;
    }
    return comps;
}

namespace detail {

/// One undirected component of a maximally oriented graph, with everything
/// the ordering lemmas need: the induced subgraph (directed edges between
/// component vertices included), its undirected shadow, join tree, and
/// clique orders.
struct Component {
    VertexMask vertices;          // mask in the parent graph
    std::vector<int> to_global;   // local id -> parent id
    Pdag induced;
    Pdag undirected;
    JoinTree tree;
    CliqueOrders orders;
};

inline Component make_component(const Pdag& g, VertexMask mask, const char* who) {
    Component c;
    c.vertices = mask;
    for (VertexMask m = mask; m; m &= m - 1) c.to_global.push_back(std::countr_zero(m));
    c.induced = induced_subgraph(g, mask);
    c.undirected = underlying_undirected(c.induced);
    if (!is_chordal(c.undirected))
        throw std::invalid_argument(std::string(who) +
                                    ": graph is not maximally oriented "
                                    "(a component is not chordal)");
    if (!unshielded_colliders(c.induced).empty())
        throw std::invalid_argument(std::string(who) +
                                    ": graph is not maximally oriented "
                                    "(a component contains an unshielded collider)");
    c.tree = build_join_tree(c.undirected);
    c.orders = clique_orders(c.induced, c.tree);
    return c;
}

/// Total order of the component's vertices rooted at clique `root`,
/// consistent with the induced order, the component's directed edges, and
/// the extra constraints.  Fails when the root's depth order does not
/// extend epsilon or the combined constraints are cyclic.
inline std::optional<std::vector<int>> component_order(
    const Component& c, int root, const std::vector<std::pair<int, int>>& extra) {
    TreeOrder pi = root_join_tree(c.tree, {root});
    int k = c.tree.clique_count();
    for (int i = 0; i < k; ++i)
        for (std::uint64_t m = c.orders.epsilon[static_cast<size_t>(i)]; m; m &= m - 1)
            if (!pi.precedes(i, std::countr_zero(m))) return std::nullopt;

    VertexOrder ord = induced_vertex_order(c.undirected, c.tree, pi);
    std::vector<VertexMask> after = ord.successors();
    for (const auto& [tail, head] : c.induced.directed_edges())
        after[static_cast<size_t>(tail)] |= vertex_bit(head);
    for (const auto& [x, y] : extra) after[static_cast<size_t>(x)] |= vertex_bit(y);
    return lex_min_topo(after);
}

inline void apply_component_order(Pdag& g, const Component& c, const std::vector<int>& order) {
    std::vector<int> rank(order.size(), 0);
    for (size_t i = 0; i < order.size(); ++i) rank[static_cast<size_t>(order[i])] = static_cast<int>(i);
    for (const auto& [a, b] : c.induced.undirected_edges()) {
        int ga = c.to_global[static_cast<size_t>(a)];
        int gb = c.to_global[static_cast<size_t>(b)];
        if (rank[static_cast<size_t>(a)] < rank[static_cast<size_t>(b)])
            g.orient(ga, gb);
        else
            g.orient(gb, ga);
    }
}

}  // namespace detail

/// Two consistent extensions of a maximally oriented graph that disagree on
/// the undirected edge a -- b: the first orients a -> b, the second b -> a.
/// Their existence is what certifies that the edge is genuinely reversible,
/// so g must be maximally oriented and a -- b one of its undirected edges.
inline std::pair<Dag, Dag> witness_extensions(const Pdag& g, int a, int b) {
    if (!g.has_undirected(a, b))
        throw std::invalid_argument("witness_extensions: '" + g.name_of(a) + "' -- '" +
                                    g.name_of(b) + "' is not an undirected edge");
    if (any_rule_applies(g, std::span<const OrientationRule>(kAllRules)))
        throw std::invalid_argument(
            "witness_extensions: graph is not maximally oriented (an orientation rule applies)");

    auto masks = undirected_components(g);
    std::vector<detail::Component> comps;
    comps.reserve(masks.size());
    int target = -1;
    for (const auto& mask : masks) {
        if (mask & vertex_bit(a)) target = static_cast<int>(comps.size());
        comps.push_back(detail::make_component(g, mask, "witness_extensions"));
    }

    // Freeze one order for every other component; both witnesses share it.
    std::vector<std::vector<int>> fixed(comps.size());
    for (size_t ci = 0; ci < comps.size(); ++ci) {
        if (static_cast<int>(ci) == target) continue;
        for (int root = 0; root < comps[ci].tree.clique_count(); ++root) {
            if (auto order = detail::component_order(comps[ci], root, {})) {
                fixed[ci] = *order;
                break;
            }
        }
        if (fixed[ci].empty() && comps[ci].induced.vertex_count() > 0)
            throw std::invalid_argument(
                "witness_extensions: graph is not maximally oriented (no admissible ordering)");
    }

    const detail::Component& tc = comps[static_cast<size_t>(target)];
    int la = tc.induced.vertex(g.name_of(a));
    int lb = tc.induced.vertex(g.name_of(b));

    // Roots holding both endpoints come first; they are the ones that leave
    // the endpoints unordered until the extra constraint decides them.
    std::vector<int> root_candidates;
    for (int i = 0; i < tc.tree.clique_count(); ++i) {
        VertexMask c = tc.tree.cliques[static_cast<size_t>(i)];
        if ((c & vertex_bit(la)) && (c & vertex_bit(lb))) root_candidates.push_back(i);
    }
    for (int i = 0; i < tc.tree.clique_count(); ++i)
        if (std::find(root_candidates.begin(), root_candidates.end(), i) ==
            root_candidates.end())
            root_candidates.push_back(i);

    auto build = [&](int tail, int head) -> std::optional<Dag> {
        for (int root : root_candidates) {
            auto order = detail::component_order(tc, root, {{tail, head}});
            if (!order) continue;
            Pdag oriented = g;
            for (size_t ci = 0; ci < comps.size(); ++ci) {
                if (static_cast<int>(ci) == target)
                    detail::apply_component_order(oriented, comps[ci], *order);
                else
                    detail::apply_component_order(oriented, comps[ci], fixed[ci]);
            }
            if (has_directed_cycle(oriented)) continue;
            Dag d(std::move(oriented));
            if (is_consistent_dag_extension(d, g)) return d;
        }
        return std::nullopt;
    };

    auto forward = build(la, lb);
    auto backward = build(lb, la);
    if (!forward || !backward)
        throw std::invalid_argument(
            "witness_extensions: graph is not maximally oriented (an undirected edge is forced)");
    return {*forward, *backward};
}

inline std::pair<Dag, Dag> witness_extensions(const Pdag& g, std::string_view a,
                                              std::string_view b) {
    return witness_extensions(g, g.vertex(a), g.vertex(b));
}

/// Number of consistent extensions of a maximally oriented graph: the
/// product over undirected components of the number of ways to orient the
/// component acyclically without creating or destroying an unshielded
/// collider.  Components larger than `component_edge_cap` undirected edges
/// are rejected rather than enumerated.
inline std::uint64_t count_extensions(const Pdag& g, int component_edge_cap = 12) {
    if (any_rule_applies(g, std::span<const OrientationRule>(kAllRules)))
        throw std::invalid_argument(
            "count_extensions: graph is not maximally oriented (an orientation rule applies)");

    std::uint64_t total = 1;
    for (VertexMask mask : undirected_components(g)) {
        Pdag h = induced_subgraph(g, mask);
        auto undirected = h.undirected_edges();
        int e = static_cast<int>(undirected.size());
        if (e > component_edge_cap)
            throw std::length_error("count_extensions: component with " + std::to_string(e) +
                                    " undirected edges exceeds cap " +
                                    std::to_string(component_edge_cap));
        auto base_colliders = unshielded_colliders(h);
        int n = h.vertex_count();
        std::uint64_t comp_count = 0;
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << e); ++bits) {
            std::vector<VertexMask> parents(static_cast<size_t>(n), 0);
            std::vector<VertexMask> children(static_cast<size_t>(n), 0);
            for (int v = 0; v < n; ++v) {
                parents[static_cast<size_t>(v)] = h.parents_mask(v);
                children[static_cast<size_t>(v)] = h.children_mask(v);
            }
            for (int idx = 0; idx < e; ++idx) {
                auto [x, y] = undirected[static_cast<size_t>(idx)];
                int tail = (bits >> idx) & 1 ? y : x;
                int head = (bits >> idx) & 1 ? x : y;
                parents[static_cast<size_t>(head)] |= vertex_bit(tail);
                children[static_cast<size_t>(tail)] |= vertex_bit(head);
            }
            // acyclicity by repeated source elimination
            VertexMask alive = h.vertex_mask();
            bool progress = true;
            while (progress && alive) {
                progress = false;
                for (VertexMask m = alive; m; m &= m - 1) {
                    int v = std::countr_zero(m);
                    if ((parents[static_cast<size_t>(v)] & alive) == 0) {
                        alive &= ~vertex_bit(v);
                        progress = true;
                    }
                }
            }
            if (alive) continue;
            // unshielded colliders must be exactly those of h
            std::vector<std::array<int, 3>> colliders;
            for (int v = 0; v < n; ++v) {
                VertexMask ps = parents[static_cast<size_t>(v)];
                for (VertexMask ma = ps; ma; ma &= ma - 1) {
                    int x = std::countr_zero(ma);
                    for (VertexMask mc = ma & (ma - 1); mc; mc &= mc - 1) {
                        int y = std::countr_zero(mc);
                        if (!h.adjacent(x, y)) colliders.push_back({x, v, y});
                    }
                }
            }
            std::sort(colliders.begin(), colliders.end());
            if (colliders == base_colliders) ++comp_count;
        }
        if (comp_count == 0) return 0;
        if (__builtin_mul_overflow(total, comp_count, &total))
            throw std::overflow_error("count_extensions: extension count overflows");
    }
    return total;
}

}  // namespace cpdag
