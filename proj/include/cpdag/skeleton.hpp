#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cpdag/ci.hpp"
#include "cpdag/pdag.hpp"
#include "cpdag/result.hpp"

namespace cpdag {

/// Separating sets recorded while building a skeleton: for each vertex pair
/// found non-adjacent, one witness set S with "a _||_ b | S" in the model.
class SepsetMap {
public:
    void record(int a, int b, VertexMask s) {
        if (a > b) std::swap(a, b);
        entries_[{a, b}] = s;
    }

    bool contains(int a, int b) const {
        if (a > b) std::swap(a, b);
        return entries_.count({a, b}) != 0;
    }

    std::optional<VertexMask> get(int a, int b) const {
        if (a > b) std::swap(a, b);
        auto it = entries_.find({a, b});
        if (it == entries_.end()) return std::nullopt;
        return it->second;
    }

    const std::map<std::pair<int, int>, VertexMask>& entries() const noexcept {
        return entries_;
    }

    bool operator==(const SepsetMap&) const = default;

private:
    std::map<std::pair<int, int>, VertexMask> entries_;
};

enum class SkeletonSearch {
    exhaustive,    // try every subset of the remaining vertices
    neighborhood,  // PC-style: only subsets of current neighborhoods, by size
};

struct SkeletonResult {
    Pdag graph;      // fully undirected
    SepsetMap sepsets;
};

namespace detail {

/// Finds the first separating set for (a, b) drawn from `pool`, trying
/// smaller sets first and lexicographically smaller sets within a size.
inline std::optional<VertexMask> first_sepset(const ModelView& view, int a, int b,
                                              VertexMask pool) {
    std::vector<int> candidates;
    for (VertexMask m = pool; m; m &= m - 1) candidates.push_back(std::countr_zero(m));
    int k = static_cast<int>(candidates.size());
    for (int size = 0; size <= k; ++size) {
        std::vector<int> pick(static_cast<size_t>(size));
        for (int i = 0; i < size; ++i) pick[static_cast<size_t>(i)] = i;
        while (true) {
            VertexMask s = 0;
            for (int i : pick) s |= vertex_bit(candidates[static_cast<size_t>(i)]);
            if (view.independent(a, b, s)) return s;
            // next combination in lexicographic order
            int i = size - 1;
            while (i >= 0 && pick[static_cast<size_t>(i)] == k - size + i) --i;
            if (i < 0) break;
            ++pick[static_cast<size_t>(i)];
            for (int j = i + 1; j < size; ++j)
                pick[static_cast<size_t>(j)] = pick[static_cast<size_t>(j - 1)] + 1;
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Builds the undirected skeleton over `vars`: a and b end up adjacent iff
/// no recorded statement separates them.  `vars` must cover every vertex the
/// model mentions.
///
/// The exhaustive mode searches all subsets of the other variables and is
/// what the correctness guarantees are stated for.  The neighborhood mode
/// only tries subsets of the current neighborhood of a or b, growing the
/// subset size one step at a time; it visits far fewer sets and agrees with
/// the exhaustive mode whenever the model comes from a DAG.
inline SkeletonResult build_skeleton(const DependencyModel& m,
                                     const std::vector<std::string>& vars,
                                     SkeletonSearch search = SkeletonSearch::exhaustive) {
    Pdag g(vars);
    for (const auto& name : m.vertices())
        if (!g.find_vertex(name))
            throw std::invalid_argument("model mentions a vertex outside vars: '" + name + "'");

    detail::ModelView view(m, g);
    SepsetMap seps;
    int n = g.vertex_count();

    if (search == SkeletonSearch::exhaustive) {
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                VertexMask pool = g.vertex_mask() & ~(vertex_bit(a) | vertex_bit(b));
                if (auto s = detail::first_sepset(view, a, b, pool))
                    seps.record(a, b, *s);
                else
                    g.add_undirected(a, b);
            }
        }
        return {std::move(g), std::move(seps)};
    }

    // PC-style shrinking neighborhoods.
    std::vector<VertexMask> adj(static_cast<size_t>(n), 0);
    for (int a = 0; a < n; ++a) adj[static_cast<size_t>(a)] = g.vertex_mask() & ~vertex_bit(a);
    for (int level = 0;; ++level) {
        bool any_candidate = false;
        for (int a = 0; a < n; ++a) {
            for (VertexMask mb = adj[static_cast<size_t>(a)]; mb; mb &= mb - 1) {
                int b = std::countr_zero(mb);
                VertexMask pool = adj[static_cast<size_t>(a)] & ~vertex_bit(b);
                if (std::popcount(pool) < level) continue;
                any_candidate = true;
                std::vector<int> candidates;
                for (VertexMask m2 = pool; m2; m2 &= m2 - 1)
                    candidates.push_back(std::countr_zero(m2));
                int k = static_cast<int>(candidates.size());
                std::vector<int> pick(static_cast<size_t>(level));
                for (int i = 0; i < level; ++i) pick[static_cast<size_t>(i)] = i;
                bool removed = false;
                while (true) {
                    VertexMask s = 0;
                    for (int i : pick) s |= vertex_bit(candidates[static_cast<size_t>(i)]);
                    if (view.independent(a, b, s)) {
                        seps.record(a, b, s);
                        adj[static_cast<size_t>(a)] &= ~vertex_bit(b);
                        adj[static_cast<size_t>(b)] &= ~vertex_bit(a);
                        removed = true;
                        break;
                    }
                    int i = level - 1;
                    while (i >= 0 && pick[static_cast<size_t>(i)] == k - level + i) --i;
                    if (i < 0) break;
                    ++pick[static_cast<size_t>(i)];
                    for (int j = i + 1; j < level; ++j)
                        pick[static_cast<size_t>(j)] = pick[static_cast<size_t>(j - 1)] + 1;
                }
                (void)removed;
            }
        }
        if (!any_candidate) break;
    }
    for (int a = 0; a < n; ++a)
        for (VertexMask mb = adj[static_cast<size_t>(a)]; mb; mb &= mb - 1) {
            int b = std::countr_zero(mb);
            if (b > a) g.add_undirected(a, b);
        }
    return {std::move(g), std::move(seps)};
}

/// Orients the unshielded colliders of a skeleton: for each non-adjacent
/// pair (a, c) sharing a neighbour b, b gets both arrowheads exactly when b
/// lies outside the recorded separator of (a, c).  Fails when two triples
/// demand opposite orientations for one edge.
inline Result<Pdag> orient_colliders(const Pdag& g, const SepsetMap& sepsets) {
    if (g.directed_edge_count() != 0)
        throw std::invalid_argument("orient_colliders: skeleton must be fully undirected");

    int n = g.vertex_count();
    std::map<std::pair<int, int>, bool> demanded;  // (tail, head) -> true
    for (int b = 0; b < n; ++b) {
        VertexMask nb = g.undirected_mask(b);
        for (VertexMask ma = nb; ma; ma &= ma - 1) {
            int a = std::countr_zero(ma);
            for (VertexMask mc = ma & (ma - 1); mc; mc &= mc - 1) {
                int c = std::countr_zero(mc);
                if (g.adjacent(a, c)) continue;
                auto s = sepsets.get(a, c);
                if (!s)
                    throw std::invalid_argument("orient_colliders: no separator recorded for '" +
                                                g.name_of(a) + "' and '" + g.name_of(c) + "'");
                if (*s & vertex_bit(b)) continue;
                for (int tail : {a, c}) {
                    if (demanded.count({b, tail}))
                        return Result<Pdag>::failure(
                            "collider orientation",
                            "conflicting orientations demanded for edge '" + g.name_of(tail) +
                                "' - '" + g.name_of(b) + "'");
                    demanded[{tail, b}] = true;
                }
            }
        }
    }

    Pdag out = g;
    for (const auto& [edge, unused] : demanded) {
        (void)unused;
        out.orient(edge.first, edge.second);
    }
    return out;
}

inline Result<Pdag> orient_colliders(const SkeletonResult& skeleton) {
    return orient_colliders(skeleton.graph, skeleton.sepsets);
}

/// Phase I: skeleton plus collider orientation.  The result is the pattern
/// of every explanation of m, if m has one.
inline Result<Pdag> phase1(const DependencyModel& m, const std::vector<std::string>& vars,
                           SkeletonSearch search = SkeletonSearch::exhaustive) {
    SkeletonResult sk = build_skeleton(m, vars, search);
    auto oriented = orient_colliders(sk);
    if (!oriented)
        return Result<Pdag>::failure("phase I", oriented.error().reason);
    return oriented;
}

}  // namespace cpdag
