#pragma once

#include <string>
#include <vector>

#include "cpdag/background.hpp"
#include "cpdag/ci.hpp"
#include "cpdag/extend.hpp"
#include "cpdag/pdag.hpp"
#include "cpdag/result.hpp"
#include "cpdag/rules.hpp"
#include "cpdag/skeleton.hpp"
#include "cpdag/verify.hpp"

namespace cpdag {

enum class VerifyMode {
    steps,             // verify_explanation: entailment plus local completeness
    full_equivalence,  // compare entailments against listed or composed statements
};

struct SolveOptions {
    SkeletonSearch search = SkeletonSearch::exhaustive;
    ForbiddenSemantics forbidden = ForbiddenSemantics::orient_reverse;
    VerifyMode verify = VerifyMode::steps;
    int full_cap = 8;  // vertex cap for full_equivalence verification
};

namespace detail {

/// Phases I, II' and II'': the maximally oriented graph for (m, k).
inline Result<Pdag> orient_pipeline(const DependencyModel& m,
                                    const std::vector<std::string>& vars,
                                    const BackgroundKnowledge& k, const SolveOptions& opts) {
    auto p1 = phase1(m, vars, opts.search);
    if (!p1) return p1;
    Pdag g = max_orient(p1.value());
    if (k.empty()) return g;
    return incorporate_background(g, k, opts.forbidden);
}

inline std::optional<Failure> certification_failure(const Dag& d, const DependencyModel& m,
                                                    const SolveOptions& opts) {
    if (opts.verify == VerifyMode::steps) {
        auto report = verify_explanation(d.graph(), m);
        if (!report.ok) return Failure{"phase IV", report.reason};
        return std::nullopt;
    }
    auto mismatch = full_equivalence_mismatch(d, m, opts.full_cap);
    if (mismatch) {
        bool entailed = d_separated(d, mismatch->a(), mismatch->b(), mismatch->s());
        return Failure{"phase IV",
                       "entailment mismatch: " + mismatch->to_string() +
                           (entailed ? " (entailed, not listed)" : " (listed, not entailed)")};
    }
    return std::nullopt;
}

}  // namespace detail

/// Decides whether the model has a complete causal explanation consistent
/// with the background knowledge, and produces one if so.  Failure carries
/// the phase that rejected the input; any failure means no explanation
/// exists, it never means the search gave up.
inline Result<Dag> explain(const DependencyModel& m, const std::vector<std::string>& vars,
                           const BackgroundKnowledge& k = {}, const SolveOptions& opts = {}) {
    auto oriented = detail::orient_pipeline(m, vars, k, opts);
    if (!oriented) return Result<Dag>::failure(oriented.error().where, oriented.error().reason);
    auto extended = try_extend_to_dag(oriented.value());
    if (!extended) return extended;
    if (auto f = detail::certification_failure(extended.value(), m, opts))
        return Result<Dag>::failure(f->where, f->reason);
    return extended;
}

/// The orientations shared by every explanation of (m, k): directed edges
/// of the result are directed the same way in each one, undirected edges
/// vary.  Fails exactly when explain does.
inline Result<Pdag> common_orientations(const DependencyModel& m,
                                        const std::vector<std::string>& vars,
                                        const BackgroundKnowledge& k = {},
                                        const SolveOptions& opts = {}) {
    auto oriented = detail::orient_pipeline(m, vars, k, opts);
    if (!oriented) return oriented;
    auto extended = try_extend_to_dag(oriented.value());
    if (!extended)
        return Result<Pdag>::failure(extended.error().where, extended.error().reason);
    if (auto f = detail::certification_failure(extended.value(), m, opts))
        return Result<Pdag>::failure(f->where, f->reason);
    return oriented;
}

}  // namespace cpdag
