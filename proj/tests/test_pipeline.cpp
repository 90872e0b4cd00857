#include "cpdag/solve.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "support/oracles.hpp"

#include "cpdag/pattern.hpp"

using namespace cpdag;

TEST_CASE("extension of the chain pattern picks the lexicographic root") {
  Pdag p({"X", "Y", "Z"});
  p.add_undirected("X", "Y");
  p.add_undirected("Y", "Z");
  auto r = try_extend_to_dag(p);
  REQUIRE(r.ok());
  CHECK(r.value().has_directed("X", "Y"));
  CHECK(r.value().has_directed("Y", "Z"));
}

TEST_CASE("a DAG extends to itself") {
  Pdag p({"X", "Y", "Z"});
  p.add_directed("X", "Y");
  p.add_directed("Z", "Y");
  auto r = try_extend_to_dag(p);
  REQUIRE(r.ok());
  CHECK(r.value().graph() == p);
}

TEST_CASE("extension across a directed-undirected triangle") {
  Pdag p({"A", "B", "C"});
  p.add_directed("A", "B");
  p.add_undirected("B", "C");
  p.add_undirected("A", "C");
  auto r = try_extend_to_dag(p);
  REQUIRE(r.ok());
  CHECK(r.value().has_directed("A", "B"));
  CHECK(r.value().has_directed("A", "C"));
  CHECK(r.value().has_directed("B", "C"));
}

TEST_CASE("an undirected four-cycle has no extension") {
  Pdag p({"A", "B", "C", "D"});
  p.add_undirected("A", "B");
  p.add_undirected("B", "C");
  p.add_undirected("C", "D");
  p.add_undirected("D", "A");
  auto r = try_extend_to_dag(p);
  REQUIRE_FALSE(r.ok());
  CHECK(r.error().where == "phase III");
  CHECK(r.error().reason == "extension is cyclic");
}

TEST_CASE("an extension that manufactures a collider is rejected") {
  Pdag p({"X", "Y", "Z"});
  p.add_directed("X", "Z");
  p.add_undirected("Y", "Z");
  auto r = try_extend_to_dag(p);
  REQUIRE_FALSE(r.ok());
  CHECK(r.error().reason == "extension is not consistent with the input");
  CHECK_THROWS_AS(extend_to_dag(p), std::logic_error);
  CHECK_THROWS_WITH(
      extend_to_dag(p),
      Catch::Matchers::ContainsSubstring("input was not maximally oriented"));
}

TEST_CASE("extension succeeds on every maximally oriented graph") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    Pdag p = pattern_of(oracle::random_dag(rng, 6, 0.4));
    Pdag m = max_orient(p);
    auto r = try_extend_to_dag(m);
    REQUIRE(r.ok());
    REQUIRE(is_consistent_dag_extension(r.value(), m));
    REQUIRE(pattern_of(r.value()) == p);
  }
}

TEST_CASE("verification of the worked candidates") {
  Pdag chain({"X", "Y", "Z"});
  chain.add_directed("X", "Y");
  chain.add_directed("Y", "Z");
  Pdag coll({"X", "Y", "Z"});
  coll.add_directed("X", "Y");
  coll.add_directed("Z", "Y");

  DependencyModel mchain = parse_ci("X Z | Y\n");
  DependencyModel mcoll = parse_ci("X Z |\n", {"Y"});

  CHECK(verify_explanation(chain, mchain).ok);
  CHECK(verify_explanation(coll, mcoll).ok);

  auto wrong = verify_explanation(coll, mchain);
  CHECK_FALSE(wrong.ok);
  CHECK(wrong.failed_step == 2);
  CHECK(wrong.reason == "statement not entailed: X Z | Y");

  auto wrong2 = verify_explanation(chain, mcoll);
  CHECK(wrong2.failed_step == 2);
  CHECK(wrong2.reason == "statement not entailed: X Z");

  auto incomplete = verify_explanation(chain, parse_ci("", {"X", "Y", "Z"}));
  CHECK(incomplete.failed_step == 3);
  CHECK(incomplete.reason == "missing independence fact: X Z | Y");

  Pdag complete({"X", "Y", "Z"});
  complete.add_directed("X", "Y");
  complete.add_directed("X", "Z");
  complete.add_directed("Y", "Z");
  CHECK(verify_explanation(complete, parse_ci("", {"X", "Y", "Z"})).ok);
}

TEST_CASE("verification step 1 catches non-DAGs") {
  Pdag und({"X", "Y"});
  und.add_undirected("X", "Y");
  auto r1 = verify_explanation(und, parse_ci("", {"X", "Y"}));
  CHECK(r1.failed_step == 1);
  CHECK(r1.reason == "undirected edges remain");

  Pdag cyc({"A", "B", "C"});
  cyc.add_directed("A", "B");
  cyc.add_directed("B", "C");
  cyc.add_directed("C", "A");
  auto r2 = verify_explanation(cyc, parse_ci("", {"A", "B", "C"}));
  CHECK(r2.failed_step == 1);
  CHECK(r2.reason == "cyclic");
}

TEST_CASE("pairwise facts compose to the set-valued requirement") {
  Pdag four({"W", "X", "Y", "Z"});
  four.add_directed("X", "Y");
  four.add_directed("Z", "Y");
  four.add_directed("Y", "W");
  Dag d(four);
  DependencyModel pairwise = from_dag(d);
  CHECK(verify_explanation(four, pairwise).ok);
  // Dropping one link of the chain breaks the composition.
  std::vector<CiStatement> pruned;
  for (const auto& st : pairwise.statements())
    if (st.to_string() != "W X | Y") pruned.push_back(st);
  auto r = verify_explanation(
      four, DependencyModel(pruned, pairwise.vertices()));
  CHECK(r.failed_step == 3);
  CHECK(r.reason == "missing independence fact: W X,Z | Y");
}

TEST_CASE("the model may omit vertices of the graph but not the reverse") {
  Pdag g({"X", "Y", "Z"});
  g.add_directed("X", "Y");
  g.add_directed("Z", "Y");
  CHECK(verify_explanation(g, parse_ci("X Z |\n")).ok);

  Pdag small({"X", "Z"});
  CHECK_THROWS_AS(verify_explanation(small, parse_ci("X Z | Y\n")),
                  std::invalid_argument);
}

TEST_CASE("full equivalence flags unlisted entailments") {
  Pdag iso({"X", "Y", "Z"});
  iso.add_directed("Y", "Z");
  Dag d(iso);
  DependencyModel m = parse_ci("X Z | Y\nX Y\n");

  CHECK(verify_explanation(iso, m).ok);
  auto mismatch = full_equivalence_mismatch(d, m);
  REQUIRE(mismatch);
  CHECK(mismatch->to_string() == "X Z");
  CHECK_FALSE(full_equivalence_check(d, m));

  DependencyModel closed = from_dag(d, GenerationMode::full);
  CHECK(full_equivalence_check(d, closed));

  std::vector<std::string> names;
  for (int i = 0; i < 9; ++i) names.push_back("v" + std::to_string(i));
  Pdag big(names);
  CHECK_THROWS_AS(full_equivalence_mismatch(Dag(big), parse_ci("", names)),
                  std::length_error);
}

TEST_CASE("explain on the worked models") {
  auto chain = explain(parse_ci("X Z | Y\n"), {"X", "Y", "Z"});
  REQUIRE(chain.ok());
  CHECK(chain.value().has_directed("X", "Y"));
  CHECK(chain.value().has_directed("Y", "Z"));

  auto coll = explain(parse_ci("X Z |\n"), {"X", "Y", "Z"});
  REQUIRE(coll.ok());
  CHECK(coll.value().has_directed("X", "Y"));
  CHECK(coll.value().has_directed("Z", "Y"));

  auto none = explain(parse_ci("X Z |\nX Z | Y\n"), {"X", "Y", "Z"});
  REQUIRE_FALSE(none.ok());
  CHECK(none.error().where == "phase IV");
  CHECK(none.error().reason == "statement not entailed: X Z | Y");

  auto conflict = explain(parse_ci("A C |\nB D |\nA D | B\n"),
                          {"A", "B", "C", "D"});
  REQUIRE_FALSE(conflict.ok());
  CHECK(conflict.error().where == "phase I");

  auto empty = explain(parse_ci("", {"A", "B"}), {"A", "B"});
  REQUIRE(empty.ok());
  CHECK(empty.value().has_directed("A", "B"));
}

TEST_CASE("explain with background knowledge") {
  DependencyModel m = parse_ci("X Z | Y\n");
  auto r = explain(m, m.vertices(), BackgroundKnowledge({}, {{"Y", "Z"}}));
  REQUIRE(r.ok());
  CHECK(r.value().has_directed("X", "Y"));
  CHECK(r.value().has_directed("Y", "Z"));

  auto impossible = explain(m, m.vertices(),
                            BackgroundKnowledge({}, {{"X", "Z"}}));
  REQUIRE_FALSE(impossible.ok());
  CHECK(impossible.error().where == "phase II");

  auto common = common_orientations(m, m.vertices(),
                                    BackgroundKnowledge({}, {{"Y", "Z"}}));
  REQUIRE(common.ok());
  CHECK(common.value().has_undirected("X", "Y"));
  CHECK(common.value().has_directed("Y", "Z"));
}

TEST_CASE("common orientations without knowledge are the pattern closure") {
  auto r = common_orientations(parse_ci("X Z | Y\n"), {"X", "Y", "Z"});
  REQUIRE(r.ok());
  CHECK(r.value().undirected_edges().size() == 2);
  CHECK(r.value().directed_edges().empty());
}

TEST_CASE("step verification can accept what full equivalence rejects") {
  DependencyModel m = parse_ci("X Z | Y\nX Y\n");
  auto steps = explain(m, {"X", "Y", "Z"});
  REQUIRE(steps.ok());

  SolveOptions opts;
  opts.verify = VerifyMode::full_equivalence;
  auto full = explain(m, {"X", "Y", "Z"}, {}, opts);
  REQUIRE_FALSE(full.ok());
  CHECK(full.error().where == "phase IV");
  CHECK(full.error().reason ==
        "entailment mismatch: X Z (entailed, not listed)");
}

TEST_CASE("explain recovers an equivalent DAG for every small model") {
  for (int n = 2; n <= 4; ++n) {
    for (const Dag& d : oracle::all_dags(n)) {
      auto r = explain(from_dag(d), d.vertex_names());
      REQUIRE(r.ok());
      REQUIRE(markov_equivalent(r.value(), d));
    }
  }
}

TEST_CASE("full-equivalence mode accepts closed models") {
  SolveOptions opts;
  opts.verify = VerifyMode::full_equivalence;
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 25; ++trial) {
    Dag d = oracle::random_dag(rng, 4 + static_cast<int>(rng() % 2), 0.45);
    auto r = explain(from_dag(d, GenerationMode::full), d.vertex_names(), {},
                     opts);
    REQUIRE(r.ok());
    REQUIRE(markov_equivalent(r.value(), d));
  }
}

TEST_CASE("neighborhood search gives the same explanation") {
  SolveOptions nb;
  nb.search = SkeletonSearch::neighborhood;
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    Dag d = oracle::random_dag(rng, 6, 0.4);
    DependencyModel m = from_dag(d);
    auto a = explain(m, d.vertex_names());
    auto b = explain(m, d.vertex_names(), {}, nb);
    REQUIRE(a.ok());
    REQUIRE(b.ok());
    REQUIRE(a.value().graph() == b.value().graph());
  }
}
