#include "cpdag/skeleton.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "support/oracles.hpp"

#include "cpdag/pattern.hpp"

using namespace cpdag;

TEST_CASE("skeleton of the chain model") {
  DependencyModel m = parse_ci("X Z | Y\n");
  SkeletonResult sk = build_skeleton(m, m.vertices());
  CHECK(sk.graph.has_undirected("X", "Y"));
  CHECK(sk.graph.has_undirected("Y", "Z"));
  CHECK_FALSE(sk.graph.adjacent("X", "Z"));
  REQUIRE(sk.sepsets.contains(0, 2));
  CHECK(sk.sepsets.get(0, 2).value() == vertex_bit(1));
  CHECK(sk.sepsets.entries().size() == 1);
}

TEST_CASE("skeleton records the first separating set found") {
  DependencyModel m = parse_ci("X Z |\nX Z | Y\n");
  SkeletonResult sk = build_skeleton(m, m.vertices());
  // Both the empty set and {Y} separate; size order prefers the empty set.
  CHECK(sk.sepsets.get(0, 2).value() == 0);
}

TEST_CASE("empty model gives a complete skeleton") {
  DependencyModel m = parse_ci("", {"A", "B", "C"});
  SkeletonResult sk = build_skeleton(m, {"A", "B", "C"});
  CHECK(sk.graph.adjacent("A", "B"));
  CHECK(sk.graph.adjacent("A", "C"));
  CHECK(sk.graph.adjacent("B", "C"));
  CHECK(sk.sepsets.entries().empty());
}

TEST_CASE("vars must cover the model") {
  DependencyModel m = parse_ci("X Z | Y\n");
  CHECK_THROWS_AS(build_skeleton(m, {"X", "Z"}), std::invalid_argument);
  SkeletonResult wide = build_skeleton(m, {"Q", "X", "Y", "Z"});
  CHECK(wide.graph.vertex_count() == 4);
  CHECK(wide.graph.adjacent("Q", "X"));
}

TEST_CASE("collider orientation on the worked models") {
  DependencyModel coll = parse_ci("X Z |\n");
  auto r = phase1(coll, {"X", "Y", "Z"});
  REQUIRE(r.ok());
  CHECK(r.value().has_directed("X", "Y"));
  CHECK(r.value().has_directed("Z", "Y"));

  DependencyModel chain = parse_ci("X Z | Y\n");
  auto rc = phase1(chain, chain.vertices());
  REQUIRE(rc.ok());
  CHECK(rc.value().directed_edges().empty());
  CHECK(rc.value().undirected_edges().size() == 2);
}

TEST_CASE("a shielded triple orients nothing") {
  DependencyModel m = parse_ci("", {"A", "B", "C"});
  auto r = phase1(m, {"A", "B", "C"});
  REQUIRE(r.ok());
  CHECK(r.value().directed_edges().empty());
}

TEST_CASE("orient_colliders rejects bad inputs") {
  Pdag g({"X", "Y", "Z"});
  g.add_directed("X", "Y");
  SepsetMap sep;
  CHECK_THROWS_AS(orient_colliders(g, sep), std::invalid_argument);

  Pdag sk({"X", "Y", "Z"});
  sk.add_undirected("X", "Y");
  sk.add_undirected("Y", "Z");
  // (X, Z) are non-adjacent but no separating set was recorded for them.
  CHECK_THROWS_AS(orient_colliders(sk, sep), std::invalid_argument);
}

TEST_CASE("conflicting collider demands are reported, not applied") {
  // Separators force A -> B <- C and B -> C <- D; the edge between B and C
  // is claimed in both directions.
  DependencyModel m = parse_ci("A C |\nB D |\nA D | B\n");
  auto r = phase1(m, m.vertices());
  REQUIRE_FALSE(r.ok());
  CHECK(r.error().where == "phase I");
  CHECK_THAT(r.error().reason,
             Catch::Matchers::ContainsSubstring("conflicting orientations"));
}

TEST_CASE("phase I recovers the pattern of the generating DAG") {
  for (int n = 2; n <= 4; ++n) {
    for (const Dag& d : oracle::all_dags(n)) {
      DependencyModel m = from_dag(d);
      auto r = phase1(m, d.vertex_names());
      REQUIRE(r.ok());
      REQUIRE(r.value() == pattern_of(d));
    }
  }
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    Dag d = oracle::random_dag(rng, 5, 0.45);
    auto r = phase1(from_dag(d), d.vertex_names());
    REQUIRE(r.ok());
    REQUIRE(r.value() == pattern_of(d));
  }
}

TEST_CASE("neighborhood search matches the exhaustive one") {
  for (const Dag& d : oracle::all_dags(4)) {
    DependencyModel m = from_dag(d);
    SkeletonResult a = build_skeleton(m, d.vertex_names());
    SkeletonResult b =
        build_skeleton(m, d.vertex_names(), SkeletonSearch::neighborhood);
    REQUIRE(a.graph == b.graph);
  }
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    Dag d = oracle::random_dag(rng, 6, 0.4);
    DependencyModel m = from_dag(d);
    auto r1 = phase1(m, d.vertex_names());
    auto r2 = phase1(m, d.vertex_names(), SkeletonSearch::neighborhood);
    REQUIRE(r1.ok());
    REQUIRE(r2.ok());
    REQUIRE(r1.value() == r2.value());
  }
}

TEST_CASE("statement order does not matter") {
  DependencyModel a = parse_ci("X Z | Y\nW X | Y\nW Z | Y\n");
  DependencyModel b = parse_ci("W Z | Y\nX Z | Y\nW X | Y\n");
  SkeletonResult sa = build_skeleton(a, a.vertices());
  SkeletonResult sb = build_skeleton(b, b.vertices());
  CHECK(sa.graph == sb.graph);
  CHECK(sa.sepsets == sb.sepsets);
}
