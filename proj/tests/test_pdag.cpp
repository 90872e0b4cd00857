#include "cpdag/pdag.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <stdexcept>

using namespace cpdag;

TEST_CASE("vertex names are validated and sorted") {
  Pdag g({"Z", "A", "M"});
  CHECK(g.vertex_names() == std::vector<std::string>{"A", "M", "Z"});
  CHECK(g.vertex_count() == 3);

  CHECK_THROWS_AS(Pdag({"A", "A"}), std::invalid_argument);
  CHECK_THROWS_AS(Pdag({""}), std::invalid_argument);
  CHECK_THROWS_AS(Pdag({"a b"}), std::invalid_argument);
  CHECK_THROWS_AS(Pdag({"a|b"}), std::invalid_argument);
  CHECK_THROWS_AS(Pdag({"a,b"}), std::invalid_argument);
  CHECK_THROWS_AS(Pdag({"a->b"}), std::invalid_argument);

  std::vector<std::string> many;
  for (int i = 0; i < 65; ++i) many.push_back("v" + std::to_string(i));
  CHECK_THROWS_AS(Pdag(many), std::length_error);
}

TEST_CASE("edge insertion rejects self loops and double edges") {
  Pdag g({"A", "B", "C"});
  g.add_directed("A", "B");
  g.add_undirected("B", "C");

  CHECK_THROWS_AS(g.add_directed("A", "A"), std::invalid_argument);
  CHECK_THROWS_AS(g.add_directed("A", "B"), std::invalid_argument);
  CHECK_THROWS_AS(g.add_directed("B", "A"), std::invalid_argument);
  CHECK_THROWS_AS(g.add_undirected("A", "B"), std::invalid_argument);
  CHECK_THROWS_AS(g.add_directed("B", "C"), std::invalid_argument);
  CHECK_THROWS_AS(g.add_directed("A", "X"), std::invalid_argument);

  CHECK(g.has_directed("A", "B"));
  CHECK_FALSE(g.has_directed("B", "A"));
  CHECK(g.has_undirected("B", "C"));
  CHECK(g.has_undirected("C", "B"));
  CHECK(g.adjacent("A", "B"));
  CHECK(g.adjacent("B", "A"));
  CHECK_FALSE(g.adjacent("A", "C"));
}

TEST_CASE("edge lists come out sorted") {
  Pdag g({"A", "B", "C", "D"});
  g.add_directed("C", "A");
  g.add_directed("A", "B");
  g.add_undirected("D", "B");
  g.add_undirected("C", "D");

  using E = std::pair<int, int>;
  CHECK(g.directed_edges() == std::vector<E>{{0, 1}, {2, 0}});
  CHECK(g.undirected_edges() == std::vector<E>{{1, 3}, {2, 3}});
  CHECK(g.parents("A") == std::vector<std::string>{"C"});
  CHECK(g.parents("B") == std::vector<std::string>{"A"});
  CHECK(g.adjacents("D") == std::vector<std::string>{"B", "C"});
  CHECK_THROWS_AS(g.parents("Q"), std::invalid_argument);
}

TEST_CASE("orient replaces an undirected edge") {
  Pdag g({"A", "B"});
  g.add_undirected("A", "B");
  g.orient("B", "A");
  CHECK(g.has_directed("B", "A"));
  CHECK(g.undirected_edges().empty());
  CHECK_THROWS_AS(g.orient("B", "A"), std::invalid_argument);
}

TEST_CASE("unshielded colliders") {
  Pdag collider({"X", "Y", "Z"});
  collider.add_directed("X", "Y");
  collider.add_directed("Z", "Y");
  auto found = unshielded_colliders(collider);
  REQUIRE(found.size() == 1);
  CHECK(found[0] == std::array<int, 3>{0, 1, 2});

  Pdag shielded = collider;
  shielded.add_undirected("X", "Z");
  CHECK(unshielded_colliders(shielded).empty());

  Pdag chain({"X", "Y", "Z"});
  chain.add_directed("X", "Y");
  chain.add_directed("Y", "Z");
  CHECK(unshielded_colliders(chain).empty());

  Pdag two({"A", "B", "C", "D"});
  two.add_directed("A", "B");
  two.add_directed("C", "B");
  two.add_directed("C", "D");
  two.add_directed("A", "D");
  auto pair = unshielded_colliders(two);
  REQUIRE(pair.size() == 2);
  CHECK(pair[0] == std::array<int, 3>{0, 1, 2});
  CHECK(pair[1] == std::array<int, 3>{0, 3, 2});
}

TEST_CASE("directed cycle detection ignores undirected edges") {
  Pdag g({"A", "B", "C"});
  g.add_directed("A", "B");
  g.add_directed("B", "C");
  g.add_undirected("C", "A");
  CHECK_FALSE(has_directed_cycle(g));
  g.orient("C", "A");
  CHECK(has_directed_cycle(g));
}

TEST_CASE("partially directed cycle detection") {
  SECTION("all directed") {
    Pdag g({"A", "B", "C"});
    g.add_directed("A", "B");
    g.add_directed("B", "C");
    g.add_directed("C", "A");
    CHECK(has_partially_directed_cycle(g));
  }
  SECTION("mixed") {
    Pdag g({"A", "B", "C"});
    g.add_directed("A", "B");
    g.add_undirected("B", "C");
    g.add_undirected("C", "A");
    CHECK(has_partially_directed_cycle(g));
  }
  SECTION("undirected triangle is not one") {
    Pdag g({"A", "B", "C"});
    g.add_undirected("A", "B");
    g.add_undirected("B", "C");
    g.add_undirected("C", "A");
    CHECK_FALSE(has_partially_directed_cycle(g));
  }
  SECTION("fork") {
    Pdag g({"A", "B", "C"});
    g.add_directed("A", "B");
    g.add_directed("A", "C");
    g.add_undirected("B", "C");
    CHECK_FALSE(has_partially_directed_cycle(g));
  }
}

TEST_CASE("Dag construction") {
  Pdag ok({"A", "B"});
  ok.add_directed("A", "B");
  CHECK_NOTHROW(Dag(ok));

  Pdag und({"A", "B"});
  und.add_undirected("A", "B");
  CHECK_THROWS_AS(Dag(und), std::invalid_argument);

  CHECK_THROWS_AS(
      [&] {
        Pdag c({"A", "B", "C"});
        c.add_directed("A", "B");
        c.add_directed("B", "C");
        c.add_directed("C", "A");
        return Dag(c);
      }(),
      std::invalid_argument);
}

TEST_CASE("topological order picks the smallest available vertex") {
  Pdag g({"X", "Y", "Z"});
  g.add_directed("X", "Y");
  g.add_directed("Z", "Y");
  auto order = topological_order(Dag(g));
  CHECK(order == std::vector<int>{0, 2, 1});
}

TEST_CASE("ancestral closure") {
  Pdag g({"A", "B", "C", "D"});
  g.add_directed("A", "B");
  g.add_directed("B", "C");
  g.add_directed("D", "C");
  Dag d(g);
  CHECK(ancestral_closure(d, vertex_bit(2)) ==
        (vertex_bit(0) | vertex_bit(1) | vertex_bit(2) | vertex_bit(3)));
  CHECK(ancestral_closure(d, vertex_bit(1)) == (vertex_bit(0) | vertex_bit(1)));
  CHECK(ancestral_closure(d, vertex_bit(0)) == vertex_bit(0));
}

TEST_CASE("induced subgraph reindexes by name") {
  Pdag g({"A", "B", "C", "D"});
  g.add_directed("A", "C");
  g.add_undirected("C", "D");
  g.add_directed("B", "D");
  Pdag h = induced_subgraph(g, vertex_bit(0) | vertex_bit(2) | vertex_bit(3));
  CHECK(h.vertex_names() == std::vector<std::string>{"A", "C", "D"});
  CHECK(h.has_directed("A", "C"));
  CHECK(h.has_undirected("C", "D"));
  CHECK_FALSE(h.adjacent("A", "D"));
}

TEST_CASE("mask_set_lex_less orders sets of vertex ids lexicographically") {
  auto m = [](std::initializer_list<int> xs) {
    VertexMask out = 0;
    for (int x : xs) out |= vertex_bit(x);
    return out;
  };
  CHECK(mask_set_lex_less(m({0}), m({0, 1})));
  CHECK(mask_set_lex_less(m({0, 1}), m({0, 2})));
  CHECK(mask_set_lex_less(m({0, 2}), m({1})));
  CHECK(mask_set_lex_less(m({1, 2}), m({2})));
  CHECK_FALSE(mask_set_lex_less(m({1}), m({0, 5})));
  CHECK_FALSE(mask_set_lex_less(m({0, 1}), m({0, 1})));
  CHECK(mask_set_lex_less(0, m({0})));
  CHECK_FALSE(mask_set_lex_less(m({0}), 0));
}
