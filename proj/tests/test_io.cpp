#include "cpdag/graph_io.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "support/oracles.hpp"

using namespace cpdag;

TEST_CASE("parse_graph reads nodes, edges and comments") {
  Pdag g = parse_graph(
      "# a small mixed graph\n"
      "node D\n"
      "A -> B\n"
      "\n"
      "B -- C   # trailing comment\n");
  CHECK(g.vertex_names() == std::vector<std::string>{"A", "B", "C", "D"});
  CHECK(g.has_directed("A", "B"));
  CHECK(g.has_undirected("B", "C"));
  CHECK(g.adjacents("D").empty());
}

TEST_CASE("parse_graph accepts extra vertices") {
  Pdag g = parse_graph("A -> B\n", {"Q", "A"});
  CHECK(g.vertex_names() == std::vector<std::string>{"A", "B", "Q"});
}

TEST_CASE("parse_graph reports the offending line") {
  auto line_of = [](const std::string& text) {
    try {
      parse_graph(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("A -> B\nA -> A\n") == 2);
  CHECK(line_of("A -> B\nA -> B\n") == 2);
  CHECK(line_of("A -> B\nB -> A\n") == 2);
  CHECK(line_of("A -> B\nA -- B\n") == 2);
  CHECK(line_of("node\n") == 1);
  CHECK(line_of("A => B\n") == 1);
  CHECK(line_of("A -> B C\n") == 1);
  CHECK(line_of("node A B\n") == 1);

  CHECK_THROWS_WITH(parse_graph("A -> B\nA -> B\n"),
                    Catch::Matchers::ContainsSubstring("duplicate edge"));
  CHECK_THROWS_WITH(parse_graph("A -> B\nB -> A\n"),
                    Catch::Matchers::ContainsSubstring("conflicting edge"));
  CHECK_THROWS_WITH(parse_graph("A -- B\nA -> B\n"),
                    Catch::Matchers::ContainsSubstring("conflicting edge"));
}

TEST_CASE("serialize_graph lists isolated vertices first, then sorted edges") {
  Pdag g({"A", "B", "C", "Q", "Z"});
  g.add_undirected("C", "B");
  g.add_directed("Z", "A");
  CHECK(serialize_graph(g) ==
        "node Q\n"
        "B -- C\n"
        "Z -> A\n");
  Pdag empty({"A", "B"});
  CHECK(serialize_graph(empty) == "node A\nnode B\n");
}

TEST_CASE("graph text round trip") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Pdag g = oracle::random_pdag(rng, 2 + static_cast<int>(rng() % 7), 0.4);
    Pdag back = parse_graph(serialize_graph(g));
    if (g.vertex_count() != back.vertex_count()) {
      // Isolated vertices survive via node lines, so this cannot happen.
      FAIL("vertex count changed in round trip");
    }
    REQUIRE(back == g);
  }
}

TEST_CASE("dot output") {
  Pdag g({"A", "B", "C", "D"});
  g.add_directed("A", "B");
  g.add_undirected("B", "C");
  CHECK(serialize_dot(g) ==
        "digraph {\n"
        "  \"D\";\n"
        "  \"A\" -> \"B\";\n"
        "  \"B\" -> \"C\" [dir=none];\n"
        "}\n");
}
