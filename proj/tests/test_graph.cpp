#include <sstream>

#include "doctest.h"

#include "rrcolor/graph.hpp"

using namespace rrcolor;

namespace {

// Symmetry, no self-loops, no duplicates, degree bookkeeping.
void check_graph_invariants(const Graph& g) {
  int maxdeg = 0;
  for (int v = 0; v < g.node_count(); ++v) {
    const auto nb = g.neighbors(v);
    CHECK(static_cast<int>(nb.size()) == g.degree(v));
    maxdeg = std::max(maxdeg, g.degree(v));
    for (std::size_t i = 0; i < nb.size(); ++i) {
      CHECK(nb[i] != v);
      if (i > 0) CHECK(nb[i] > nb[i - 1]);
      CHECK(g.has_edge(nb[i], v));
    }
  }
  CHECK(g.max_degree() == maxdeg);
}

Graph parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

}  // namespace

TEST_CASE("parses the triangle") {
  const Graph g = parse_text("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n");
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 3);
  CHECK(g.max_degree() == 2);
  check_graph_invariants(g);
}

TEST_CASE("parses a single edge, comments, CRLF") {
  const Graph g = parse_text("c a comment\r\np edge 2 1\r\ne 1 2\r\n");
  CHECK(g.node_count() == 2);
  CHECK(g.edge_count() == 1);
  CHECK(g.max_degree() == 1);
}

TEST_CASE("duplicate edge lines collapse") {
  const Graph once = parse_text("p edge 2 1\ne 1 2\n");
  const Graph twice = parse_text("p edge 2 2\ne 1 2\ne 1 2\n");
  CHECK(once.edge_count() == twice.edge_count());
  CHECK(once.neighbors(0).size() == twice.neighbors(0).size());
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_text("p edge x 3\n"), doctest::Contains("line 1"),
                       graph_parse_error);
  CHECK_THROWS_WITH_AS(parse_text("p edge 3 1\ne 1 4\n"), doctest::Contains("line 2"),
                       graph_parse_error);
  CHECK_THROWS_WITH_AS(parse_text("p edge 3 1\ne 2 2\n"), doctest::Contains("self-loop"),
                       graph_parse_error);
  CHECK_THROWS_AS(parse_text("e 1 2\n"), graph_parse_error);          // edge before header
  CHECK_THROWS_AS(parse_text("p edge 2 1\nzz\n"), graph_parse_error); // junk line
  CHECK_THROWS_AS(parse_text(""), graph_parse_error);                 // no header
}

TEST_CASE("generators build the expected shapes") {
  const Graph c4 = make_cycle(4);
  CHECK(c4.node_count() == 4);
  CHECK(c4.edge_count() == 4);
  CHECK(c4.max_degree() == 2);
  check_graph_invariants(c4);

  const Graph k4 = make_complete(4);
  CHECK(k4.edge_count() == 6);
  CHECK(k4.max_degree() == 3);
  check_graph_invariants(k4);

  const Graph p1 = make_path(1);
  CHECK(p1.node_count() == 1);
  CHECK(p1.edge_count() == 0);
  CHECK(p1.max_degree() == 0);

  const Graph grid = make_grid(3, 4);
  CHECK(grid.node_count() == 12);
  CHECK(grid.edge_count() == 3 * 3 + 2 * 4);
  CHECK(grid.max_degree() == 4);
  check_graph_invariants(grid);
}

TEST_CASE("random regular graphs are valid and deterministic") {
  const Graph a = make_random_regular(8, 3, 1);
  const Graph b = make_random_regular(8, 3, 1);
  check_graph_invariants(a);
  CHECK(a.max_degree() == 3);
  for (int v = 0; v < 8; ++v) CHECK(a.degree(v) == 3);
  // Determinism: identical adjacency.
  for (int v = 0; v < 8; ++v) {
    const auto na = a.neighbors(v);
    const auto nb = b.neighbors(v);
    REQUIRE(na.size() == nb.size());
    for (std::size_t i = 0; i < na.size(); ++i) CHECK(na[i] == nb[i]);
  }
  // A different seed eventually differs (not guaranteed per-seed, but across a few).
  bool any_diff = false;
  for (std::uint64_t s = 2; s < 6 && !any_diff; ++s) {
    const Graph c = make_random_regular(8, 3, s);
    for (int v = 0; v < 8 && !any_diff; ++v) {
      const auto na = a.neighbors(v);
      const auto nc = c.neighbors(v);
      any_diff = !std::equal(na.begin(), na.end(), nc.begin(), nc.end());
    }
  }
  CHECK(any_diff);

  CHECK_THROWS_AS(make_random_regular(7, 3, 1), std::invalid_argument);  // n*d odd
  CHECK_THROWS_AS(make_random_regular(4, 4, 1), std::invalid_argument);  // d >= n
}

TEST_CASE("generator specs parse") {
  CHECK(generate_from_spec("cycle:8", 0).node_count() == 8);
  CHECK(generate_from_spec("grid:4,5", 0).node_count() == 20);
  CHECK(generate_from_spec("random_regular:10,3", 3).max_degree() == 3);
  CHECK_THROWS_AS(generate_from_spec("blob:4", 0), std::invalid_argument);
  CHECK_THROWS_AS(generate_from_spec("cycle:4,5", 0), std::invalid_argument);
  CHECK_THROWS_AS(generate_from_spec("cycle:x", 0), std::invalid_argument);
}
