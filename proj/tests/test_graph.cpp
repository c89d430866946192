#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "atdsc/graph.hpp"

using namespace atdsc;

TEST_CASE("two zones one edge") {
  std::istringstream in("1: 2\n2: 1\n");
  const ZoneGraph g = load_zone_adjacency(in);
  CHECK(g.zone_count() == 2);
  CHECK(g.adjacent(1, 2));
  CHECK(g.adjacent(2, 1));
  CHECK(g.neighbors(1).size() == 1);
}

TEST_CASE("symmetry completion when the reverse line is missing") {
  std::istringstream in("1: 2\n");
  const ZoneGraph g = load_zone_adjacency(in);
  CHECK(g.zone_count() == 2);
  CHECK(g.adjacent(2, 1));
}

TEST_CASE("path graph adjacency is not transitive") {
  std::istringstream in("1: 2\n2: 1,3\n3: 2\n");
  const ZoneGraph g = load_zone_adjacency(in);
  CHECK(g.zone_count() == 3);
  CHECK(g.adjacent(1, 2));
  CHECK(g.adjacent(2, 3));
  CHECK(!g.adjacent(1, 3));
  CHECK(g.connected(1, 3));
}

TEST_CASE("comments and blank lines are ignored") {
  std::istringstream in("# city map\n\n1: 2 # inline note\n2: 1\n");
  CHECK(load_zone_adjacency(in).zone_count() == 2);
}

TEST_CASE("self loop is fatal") {
  std::istringstream in("1: 1,2\n");
  CHECK_THROWS_AS(load_zone_adjacency(in), UsageError);
}

TEST_CASE("duplicate zone line is fatal") {
  std::istringstream in("1: 2\n1: 3\n");
  CHECK_THROWS_AS(load_zone_adjacency(in), UsageError);
}

TEST_CASE("fewer than two zones is fatal") {
  const std::map<ZoneId, std::set<ZoneId>> lone{{1, {}}};
  CHECK_THROWS_AS(ZoneGraph{lone}, UsageError);
}

TEST_CASE("connectivity respects components") {
  const ZoneGraph g({{1, {2}}, {2, {1}}, {3, {4}}, {4, {3}}});
  CHECK(g.connected(1, 2));
  CHECK(!g.connected(1, 3));
  CHECK(g.connected(3, 4));
}

TEST_CASE("adjacency write and reload round trip") {
  const ZoneGraph g({{1, {2, 3}}, {2, {1}}, {3, {1}}});
  std::ostringstream out;
  write_zone_adjacency(g, out);
  std::istringstream in(out.str());
  const ZoneGraph back = load_zone_adjacency(in);
  CHECK(back.zone_count() == g.zone_count());
  for (ZoneId a : g.zones())
    for (ZoneId b : g.zones()) CHECK(back.adjacent(a, b) == g.adjacent(a, b));
}
