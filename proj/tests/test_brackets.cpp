#include <doctest.h>

#include <set>

#include "crossing/brackets.hpp"
#include "oracles.hpp"

using namespace crossing;

namespace {

const BracketKind kKinds[] = {BracketKind::T1, BracketKind::T2, BracketKind::T3plus, BracketKind::T3minus};

std::set<EdgeId> edge_set_of(const Bracket& b) {
  auto es = b.edges();
  return {es.begin(), es.end()};
}

}  // namespace

TEST_CASE("bracket T3plus from a single red edge") {
  Bracket b{BracketKind::T3plus, 2, 3};
  auto cs = b.corners();
  CHECK(cs[0] == Point{4, 6});
  CHECK(cs[1] == Point{6, 8});
  CHECK(edge_set_of(b) == std::set<EdgeId>{{4, 5}, {5, 4}, {6, 5}, {6, 7}});
  CHECK(b.interior() == std::vector<Point>{{5, 5}, {5, 7}});
  CHECK(b.has_edge({6, 7}));
  CHECK_FALSE(b.has_edge({4, 7}));
}

TEST_CASE("bracket edges form a path between the corners") {
  for (BracketKind k : kKinds)
    for (int x = -2; x <= 2; ++x)
      for (int y = 1; y <= 3; ++y) {
        Bracket b{k, x, y};
        std::vector<std::pair<oracle::V, oracle::V>> links;
        std::map<oracle::V, int> deg;
        for (const EdgeId& e : b.edges()) {
          REQUIRE(e.valid());
          auto [a, c] = oracle::ends(e);
          links.push_back({a, c});
          ++deg[a];
          ++deg[c];
        }
        auto cs = b.corners();
        oracle::V c0{cs[0].u / 2, cs[0].v / 2}, c1{cs[1].u / 2, cs[1].v / 2};
        CHECK(deg.size() == 5);
        CHECK(deg[c0] == 1);
        CHECK(deg[c1] == 1);
        CHECK(oracle::reach(links, [&](oracle::V v) { return v == c0; }, [&](oracle::V v) { return v == c1; }));
        for (const Point& d : b.interior()) {
          CHECK(d.u % 2 != 0);
          CHECK(d.v % 2 != 0);
        }
      }
}

TEST_CASE("brackets are closed under corner-swapping reflections") {
  for (BracketKind k : kKinds)
    for (int x = -3; x <= 3; ++x)
      for (int y = 1; y <= 4; ++y) {
        Bracket b{k, x, y};
        Reflection r = corner_swap(b);
        Bracket rb = r.apply(b);
        std::set<EdgeId> mapped;
        for (const EdgeId& e : b.edges()) mapped.insert(r.apply(e));
        REQUIRE(mapped == edge_set_of(rb));
        std::set<Point> interior;
        for (const Point& p : b.interior()) interior.insert(r.apply(p));
        auto ri = rb.interior();
        CHECK(interior == std::set<Point>(ri.begin(), ri.end()));
        if (k == BracketKind::T1 || k == BracketKind::T2) CHECK(rb == b);
        if (k == BracketKind::T3plus) CHECK(rb.kind == BracketKind::T3minus);
        if (k == BracketKind::T3minus) CHECK(rb.kind == BracketKind::T3plus);
        CHECK(r.apply(rb) == b);
      }
}

TEST_CASE("bracket kind names") {
  for (BracketKind k : kKinds) CHECK(bracket_kind_from_string(to_string(k)) == k);
  CHECK_THROWS(bracket_kind_from_string("T4"));
}
