#include <doctest.h>

#include <functional>
#include <random>
#include <set>

#include "crossing/errors.hpp"
#include "crossing/game.hpp"
#include "crossing/switching.hpp"

using namespace crossing;

namespace {

Multigraph graph(int nv, std::vector<std::pair<int, int>> edges) {
  Multigraph g;
  g.vertex_count = nv;
  for (auto [a, b] : edges) g.add_edge(a, b);
  return g;
}

// Tutte / Nash-Williams: k disjoint spanning trees exist iff every vertex
// partition P has at least k(|P|-1) crossing edges.
bool nw_k_positive(const Multigraph& g, int k) {
  int n = g.vertex_count;
  std::vector<int> part(n, 0);
  std::function<bool(int, int)> rec = [&](int v, int blocks) -> bool {
    if (v == n) {
      int crossing = 0;
      for (auto [a, b] : g.edges)
        if (part[a] != part[b]) ++crossing;
      return crossing >= k * (blocks - 1);
    }
    for (int c = 0; c <= blocks; ++c) {
      part[v] = c;
      if (!rec(v + 1, std::max(blocks, c + 1))) return false;
    }
    return true;
  };
  if (n == 0) return true;
  part[0] = 0;
  return rec(1, 1);
}

void check_decomposition(const Multigraph& g, const std::vector<std::vector<int>>& trees) {
  std::set<int> used;
  for (const auto& t : trees) {
    CHECK(connected_spanning(g, t));
    for (int e : t) CHECK(used.insert(e).second);
  }
}

Multigraph random_graph(std::mt19937_64& rng, int max_v, int max_e, bool loops) {
  int nv = 2 + int(rng() % (max_v - 1));
  int ne = int(rng() % (max_e + 1));
  Multigraph g;
  g.vertex_count = nv;
  for (int i = 0; i < ne; ++i) {
    int a = int(rng() % nv), b = int(rng() % nv);
    if (a == b && !loops) continue;
    g.add_edge(a, b);
  }
  return g;
}

// Cut moves first and deletes `per_turn` unsafe edges; Join answers with
// kk_join_move and fills unused marks with the least unsafe edge. Every
// Cut sequence is explored.
void exhaust(const SwitchingPosition& pos, int per_turn, long& leaves) {
  auto free = [&](const SwitchingPosition& p) {
    std::vector<int> out;
    for (std::size_t e = 0; e < p.safe.size(); ++e)
      if (p.unsafe(int(e))) out.push_back(int(e));
    return out;
  };
  std::vector<int> open = free(pos);
  if (open.empty()) {
    REQUIRE(pos.joined());
    ++leaves;
    return;
  }
  int take = std::min<int>(per_turn, int(open.size()));
  std::vector<int> pick;
  std::function<void(std::size_t)> choose = [&](std::size_t from) {
    if (int(pick.size()) == take) {
      SwitchingPosition next = pos;
      auto saved = kk_join_move(next, pick);
      REQUIRE(int(saved.size()) <= per_turn);
      for (int i = int(saved.size()); i < per_turn; ++i)
        if (auto f = next.least_unsafe()) next.safe[*f] = 1;
      REQUIRE(next.invariant_holds());
      exhaust(next, per_turn, leaves);
      return;
    }
    for (std::size_t i = from; i < open.size(); ++i) {
      pick.push_back(open[i]);
      choose(i + 1);
      pick.pop_back();
    }
  };
  choose(0);
}

}  // namespace

TEST_CASE("is_k_positive examples") {
  Multigraph c4 = graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  auto one = is_k_positive(c4, 1);
  REQUIRE(one);
  check_decomposition(c4, *one);
  CHECK_FALSE(is_k_positive(c4, 2));
  Multigraph par = graph(2, {{0, 1}, {0, 1}});
  auto two = is_k_positive(par, 2);
  REQUIRE(two);
  CHECK((*two)[0] == std::vector<int>{0});
  CHECK((*two)[1] == std::vector<int>{1});
  CHECK_THROWS(is_k_positive(c4, 0));
  CHECK(is_k_positive(graph(1, {}), 3));
}

TEST_CASE("is_k_positive agrees with the partition criterion") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 600; ++t) {
    Multigraph g = random_graph(rng, 5, 11, true);
    for (int k = 1; k <= 3; ++k) {
      auto d = is_k_positive(g, k);
      REQUIRE(bool(d) == nw_k_positive(g, k));
      if (d) {
        REQUIRE(int(d->size()) == k);
        check_decomposition(g, *d);
      }
    }
  }
}

TEST_CASE("join_move examples") {
  SUBCASE("parallel edges") {
    SwitchingPosition pos(graph(2, {{0, 1}, {0, 1}}), 0, 1, {{0}, {1}});
    auto f = join_move(pos, 0);
    REQUIRE(f);
    CHECK(*f == 1);
    CHECK(pos.joined());
    CHECK(pos.invariant_holds());
  }
  SUBCASE("non-bridge cut passes") {
    // G1 is a triangle, G2 a path; cutting a triangle edge leaves G1 spanning.
    Multigraph g = graph(3, {{0, 1}, {1, 2}, {2, 0}, {0, 1}, {1, 2}});
    SwitchingPosition pos(g, 0, 2, {{0, 1, 2}, {3, 4}});
    CHECK_FALSE(join_move(pos, 2));
    CHECK(pos.deleted[2]);
    CHECK(pos.invariant_holds());
  }
  SUBCASE("cutting a safe edge is rejected") {
    SwitchingPosition pos(graph(2, {{0, 1}, {0, 1}}), 0, 1, {{0}, {1}});
    pos.safe[0] = 1;
    CHECK_THROWS(join_move(pos, 0));
  }
}

TEST_CASE("Join wins on K4 against every Cut sequence") {
  Multigraph k4 = graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  SwitchingPosition pos(k4, 0, 1, {{0, 3, 5}, {1, 2, 4}});
  REQUIRE(pos.invariant_holds());
  long leaves = 0;
  exhaust(pos, 1, leaves);
  CHECK(leaves > 0);
}

TEST_CASE("Join invariant on random 2-positive graphs, every Cut sequence") {
  std::mt19937_64 rng(3);
  int done = 0;
  while (done < 40) {
    Multigraph g = random_graph(rng, 4, 8, false);
    auto d = is_k_positive(g, 2);
    if (!d) continue;
    ++done;
    SwitchingPosition pos(g, 0, g.vertex_count - 1, *d);
    long leaves = 0;
    exhaust(pos, 1, leaves);
  }
}

TEST_CASE("(k,k) Join") {
  SUBCASE("k+1 parallel edges") {
    SwitchingPosition pos(graph(2, {{0, 1}, {0, 1}, {0, 1}}), 0, 1, {{0}, {1}, {2}});
    auto saved = kk_join_move(pos, {0, 1});
    CHECK(saved == std::vector<int>{2});
    CHECK(pos.joined());
    CHECK(pos.invariant_holds());
  }
  SUBCASE("non-bridge deletions pass") {
    Multigraph g = graph(2, {{0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}});
    SwitchingPosition pos(g, 0, 1, {{0, 1}, {2, 3}, {4, 5}});
    CHECK(kk_join_move(pos, {0, 2}).empty());
    CHECK(pos.invariant_holds());
  }
  SUBCASE("theta graph, every Cut pair and play-out") {
    // Three copies of the path a-c-b, one per spanning subgraph.
    Multigraph g = graph(3, {{0, 2}, {2, 1}, {0, 2}, {2, 1}, {0, 2}, {2, 1}});
    SwitchingPosition pos(g, 0, 1, {{0, 1}, {2, 3}, {4, 5}});
    long leaves = 0;
    exhaust(pos, 2, leaves);
    CHECK(leaves > 0);
  }
}

TEST_CASE("bridgit_setup for every first edge") {
  for (int n = 2; n <= 5; ++n) {
    Board b = make_board(n + 1, n);
    for (const EdgeId& first : edge_set(b)) {
      BridgitSetup s = bridgit_setup(n, first);
      const auto& pos = s.position;
      std::set<int> g1(pos.spanning[0].begin(), pos.spanning[0].end());
      std::set<int> g2(pos.spanning[1].begin(), pos.spanning[1].end());
      std::vector<int> both;
      std::set_intersection(g1.begin(), g1.end(), g2.begin(), g2.end(), std::back_inserter(both));
      REQUIRE(both == std::vector<int>{s.index_of(first)});
      REQUIRE(g1.size() + g2.size() == s.board_edges.size() + 1);
      REQUIRE(connected_spanning(pos.graph, pos.spanning[0]));
      REQUIRE(connected_spanning(pos.graph, pos.spanning[1]));
      CHECK(pos.safe[s.index_of(first)]);
      CHECK(s.triple.A == std::vector<int>{0});
      CHECK(s.triple.B == std::vector<int>{1});

      std::vector<EdgeId> marked = s.recolored;
      if (first.horizontal()) {
        CHECK(int(s.recolored.size()) == n - 1);
        marked.push_back(first);
      } else {
        int x = first.u / 2, y = (first.v - 1) / 2;
        CHECK(int(s.recolored.size()) == n);
        CHECK(std::count(s.recolored.begin(), s.recolored.end(), hedge(x, y)) == 1);
        CHECK(std::count(s.recolored.begin(), s.recolored.end(), hedge(x - 1, y + 1)) == 1);
      }
      std::set<int> cols, rows;
      for (const EdgeId& e : marked) {
        REQUIRE(e.horizontal());
        cols.insert((e.u - 1) / 2);
        rows.insert(e.v / 2);
      }
      CHECK(cols.size() == marked.size());
      CHECK(rows.size() == marked.size());
    }
  }
  CHECK_THROWS(bridgit_setup(3, EdgeId{1, 2}));
}

TEST_CASE("Bridg-it: Maker wins against every Breaker on S_{3x2}") {
  Board b = make_board(3, 2);
  for (const EdgeId& first : edge_set(b)) {
    long games = 0;
    std::function<void(const GameState&, const BridgitMaker&)> play = [&](const GameState& s, const BridgitMaker& mk) {
      if (s.verdict() != Verdict::Ongoing) {
        REQUIRE(s.verdict() == Verdict::MakerWin);
        ++games;
        return;
      }
      for (const EdgeId& e : edge_set(b)) {
        if (!s.unclaimed(e)) continue;
        GameState t = s;
        BridgitMaker m2 = mk;
        t.apply(Move{Player::Breaker, {e}, ""});
        if (t.verdict() != Verdict::Ongoing) {
          play(t, m2);
          continue;
        }
        auto r = m2.respond(e);
        REQUIRE(r);
        t.apply(Move{Player::Maker, {*r}, ""});
        play(t, m2);
      }
    };
    GameState s(b, 1, 1, Variant::Crossing);
    s.apply(Move{Player::Maker, {first}, ""});
    play(s, BridgitMaker(2, first));
    CHECK(games > 0);
  }
}

TEST_CASE("Bridg-it: random Breakers, n = 3..5") {
  std::mt19937_64 rng(17);
  for (int n = 3; n <= 5; ++n) {
    Board b = make_board(n + 1, n);
    auto all = edge_set(b);
    for (int g = 0; g < 60; ++g) {
      EdgeId first = all[rng() % all.size()];
      BridgitMaker mk(n, first);
      GameState s(b, 1, 1, Variant::Crossing);
      s.apply(Move{Player::Maker, {first}, ""});
      while (s.verdict() == Verdict::Ongoing) {
        std::vector<EdgeId> open;
        for (const EdgeId& e : all)
          if (s.unclaimed(e)) open.push_back(e);
        EdgeId e = open[rng() % open.size()];
        s.apply(Move{Player::Breaker, {e}, ""});
        if (s.verdict() != Verdict::Ongoing) break;
        auto r = mk.respond(e);
        REQUIRE(r);
        s.apply(Move{Player::Maker, {*r}, ""});
        REQUIRE(mk.position().invariant_holds());
      }
      REQUIRE(s.verdict() == Verdict::MakerWin);
    }
  }
}

TEST_CASE("vertex separation") {
  SUBCASE("isolated vertex") {
    Multigraph g = graph(2, {});
    Multigraph h = vertex_separation(g, 0, {});
    CHECK(h.vertex_count == 3);
    CHECK(h.multiplicity(0, 2) == 1);
    CHECK(h.edges.size() == 1);
  }
  SUBCASE("double edge splits either way") {
    Multigraph g = graph(2, {{0, 1}, {0, 1}});
    for (int s0 = 1; s0 <= 2; ++s0)
      for (int s1 = 1; s1 <= 2; ++s1) {
        Multigraph h = vertex_separation(g, 0, {{{0, s0}, {1, s1}}, {}});
        CHECK(h.multiplicity(1, 0) + h.multiplicity(1, 2) == 2);
        CHECK(h.multiplicity(0, 2) == 1);
      }
  }
  SUBCASE("one loop has two outcomes up to symmetry") {
    Multigraph g = graph(1, {{0, 0}});
    Multigraph joined = vertex_separation(g, 0, {{}, {{0, 0}}});
    CHECK(joined.multiplicity(0, 1) == 2);
    Multigraph kept = vertex_separation(g, 0, {{}, {{0, 1}}});
    CHECK(kept.multiplicity(0, 1) == 1);
    CHECK(kept.multiplicity(0, 0) == 1);
    for (int fate = 0; fate <= 2; ++fate) {
      Multigraph h = vertex_separation(g, 0, {{}, {{0, fate}}});
      CHECK(h.multiplicity(0, 1) + h.multiplicity(0, 0) + h.multiplicity(1, 1) == g.multiplicity(0, 0) + 1);
    }
  }
  SUBCASE("missing assignment is an error") {
    CHECK_THROWS(vertex_separation(graph(2, {{0, 1}}), 0, {}));
    CHECK_THROWS(vertex_separation(graph(1, {{0, 0}}), 0, {}));
  }
  SUBCASE("contracting the new edge recovers the graph") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 300; ++t) {
      Multigraph g = random_graph(rng, 5, 8, true);
      int v = int(rng() % g.vertex_count);
      SeparationAssignment asg;
      for (std::size_t e = 0; e < g.edges.size(); ++e) {
        auto [a, b] = g.edges[e];
        if (a == v && b == v) asg.loops.push_back({int(e), int(rng() % 3)});
        else if (a == v || b == v) asg.incidences.push_back({int(e), 1 + int(rng() % 2)});
      }
      Multigraph h = vertex_separation(g, v, asg);
      int v2 = g.vertex_count;
      for (int u = 0; u < g.vertex_count; ++u)
        if (u != v) REQUIRE(h.multiplicity(u, v) + h.multiplicity(u, v2) == g.multiplicity(u, v));
      REQUIRE(h.multiplicity(v, v2) + h.multiplicity(v, v) + h.multiplicity(v2, v2) == g.multiplicity(v, v) + 1);
      Multigraph back = edge_contraction(h, int(h.edges.size()) - 1);
      REQUIRE(back.vertex_count == g.vertex_count);
      for (int a = 0; a < g.vertex_count; ++a)
        for (int b = a; b < g.vertex_count; ++b) REQUIRE(back.multiplicity(a, b) == g.multiplicity(a, b));
    }
  }
}

TEST_CASE("monotone_reduce examples") {
  GameTriple path{graph(3, {{0, 1}, {1, 2}}), {0}, {2}};
  SUBCASE("isolated vertex deletion keeps the value") {
    GameTriple t{graph(4, {{0, 1}, {1, 2}, {0, 1}, {1, 2}}), {0}, {2}};
    GameTriple r = monotone_reduce(t, {{ReduceOp::DeleteVertex, 3, {}, 1}});
    CHECK(r.graph.vertex_count == 3);
    for (int p = 1; p <= 2; ++p) CHECK(shannon_maker_wins(r, p, 1, true) == shannon_maker_wins(t, p, 1, true));
  }
  SUBCASE("deleting every edge gives a Breaker leaf") {
    GameTriple r = monotone_reduce(path, {{ReduceOp::DeleteEdge, 1, {}, 1}, {ReduceOp::DeleteEdge, 0, {}, 1}});
    CHECK(r.graph.edges.empty());
    CHECK_FALSE(shannon_maker_wins(r, 5, 1));
  }
  SUBCASE("one ply of the game tree") {
    // Contract p=2 edges, then delete q=1: the path collapses onto a
    // single vertex carrying both terminals.
    GameTriple r = monotone_reduce(path, {{ReduceOp::Contract, 1, {}, 1}, {ReduceOp::Contract, 0, {}, 1}});
    CHECK(r.graph.vertex_count == 1);
    CHECK(r.A == r.B);
    CHECK(shannon_maker_wins(r, 1, 1, true));
    GameTriple cut = monotone_reduce(path, {{ReduceOp::Contract, 0, {}, 1}, {ReduceOp::DeleteEdge, 0, {}, 1}});
    CHECK_FALSE(shannon_maker_wins(cut, 1, 1, true));
  }
  CHECK_THROWS(monotone_reduce(path, {{ReduceOp::DeleteEdge, 7, {}, 1}}));
}

TEST_CASE("monotonicity: reductions never help Maker") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 250; ++t) {
    Multigraph g = random_graph(rng, 5, 7, false);
    GameTriple base{g, {0}, {g.vertex_count - 1}};
    GameTriple red = base;
    int steps = 1 + int(rng() % 3);
    for (int s = 0; s < steps; ++s) {
      int kind = int(rng() % 3);
      if (kind == 0 && !red.graph.edges.empty()) {
        red = monotone_reduce(red, {{ReduceOp::DeleteEdge, int(rng() % red.graph.edges.size()), {}, 1}});
      } else if (kind == 1 && red.graph.vertex_count > 2) {
        int v = int(rng() % red.graph.vertex_count);
        if (std::count(red.A.begin(), red.A.end(), v) || std::count(red.B.begin(), red.B.end(), v)) continue;
        red = monotone_reduce(red, {{ReduceOp::DeleteVertex, v, {}, 1}});
      } else if (red.graph.edges.size() < 9) {
        int v = int(rng() % red.graph.vertex_count);
        SeparationAssignment asg;
        for (std::size_t e = 0; e < red.graph.edges.size(); ++e) {
          auto [a, b] = red.graph.edges[e];
          if (a == v && b == v) asg.loops.push_back({int(e), 1 + int(rng() % 2)});
          else if (a == v || b == v) asg.incidences.push_back({int(e), 1 + int(rng() % 2)});
        }
        red = monotone_reduce(red, {{ReduceOp::Separate, v, asg, 1 + int(rng() % 2)}});
      }
    }
    for (auto [p, q] : {std::pair{1, 1}, {2, 1}, {1, 2}})
      for (bool bf : {false, true})
        if (shannon_maker_wins(red, p, q, bf)) REQUIRE(shannon_maker_wins(base, p, q, bf));
  }
}

TEST_CASE("Lehman: second-player Maker wins iff a 2-positive subgraph spans a and b") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 300; ++t) {
    Multigraph g = random_graph(rng, 5, 9, false);
    int a = 0, b = g.vertex_count - 1;
    bool expect = false;
    // Every vertex subset containing a and b, with its induced edges.
    for (int mask = 0; mask < (1 << g.vertex_count) && !expect; ++mask) {
      if (!(mask >> a & 1) || !(mask >> b & 1)) continue;
      std::vector<int> map(g.vertex_count, -1);
      int nv = 0;
      for (int v = 0; v < g.vertex_count; ++v)
        if (mask >> v & 1) map[v] = nv++;
      Multigraph h;
      h.vertex_count = nv;
      for (auto [x, y] : g.edges)
        if (map[x] >= 0 && map[y] >= 0) h.add_edge(map[x], map[y]);
      expect = nw_k_positive(h, 2);
    }
    REQUIRE(shannon_maker_wins(GameTriple{g, {a}, {b}}, 1, 1, true) == expect);
  }
}
