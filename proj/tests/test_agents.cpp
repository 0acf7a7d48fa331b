#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "crossing/agents.hpp"
#include "crossing/harness.hpp"
#include "crossing/record.hpp"
#include "oracles.hpp"

using namespace crossing;

namespace {

// Splits edges into maximal connected components.
std::vector<std::vector<EdgeId>> components(const std::vector<EdgeId>& es) {
  std::vector<std::vector<EdgeId>> out;
  std::vector<bool> used(es.size(), false);
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (used[i]) continue;
    std::vector<EdgeId> comp{es[i]};
    used[i] = true;
    for (bool grew = true; grew;) {
      grew = false;
      for (std::size_t j = 0; j < es.size(); ++j) {
        if (used[j]) continue;
        comp.push_back(es[j]);
        if (primal_connected(comp)) {
          used[j] = true;
          grew = true;
        } else {
          comp.pop_back();
        }
      }
    }
    out.push_back(comp);
  }
  return out;
}

MatchConfig match(Board b, int p, int q, const std::string& maker, const std::string& breaker, int games) {
  MatchConfig c;
  c.board = b;
  c.p = p;
  c.q = q;
  c.maker = {Player::Maker, maker};
  c.breaker = {Player::Breaker, breaker};
  c.games = games;
  return c;
}

void check_sealed(const Board& b, const std::vector<std::vector<EdgeId>>& comps, const std::set<EdgeId>& red) {
  std::vector<EdgeId> blue;
  for (const EdgeId& e : edge_set(b))
    if (!red.count(e)) blue.push_back(e);
  for (const auto& c : comps)
    for (const EdgeId& e : c) {
      auto [a, d] = oracle::ends(e);
      REQUIRE_FALSE(oracle::on_crossing_path(b, blue, a));
      REQUIRE_FALSE(oracle::on_crossing_path(b, blue, d));
    }
}

}  // namespace

TEST_CASE("neutralize a single edge") {
  auto free_plane = neutralize({hedge(3, 2)});
  CHECK(free_plane.size() == 5);
  auto ring = oracle::boundary({hedge(3, 2)});
  for (const EdgeId& e : free_plane) CHECK(ring.count(e));

  // On the board the omitted edge is the one leading off the left side.
  Board b = make_board(4, 3);
  auto sealed = neutralize({hedge(1, 1)}, &b);
  CHECK(sealed.size() == 5);
  CHECK(std::find(sealed.begin(), sealed.end(), hedge(0, 1)) == sealed.end());

  CHECK_THROWS_AS(neutralize({}), std::invalid_argument);
  CHECK_THROWS_AS(neutralize({hedge(1, 1), hedge(4, 4)}), std::invalid_argument);
}

TEST_CASE("neutralize seals random Maker edges within 5r") {
  std::mt19937_64 rng(5);
  Board b = make_board(6, 5);
  auto all = edge_set(b);
  for (int trial = 0; trial < 300; ++trial) {
    int r = 1 + int(rng() % 3);
    std::set<EdgeId> pick;
    while (int(pick.size()) < r) pick.insert(all[rng() % all.size()]);
    auto comps = components({pick.begin(), pick.end()});
    std::set<EdgeId> red;
    std::size_t used = 0;
    for (const auto& c : comps) {
      auto n = neutralize(c, &b);
      REQUIRE(n.size() + 1 == oracle::boundary(c).size());
      used += n.size();
      red.insert(n.begin(), n.end());
    }
    REQUIRE(used <= std::size_t(5 * r));
    check_sealed(b, comps, red);
  }
}

TEST_CASE("neutralize seals larger components within 2k+3") {
  std::mt19937_64 rng(8);
  Board b = make_board(9, 7);
  auto all = edge_set(b);
  for (int trial = 0; trial < 200; ++trial) {
    int k = 1 + int(rng() % 8);
    std::vector<EdgeId> comp{all[rng() % all.size()]};
    while (int(comp.size()) < k) {
      std::vector<EdgeId> cand;
      for (const EdgeId& e : comp) {
        auto [a, c] = primal_ends(e);
        for (const Point& p : {a, c})
          for (const EdgeId& f : edges_at_vertex(p))
            if (b.contains(f) && std::find(comp.begin(), comp.end(), f) == comp.end()) cand.push_back(f);
      }
      comp.push_back(cand[rng() % cand.size()]);
    }
    if (has_lr_crossing(b, comp)) continue;
    auto n = neutralize(comp, &b);
    REQUIRE(n.size() <= std::size_t(2 * k + 3));
    check_sealed(b, {comp}, {n.begin(), n.end()});
  }
}

TEST_CASE("cheapest routes on empty boards") {
  GameState g(make_board(5, 3), 1, 1, Variant::Crossing);
  CHECK(cheapest_primal_route(g).size() == 4);
  GameState strip(make_board(2, 3, BoardKind::InfiniteStrip), 2, 1, Variant::DoubleResponse);
  CHECK(cheapest_dual_route(strip, -9, 9).size() == 3);
  CHECK_THROWS_AS(cheapest_primal_route(strip), std::invalid_argument);
}

TEST_CASE("agent compatibility") {
  auto incompatible = [](const std::string& kind, Player role, const GameState& g, nlohmann::json params = {}) {
    AgentSpec s{role, kind, 1, params.is_null() ? nlohmann::json::object() : params};
    INFO(kind, " ", to_string(role));
    CHECK_THROWS_AS(make_agent(s, g), AgentIncompatible);
  };
  GameState s43(make_board(4, 3), 1, 1, Variant::Crossing);
  GameState s53(make_board(5, 3), 1, 1, Variant::Crossing);
  GameState s43q2(make_board(4, 3), 1, 2, Variant::Crossing);
  GameState l43(make_board(4, 3, BoardKind::Lambda), 1, 1, Variant::Crossing);
  GameState dr(make_board(2, 3, BoardKind::InfiniteStrip), 2, 1, Variant::DoubleResponse);
  GameState sec_finite(make_board(4, 3), 1, 1, Variant::Secure);

  incompatible("lehman", Player::Breaker, s43);
  incompatible("lehman", Player::Maker, s53);
  incompatible("lehman", Player::Maker, s43q2);
  incompatible("lehman", Player::Maker, l43);
  incompatible("lehman", Player::Maker, s43, {{"first", {99, 2}}});
  incompatible("strips", Player::Maker, s43);
  incompatible("strips", Player::Breaker, s43q2);
  // Too short for one strip of width n+1.
  incompatible("strips", Player::Breaker, GameState(make_board(3, 3), 1, 1, Variant::Crossing));
  incompatible("secure", Player::Maker, s43);
  incompatible("secure", Player::Breaker, dr);
  incompatible("secure", Player::Maker, sec_finite);
  incompatible("mirror", Player::Breaker, s43q2);
  incompatible("mirror", Player::Breaker, s43);
  incompatible("solverOptimal", Player::Maker, GameState(make_board(8, 5), 1, 1, Variant::Crossing));
  incompatible("solverOptimal", Player::Maker, dr);
  incompatible("human", Player::Maker, s43);
  incompatible("nonsense", Player::Maker, s43);

  CHECK(make_agent({Player::Maker, "lehman", 0, {{"first", {3, 2}}}}, s43)->kind() == "lehman");
  CHECK(make_agent({Player::Maker, "secure"}, dr)->secure_state() != nullptr);
  CHECK(make_agent({Player::Breaker, "greedy"}, dr)->kind() == "greedy");
}

TEST_CASE("agent specs round trip through JSON") {
  AgentSpec s{Player::Breaker, "strips", 17, {{"engine", "general"}}};
  auto j = agent_spec_json(s);
  AgentSpec t = agent_spec_from_json(j, Player::Breaker);
  CHECK(t.kind == "strips");
  CHECK(t.seed == 17);
  CHECK(t.params == s.params);
  CHECK(agent_spec_from_json("greedy", Player::Maker).kind == "greedy");
}

TEST_CASE("divide-and-mirror Breaker") {
  CHECK_THROWS_AS(divide_and_mirror_breaker(2, 2), AgentIncompatible);
  CHECK_THROWS_AS(divide_and_mirror_breaker(0, 2), std::invalid_argument);
  for (int n : {2, 3}) {
    for (const std::string& maker : {"random", "greedy"}) {
      auto cfg = match(make_board(2 * (n + 1), n), 1, 1, maker, "mirror", 40);
      cfg.seed = std::uint64_t(n);
      MatchReport rep = run_match(cfg);
      INFO("n=", n, " maker=", maker);
      CHECK(rep.breaker_wins == 40);
      CHECK(rep.violations.empty());
    }
  }
  // p=2 with the solver plug-in on copies of S_{3x2}.
  auto cfg = match(make_board(9, 2), 2, 2, "random", "mirror", 20);
  cfg.breaker.params = {{"plugin", "solver"}};
  MatchReport rep = run_match(cfg);
  CHECK(rep.breaker_wins == 20);
  CHECK(rep.violations.empty());
}

TEST_CASE("Lehman Maker beats random and greedy Breakers") {
  for (int n = 2; n <= 4; ++n)
    for (const std::string& breaker : {"random", "greedy"}) {
      auto cfg = match(make_board(n + 1, n), 1, 1, "lehman", breaker, 40);
      MatchReport rep = run_match(cfg);
      INFO("n=", n, " breaker=", breaker);
      CHECK(rep.maker_wins == 40);
    }
  // Shorter boards embed the Bridg-it board.
  MatchReport rep = run_match(match(make_board(3, 4), 1, 1, "lehman", "random", 20));
  CHECK(rep.maker_wins == 20);
}

TEST_CASE("solver-optimal agents play perfectly on small boards") {
  CHECK(run_match(match(make_board(3, 2), 1, 1, "solverOptimal", "random", 10)).maker_wins == 10);
  CHECK(run_match(match(make_board(4, 2), 1, 1, "greedy", "solverOptimal", 10)).breaker_wins == 10);
}

TEST_CASE("secure Maker holds the double-response game") {
  for (int q = 1; q <= 2; ++q)
    for (const std::string& breaker : {"random", "greedy"}) {
      auto cfg = match(make_board(2, q + 1, BoardKind::InfiniteStrip), 2 * q, q, "secure", breaker, 3);
      cfg.variant = Variant::DoubleResponse;
      cfg.turn_cap = 120;
      MatchReport rep = run_match(cfg);
      INFO("q=", q, " breaker=", breaker);
      CHECK(rep.violations.empty());
      CHECK(rep.breaker_wins == 0);
      CHECK(rep.maker_wins == 3);
    }
}

TEST_CASE("strips Breaker beats random Maker at m0") {
  auto cfg = match(make_board(3075, 2), 1, 1, "random", "strips", 2);
  MatchReport rep = run_match(cfg);
  CHECK(rep.breaker_wins == 2);
  CHECK(rep.violations.empty());
}

TEST_CASE("match records are deterministic and replay") {
  auto cfg = match(make_board(5, 3), 1, 1, "random", "greedy", 12);
  cfg.seed = 99;
  std::ostringstream a, b, c;
  run_match(cfg, &a);
  run_match(cfg, &b);
  CHECK(a.str() == b.str());
  cfg.seed = 100;
  run_match(cfg, &c);
  CHECK(a.str() != c.str());

  std::istringstream lines(a.str());
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    auto rec = nlohmann::json::parse(line);
    GameState g = replay_record(rec);
    CHECK(to_string(g.verdict()) == rec["result"].get<std::string>());
    CHECK(rec["game"] == n);
    ++n;
  }
  CHECK(n == 12);

  CHECK(game_seed(1, 0, Player::Maker) == game_seed(1, 0, Player::Maker));
  CHECK(game_seed(1, 0, Player::Maker) != game_seed(1, 0, Player::Breaker));
  CHECK(game_seed(1, 0, Player::Maker) != game_seed(1, 1, Player::Maker));
}

TEST_CASE("match report summary") {
  MatchReport rep = run_match(match(make_board(3, 2), 1, 1, "random", "random", 6));
  auto j = rep.summary_json();
  CHECK(j["games"] == 6);
  CHECK(j["makerWins"].get<int>() + j["breakerWins"].get<int>() == 6);
  CHECK(j["violations"].empty());
  auto bad = match(make_board(3, 2), 1, 1, "random", "random", -1);
  CHECK_THROWS_AS(run_match(bad), std::invalid_argument);
}
