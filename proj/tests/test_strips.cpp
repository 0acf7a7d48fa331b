#include <doctest.h>

#include <random>

#include "crossing/errors.hpp"
#include "crossing/solver.hpp"
#include "crossing/strips.hpp"
#include "oracles.hpp"

using namespace crossing;

namespace {

std::vector<EdgeId> random_free(const GameState& s, int k, std::mt19937_64& rng) {
  std::vector<EdgeId> free;
  for (const EdgeId& e : edge_set(s.board()))
    if (s.unclaimed(e)) free.push_back(e);
  std::shuffle(free.begin(), free.end(), rng);
  if (int(free.size()) > k) free.resize(k);
  return free;
}

struct Outcome {
  Verdict verdict = Verdict::Ongoing;
  PhaseResult last = PhaseResult::Continue;
  int phases = 0;
};

// Random Maker against the ledger on S_{m×n}, checking the potential
// bookkeeping from outside after every half-round.
Outcome ledger_game(int m, int n, int q, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  GameState s(make_board(m, n), 2 * q - 1, q, Variant::Crossing);
  StripLedger ledger(m, n, q);
  auto claim = [&](const EdgeId& e) { return s.claim(e); };
  Outcome out;
  while (s.verdict() == Verdict::Ongoing) {
    auto mk = random_free(s, 2 * q - 1, rng);
    s.apply(Move{Player::Maker, mk, ""});
    long before = ledger.potential();
    ledger.absorb_maker_edges(mk);
    REQUIRE(ledger.potential() >= before - long(mk.size()));
    if (s.verdict() != Verdict::Ongoing) break;
    before = ledger.potential();
    int phase = ledger.phase();
    auto br = ledger.breaker_turn(claim);
    REQUIRE(int(br.size()) == q);
    REQUIRE(ledger.potential() == before + 2 * q);
    s.apply(Move{Player::Breaker, br, ""});
    out.last = ledger.phase_check(claim);
    if (ledger.phase() > phase) ++out.phases;
    if (out.last == PhaseResult::Victory) {
      REQUIRE(oracle::tb(s.board(), s.red_edges()));
      break;
    }
  }
  out.verdict = s.verdict();
  return out;
}

}  // namespace

TEST_CASE("m0 and strip counts") {
  CHECK(strip_horizon(2) == 5);
  CHECK(strip_horizon(3) == 13);
  CHECK(m0(2, 1) == 3075);
  CHECK(m0(2, 2) == 300009);
  CHECK(m0(3, 1) == BigInt(4) * (BigInt(67108864) + 1));
  CHECK(m0(4, 3).str().size() > 20);
  CHECK_THROWS(m0(1, 1));
  CHECK(general_strip_count(1, 1, 1, 5) == 1025);
  for (int n = 2; n <= 4; ++n) CHECK(general_strip_count(1, 1, 1, strip_horizon(n)) * (n + 1) == m0(n, 1));
  // s = l(p+q+1)-1 = 5 for p=q=1, l=2.
  CHECK(general_strip_count(1, 1, 2, 1) == 13);
}

TEST_CASE("strip geometry") {
  StripGeometry g{2, 3, 4};
  for (int i = 0; i < g.count; ++i)
    for (const EdgeId& e : edge_set(g.local_board())) {
      auto loc = g.locate(g.to_global(i, e));
      REQUIRE(loc);
      CHECK(loc->first == i);
      CHECK(loc->second == e);
    }
  CHECK_FALSE(g.locate(hedge(3, 1)));   // joins strips 0 and 1
  CHECK_FALSE(g.locate(vedge(4, 1)));   // left column of strip 1
  CHECK_FALSE(g.locate(hedge(13, 1)));  // beyond the last strip
  CHECK_FALSE(g.locate(hedge(0, 1)));
}

TEST_CASE("strip_to_virtual turns red top-bottom paths into left-right paths") {
  std::mt19937_64 rng(4);
  for (int n = 2; n <= 4; ++n) {
    Board local = make_board(n + 1, n);
    auto all = edge_set(local);
    for (const EdgeId& e : all) {
      CHECK(strip_to_virtual(strip_to_virtual(e)) == e);
      CHECK(local.contains(strip_to_virtual(e)));
    }
    for (int t = 0; t < 500; ++t) {
      std::vector<EdgeId> red, mapped;
      for (const EdgeId& e : all)
        if (rng() % 2) red.push_back(e), mapped.push_back(strip_to_virtual(e));
      REQUIRE(oracle::tb(local, red) == oracle::lr(local, mapped));
    }
  }
}

TEST_CASE("ledger transitions") {
  StripLedger ledger(3075, 2, 1);
  CHECK(ledger.geometry().count == 1025);
  CHECK(ledger.threshold() == 512);
  GameState s(make_board(3075, 2), 1, 1, Variant::Crossing, Player::Breaker);
  auto claim = [&](const EdgeId& e) { return s.claim(e); };
  auto br = ledger.breaker_turn(claim);
  REQUIRE(br.size() == 1);
  auto loc = ledger.geometry().locate(br[0]);
  REQUIRE(loc);
  CHECK(loc->first == 0);
  CHECK(ledger.statuses()[0] == StripStatus{StripStatusKind::Valid, 1, 0});
  CHECK(ledger.potential() == 2);
  s.apply(Move{Player::Breaker, br, ""});
  CHECK(ledger.phase_check(claim) == PhaseResult::Continue);

  // H hits strip 0 twice, then once more after it is gone.
  auto hit = [&](int strip) {
    for (const EdgeId& e : edge_set(ledger.geometry().local_board())) {
      EdgeId g = ledger.geometry().to_global(strip, e);
      if (s.unclaimed(g)) return g;
    }
    FAIL("strip is full");
    return EdgeId{};
  };
  EdgeId h1 = hit(0);
  ledger.absorb_maker_edges({h1});
  CHECK(ledger.statuses()[0] == StripStatus{StripStatusKind::Neutral, 1, 1});
  CHECK(ledger.potential() == 1);
  ledger.absorb_maker_edges({hit(1)});
  CHECK(ledger.statuses()[1] == StripStatus{StripStatusKind::Invalid, 0, 0});
  CHECK(ledger.potential() == 1);
  ledger.absorb_maker_edges({hedge(3, 1)});
  CHECK(ledger.potential() == 1);
  EdgeId h2 = hit(0);
  ledger.absorb_maker_edges({h2});
  CHECK(ledger.statuses()[0].kind == StripStatusKind::Invalid);
  CHECK(ledger.potential() == 0);
  ledger.absorb_maker_edges({hit(0)});
  CHECK(ledger.statuses()[0].kind == StripStatusKind::Invalid);
  CHECK(to_string(StripStatus{StripStatusKind::Neutral, 2, 1}) == "Neutral(2,1)");
  CHECK(to_string(PhaseResult::Advance) == "advance-phase");
}

TEST_CASE("ledger game at m0 = 3075 against random Makers") {
  for (std::uint64_t seed = 1; seed <= 2; ++seed) {
    Outcome o = ledger_game(3075, 2, 1, seed);
    CHECK(o.verdict == Verdict::BreakerWin);
    CHECK(o.last == PhaseResult::Victory);
  }
}

TEST_CASE("ledger on a short board runs out of neutral strips") {
  std::mt19937_64 rng(8);
  GameState s(make_board(30, 2), 1, 1, Variant::Crossing);
  StripLedger ledger(30, 2, 1);
  auto claim = [&](const EdgeId& e) { return s.claim(e); };
  bool ran_out = false;
  // Maker always hits the strip V just played in, so every strip dies.
  std::vector<EdgeId> last;
  for (int t = 0; t < 100 && !ran_out && s.verdict() == Verdict::Ongoing; ++t) {
    std::vector<EdgeId> mk;
    if (!last.empty()) {
      auto loc = ledger.geometry().locate(last[0]);
      for (const EdgeId& e : edge_set(ledger.geometry().local_board())) {
        EdgeId g = ledger.geometry().to_global(loc->first, e);
        if (s.unclaimed(g)) {
          mk = {g};
          break;
        }
      }
    }
    if (mk.empty()) mk = random_free(s, 1, rng);
    s.apply(Move{Player::Maker, mk, ""});
    ledger.absorb_maker_edges(mk);
    if (s.verdict() != Verdict::Ongoing) break;
    try {
      last = ledger.breaker_turn(claim);
    } catch (const OutOfNeutralStrips&) {
      ran_out = true;
      break;
    }
    s.apply(Move{Player::Breaker, last, ""});
    ledger.phase_check(claim);
  }
  CHECK(ran_out);
}

TEST_CASE("general engine with p=q=l=1 matches the ledger move for move") {
  for (std::uint64_t seed = 1; seed <= 2; ++seed) {
    std::mt19937_64 rng(seed);
    int m = 3075, n = 2;
    GameState s(make_board(m, n), 1, 1, Variant::Crossing);
    StripLedger ledger(m, n, 1);
    GeneralStripEngine general(m, GeneralStripParams{n, n + 1, 1, 1, 1, strip_horizon(n)}, [n] { return make_bridgit_local(n); });
    CHECK(general.threshold() == ledger.threshold());
    auto claim = [&](const EdgeId& e) { return s.claim(e); };
    long steps = 0;
    while (s.verdict() == Verdict::Ongoing) {
      auto mk = random_free(s, 1, rng);
      s.apply(Move{Player::Maker, mk, ""});
      ledger.absorb_maker_edges(mk);
      general.absorb_maker_edges(mk);
      REQUIRE(ledger.trace_json().dump() == general.trace_json().dump());
      if (s.verdict() != Verdict::Ongoing) break;
      auto a = ledger.breaker_turn(claim);
      auto b = general.breaker_turn(claim);
      REQUIRE(a == b);
      s.apply(Move{Player::Breaker, a, ""});
      auto ra = ledger.phase_check(claim), rb = general.phase_check(claim);
      REQUIRE(ra == rb);
      REQUIRE(ledger.trace_json().dump() == general.trace_json().dump());
      REQUIRE(ledger.threshold() == general.threshold());
      ++steps;
      if (ra == PhaseResult::Victory) break;
    }
    CHECK(steps > 10);
  }
}

TEST_CASE("general engine: degenerate horizon") {
  Board local = make_board(3, 1);
  GeneralStripEngine e(9, GeneralStripParams{1, 3, 1, 1, 1, 0}, [local] { return make_solver_local(local, 1); });
  CHECK(e.threshold() == 0);
  GameState s(make_board(9, 1), 1, 1, Variant::Crossing, Player::Breaker);
  auto claim = [&](const EdgeId& x) { return s.claim(x); };
  s.apply(Move{Player::Breaker, e.breaker_turn(claim), ""});
  CHECK(e.phase_check(claim) == PhaseResult::Victory);
  CHECK_THROWS(GeneralStripEngine(9, GeneralStripParams{1, 1, 1, 1, 1, 1}, [] { return make_bridgit_local(2); }));
}

TEST_CASE("general engine with solver-backed strips never runs short") {
  std::mt19937_64 rng(12);
  for (int width : {3, 4})
    for (int l : {2, 3})
      for (int p : {1, 2}) {
        int q = 1, T = 1;
        long strips = long(general_strip_count(p, q, l, T));
        int m = int(strips) * width;
        Board local = make_board(width, 1);
        GeneralStripEngine eng(m, GeneralStripParams{1, width, p, q, l, T}, [local, p] { return make_solver_local(local, p); });
        for (int game = 0; game < 5; ++game) {
          GeneralStripEngine g(m, eng.params(), [local, p] { return make_solver_local(local, p); });
          GameState s(make_board(m, 1), l * (p + 1) - 1, l * q, Variant::Crossing);
          auto claim = [&](const EdgeId& e) { return s.claim(e); };
          while (s.verdict() == Verdict::Ongoing) {
            auto mk = random_free(s, s.p(), rng);
            s.apply(Move{Player::Maker, mk, ""});
            g.absorb_maker_edges(mk);
            if (s.verdict() != Verdict::Ongoing) break;
            std::vector<EdgeId> br;
            REQUIRE_NOTHROW(br = g.breaker_turn(claim));
            REQUIRE(int(br.size()) == l * q);
            s.apply(Move{Player::Breaker, br, ""});
            if (g.phase_check(claim) == PhaseResult::Victory) break;
          }
          CHECK(s.verdict() == Verdict::BreakerWin);
        }
      }
}
