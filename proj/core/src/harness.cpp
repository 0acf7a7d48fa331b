#include "crossing/harness.hpp"

#include "crossing/errors.hpp"
#include "crossing/record.hpp"
#include "crossing/secure.hpp"

namespace crossing {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t game_seed(std::uint64_t match_seed, int index, Player role) {
  return splitmix(splitmix(match_seed) ^ (std::uint64_t(index) << 1 | (role == Player::Breaker ? 1 : 0)));
}

nlohmann::json MatchReport::summary_json() const {
  return {{"games", games},         {"makerWins", maker_wins}, {"breakerWins", breaker_wins},
          {"capped", capped},       {"turns", turns},          {"violations", violations}};
}

GameSummary play_game(const MatchConfig& cfg, int index) {
  GameSummary out;
  out.index = index;
  GameState g(cfg.board, cfg.p, cfg.q, cfg.variant, cfg.first);
  AgentSpec ms = cfg.maker, bs = cfg.breaker;
  ms.role = Player::Maker;
  bs.role = Player::Breaker;
  ms.seed ^= game_seed(cfg.seed, index, Player::Maker);
  bs.seed ^= game_seed(cfg.seed, index, Player::Breaker);
  auto maker = make_agent(ms, g);
  auto breaker = make_agent(bs, g);
  bool response = cfg.variant == Variant::DoubleResponse || cfg.variant == Variant::Secure;
  bool watch = response && maker->secure_state() != nullptr;
  nlohmann::json trace = nlohmann::json::array();

  auto fail = [&](const std::string& why) { out.violations.push_back("turn " + std::to_string(out.turns) + ": " + why); };

  while (g.verdict() == Verdict::Ongoing) {
    if (!g.board().finite() && out.turns >= cfg.turn_cap) {
      out.capped = true;
      break;
    }
    Player who = g.turn();
    if (watch && who == Player::Breaker && cfg.variant == Variant::DoubleResponse) {
      int need = min_dual_break(g);
      if (need < g.board().n) fail("V needs only " + std::to_string(need) + " edges");
    }
    Agent& agent = who == Player::Maker ? *maker : *breaker;
    std::vector<EdgeId> edges;
    try {
      edges = agent.choose(g);
    } catch (const ContractViolation& ex) {
      fail(std::string(agent.kind()) + ": " + ex.what());
      break;
    }
    if (edges.empty()) {
      // V found no legal edge in its window.
      out.capped = true;
      break;
    }
    if (watch && who == Player::Maker && cfg.variant == Variant::DoubleResponse) {
      std::size_t r = g.history().back().edges.size();
      if (edges.size() > 2 * r) fail("H answered " + std::to_string(edges.size()) + " edges to " + std::to_string(r));
    }
    Move m{who, edges, ""};
    try {
      g.apply(m);
    } catch (const GameError& ex) {
      fail(agent.kind() + " played an illegal move: " + to_string(ex.code()) + " " + ex.what());
      break;
    }
    try {
      maker->observe(g, m);
      breaker->observe(g, m);
    } catch (const ContractViolation& ex) {
      fail(ex.what());
      break;
    }
    if (watch && who == Player::Maker) {
      SecureCheck chk = is_secure(*maker->secure_state());
      if (!chk.ok) fail("insecure: " + chk.reason);
    }
    if (cfg.trace) {
      nlohmann::json t{{"turn", out.turns}, {"player", to_string(who)}, {"edges", edges_json(edges)}};
      if (auto o = maker->overlay(); !o.is_null()) t["maker"] = o;
      if (auto o = breaker->overlay(); !o.is_null()) t["breaker"] = o;
      trace.push_back(std::move(t));
    }
    ++out.turns;
  }
  out.verdict = g.verdict();
  if (watch && out.verdict == Verdict::BreakerWin) fail("V completed a top-bottom crossing");

  out.record = game_record(g);
  out.record["game"] = index;
  out.record["seed"] = cfg.seed;
  out.record["maker"] = agent_spec_json(cfg.maker);
  out.record["breaker"] = agent_spec_json(cfg.breaker);
  out.record["turns"] = out.turns;
  out.record["capped"] = out.capped;
  out.record["violations"] = out.violations;
  if (cfg.trace) out.record["trace"] = std::move(trace);
  return out;
}

MatchReport run_match(const MatchConfig& cfg, std::ostream* records) {
  if (cfg.games < 0) throw std::invalid_argument("games must be non-negative");
  MatchReport rep;
  for (int i = 0; i < cfg.games; ++i) {
    GameSummary s = play_game(cfg, i);
    ++rep.games;
    rep.turns += s.turns;
    if (s.verdict == Verdict::MakerWin || (s.capped && s.violations.empty())) ++rep.maker_wins;
    if (s.verdict == Verdict::BreakerWin) ++rep.breaker_wins;
    if (s.capped) ++rep.capped;
    for (const auto& v : s.violations) rep.violations.push_back("game " + std::to_string(i) + ": " + v);
    if (records) *records << s.record.dump() << '\n';
  }
  return rep;
}

}  // namespace crossing
