#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "crossing/game.hpp"
#include "crossing/secure.hpp"
#include "crossing/strips.hpp"

namespace crossing {

class AgentIncompatible : public std::invalid_argument {
 public:
  explicit AgentIncompatible(const std::string& what) : std::invalid_argument(what) {}
};

// kind: lehman, random, greedy, solverOptimal, strips, secure, mirror, human.
// params (all optional):
//   lehman: "first": [u,v]
//   random, greedy: "window": columns scanned on the infinite strip (default 20)
//   strips: "engine": "ledger" | "general"
//   mirror: "plugin": "bridgit" | "solver"
//   solverOptimal: "edgeLimit"
struct AgentSpec {
  Player role = Player::Maker;
  std::string kind = "random";
  std::uint64_t seed = 0;
  nlohmann::json params = nlohmann::json::object();
};

AgentSpec agent_spec_from_json(const nlohmann::json& j, Player role);
nlohmann::json agent_spec_json(const AgentSpec& s);

class Agent {
 public:
  virtual ~Agent() = default;
  virtual std::string kind() const = 0;
  // Edges for the coming turn of `s`, which must be this agent's turn.
  virtual std::vector<EdgeId> choose(const GameState& s) = 0;
  // Every move applied to the game, this agent's own included.
  virtual void observe(const GameState& after, const Move& m) {
    (void)after;
    (void)m;
  }
  // Certificates or ledger for traces and the service overlay; null if none.
  virtual nlohmann::json overlay() const { return nullptr; }
  // The secure-game shadow kept by the secure agent.
  virtual const SecureState* secure_state() const { return nullptr; }
};

// Builds an agent for the game `initial`; throws AgentIncompatible when the
// kind does not fit the role, variant or board.
std::unique_ptr<Agent> make_agent(const AgentSpec& spec, const GameState& initial);

// Breaker on S_{(p+1)(n+1)×n} in the (p,p) game: after Maker's first turn
// it picks a copy of S_{(n+1)×n} Maker left empty and plays only there, as
// first player. p=1 uses the Bridg-it strategy on the dual; other p need a
// plug-in (throws AgentIncompatible without one).
std::unique_ptr<Agent> divide_and_mirror_breaker(int p, int n, LocalFactory plugin = nullptr);

// Dual edges Breaker claims to neutralise a connected Maker component: all
// of its external boundary but one edge. With a board, the omitted edge is
// one off the board when possible. Throws std::invalid_argument if the
// edges are not connected.
std::vector<EdgeId> neutralize(const std::vector<EdgeId>& component, const Board* board = nullptr);

// Cheapest red top-bottom dual route (red 0, unclaimed 1, blue blocked)
// within the given column range of doubled u; returns its unclaimed edges
// in order from the bottom.
std::vector<EdgeId> cheapest_dual_route(const GameState& g, int u_lo, int u_hi);
// Cheapest blue left-right route on a finite board; unclaimed edges only.
std::vector<EdgeId> cheapest_primal_route(const GameState& g);

}  // namespace crossing
