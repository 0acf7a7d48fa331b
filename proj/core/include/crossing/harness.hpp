#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "crossing/agents.hpp"
#include "crossing/game.hpp"

namespace crossing {

struct MatchConfig {
  Variant variant = Variant::Crossing;
  Board board;
  int p = 1;
  int q = 1;
  AgentSpec maker{Player::Maker, "random"};
  AgentSpec breaker{Player::Breaker, "random"};
  int games = 1;
  std::uint64_t seed = 0;
  // Infinite-strip games stop after this many moves; Maker holds the game
  // iff no check failed on the way.
  long turn_cap = 10000;
  bool trace = false;
  std::optional<Player> first;
};

struct GameSummary {
  int index = 0;
  Verdict verdict = Verdict::Ongoing;
  long turns = 0;
  bool capped = false;  // turn cap hit or V ran out of moves
  std::vector<std::string> violations;
  nlohmann::json record;  // one JSON-lines entry
};

struct MatchReport {
  int games = 0;
  int maker_wins = 0;
  int breaker_wins = 0;
  int capped = 0;
  long turns = 0;
  std::vector<std::string> violations;  // "game i: reason"
  nlohmann::json summary_json() const;
};

// Seed of agent `role` in game `index`; a pure function of the match seed.
std::uint64_t game_seed(std::uint64_t match_seed, int index, Player role);

// Plays one game. On the response variants with a secure Maker it checks
// after every Maker turn that the position is secure, and at every Breaker
// turn start that V still needs at least n edges.
GameSummary play_game(const MatchConfig& cfg, int index);

// Plays cfg.games games in index order, streaming each record as one line
// of JSON to `records` when given.
MatchReport run_match(const MatchConfig& cfg, std::ostream* records = nullptr);

}  // namespace crossing
