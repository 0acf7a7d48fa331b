#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "crossing/game.hpp"
#include "crossing/lattice.hpp"
#include "crossing/strips.hpp"

namespace crossing {

struct SolverOptions {
  int edge_limit = 26;
  int table_bits = 20;   // transposition table holds 2^table_bits entries
  bool symmetry = true;  // fold horizontal and vertical flips into the key
  std::uint64_t node_limit = 0;  // 0 = unlimited
};

// A Crossing-game position at a turn boundary.
struct Position {
  Board board;
  int p = 1;
  int q = 1;
  std::vector<EdgeId> blue;
  std::vector<EdgeId> red;
  Player to_move = Player::Maker;
  // Edges left in the current turn; 0 means a full quota.
  int left = 0;
};

struct SolveResult {
  Player winner = Player::Maker;
  std::vector<Move> pv;  // principal variation, one entry per turn
  std::uint64_t nodes = 0;
  std::uint64_t table_hits = 0;
};

// Exact winner of the (p,q) crossing game under optimal play. Throws
// LimitExceeded when the board has more than edge_limit edges or the node
// limit is hit.
SolveResult solve(const Board& board, int p, int q, Player first, const SolverOptions& opt = {});
SolveResult solve_position(const Position& pos, const SolverOptions& opt = {});

// {"winner","pv":[{"player","edges"}...],"nodes","hits"}
nlohmann::json solve_json(const SolveResult& r);

// Lengths of all self-avoiding left-right crossing paths that meet the left
// and right columns only at their ends, in discovery order.
std::vector<int> enumerate_crossing_paths(const Board& board, std::uint64_t path_limit = 20'000'000);
std::map<int, std::uint64_t> path_histogram(const std::vector<int>& lengths);
// {"length":count}
nlohmann::json histogram_json(const std::map<int, std::uint64_t>& h);

struct EsResult {
  double sum = 0;        // Σ (1+q)^(-ℓ/p)
  std::string exact;     // exact value as "a/b" when available, else empty
  bool passes = false;   // sum < 1/(1+q)
  std::uint64_t paths = 0;
};

// Biased Erdős–Selfridge criterion. Exact rational arithmetic when (1+q) is
// a perfect p-th power, else doubles with a 1e-12 margin; equality never
// passes.
EsResult erdos_selfridge(const Board& board, int p, int q, std::uint64_t path_limit = 20'000'000);
nlohmann::json es_json(const EsResult& r);

// V's local strategy backed by the solver: each call solves the strip
// position with V to move and plays the first turn of the principal
// variation. `maker_quota` is H's per-turn quota inside the strip.
std::unique_ptr<LocalStrategy> make_solver_local(const Board& local, int maker_quota, SolverOptions opt = {});

}  // namespace crossing
