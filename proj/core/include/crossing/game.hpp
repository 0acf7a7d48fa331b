#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "crossing/lattice.hpp"

namespace crossing {

enum class Claim : std::uint8_t { Unclaimed, Blue, Red, BlueDouble };
enum class Player : std::uint8_t { Maker, Breaker };
enum class Variant : std::uint8_t { Crossing, DoubleResponse, Secure, Switching };
enum class Verdict : std::uint8_t { Ongoing, MakerWin, BreakerWin };

std::string to_string(Claim c);
std::string to_string(Player p);
std::string to_string(Variant v);
std::string to_string(Verdict v);
Player player_from_string(const std::string& s);
Variant variant_from_string(const std::string& s);
Verdict verdict_from_string(const std::string& s);
inline Player other(Player p) { return p == Player::Maker ? Player::Breaker : Player::Maker; }

struct Move {
  Player player = Player::Maker;
  std::vector<EdgeId> edges;
  std::string meta;
};

enum class GameErrorCode {
  IllegalEdgeCount,
  EdgeAlreadyClaimed,
  SecureRestrictionViolated,
  GameOver,
  EdgeOffBoard,
  NotYourTurn,
  SuperfluousEdge,
  DuplicateEdge,
};
std::string to_string(GameErrorCode c);

class GameError : public std::runtime_error {
 public:
  GameError(GameErrorCode code, const std::string& detail, char restriction = 0);
  GameErrorCode code() const { return code_; }
  // 'a', 'b' or 'c' for SecureRestrictionViolated, otherwise 0.
  char restriction() const { return restriction_; }

 private:
  GameErrorCode code_;
  char restriction_;
};

// Union-find over lattice points with per-class counters. Used for blue
// primal connectivity (left/right column hits) and red dual connectivity
// (top/bottom row hits).
class PointDsu {
 public:
  struct Root {
    int low = 0;   // vertices on the low boundary (left column / bottom row)
    int high = 0;  // vertices on the high boundary (right column / top row)
  };
  int find(const Point& p);
  // Touches p, registering its boundary class on first sight.
  int touch(const Point& p, bool low, bool high);
  bool same(const Point& a, const Point& b);
  // Merge and return the root.
  int unite(int a, int b);
  const Root& root_info(int r) const { return info_[r]; }
  bool contains(const Point& p) const { return ids_.count(p) != 0; }

 private:
  int find_id(int x);
  std::unordered_map<Point, int, PointHash> ids_;
  std::vector<int> parent_;
  std::vector<Root> info_;
};

class GameState {
 public:
  // `first` overrides who opens; by default Maker opens Crossing/Switching
  // and Breaker opens the response variants.
  GameState(Board board, int p, int q, Variant variant, std::optional<Player> first = std::nullopt);

  const Board& board() const { return board_; }
  int p() const { return p_; }
  int q() const { return q_; }
  Variant variant() const { return variant_; }
  Player turn() const { return turn_; }
  Player first_player() const { return first_; }
  // Edges Maker must claim on the coming turn (DoubleResponse/Secure).
  int owed() const { return owed_; }
  Verdict verdict() const { return verdict_; }
  const std::vector<Move>& history() const { return history_; }

  Claim claim(const EdgeId& e) const;
  bool unclaimed(const EdgeId& e) const { return claim(e) == Claim::Unclaimed; }
  bool blue_like(const EdgeId& e) const {
    Claim c = claim(e);
    return c == Claim::Blue || c == Claim::BlueDouble;
  }
  // Number of unclaimed edges (finite boards only).
  std::size_t unclaimed_count() const;
  // Sorted lists of edges in each claim state.
  std::vector<EdgeId> edges_with(Claim c) const;
  std::vector<EdgeId> red_edges() const { return edges_with(Claim::Red); }
  // Blue and BlueDouble edges.
  std::vector<EdgeId> blue_edges() const;
  const std::unordered_map<EdgeId, Claim, EdgeHash>& claims() const { return claims_; }

  // Applies a move in place; throws GameError and leaves the state unchanged
  // on an illegal move.
  void apply(const Move& move);

  // Edges of securing paths of floating components, maintained by the
  // secure-game strategy so restriction (c) can be refereed.
  void set_floating_path_edges(std::unordered_set<EdgeId, EdgeHash> edges) { floating_path_edges_ = std::move(edges); }
  const std::unordered_set<EdgeId, EdgeHash>& floating_path_edges() const { return floating_path_edges_; }

  // Restriction check for a prospective V edge in the secure game. Returns
  // 0 when legal, otherwise 'a', 'b' or 'c'.
  char secure_restriction(const EdgeId& e) const;
  // True iff adding e to the red duals would close a red dual cycle or arch.
  bool superfluous(const EdgeId& e) const;

 private:
  struct DualView {
    int root1, root2;
    bool same;
    int top, bottom;
  };
  DualView dual_view(const EdgeId& e) const;
  void validate(const Move& move) const;
  void set_claim(const EdgeId& e, Claim c);
  void add_red(const EdgeId& e);
  void add_blue(const EdgeId& e);
  bool low_col(const Point& p) const { return p.u == 2; }
  bool high_col(const Point& p) const { return p.u == 2 * board_.m; }
  bool counts_for_dual(const EdgeId& e) const;

  Board board_;
  int p_, q_;
  Variant variant_;
  Player turn_;
  Player first_;
  int owed_ = 0;
  Verdict verdict_ = Verdict::Ongoing;
  std::unordered_map<EdgeId, Claim, EdgeHash> claims_;
  std::size_t claimed_count_ = 0;
  std::vector<Move> history_;
  mutable PointDsu red_dsu_;
  mutable PointDsu blue_dsu_;
  std::unordered_set<EdgeId, EdgeHash> floating_path_edges_;
};

GameState apply_move(const GameState& state, const Move& move);
Verdict winner(const GameState& state);

// Returns 0 if e is a legal secure-game V claim, else 'a', 'b' or 'c'.
char check_secure_restrictions(const GameState& state, const EdgeId& e);
bool is_superfluous(const GameState& state, const EdgeId& e);

// Replays a move list from a fresh state with the same parameters.
GameState replay(const Board& board, int p, int q, Variant variant, const std::vector<Move>& moves);

}  // namespace crossing
