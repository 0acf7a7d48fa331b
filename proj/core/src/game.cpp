#include "crossing/game.hpp"

#include <algorithm>
#include <set>

namespace crossing {

std::string to_string(Claim c) {
  switch (c) {
    case Claim::Unclaimed: return "Unclaimed";
    case Claim::Blue: return "Blue";
    case Claim::Red: return "Red";
    case Claim::BlueDouble: return "BlueDouble";
  }
  return "?";
}

std::string to_string(Player p) { return p == Player::Maker ? "Maker" : "Breaker"; }

std::string to_string(Variant v) {
  switch (v) {
    case Variant::Crossing: return "crossing";
    case Variant::DoubleResponse: return "double-response";
    case Variant::Secure: return "secure";
    case Variant::Switching: return "switching";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Ongoing: return "Ongoing";
    case Verdict::MakerWin: return "MakerWin";
    case Verdict::BreakerWin: return "BreakerWin";
  }
  return "?";
}

Player player_from_string(const std::string& s) {
  if (s == "Maker" || s == "maker" || s == "H") return Player::Maker;
  if (s == "Breaker" || s == "breaker" || s == "V") return Player::Breaker;
  throw std::invalid_argument("unknown player: " + s);
}

Variant variant_from_string(const std::string& s) {
  if (s == "crossing") return Variant::Crossing;
  if (s == "double-response" || s == "doubleResponse" || s == "double") return Variant::DoubleResponse;
  if (s == "secure") return Variant::Secure;
  if (s == "switching") return Variant::Switching;
  throw std::invalid_argument("unknown variant: " + s);
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "Ongoing") return Verdict::Ongoing;
  if (s == "MakerWin") return Verdict::MakerWin;
  if (s == "BreakerWin") return Verdict::BreakerWin;
  throw std::invalid_argument("unknown verdict: " + s);
}

std::string to_string(GameErrorCode c) {
  switch (c) {
    case GameErrorCode::IllegalEdgeCount: return "IllegalEdgeCount";
    case GameErrorCode::EdgeAlreadyClaimed: return "EdgeAlreadyClaimed";
    case GameErrorCode::SecureRestrictionViolated: return "SecureRestrictionViolated";
    case GameErrorCode::GameOver: return "GameOver";
    case GameErrorCode::EdgeOffBoard: return "EdgeOffBoard";
    case GameErrorCode::NotYourTurn: return "NotYourTurn";
    case GameErrorCode::SuperfluousEdge: return "SuperfluousEdge";
    case GameErrorCode::DuplicateEdge: return "DuplicateEdge";
  }
  return "?";
}

GameError::GameError(GameErrorCode code, const std::string& detail, char restriction)
    : std::runtime_error(to_string(code) + (restriction ? std::string("{") + restriction + "}" : "") +
                         (detail.empty() ? "" : ": " + detail)),
      code_(code),
      restriction_(restriction) {}

int PointDsu::find_id(int x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

int PointDsu::find(const Point& p) {
  auto it = ids_.find(p);
  return it == ids_.end() ? -1 : find_id(it->second);
}

int PointDsu::touch(const Point& p, bool low, bool high) {
  auto [it, fresh] = ids_.try_emplace(p, int(parent_.size()));
  if (fresh) {
    parent_.push_back(it->second);
    info_.push_back({low ? 1 : 0, high ? 1 : 0});
  }
  return find_id(it->second);
}

bool PointDsu::same(const Point& a, const Point& b) {
  int ra = find(a), rb = find(b);
  return ra >= 0 && ra == rb;
}

int PointDsu::unite(int a, int b) {
  a = find_id(a);
  b = find_id(b);
  if (a == b) return a;
  parent_[b] = a;
  info_[a].low += info_[b].low;
  info_[a].high += info_[b].high;
  return a;
}

GameState::GameState(Board board, int p, int q, Variant variant, std::optional<Player> first)
    : board_(board), p_(p), q_(q), variant_(variant) {
  if (p < 1 || q < 1) throw std::invalid_argument("p and q must be positive");
  make_board(board.m, board.n, board.kind);
  bool infinite_ok = variant == Variant::DoubleResponse || variant == Variant::Secure;
  if (!board.finite() && !infinite_ok)
    throw std::invalid_argument(to_string(variant) + " games need a finite board");
  turn_ = (variant == Variant::Crossing || variant == Variant::Switching) ? Player::Maker : Player::Breaker;
  if (first) turn_ = *first;
  first_ = turn_;
}

Claim GameState::claim(const EdgeId& e) const {
  auto it = claims_.find(e);
  return it == claims_.end() ? Claim::Unclaimed : it->second;
}

std::size_t GameState::unclaimed_count() const { return board_.edge_count() - claimed_count_; }

std::vector<EdgeId> GameState::edges_with(Claim c) const {
  std::vector<EdgeId> out;
  for (auto& [e, cl] : claims_)
    if (cl == c) out.push_back(e);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<EdgeId> GameState::blue_edges() const {
  std::vector<EdgeId> out;
  for (auto& [e, cl] : claims_)
    if (cl == Claim::Blue || cl == Claim::BlueDouble) out.push_back(e);
  std::sort(out.begin(), out.end());
  return out;
}

bool GameState::counts_for_dual(const EdgeId& e) const {
  // The outer vertical columns of a Lambda board never matter for
  // left-right crossings, so their duals are left out of the red graph.
  if (board_.kind == BoardKind::Lambda && e.vertical()) return e.u != 2 && e.u != 2 * board_.m;
  return true;
}

GameState::DualView GameState::dual_view(const EdgeId& e) const {
  auto [a, b] = dual_ends(e);
  int top = 0, bottom = 0;
  int ra = red_dsu_.find(a), rb = red_dsu_.find(b);
  auto add = [&](const Point& pt, int r) {
    if (r >= 0) {
      bottom += red_dsu_.root_info(r).low;
      top += red_dsu_.root_info(r).high;
    } else {
      bottom += pt.v == board_.dual_bottom();
      top += pt.v == board_.dual_top();
    }
  };
  bool same = ra >= 0 && ra == rb;
  add(a, ra);
  if (!same) add(b, rb);
  return {ra, rb, same, top, bottom};
}

bool GameState::superfluous(const EdgeId& e) const {
  DualView d = dual_view(e);
  return d.same || d.top >= 2 || d.bottom >= 2;
}

char GameState::secure_restriction(const EdgeId& e) const {
  DualView d = dual_view(e);
  if (d.same || d.top >= 2 || d.bottom >= 2) return 'a';
  if (d.top >= 1 && d.bottom >= 1) return 'b';
  if (floating_path_edges_.count(e) && (d.top >= 1 || d.bottom >= 1)) {
    // e lies on the securing path of a floating component; claiming it is
    // barred only if the component it belongs to stops floating.
    auto floating_side = [&](int r) {
      return r >= 0 && red_dsu_.root_info(r).low == 0 && red_dsu_.root_info(r).high == 0;
    };
    if (floating_side(d.root1) || floating_side(d.root2)) return 'c';
  }
  return 0;
}

void GameState::validate(const Move& move) const {
  if (verdict_ != Verdict::Ongoing) throw GameError(GameErrorCode::GameOver, "");
  if (move.player != turn_) throw GameError(GameErrorCode::NotYourTurn, to_string(move.player));
  std::set<EdgeId> seen;
  for (const EdgeId& e : move.edges) {
    if (!e.valid() || !board_.contains(e)) throw GameError(GameErrorCode::EdgeOffBoard, to_string(e));
    if (!seen.insert(e).second) throw GameError(GameErrorCode::DuplicateEdge, to_string(e));
  }
  std::size_t k = move.edges.size();
  switch (variant_) {
    case Variant::Crossing:
    case Variant::Switching: {
      std::size_t quota = move.player == Player::Maker ? p_ : q_;
      quota = std::min(quota, unclaimed_count());
      for (const EdgeId& e : move.edges)
        if (claim(e) != Claim::Unclaimed) throw GameError(GameErrorCode::EdgeAlreadyClaimed, to_string(e));
      if (k > quota || k == 0) throw GameError(GameErrorCode::IllegalEdgeCount, std::to_string(k));
      if (k < quota) {
        // A short move is accepted only if it wins on the spot.
        GameState probe(*this);
        for (const EdgeId& e : move.edges) {
          if (move.player == Player::Maker)
            probe.add_blue(e);
          else
            probe.add_red(e);
        }
        if (probe.verdict_ == Verdict::Ongoing)
          throw GameError(GameErrorCode::IllegalEdgeCount, std::to_string(k) + " < " + std::to_string(quota));
      }
      break;
    }
    case Variant::DoubleResponse: {
      if (move.player == Player::Breaker) {
        if (k < 1 || k > std::size_t(q_)) throw GameError(GameErrorCode::IllegalEdgeCount, std::to_string(k));
        GameState probe(*this);
        for (const EdgeId& e : move.edges) {
          if (claim(e) != Claim::Unclaimed) throw GameError(GameErrorCode::EdgeAlreadyClaimed, to_string(e));
          if (probe.superfluous(e)) throw GameError(GameErrorCode::SuperfluousEdge, to_string(e));
          probe.add_red(e);
        }
      } else {
        std::size_t need = std::size_t(owed_);
        if (board_.finite()) need = std::min(need, unclaimed_count());
        if (k != need) throw GameError(GameErrorCode::IllegalEdgeCount, std::to_string(k) + " != " + std::to_string(need));
        for (const EdgeId& e : move.edges)
          if (claim(e) != Claim::Unclaimed) throw GameError(GameErrorCode::EdgeAlreadyClaimed, to_string(e));
      }
      break;
    }
    case Variant::Secure: {
      if (move.player == Player::Breaker) {
        if (k != 1) throw GameError(GameErrorCode::IllegalEdgeCount, std::to_string(k));
        const EdgeId& e = move.edges[0];
        if (claim(e) == Claim::Red) throw GameError(GameErrorCode::EdgeAlreadyClaimed, to_string(e));
        if (char r = secure_restriction(e)) throw GameError(GameErrorCode::SecureRestrictionViolated, to_string(e), r);
      } else {
        if (k != std::size_t(owed_))
          throw GameError(GameErrorCode::IllegalEdgeCount, std::to_string(k) + " != " + std::to_string(owed_));
        for (const EdgeId& e : move.edges)
          if (claim(e) == Claim::Red) throw GameError(GameErrorCode::EdgeAlreadyClaimed, to_string(e));
      }
      break;
    }
  }
}

void GameState::set_claim(const EdgeId& e, Claim c) {
  auto it = claims_.find(e);
  bool was_claimed = it != claims_.end();
  if (!was_claimed) ++claimed_count_;
  claims_[e] = c;
}

void GameState::add_red(const EdgeId& e) {
  set_claim(e, Claim::Red);
  if (!counts_for_dual(e)) return;
  auto [a, b] = dual_ends(e);
  int ra = red_dsu_.touch(a, a.v == board_.dual_bottom(), a.v == board_.dual_top());
  int rb = red_dsu_.touch(b, b.v == board_.dual_bottom(), b.v == board_.dual_top());
  int r = red_dsu_.unite(ra, rb);
  auto& info = red_dsu_.root_info(r);
  if (info.low > 0 && info.high > 0) verdict_ = Verdict::BreakerWin;
}

void GameState::add_blue(const EdgeId& e) {
  set_claim(e, Claim::Blue);
  if (variant_ != Variant::Crossing && variant_ != Variant::Switching) return;
  auto [a, b] = primal_ends(e);
  int ra = blue_dsu_.touch(a, low_col(a), high_col(a));
  int rb = blue_dsu_.touch(b, low_col(b), high_col(b));
  int r = blue_dsu_.unite(ra, rb);
  auto& info = blue_dsu_.root_info(r);
  if (info.low > 0 && info.high > 0) verdict_ = Verdict::MakerWin;
}

void GameState::apply(const Move& move) {
  validate(move);
  if (move.player == Player::Breaker) {
    int broken = 0;
    for (const EdgeId& e : move.edges) {
      Claim c = claim(e);
      broken += c == Claim::Blue ? 1 : c == Claim::BlueDouble ? 2 : 0;
      add_red(e);
    }
    if (variant_ == Variant::DoubleResponse) owed_ = 2 * int(move.edges.size());
    if (variant_ == Variant::Secure) owed_ = broken + 2;
  } else {
    for (const EdgeId& e : move.edges) {
      Claim c = claim(e);
      if (c == Claim::Unclaimed)
        add_blue(e);
      else
        set_claim(e, Claim::BlueDouble);
    }
    owed_ = 0;
  }
  history_.push_back(move);
  turn_ = other(turn_);
  if (verdict_ == Verdict::Ongoing && board_.finite() && unclaimed_count() == 0 &&
      (variant_ == Variant::Crossing || variant_ == Variant::Switching)) {
    // Unreachable by duality on S boards; kept as a guard for Lambda.
    verdict_ = has_lr_crossing(board_, blue_edges()) ? Verdict::MakerWin : Verdict::BreakerWin;
  }
}

GameState apply_move(const GameState& state, const Move& move) {
  GameState next(state);
  next.apply(move);
  return next;
}

Verdict winner(const GameState& state) { return state.verdict(); }

char check_secure_restrictions(const GameState& state, const EdgeId& e) { return state.secure_restriction(e); }

bool is_superfluous(const GameState& state, const EdgeId& e) { return state.superfluous(e); }

GameState replay(const Board& board, int p, int q, Variant variant, const std::vector<Move>& moves) {
  GameState s(board, p, q, variant);
  for (const Move& m : moves) s.apply(m);
  return s;
}

}  // namespace crossing
