#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "crossing/brackets.hpp"
#include "crossing/game.hpp"
#include "crossing/lattice.hpp"

namespace crossing {

// Vertical edge beside the end vertex of a top or bottom component that
// closes its securing arch.
struct Gate {
  EdgeId edge;
  bool top = false;
  friend bool operator==(const Gate&, const Gate&) = default;
};

using Closure = std::variant<Bracket, Gate>;

struct SecurityCertificate {
  ComponentClass cls = ComponentClass::Floating;
  std::vector<EdgeId> component;  // sorted red edges
  std::vector<EdgeId> path;       // blue path, in order from one end to the other
  Closure closure;
};

nlohmann::json certificate_json(const SecurityCertificate& c);

// Secure-game position on the infinite strip of width n together with the
// certificates H maintains.
struct SecureState {
  explicit SecureState(int n);

  GameState game;
  std::vector<SecurityCertificate> certs;
  // Fallback edges are taken at or to the right of this column (doubled u).
  int fallback_cursor = 0;

  int n() const { return game.board().n; }
  // Index of the certificate whose component contains dual vertex d, or -1.
  int owner(const Point& d) const;
};

struct SecureCheck {
  bool ok = true;
  std::string reason;
};

// Checks one certificate against the current claims; `comp` must be the
// recomputed red component it claims to secure.
SecureCheck validate_certificate(const GameState& g, const SecurityCertificate& c, const DualComponent& comp);

// Full security check: every red component is a tree with at most one top
// and one bottom vertex, certificates match components one to one, each
// certificate is valid, and path edges shared between certificates are
// doubled.
SecureCheck is_secure(const SecureState& s);

struct SecureResponse {
  std::vector<EdgeId> edges;  // H's reply, as applied
  std::string label;          // which case of the strategy fired
};

// Applies V's edge e, then H's reply, updating certificates in place.
// Throws GameError when e is illegal for V and ContractViolation when the
// strategy cannot maintain security.
SecureResponse respond_secure(SecureState& s, const EdgeId& e);

// Orders a double-response Breaker move so that replaying it edge by edge
// in the secure game never meets restriction (c).
// red_before is the red edge set before D was claimed.
std::vector<EdgeId> order_moves(const Board& board, const std::vector<EdgeId>& red_before, const std::vector<EdgeId>& d);

// Maker's double-response reply: D is replayed through the secure game and
// the new blue edges (padded with fallback edges) form the 2|D| reply. `real`
// is the double-response game with D already applied; `s` shadows it and
// keeps doubled edges that the real game does not record.
std::vector<EdgeId> double_response(SecureState& s, const GameState& real, const std::vector<EdgeId>& d);

// Least number of further V edges needed for a red top-bottom dual path
// (red edges cost 0, unclaimed 1, blue cannot be used).
int min_dual_break(const GameState& g);

}  // namespace crossing
