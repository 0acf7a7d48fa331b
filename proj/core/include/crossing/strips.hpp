#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "crossing/game.hpp"
#include "crossing/lattice.hpp"
#include "crossing/switching.hpp"

namespace crossing {

using BigInt = boost::multiprecision::cpp_int;

// (n+1)((6q-2)^T + 2q - 1) with T = n^2 + (n-1)^2.
BigInt m0(int n, int q);
int strip_horizon(int n);  // T = n^2 + (n-1)^2

class OutOfNeutralStrips : public std::runtime_error {
 public:
  explicit OutOfNeutralStrips(const std::string& what) : std::runtime_error(what) {}
};

// Strips are consecutive blocks of `width` columns of the big board; strip i
// covers x in [i*width+1, (i+1)*width] and is played as the local board
// S_{width×n}. Edges joining two strips are ignored.
struct StripGeometry {
  int n = 2;
  int width = 3;
  int count = 0;

  // Strip index and local edge of a global edge, or nullopt if the edge
  // lies between strips or beyond the last one.
  std::optional<std::pair<int, EdgeId>> locate(const EdgeId& global) const;
  EdgeId to_global(int strip, const EdgeId& local) const;
  Board local_board() const { return make_board(width, n, BoardKind::S); }
};

using ClaimLookup = std::function<Claim(const EdgeId&)>;

// V's strategy inside one strip. Edges are in local coordinates.
class LocalStrategy {
 public:
  virtual ~LocalStrategy() = default;
  // Records an H edge inside the strip.
  virtual void absorb(const EdgeId& maker_edge) = 0;
  // V's next `count` distinct unclaimed local edges.
  virtual std::vector<EdgeId> play(int count, const ClaimLookup& claim) = 0;
};

using LocalFactory = std::function<std::unique_ptr<LocalStrategy>()>;

// Map between a strip's dual and the virtual Bridg-it board: local edge
// (U,V) -> (V+1, U-1). It is an involution and turns red top-bottom paths
// in the strip into left-right paths on the virtual board.
EdgeId strip_to_virtual(const EdgeId& local);

// The Bridg-it strategy on the strip's dual; first edge is the least edge
// of the virtual board.
std::unique_ptr<LocalStrategy> make_bridgit_local(int n);

// ----- the (2q-1, q) ledger -----

enum class StripStatusKind { Valid, Neutral, Invalid };

struct StripStatus {
  StripStatusKind kind = StripStatusKind::Neutral;
  int k = 0;
  int pending = 0;  // unanswered H hits, Neutral only
  friend bool operator==(const StripStatus&, const StripStatus&) = default;
};

std::string to_string(const StripStatus& s);

enum class PhaseResult { Continue, Advance, Victory };
std::string to_string(PhaseResult r);

// Breaker's strategy for the (2q-1, q) game on S_{m×n}. Strips have width
// n+1 and each runs the Bridg-it strategy on its dual.
class StripLedger {
 public:
  StripLedger(int m, int n, int q);
  StripLedger(int m, int n, int q, LocalFactory factory);

  const StripGeometry& geometry() const { return geom_; }
  int phase() const { return phase_; }
  int horizon() const { return T_; }
  int q() const { return q_; }
  const std::vector<StripStatus>& statuses() const { return status_; }
  // R = 2 * #Valid(k+1) + #Neutral(k+1) for the current phase k.
  long potential() const { return R_; }
  long rounds_in_phase() const { return rounds_; }
  BigInt threshold() const;

  // V's q edges (global coordinates), one per chosen strip.
  std::vector<EdgeId> breaker_turn(const ClaimLookup& claim);
  // H's edges (global coordinates).
  void absorb_maker_edges(const std::vector<EdgeId>& edges);
  // To be called after each full round; may advance the phase.
  PhaseResult phase_check(const ClaimLookup& claim);

  nlohmann::json snapshot_json() const;
  // Common trace format shared with the generic engine.
  nlohmann::json trace_json() const;

 private:
  long recompute_potential() const;
  void check_potential(long before, long after, long lower, const char* what) const;

  StripGeometry geom_;
  int q_;
  int T_;
  int phase_ = 0;
  long R_ = 0;
  long rounds_ = 0;
  std::vector<StripStatus> status_;
  std::vector<std::unique_ptr<LocalStrategy>> local_;
  LocalFactory factory_;
  std::vector<int> last_played_;  // only V's edges can complete a crossing
};

// ----- generic strip engine -----

struct GeneralStripParams {
  int n = 2;
  int width = 3;  // local board S_{width×n}
  int p = 1;      // H edges a strip absorbs before turning invalid, minus one
  int q = 1;      // V edges per strip visit
  int l = 1;      // strips visited per V turn
  int T = 5;      // local horizon
};

// Strips needed: (s(p+1))^T + l(p+1) - 1 with s = l(p+q+1) - 1.
BigInt general_strip_count(int p, int q, int l, int T);

struct GeneralStatus {
  bool invalid = false;
  int k = 0;
  int j = 0;
  friend bool operator==(const GeneralStatus&, const GeneralStatus&) = default;
};

// Breaker's strategy for the (l(p+1)-1, lq) game. Statuses are (k,j):
// k local visits by V, and the strip survives j more H edges.
class GeneralStripEngine {
 public:
  GeneralStripEngine(int m, GeneralStripParams params, LocalFactory factory);

  const StripGeometry& geometry() const { return geom_; }
  const GeneralStripParams& params() const { return prm_; }
  int phase() const { return phase_; }
  const std::vector<GeneralStatus>& statuses() const { return status_; }
  long potential() const { return R_; }
  BigInt threshold() const;

  std::vector<EdgeId> breaker_turn(const ClaimLookup& claim);
  void absorb_maker_edges(const std::vector<EdgeId>& edges);
  PhaseResult phase_check(const ClaimLookup& claim);
  nlohmann::json trace_json() const;

 private:
  long recompute_potential() const;

  StripGeometry geom_;
  GeneralStripParams prm_;
  int phase_ = 0;
  long R_ = 0;
  long rounds_ = 0;
  std::vector<GeneralStatus> status_;
  std::vector<std::unique_ptr<LocalStrategy>> local_;
  LocalFactory factory_;
  std::vector<int> last_played_;  // only V's edges can complete a crossing
};

}  // namespace crossing
