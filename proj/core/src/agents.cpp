#include "crossing/agents.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <optional>
#include <unordered_map>

#include "crossing/errors.hpp"
#include "crossing/record.hpp"
#include "crossing/solver.hpp"
#include "crossing/switching.hpp"

namespace crossing {

namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

bool dual_counts(const Board& b, const EdgeId& e) {
  return !(b.kind == BoardKind::Lambda && e.vertical() && (e.u == 2 || e.u == 2 * b.m));
}

// 0-1 BFS over lattice points. `next` lists (neighbour, edge) pairs.
template <class Next, class Dst, class Cost>
std::vector<EdgeId> route(const std::vector<Point>& sources, Next next, Dst is_target, Cost cost) {
  std::unordered_map<Point, int, PointHash> dist;
  std::unordered_map<Point, std::pair<Point, EdgeId>, PointHash> pred;
  std::deque<Point> dq;
  for (const Point& s : sources) {
    dist[s] = 0;
    dq.push_back(s);
  }
  std::optional<Point> best;
  int best_d = kInf;
  while (!dq.empty()) {
    Point p = dq.front();
    dq.pop_front();
    int d = dist[p];
    if (is_target(p) && d < best_d) {
      best_d = d;
      best = p;
    }
    for (auto& [w, e] : next(p)) {
      int c = cost(e);
      if (c < 0) continue;
      auto it = dist.find(w);
      if (it != dist.end() && it->second <= d + c) continue;
      dist[w] = d + c;
      pred[w] = {p, e};
      if (c == 0)
        dq.push_front(w);
      else
        dq.push_back(w);
    }
  }
  std::vector<EdgeId> out;
  if (!best) return out;
  for (Point p = *best; pred.count(p);) {
    auto [from, e] = pred[p];
    if (cost(e) == 1) out.push_back(e);
    p = from;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<EdgeId> free_edges(const GameState& s, int window) {
  std::vector<EdgeId> out;
  if (s.board().finite()) {
    for (const EdgeId& e : edge_set(s.board()))
      if (s.unclaimed(e)) out.push_back(e);
    return out;
  }
  for (int u = 0; u <= 2 * window; ++u)
    for (int v = 2; v <= 2 * s.board().n; ++v) {
      EdgeId e{u, v};
      if (e.valid() && s.board().contains(e) && s.unclaimed(e)) out.push_back(e);
    }
  return out;
}

std::vector<EdgeId> non_red_edges(const GameState& s, int window) {
  std::vector<EdgeId> out;
  int hi = s.board().finite() ? 2 * s.board().m : 2 * window;
  for (int u = 0; u <= hi; ++u)
    for (int v = 2; v <= 2 * s.board().n; ++v) {
      EdgeId e{u, v};
      if (e.valid() && s.board().contains(e) && s.claim(e) != Claim::Red) out.push_back(e);
    }
  return out;
}

int quota_of(const GameState& s, Player role) {
  switch (s.variant()) {
    case Variant::Crossing:
    case Variant::Switching: {
      std::size_t k = role == Player::Maker ? s.p() : s.q();
      return int(std::min(k, s.unclaimed_count()));
    }
    case Variant::DoubleResponse:
      if (role == Player::Breaker) return s.q();
      return s.board().finite() ? int(std::min<std::size_t>(s.owed(), s.unclaimed_count())) : s.owed();
    case Variant::Secure:
      return role == Player::Breaker ? 1 : s.owed();
  }
  return 0;
}

bool legal_breaker(const GameState& s, const std::vector<EdgeId>& d) {
  GameState probe(s);
  try {
    probe.apply(Move{Player::Breaker, d, ""});
  } catch (const GameError&) {
    return false;
  }
  return true;
}

class BaseAgent : public Agent {
 public:
  BaseAgent(Player role, std::uint64_t seed, int window) : role_(role), rng_(seed), window_(window) {}

 protected:
  // Uniformly random legal move; used directly by the random agent and as
  // the fallback of the others.
  std::vector<EdgeId> random_move(const GameState& s) {
    int k = quota_of(s, role_);
    if (s.variant() == Variant::Secure) {
      auto pool = non_red_edges(s, window_);
      if (role_ == Player::Breaker) {
        std::vector<EdgeId> ok;
        for (const EdgeId& e : pool)
          if (!s.secure_restriction(e)) ok.push_back(e);
        if (ok.empty()) return {};
        return {ok[rng_() % ok.size()]};
      }
      std::shuffle(pool.begin(), pool.end(), rng_);
      if (int(pool.size()) < k) throw ContractViolation("secure window too small for the owed edges");
      pool.resize(k);
      return pool;
    }
    auto pool = free_edges(s, window_);
    std::shuffle(pool.begin(), pool.end(), rng_);
    if (s.variant() == Variant::DoubleResponse && role_ == Player::Breaker) {
      int r = 1 + int(rng_() % std::uint64_t(k));
      std::vector<EdgeId> d;
      for (const EdgeId& e : pool) {
        if (int(d.size()) == r) break;
        d.push_back(e);
        if (!legal_breaker(s, d)) d.pop_back();
      }
      return d;
    }
    if (int(pool.size()) < k) {
      if (s.board().finite()) throw ContractViolation("not enough free edges");
      int u = 2 * window_ + 1;
      while (int(pool.size()) < k) {
        for (int v = 2; v <= 2 * s.board().n && int(pool.size()) < k; ++v) {
          EdgeId e{u, v};
          if (e.valid() && s.unclaimed(e)) pool.push_back(e);
        }
        ++u;
      }
    }
    pool.resize(k);
    return pool;
  }

  Player role_;
  std::mt19937_64 rng_;
  int window_;
};

class RandomAgent : public BaseAgent {
 public:
  using BaseAgent::BaseAgent;
  std::string kind() const override { return "random"; }
  std::vector<EdgeId> choose(const GameState& s) override { return random_move(s); }
};

// Follows the cheapest route of its own colour; on the response variants V
// descends along the cheapest dual route, picking its edges in random order.
class GreedyAgent : public BaseAgent {
 public:
  using BaseAgent::BaseAgent;
  std::string kind() const override { return "greedy"; }

  std::vector<EdgeId> choose(const GameState& s) override {
    int k = quota_of(s, role_);
    bool crossing = s.variant() == Variant::Crossing || s.variant() == Variant::Switching;
    if (crossing) {
      auto r = role_ == Player::Maker ? cheapest_primal_route(s) : cheapest_dual_route(s, 1, 2 * s.board().m + 1);
      std::vector<EdgeId> out;
      for (const EdgeId& e : r)
        if (int(out.size()) < k) out.push_back(e);
      if (int(out.size()) < k && out.empty()) return random_move(s);
      if (int(out.size()) < k) {
        // A short route wins outright; otherwise pad from the free edges.
        GameState probe(s);
        try {
          probe.apply(Move{role_, out, ""});
          return out;
        } catch (const GameError&) {
        }
        for (const EdgeId& e : free_edges(s, window_))
          if (int(out.size()) < k && std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
      }
      return out;
    }
    if (role_ == Player::Maker) return random_move(s);
    int hi = s.board().finite() ? 2 * s.board().m + 1 : 2 * window_ + 1;
    auto r = cheapest_dual_route(s, 1, hi);
    std::shuffle(r.begin(), r.end(), rng_);
    if (r.empty() || rng_() % 10 == 0) return random_move(s);
    std::vector<EdgeId> out;
    if (s.variant() == Variant::Secure) {
      for (const EdgeId& e : r)
        if (!s.secure_restriction(e)) return {e};
      return random_move(s);
    }
    for (const EdgeId& e : r) {
      if (int(out.size()) == k) break;
      out.push_back(e);
      if (!legal_breaker(s, out)) out.pop_back();
    }
    if (out.empty()) return random_move(s);
    return out;
  }
};

class SolverAgent : public BaseAgent {
 public:
  SolverAgent(Player role, std::uint64_t seed, SolverOptions opt) : BaseAgent(role, seed, 20), opt_(opt) {}
  std::string kind() const override { return "solverOptimal"; }

  std::vector<EdgeId> choose(const GameState& s) override {
    Position pos;
    pos.board = s.board();
    pos.p = s.p();
    pos.q = s.q();
    pos.blue = s.blue_edges();
    pos.red = s.red_edges();
    pos.to_move = role_;
    SolveResult r = solve_position(pos, opt_);
    if (!r.pv.empty() && r.pv.front().player == role_) return r.pv.front().edges;
    return random_move(s);
  }

 private:
  SolverOptions opt_;
};

// Bridg-it Maker on the bottom m-1 rows of S_{m×n}, m ≤ n+1.
class LehmanAgent : public BaseAgent {
 public:
  LehmanAgent(const Board& b, std::optional<EdgeId> first, std::uint64_t seed)
      : BaseAgent(Player::Maker, seed, 20), sub_(make_board(b.m, b.m - 1)), first_(first) {}
  std::string kind() const override { return "lehman"; }

  std::vector<EdgeId> choose(const GameState& s) override {
    std::optional<EdgeId> pick;
    if (!maker_) {
      EdgeId first = first_ ? *first_ : edge_set(sub_).front();
      if (!s.unclaimed(first)) {
        for (const EdgeId& e : edge_set(sub_))
          if (s.unclaimed(e)) {
            first = e;
            break;
          }
      }
      maker_.emplace(sub_.n, first);
      for (const EdgeId& e : early_) maker_->absorb(e);
      pick = maker_->first_edge();
    } else {
      pick = maker_->reply();
    }
    if (pick && s.unclaimed(*pick)) return {*pick};
    for (const EdgeId& e : edge_set(s.board()))
      if (s.unclaimed(e)) {
        if (sub_.contains(e)) maker_->claim_extra(e);
        return {e};
      }
    return {};
  }

  void observe(const GameState&, const Move& m) override {
    if (m.player != Player::Breaker) return;
    for (const EdgeId& e : m.edges) {
      if (!sub_.contains(e)) continue;
      if (maker_)
        maker_->absorb(e);
      else
        early_.push_back(e);
    }
  }

 private:
  Board sub_;
  std::optional<EdgeId> first_;
  std::optional<BridgitMaker> maker_;
  std::vector<EdgeId> early_;
};

class StripsAgent : public BaseAgent {
 public:
  StripsAgent(const GameState& s, bool general, std::uint64_t seed) : BaseAgent(Player::Breaker, seed, 20) {
    int m = s.board().m, n = s.board().n, q = s.q();
    if (general) {
      GeneralStripParams prm{n, n + 1, 1, 1, q, strip_horizon(n)};
      general_.emplace(m, prm, [n] { return make_bridgit_local(n); });
    } else {
      ledger_.emplace(m, n, q);
    }
  }
  std::string kind() const override { return "strips"; }

  std::vector<EdgeId> choose(const GameState& s) override {
    int k = quota_of(s, role_);
    std::vector<EdgeId> out;
    if (!exhausted_) {
      auto claim = [&](const EdgeId& e) { return s.claim(e); };
      try {
        out = ledger_ ? ledger_->breaker_turn(claim) : general_->breaker_turn(claim);
      } catch (const OutOfNeutralStrips&) {
        // Board shorter than the strategy needs: play on greedily.
        exhausted_ = true;
      }
    }
    if (exhausted_) {
      for (const EdgeId& e : cheapest_dual_route(s, 1, 2 * s.board().m + 1))
        if (int(out.size()) < k) out.push_back(e);
    }
    for (const EdgeId& e : edge_set(s.board())) {
      if (int(out.size()) >= k) break;
      if (s.unclaimed(e) && std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
    }
    return out;
  }

  void observe(const GameState& after, const Move& m) override {
    if (exhausted_) return;
    auto claim = [&](const EdgeId& e) { return after.claim(e); };
    if (m.player == Player::Maker) {
      if (ledger_)
        ledger_->absorb_maker_edges(m.edges);
      else
        general_->absorb_maker_edges(m.edges);
    } else {
      last_ = ledger_ ? ledger_->phase_check(claim) : general_->phase_check(claim);
    }
  }

  nlohmann::json overlay() const override {
    nlohmann::json j = ledger_ ? ledger_->snapshot_json() : general_->trace_json();
    j["lastPhaseCheck"] = to_string(last_);
    j["exhausted"] = exhausted_;
    return j;
  }

 private:
  std::optional<StripLedger> ledger_;
  std::optional<GeneralStripEngine> general_;
  bool exhausted_ = false;
  PhaseResult last_ = PhaseResult::Continue;
};

class SecureAgent : public Agent {
 public:
  explicit SecureAgent(int n) : shadow_(n) {}
  std::string kind() const override { return "secure"; }

  std::vector<EdgeId> choose(const GameState& s) override {
    if (s.history().empty() || s.history().back().player != Player::Breaker)
      throw ContractViolation("secure agent only answers Breaker moves");
    const Move& d = s.history().back();
    if (s.variant() == Variant::Secure) return respond_secure(shadow_, d.edges.at(0)).edges;
    return double_response(shadow_, s, d.edges);
  }

  nlohmann::json overlay() const override {
    nlohmann::json certs = nlohmann::json::array();
    for (const auto& c : shadow_.certs) certs.push_back(certificate_json(c));
    return {{"certificates", certs}};
  }
  const SecureState* secure_state() const override { return &shadow_; }

 private:
  SecureState shadow_;
};

class MirrorAgent : public Agent {
 public:
  MirrorAgent(int p, int n, LocalFactory plugin) : p_(p), geom_{n, n + 1, p + 1}, plugin_(std::move(plugin)) {}
  std::string kind() const override { return "mirror"; }

  std::vector<EdgeId> choose(const GameState& s) override {
    if (copy_ < 0) {
      std::vector<int> hits(geom_.count, 0);
      for (const EdgeId& e : s.blue_edges())
        if (auto loc = geom_.locate(e)) ++hits[loc->first];
      for (int c = 0; c < geom_.count && copy_ < 0; ++c)
        if (hits[c] == 0) copy_ = c;
      if (copy_ < 0) throw ContractViolation("Maker touched every copy");
      local_ = plugin_();
    }
    int k = quota_of(s, Player::Breaker);
    auto claim = [&](const EdgeId& local) { return s.claim(geom_.to_global(copy_, local)); };
    std::vector<EdgeId> out;
    for (const EdgeId& e : local_->play(std::min(k, p_), claim)) out.push_back(geom_.to_global(copy_, e));
    for (const EdgeId& e : edge_set(s.board())) {
      if (int(out.size()) >= k) break;
      if (s.unclaimed(e) && std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
    }
    return out;
  }

  void observe(const GameState&, const Move& m) override {
    if (m.player != Player::Maker || copy_ < 0) return;
    for (const EdgeId& e : m.edges)
      if (auto loc = geom_.locate(e); loc && loc->first == copy_) local_->absorb(loc->second);
  }

  nlohmann::json overlay() const override { return {{"copy", copy_}, {"x0", copy_ < 0 ? -1 : copy_ * geom_.width + 1}}; }

 private:
  int p_;
  StripGeometry geom_;
  LocalFactory plugin_;
  int copy_ = -1;
  std::unique_ptr<LocalStrategy> local_;
};

void require(bool ok, const std::string& kind, const std::string& why) {
  if (!ok) throw AgentIncompatible(kind + ": " + why);
}

}  // namespace

AgentSpec agent_spec_from_json(const nlohmann::json& j, Player role) {
  AgentSpec s;
  s.role = role;
  if (j.is_string()) {
    s.kind = j.get<std::string>();
    return s;
  }
  s.kind = j.at("kind").get<std::string>();
  s.seed = j.value("seed", std::uint64_t(0));
  if (j.contains("params")) s.params = j["params"];
  return s;
}

nlohmann::json agent_spec_json(const AgentSpec& s) {
  return {{"role", to_string(s.role)}, {"kind", s.kind}, {"seed", s.seed}, {"params", s.params}};
}

std::unique_ptr<Agent> make_agent(const AgentSpec& spec, const GameState& g) {
  const Board& b = g.board();
  bool crossing = g.variant() == Variant::Crossing || g.variant() == Variant::Switching;
  const std::string& k = spec.kind;
  int window = spec.params.value("window", 20);
  if (k == "random") {
    require(b.finite() || !crossing, k, "needs a finite board");
    return std::make_unique<RandomAgent>(spec.role, spec.seed, window);
  }
  if (k == "greedy") return std::make_unique<GreedyAgent>(spec.role, spec.seed, window);
  if (k == "solverOptimal") {
    require(crossing, k, "plays the crossing game only");
    SolverOptions opt;
    opt.edge_limit = spec.params.value("edgeLimit", opt.edge_limit);
    require(int(b.edge_count()) <= opt.edge_limit, k, "board exceeds the solver edge limit");
    return std::make_unique<SolverAgent>(spec.role, spec.seed, opt);
  }
  if (k == "lehman") {
    require(spec.role == Player::Maker, k, "is a Maker strategy");
    require(crossing && b.kind == BoardKind::S, k, "needs the crossing game on an S board");
    require(g.p() == 1 && g.q() == 1, k, "plays the (1,1) game");
    require(b.m >= 3 && b.m <= b.n + 1, k, "needs 3 <= m <= n+1");
    std::optional<EdgeId> first;
    if (spec.params.contains("first")) first = edge_from_json(spec.params["first"]);
    if (first) require(make_board(b.m, b.m - 1).contains(*first), k, "first edge outside the Bridg-it board");
    return std::make_unique<LehmanAgent>(b, first, spec.seed);
  }
  if (k == "strips") {
    require(spec.role == Player::Breaker, k, "is a Breaker strategy");
    require(crossing && b.kind == BoardKind::S, k, "needs the crossing game on an S board");
    require(g.p() == 2 * g.q() - 1, k, "plays the (2q-1,q) game");
    require(b.m >= (b.n + 1) * g.q(), k, "board too short for q strips");
    std::string engine = spec.params.value("engine", std::string("ledger"));
    require(engine == "ledger" || engine == "general", k, "engine must be ledger or general");
    return std::make_unique<StripsAgent>(g, engine == "general", spec.seed);
  }
  if (k == "secure") {
    require(spec.role == Player::Maker, k, "is a Maker strategy");
    require(g.variant() == Variant::DoubleResponse || g.variant() == Variant::Secure, k,
            "plays the double-response or secure game");
    require(g.variant() == Variant::DoubleResponse || !b.finite(), k, "secure game needs the infinite strip");
    require(b.n >= 2, k, "needs n >= 2");
    return std::make_unique<SecureAgent>(b.n);
  }
  if (k == "mirror") {
    require(spec.role == Player::Breaker, k, "is a Breaker strategy");
    require(crossing && b.kind == BoardKind::S, k, "needs the crossing game on an S board");
    require(g.p() == g.q(), k, "plays the (p,p) game");
    require(b.m >= (g.p() + 1) * (b.n + 1), k, "needs m >= (p+1)(n+1)");
    LocalFactory plugin;
    std::string which = spec.params.value("plugin", std::string(g.p() == 1 ? "bridgit" : ""));
    int n = b.n, p = g.p();
    if (which == "solver") {
      Board local = make_board(n + 1, n);
      require(int(local.edge_count()) <= SolverOptions{}.edge_limit, k, "copy too large for the solver plug-in");
      plugin = [local, p] { return make_solver_local(local, p); };
    } else if (which == "bridgit") {
      require(p == 1, k, "the Bridg-it plug-in plays p=1 only");
    }
    return divide_and_mirror_breaker(p, n, plugin);
  }
  if (k == "human") throw AgentIncompatible("human: plays through the service only");
  throw AgentIncompatible("unknown agent kind " + k);
}

std::unique_ptr<Agent> divide_and_mirror_breaker(int p, int n, LocalFactory plugin) {
  if (p < 1 || n < 1) throw std::invalid_argument("p and n must be positive");
  if (!plugin) {
    if (p != 1) throw AgentIncompatible("mirror: no local strategy for p=" + std::to_string(p));
    plugin = [n] { return make_bridgit_local(n); };
  }
  return std::make_unique<MirrorAgent>(p, n, std::move(plugin));
}

std::vector<EdgeId> neutralize(const std::vector<EdgeId>& component, const Board* board) {
  if (component.empty() || !primal_connected(component))
    throw std::invalid_argument("neutralize needs a connected, non-empty edge set");
  std::vector<EdgeId> b = external_boundary(component);
  std::size_t omit = b.size() - 1;
  if (board)
    for (std::size_t i = 0; i < b.size(); ++i)
      if (!board->contains(b[i])) {
        omit = i;
        break;
      }
  b.erase(b.begin() + long(omit));
  return b;
}

std::vector<EdgeId> cheapest_dual_route(const GameState& g, int u_lo, int u_hi) {
  const Board& b = g.board();
  std::vector<Point> sources;
  for (int u = u_lo | 1; u <= u_hi; u += 2) sources.push_back({u, 1});
  auto next = [&](const Point& d) {
    std::vector<std::pair<Point, EdgeId>> out;
    for (const EdgeId& e : edges_around_dual(d)) {
      if (!b.contains(e) || !dual_counts(b, e)) continue;
      auto [a, c] = dual_ends(e);
      Point w = a == d ? c : a;
      if (w.u < u_lo || w.u > u_hi) continue;
      out.push_back({w, e});
    }
    return out;
  };
  auto cost = [&](const EdgeId& e) {
    Claim c = g.claim(e);
    return c == Claim::Red ? 0 : c == Claim::Unclaimed ? 1 : -1;
  };
  int top = b.dual_top();
  return route(sources, next, [&](const Point& p) { return p.v == top; }, cost);
}

std::vector<EdgeId> cheapest_primal_route(const GameState& g) {
  const Board& b = g.board();
  if (!b.finite()) throw std::invalid_argument("primal route needs a finite board");
  std::vector<Point> sources;
  for (int y = 1; y <= b.n; ++y) sources.push_back({2, 2 * y});
  auto next = [&](const Point& p) {
    std::vector<std::pair<Point, EdgeId>> out;
    for (const EdgeId& e : edges_at_vertex(p)) {
      if (!b.contains(e)) continue;
      auto [a, c] = primal_ends(e);
      out.push_back({a == p ? c : a, e});
    }
    return out;
  };
  auto cost = [&](const EdgeId& e) {
    Claim c = g.claim(e);
    return c == Claim::Unclaimed ? 1 : c == Claim::Red ? -1 : 0;
  };
  int right = 2 * b.m;
  return route(sources, next, [&](const Point& p) { return p.u == right; }, cost);
}

}  // namespace crossing
