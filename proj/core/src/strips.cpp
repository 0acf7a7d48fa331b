#include "crossing/strips.hpp"

#include <algorithm>
#include <stdexcept>

#include "crossing/errors.hpp"
#include "crossing/record.hpp"

namespace crossing {

int strip_horizon(int n) { return n * n + (n - 1) * (n - 1); }

BigInt m0(int n, int q) {
  if (n < 2 || q < 1) throw std::invalid_argument("m0 needs n >= 2 and q >= 1");
  BigInt base = 6 * q - 2;
  return BigInt(n + 1) * (boost::multiprecision::pow(base, unsigned(strip_horizon(n))) + 2 * q - 1);
}

BigInt general_strip_count(int p, int q, int l, int T) {
  BigInt s = l * (p + q + 1) - 1;
  return boost::multiprecision::pow(s * (p + 1), unsigned(T)) + l * (p + 1) - 1;
}

std::optional<std::pair<int, EdgeId>> StripGeometry::locate(const EdgeId& g) const {
  if (!g.valid()) return std::nullopt;
  int x = g.horizontal() ? (g.u - 1) / 2 : g.u / 2;
  if (x < 1) return std::nullopt;
  int i = (x - 1) / width;
  if (i >= count) return std::nullopt;
  EdgeId local{g.u - 2 * i * width, g.v};
  if (!local_board().contains(local)) return std::nullopt;
  return std::pair{i, local};
}

EdgeId StripGeometry::to_global(int strip, const EdgeId& local) const {
  return {local.u + 2 * strip * width, local.v};
}

EdgeId strip_to_virtual(const EdgeId& local) { return {local.v + 1, local.u - 1}; }

namespace {

class BridgitLocal : public LocalStrategy {
 public:
  explicit BridgitLocal(int n) : n_(n) {}

  void absorb(const EdgeId& maker_edge) override {
    if (maker_) maker_->absorb(strip_to_virtual(maker_edge));
    else early_.push_back(strip_to_virtual(maker_edge));
  }

  std::vector<EdgeId> play(int count, const ClaimLookup& claim) override {
    std::vector<EdgeId> out;
    for (int c = 0; c < count; ++c) {
      std::optional<EdgeId> v;
      if (!maker_) {
        auto es = edge_set(make_board(n_ + 1, n_, BoardKind::S));
        maker_.emplace(n_, es.front());
        for (const EdgeId& e : early_) maker_->absorb(e);
        v = maker_->first_edge();
      } else {
        v = maker_->reply();
      }
      EdgeId pick;
      if (v && claim(strip_to_virtual(*v)) == Claim::Unclaimed &&
          std::find(out.begin(), out.end(), strip_to_virtual(*v)) == out.end()) {
        pick = strip_to_virtual(*v);
      } else {
        // Nothing useful left for the strategy: take any free edge.
        bool found = false;
        for (const EdgeId& e : edge_set(make_board(n_ + 1, n_, BoardKind::S)))
          if (claim(e) == Claim::Unclaimed && std::find(out.begin(), out.end(), e) == out.end()) {
            pick = e;
            found = true;
            break;
          }
        if (!found) break;
        maker_->claim_extra(strip_to_virtual(pick));
      }
      out.push_back(pick);
    }
    return out;
  }

 private:
  int n_;
  std::optional<BridgitMaker> maker_;
  std::vector<EdgeId> early_;
};

bool strip_crossed(const StripGeometry& geom, int strip, const ClaimLookup& claim) {
  Board local = geom.local_board();
  std::vector<EdgeId> red;
  for (const EdgeId& e : edge_set(local))
    if (claim(geom.to_global(strip, e)) == Claim::Red) red.push_back(e);
  return has_tb_dual_crossing(local, red);
}

json strip_entry(int i, bool invalid, int k, int j) {
  if (invalid) return json{{"i", i}, {"invalid", true}};
  return json{{"i", i}, {"k", k}, {"j", j}};
}

}  // namespace

std::unique_ptr<LocalStrategy> make_bridgit_local(int n) { return std::make_unique<BridgitLocal>(n); }

std::string to_string(const StripStatus& s) {
  switch (s.kind) {
    case StripStatusKind::Valid: return "Valid(" + std::to_string(s.k) + ")";
    case StripStatusKind::Neutral: return "Neutral(" + std::to_string(s.k) + "," + std::to_string(s.pending) + ")";
    case StripStatusKind::Invalid: return "Invalid";
  }
  return "?";
}

std::string to_string(PhaseResult r) {
  switch (r) {
    case PhaseResult::Continue: return "continue";
    case PhaseResult::Advance: return "advance-phase";
    case PhaseResult::Victory: return "victory";
  }
  return "?";
}

// ----- StripLedger -----

StripLedger::StripLedger(int m, int n, int q) : StripLedger(m, n, q, [n] { return make_bridgit_local(n); }) {}

StripLedger::StripLedger(int m, int n, int q, LocalFactory factory)
    : q_(q), T_(strip_horizon(n)), factory_(std::move(factory)) {
  if (n < 2 || q < 1) throw std::invalid_argument("strip ledger needs n >= 2 and q >= 1");
  geom_ = StripGeometry{n, n + 1, m / (n + 1)};
  status_.assign(geom_.count, StripStatus{});
  local_.resize(geom_.count);
}

BigInt StripLedger::threshold() const {
  if (phase_ >= T_) return 0;
  return 2 * boost::multiprecision::pow(BigInt(6 * q_ - 2), unsigned(T_ - phase_ - 1));
}

long StripLedger::recompute_potential() const {
  long r = 0;
  for (const StripStatus& s : status_) {
    if (s.kind == StripStatusKind::Invalid || s.k != phase_ + 1) continue;
    r += s.kind == StripStatusKind::Valid ? 2 : 1;
  }
  return r;
}

void StripLedger::check_potential(long before, long after, long lower, const char* what) const {
  if (after < before + lower)
    throw ContractViolation(std::string("strip potential dropped too far after ") + what);
}

std::vector<EdgeId> StripLedger::breaker_turn(const ClaimLookup& claim) {
  std::vector<int> chosen;
  for (int i = 0; i < geom_.count && int(chosen.size()) < q_; ++i)
    if (status_[i].kind != StripStatusKind::Invalid && status_[i].k == phase_) chosen.push_back(i);
  if (int(chosen.size()) < q_)
    throw OutOfNeutralStrips("only " + std::to_string(chosen.size()) + " strips left at phase " + std::to_string(phase_));
  std::vector<EdgeId> out;
  last_played_ = chosen;
  for (int i : chosen) {
    if (!local_[i]) local_[i] = factory_();
    auto strip_claim = [&](const EdgeId& local) { return claim(geom_.to_global(i, local)); };
    auto es = local_[i]->play(1, strip_claim);
    long before = R_;
    status_[i] = StripStatus{StripStatusKind::Valid, phase_ + 1, 0};
    R_ += 2;
    check_potential(before, R_, 2, "a V edge");
    for (const EdgeId& e : es) out.push_back(geom_.to_global(i, e));
  }
  return out;
}

void StripLedger::absorb_maker_edges(const std::vector<EdgeId>& edges) {
  for (const EdgeId& g : edges) {
    auto loc = geom_.locate(g);
    if (!loc) continue;
    auto [i, e] = *loc;
    StripStatus& s = status_[i];
    long before = R_;
    bool counted = s.kind != StripStatusKind::Invalid && s.k == phase_ + 1;
    long weight = !counted ? 0 : s.kind == StripStatusKind::Valid ? 2 : 1;
    if (s.kind == StripStatusKind::Valid) {
      s = StripStatus{StripStatusKind::Neutral, s.k, 1};
    } else if (s.kind == StripStatusKind::Neutral) {
      s = StripStatus{StripStatusKind::Invalid, 0, 0};
    }
    long now = s.kind == StripStatusKind::Invalid || s.k != phase_ + 1 ? 0
               : s.kind == StripStatusKind::Valid                      ? 2
                                                                       : 1;
    R_ += now - weight;
    check_potential(before, R_, -1, "an H edge");
    if (s.kind != StripStatusKind::Invalid && local_[i]) local_[i]->absorb(e);
  }
}

PhaseResult StripLedger::phase_check(const ClaimLookup& claim) {
  ++rounds_;
  if (R_ < rounds_) throw ContractViolation("strip potential below the round count");
  for (int i : last_played_)
    if (strip_crossed(geom_, i, claim)) return PhaseResult::Victory;
  if (BigInt(R_) >= threshold()) {
    ++phase_;
    rounds_ = 0;
    R_ = recompute_potential();
    return phase_ >= T_ ? PhaseResult::Victory : PhaseResult::Advance;
  }
  return PhaseResult::Continue;
}

json StripLedger::snapshot_json() const {
  json strips = json::array();
  for (int i = 0; i < geom_.count; ++i) {
    const StripStatus& s = status_[i];
    if (s == StripStatus{}) continue;
    const char* kind = s.kind == StripStatusKind::Valid ? "Valid" : s.kind == StripStatusKind::Neutral ? "Neutral" : "Invalid";
    strips.push_back({{"i", i},
                      {"x0", i * geom_.width + 1},
                      {"status", kind},
                      {"k", s.k},
                      {"pendingHits", s.pending}});
  }
  return {{"phase", phase_}, {"potential", R_}, {"width", geom_.width}, {"count", geom_.count}, {"strips", strips}};
}

json StripLedger::trace_json() const {
  json strips = json::array();
  for (int i = 0; i < geom_.count; ++i) {
    const StripStatus& s = status_[i];
    if (s == StripStatus{}) continue;
    strips.push_back(strip_entry(i, s.kind == StripStatusKind::Invalid, s.k, s.kind == StripStatusKind::Valid ? 1 : 0));
  }
  return {{"phase", phase_}, {"potential", R_}, {"strips", strips}};
}

// ----- GeneralStripEngine -----

GeneralStripEngine::GeneralStripEngine(int m, GeneralStripParams params, LocalFactory factory)
    : prm_(params), factory_(std::move(factory)) {
  if (prm_.p < 0 || prm_.q < 1 || prm_.l < 1 || prm_.T < 0 || prm_.width < 2)
    throw std::invalid_argument("bad strip parameters");
  geom_ = StripGeometry{prm_.n, prm_.width, m / prm_.width};
  status_.assign(geom_.count, GeneralStatus{});
  local_.resize(geom_.count);
}

BigInt GeneralStripEngine::threshold() const {
  if (phase_ >= prm_.T) return 0;
  BigInt s = prm_.l * (prm_.p + prm_.q + 1) - 1;
  return BigInt(prm_.p + 1) * boost::multiprecision::pow(BigInt(prm_.p + 1) * s, unsigned(prm_.T - phase_ - 1));
}

long GeneralStripEngine::recompute_potential() const {
  long r = 0;
  for (const GeneralStatus& s : status_)
    if (!s.invalid && s.k == phase_ + 1) r += s.j + 1;
  return r;
}

std::vector<EdgeId> GeneralStripEngine::breaker_turn(const ClaimLookup& claim) {
  std::vector<int> chosen;
  for (int i = 0; i < geom_.count && int(chosen.size()) < prm_.l; ++i)
    if (!status_[i].invalid && status_[i].k == phase_) chosen.push_back(i);
  if (int(chosen.size()) < prm_.l)
    throw OutOfNeutralStrips("only " + std::to_string(chosen.size()) + " strips left at phase " + std::to_string(phase_));
  std::vector<EdgeId> out;
  last_played_ = chosen;
  for (int i : chosen) {
    if (!local_[i]) local_[i] = factory_();
    auto strip_claim = [&](const EdgeId& local) { return claim(geom_.to_global(i, local)); };
    for (const EdgeId& e : local_[i]->play(prm_.q, strip_claim)) out.push_back(geom_.to_global(i, e));
    status_[i] = GeneralStatus{false, phase_ + 1, prm_.p};
    R_ += prm_.p + 1;
  }
  return out;
}

void GeneralStripEngine::absorb_maker_edges(const std::vector<EdgeId>& edges) {
  for (const EdgeId& g : edges) {
    auto loc = geom_.locate(g);
    if (!loc) continue;
    auto [i, e] = *loc;
    GeneralStatus& s = status_[i];
    if (s.invalid) continue;
    long before = R_;
    if (s.j > 0) {
      --s.j;
      if (s.k == phase_ + 1) --R_;
    } else {
      if (s.k == phase_ + 1) --R_;
      s = GeneralStatus{true, 0, 0};
    }
    if (R_ < before - 1) throw ContractViolation("strip potential dropped too far");
    if (!s.invalid && local_[i]) local_[i]->absorb(e);
  }
}

PhaseResult GeneralStripEngine::phase_check(const ClaimLookup& claim) {
  ++rounds_;
  if (R_ < rounds_) throw ContractViolation("strip potential below the round count");
  for (int i : last_played_)
    if (strip_crossed(geom_, i, claim)) return PhaseResult::Victory;
  if (BigInt(R_) >= threshold()) {
    ++phase_;
    rounds_ = 0;
    R_ = recompute_potential();
    return phase_ >= prm_.T ? PhaseResult::Victory : PhaseResult::Advance;
  }
  return PhaseResult::Continue;
}

json GeneralStripEngine::trace_json() const {
  json strips = json::array();
  for (int i = 0; i < geom_.count; ++i) {
    const GeneralStatus& s = status_[i];
    if (s == GeneralStatus{}) continue;
    strips.push_back(strip_entry(i, s.invalid, s.k, s.j));
  }
  return {{"phase", phase_}, {"potential", R_}, {"strips", strips}};
}

}  // namespace crossing
