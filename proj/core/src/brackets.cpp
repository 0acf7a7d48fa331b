#include "crossing/brackets.hpp"

#include <algorithm>
#include <stdexcept>

namespace crossing {

std::string to_string(BracketKind k) {
  switch (k) {
    case BracketKind::T1: return "T1";
    case BracketKind::T2: return "T2";
    case BracketKind::T3plus: return "T3plus";
    case BracketKind::T3minus: return "T3minus";
  }
  return "?";
}

BracketKind bracket_kind_from_string(const std::string& s) {
  if (s == "T1") return BracketKind::T1;
  if (s == "T2") return BracketKind::T2;
  if (s == "T3plus") return BracketKind::T3plus;
  if (s == "T3minus") return BracketKind::T3minus;
  throw std::invalid_argument("unknown bracket kind: " + s);
}

std::array<EdgeId, 4> Bracket::edges() const {
  // Offsets are in half units from the anchor.
  auto at = [&](int du, int dv) { return EdgeId{2 * x + du, 2 * y + dv}; };
  switch (kind) {
    case BracketKind::T1: return {at(1, 0), at(3, 0), at(4, 1), at(4, 3)};
    case BracketKind::T2: return {at(1, 0), at(2, 1), at(3, 2), at(4, 3)};
    case BracketKind::T3plus: return {at(0, -1), at(1, -2), at(2, -1), at(2, 1)};
    case BracketKind::T3minus: return {at(1, 0), at(3, 0), at(4, 1), at(3, 2)};
  }
  return {};
}

std::array<Point, 2> Bracket::corners() const {
  int d = (kind == BracketKind::T1 || kind == BracketKind::T2) ? 2 : 1;
  return {Point{2 * x, 2 * y}, Point{2 * (x + d), 2 * (y + d)}};
}

std::vector<Point> Bracket::interior() const {
  auto at = [&](int du, int dv) { return Point{2 * x + du, 2 * y + dv}; };
  switch (kind) {
    case BracketKind::T1: return {at(1, 1), at(3, 1), at(3, 3)};
    case BracketKind::T2: return {at(1, 1), at(3, 3)};
    case BracketKind::T3plus: return {at(1, -1), at(1, 1)};
    case BracketKind::T3minus: return {at(1, 1), at(3, 1)};
  }
  return {};
}

bool Bracket::has_edge(const EdgeId& e) const {
  auto es = edges();
  return std::find(es.begin(), es.end(), e) != es.end();
}

Bracket Reflection::apply(const Bracket& b) const {
  auto cs = b.corners();
  Point p = apply(cs[0]), q = apply(cs[1]);
  BracketKind k = b.kind;
  if (k == BracketKind::T3plus) k = BracketKind::T3minus;
  else if (k == BracketKind::T3minus) k = BracketKind::T3plus;
  return Bracket{k, std::min(p.u, q.u) / 2, std::min(p.v, q.v) / 2};
}

Reflection corner_swap(const Bracket& b) {
  auto cs = b.corners();
  // The swapping line passes through the midpoint of the corners.
  return Reflection{(cs[0].u + cs[0].v + cs[1].u + cs[1].v) / 2};
}

}  // namespace crossing
