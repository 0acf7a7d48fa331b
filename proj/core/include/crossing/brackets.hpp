#pragma once

#include <array>
#include <string>
#include <vector>

#include "crossing/lattice.hpp"

namespace crossing {

enum class BracketKind { T1, T2, T3plus, T3minus };
std::string to_string(BracketKind k);
BracketKind bracket_kind_from_string(const std::string& s);

// Four non-red edges closing the securing cycle of a floating component.
// The anchor (x,y) is the lower-left corner in integer coordinates.
struct Bracket {
  BracketKind kind = BracketKind::T1;
  int x = 0;
  int y = 0;

  std::array<EdgeId, 4> edges() const;
  // Both corners as doubled-coordinate vertices, anchor first.
  std::array<Point, 2> corners() const;
  // Interior dual vertices in doubled coordinates.
  std::vector<Point> interior() const;
  bool has_edge(const EdgeId& e) const;

  friend bool operator==(const Bracket&, const Bracket&) = default;
};

// Reflection through a line X+Y=c; stored as 2c so doubled coordinates map
// (u,v) -> (2c-v, 2c-u).
struct Reflection {
  int c2 = 0;
  Point apply(const Point& p) const { return {c2 - p.v, c2 - p.u}; }
  EdgeId apply(const EdgeId& e) const { return {c2 - e.v, c2 - e.u}; }
  Bracket apply(const Bracket& b) const;
};

// The reflection that swaps the two corners of b.
Reflection corner_swap(const Bracket& b);

}  // namespace crossing
