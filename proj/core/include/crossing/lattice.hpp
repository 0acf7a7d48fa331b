#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace crossing {

// Edges are named by their midpoint in doubled coordinates: the horizontal
// edge (x+0.5, y) is (2x+1, 2y) and the vertical edge (x, y+0.5) is (2x, 2y+1).
// The same pair names the dual edge crossing it.
struct EdgeId {
  int u = 0;
  int v = 0;

  constexpr bool horizontal() const { return (u & 1) != 0 && (v & 1) == 0; }
  constexpr bool vertical() const { return (u & 1) == 0 && (v & 1) != 0; }
  constexpr bool valid() const { return horizontal() || vertical(); }

  friend constexpr auto operator<=>(const EdgeId&, const EdgeId&) = default;
};

// A lattice point in doubled coordinates. Primal vertices have both
// coordinates even, dual vertices have both odd.
struct Point {
  int u = 0;
  int v = 0;
  friend constexpr auto operator<=>(const Point&, const Point&) = default;
};

struct EdgeHash {
  std::size_t operator()(const EdgeId& e) const noexcept {
    return std::hash<std::uint64_t>{}((std::uint64_t(std::uint32_t(e.u)) << 32) | std::uint32_t(e.v));
  }
};
struct PointHash {
  std::size_t operator()(const Point& p) const noexcept {
    return std::hash<std::uint64_t>{}((std::uint64_t(std::uint32_t(p.u)) << 32) | std::uint32_t(p.v));
  }
};

// Constructs an edge from integer midpoint coordinates given as twice the
// real value, validating parity.
EdgeId make_edge(int u, int v);
// Horizontal edge between (x,y) and (x+1,y).
constexpr EdgeId hedge(int x, int y) { return {2 * x + 1, 2 * y}; }
// Vertical edge between (x,y) and (x,y+1).
constexpr EdgeId vedge(int x, int y) { return {2 * x, 2 * y + 1}; }

std::string to_string(const EdgeId& e);

// Primal endpoints of e.
std::pair<Point, Point> primal_ends(const EdgeId& e);
// Dual endpoints of e (the dual vertices its dual edge joins).
std::pair<Point, Point> dual_ends(const EdgeId& e);
// The four edges whose duals meet at dual vertex d.
std::vector<EdgeId> edges_around_dual(const Point& d);
// The four edges incident to primal vertex p.
std::vector<EdgeId> edges_at_vertex(const Point& p);

enum class BoardKind { Lambda, S, InfiniteStrip };

std::string to_string(BoardKind k);
BoardKind board_kind_from_string(const std::string& s);

struct Board {
  int m = 2;
  int n = 1;
  BoardKind kind = BoardKind::S;

  bool finite() const { return kind != BoardKind::InfiniteStrip; }
  bool contains(const EdgeId& e) const;
  // Dual vertex rows run from v=1 (bottom, y=0.5) to v=2n+1 (top, y=n+0.5).
  int dual_bottom() const { return 1; }
  int dual_top() const { return 2 * n + 1; }
  // Edge count for finite kinds.
  std::size_t edge_count() const;

  friend bool operator==(const Board&, const Board&) = default;
};

Board make_board(int m, int n, BoardKind kind = BoardKind::S);

// All edges of a finite board in ascending (u,v) order.
std::vector<EdgeId> edge_set(const Board& board);

// The S-board isomorphic to the dual of an S-board.
Board dual_board(const Board& board);

// True iff edges contain a path from column x=1 to column x=m.
bool has_lr_crossing(const Board& board, const std::vector<EdgeId>& edges);

// True iff the duals of edges contain a dual path from the bottom dual row
// to the top dual row.
bool has_tb_dual_crossing(const Board& board, const std::vector<EdgeId>& edges);

// Dual edges separating the vertex set of the connected edge set from the
// unbounded component of its complement in the infinite lattice.
std::vector<EdgeId> external_boundary(const std::vector<EdgeId>& edges);

// True iff the edges form one connected primal component.
bool primal_connected(const std::vector<EdgeId>& edges);

// True iff the dual edges form a single simple cycle.
bool is_simple_dual_cycle(const std::vector<EdgeId>& edges);

enum class ComponentClass { Floating, Top, Bottom, TopAndBottom };
std::string to_string(ComponentClass c);

struct DualComponent {
  std::vector<Point> vertices;  // sorted
  std::vector<EdgeId> edges;    // sorted
  ComponentClass cls = ComponentClass::Floating;
};

// Maximal connected components of the red dual edges, each classified by
// whether it touches the top and/or bottom dual rows. Sorted by least edge.
std::vector<DualComponent> dual_components(const Board& board, const std::vector<EdgeId>& red);

}  // namespace crossing
