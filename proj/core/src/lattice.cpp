#include "crossing/lattice.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace crossing {

EdgeId make_edge(int u, int v) {
  EdgeId e{u, v};
  if (!e.valid()) throw std::invalid_argument("edge coordinates must have exactly one odd component: " + to_string(e));
  return e;
}

std::string to_string(const EdgeId& e) {
  return "[" + std::to_string(e.u) + "," + std::to_string(e.v) + "]";
}

std::pair<Point, Point> primal_ends(const EdgeId& e) {
  if (e.horizontal()) return {{e.u - 1, e.v}, {e.u + 1, e.v}};
  return {{e.u, e.v - 1}, {e.u, e.v + 1}};
}

std::pair<Point, Point> dual_ends(const EdgeId& e) {
  if (e.horizontal()) return {{e.u, e.v - 1}, {e.u, e.v + 1}};
  return {{e.u - 1, e.v}, {e.u + 1, e.v}};
}

std::vector<EdgeId> edges_around_dual(const Point& d) {
  return {{d.u, d.v - 1}, {d.u - 1, d.v}, {d.u + 1, d.v}, {d.u, d.v + 1}};
}

std::vector<EdgeId> edges_at_vertex(const Point& p) {
  return {{p.u, p.v - 1}, {p.u - 1, p.v}, {p.u + 1, p.v}, {p.u, p.v + 1}};
}

std::string to_string(BoardKind k) {
  switch (k) {
    case BoardKind::Lambda: return "Lambda";
    case BoardKind::S: return "S";
    case BoardKind::InfiniteStrip: return "InfiniteStrip";
  }
  return "?";
}

BoardKind board_kind_from_string(const std::string& s) {
  if (s == "Lambda" || s == "lambda") return BoardKind::Lambda;
  if (s == "S" || s == "s") return BoardKind::S;
  if (s == "InfiniteStrip" || s == "infinite") return BoardKind::InfiniteStrip;
  throw std::invalid_argument("unknown board kind: " + s);
}

bool Board::contains(const EdgeId& e) const {
  if (!e.valid()) return false;
  if (e.horizontal()) {
    if (e.v < 2 || e.v > 2 * n) return false;
    if (kind == BoardKind::InfiniteStrip) return true;
    return e.u >= 3 && e.u <= 2 * m - 1;
  }
  if (e.v < 3 || e.v > 2 * n - 1) return false;
  switch (kind) {
    case BoardKind::InfiniteStrip: return true;
    case BoardKind::Lambda: return e.u >= 2 && e.u <= 2 * m;
    case BoardKind::S: return e.u >= 4 && e.u <= 2 * m - 2;
  }
  return false;
}

std::size_t Board::edge_count() const {
  if (!finite()) throw std::invalid_argument("infinite board has no finite edge count");
  std::size_t h = std::size_t(m - 1) * n;
  std::size_t cols = kind == BoardKind::S ? std::size_t(std::max(m - 2, 0)) : std::size_t(m);
  return h + cols * std::size_t(n - 1);
}

Board make_board(int m, int n, BoardKind kind) {
  if (n < 1) throw std::invalid_argument("board width n must be at least 1");
  if (kind != BoardKind::InfiniteStrip && m < 2) throw std::invalid_argument("board length m must be at least 2");
  return Board{m, n, kind};
}

std::vector<EdgeId> edge_set(const Board& board) {
  if (!board.finite()) throw std::invalid_argument("edge_set needs a finite board");
  make_board(board.m, board.n, board.kind);
  std::vector<EdgeId> out;
  out.reserve(board.edge_count());
  for (int u = 2; u <= 2 * board.m; ++u)
    for (int v = 2; v <= 2 * board.n; ++v) {
      EdgeId e{u, v};
      if (board.contains(e)) out.push_back(e);
    }
  return out;
}

Board dual_board(const Board& board) {
  if (board.kind != BoardKind::S) throw std::invalid_argument("dual_board is defined for S boards");
  return make_board(board.n + 1, board.m - 1, BoardKind::S);
}

namespace {

template <class Adj>
bool bfs_reaches(const std::vector<Point>& sources, Adj&& neighbours, const std::function<bool(const Point&)>& target) {
  std::unordered_set<Point, PointHash> seen(sources.begin(), sources.end());
  std::deque<Point> queue(sources.begin(), sources.end());
  while (!queue.empty()) {
    Point p = queue.front();
    queue.pop_front();
    if (target(p)) return true;
    for (const Point& q : neighbours(p))
      if (seen.insert(q).second) queue.push_back(q);
  }
  return false;
}

}  // namespace

bool has_lr_crossing(const Board& board, const std::vector<EdgeId>& edges) {
  std::unordered_map<Point, std::vector<Point>, PointHash> adj;
  std::vector<Point> sources;
  for (const EdgeId& e : edges) {
    if (!board.contains(e)) continue;
    auto [a, b] = primal_ends(e);
    adj[a].push_back(b);
    adj[b].push_back(a);
    if (a.u == 2) sources.push_back(a);
  }
  int right = 2 * board.m;
  return bfs_reaches(sources, [&](const Point& p) { return adj[p]; },
                     [&](const Point& p) { return p.u == right; });
}

bool has_tb_dual_crossing(const Board& board, const std::vector<EdgeId>& edges) {
  std::unordered_map<Point, std::vector<Point>, PointHash> adj;
  std::vector<Point> sources;
  for (const EdgeId& e : edges) {
    if (!board.contains(e)) continue;
    auto [a, b] = dual_ends(e);
    adj[a].push_back(b);
    adj[b].push_back(a);
    if (a.v == board.dual_bottom()) sources.push_back(a);
  }
  int top = board.dual_top();
  return bfs_reaches(sources, [&](const Point& p) { return adj[p]; },
                     [&](const Point& p) { return p.v == top; });
}

bool primal_connected(const std::vector<EdgeId>& edges) {
  if (edges.empty()) return false;
  std::unordered_map<Point, std::vector<Point>, PointHash> adj;
  for (const EdgeId& e : edges) {
    auto [a, b] = primal_ends(e);
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::unordered_set<Point, PointHash> seen{primal_ends(edges.front()).first};
  std::deque<Point> queue{primal_ends(edges.front()).first};
  while (!queue.empty()) {
    Point p = queue.front();
    queue.pop_front();
    for (const Point& q : adj[p])
      if (seen.insert(q).second) queue.push_back(q);
  }
  return seen.size() == adj.size();
}

std::vector<EdgeId> external_boundary(const std::vector<EdgeId>& edges) {
  for (const EdgeId& e : edges)
    if (!e.valid()) throw std::invalid_argument("invalid edge " + to_string(e));
  if (!primal_connected(edges)) throw std::invalid_argument("external_boundary needs a connected edge set");

  std::unordered_set<Point, PointHash> inside;
  int lo_u = INT_MAX, hi_u = INT_MIN, lo_v = INT_MAX, hi_v = INT_MIN;
  for (const EdgeId& e : edges) {
    auto [a, b] = primal_ends(e);
    for (const Point& p : {a, b}) {
      inside.insert(p);
      lo_u = std::min(lo_u, p.u);
      hi_u = std::max(hi_u, p.u);
      lo_v = std::min(lo_v, p.v);
      hi_v = std::max(hi_v, p.v);
    }
  }
  // Flood the complement inside a box one step larger than the hull; the
  // box frame is connected and lies in the unbounded component.
  lo_u -= 2, hi_u += 2, lo_v -= 2, hi_v += 2;
  auto in_box = [&](const Point& p) { return p.u >= lo_u && p.u <= hi_u && p.v >= lo_v && p.v <= hi_v; };
  std::unordered_set<Point, PointHash> outside{{lo_u, lo_v}};
  std::deque<Point> queue{{lo_u, lo_v}};
  while (!queue.empty()) {
    Point p = queue.front();
    queue.pop_front();
    for (const EdgeId& e : edges_at_vertex(p)) {
      auto [a, b] = primal_ends(e);
      Point q = (a == p) ? b : a;
      if (!in_box(q) || inside.count(q)) continue;
      if (outside.insert(q).second) queue.push_back(q);
    }
  }
  std::vector<EdgeId> out;
  for (const Point& p : inside)
    for (const EdgeId& e : edges_at_vertex(p)) {
      auto [a, b] = primal_ends(e);
      Point q = (a == p) ? b : a;
      if (outside.count(q)) out.push_back(e);
    }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_simple_dual_cycle(const std::vector<EdgeId>& edges) {
  if (edges.size() < 4) return false;
  std::unordered_map<Point, std::vector<Point>, PointHash> adj;
  for (const EdgeId& e : edges) {
    auto [a, b] = dual_ends(e);
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& [p, ns] : adj)
    if (ns.size() != 2) return false;
  // Degree two everywhere; simple iff connected.
  std::unordered_set<Point, PointHash> seen{adj.begin()->first};
  std::deque<Point> queue{adj.begin()->first};
  while (!queue.empty()) {
    Point p = queue.front();
    queue.pop_front();
    for (const Point& q : adj[p])
      if (seen.insert(q).second) queue.push_back(q);
  }
  return seen.size() == adj.size();
}

std::string to_string(ComponentClass c) {
  switch (c) {
    case ComponentClass::Floating: return "Floating";
    case ComponentClass::Top: return "Top";
    case ComponentClass::Bottom: return "Bottom";
    case ComponentClass::TopAndBottom: return "TopAndBottom";
  }
  return "?";
}

std::vector<DualComponent> dual_components(const Board& board, const std::vector<EdgeId>& red) {
  std::unordered_map<Point, std::vector<std::pair<Point, EdgeId>>, PointHash> adj;
  std::vector<EdgeId> sorted(red);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (const EdgeId& e : sorted) {
    auto [a, b] = dual_ends(e);
    adj[a].push_back({b, e});
    adj[b].push_back({a, e});
  }
  std::unordered_set<Point, PointHash> seen;
  std::vector<DualComponent> out;
  for (const EdgeId& start : sorted) {
    Point s = dual_ends(start).first;
    if (seen.count(s)) continue;
    DualComponent c;
    std::unordered_set<EdgeId, EdgeHash> es;
    std::deque<Point> queue{s};
    seen.insert(s);
    while (!queue.empty()) {
      Point p = queue.front();
      queue.pop_front();
      c.vertices.push_back(p);
      for (auto& [q, e] : adj[p]) {
        es.insert(e);
        if (seen.insert(q).second) queue.push_back(q);
      }
    }
    c.edges.assign(es.begin(), es.end());
    std::sort(c.edges.begin(), c.edges.end());
    std::sort(c.vertices.begin(), c.vertices.end());
    bool top = false, bottom = false;
    for (const Point& p : c.vertices) {
      top = top || p.v == board.dual_top();
      bottom = bottom || p.v == board.dual_bottom();
    }
    c.cls = top && bottom ? ComponentClass::TopAndBottom
            : top         ? ComponentClass::Top
            : bottom      ? ComponentClass::Bottom
                          : ComponentClass::Floating;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace crossing
