#include "crossing/secure.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "crossing/errors.hpp"
#include "crossing/record.hpp"

namespace crossing {
namespace {

using EdgeSet = std::unordered_set<EdgeId, EdgeHash>;
using PointSet = std::unordered_set<Point, PointHash>;

// Edge at (x + du/2, y + dv/2).
constexpr EdgeId at(int x, int y, int du, int dv) { return {2 * x + du, 2 * y + dv}; }

PointSet vertices_of(const std::vector<EdgeId>& edges) {
  PointSet out;
  for (const EdgeId& e : edges) {
    auto [a, b] = dual_ends(e);
    out.insert(a);
    out.insert(b);
  }
  return out;
}

ComponentClass classify(const PointSet& vs, int n) {
  bool top = false, bottom = false;
  for (const Point& p : vs) {
    top = top || p.v == 2 * n + 1;
    bottom = bottom || p.v == 1;
  }
  return top && bottom ? ComponentClass::TopAndBottom
         : top         ? ComponentClass::Top
         : bottom      ? ComponentClass::Bottom
                       : ComponentClass::Floating;
}

std::vector<EdgeId> closure_edges(const Closure& c) {
  if (auto* b = std::get_if<Bracket>(&c)) {
    auto es = b->edges();
    return {es.begin(), es.end()};
  }
  return {std::get<Gate>(c).edge};
}

bool contains(const std::vector<EdgeId>& v, const EdgeId& e) { return std::find(v.begin(), v.end(), e) != v.end(); }

struct Ends {
  Point a, b;
};

// Required path ends for a closure; nullopt when the component has no
// unique end vertex on the gate's side.
std::optional<Ends> path_ends(const Closure& c, const PointSet& comp, int n) {
  if (auto* b = std::get_if<Bracket>(&c)) {
    auto cs = b->corners();
    return Ends{cs[0], cs[1]};
  }
  const Gate& g = std::get<Gate>(c);
  int row = g.top ? 2 * n + 1 : 1;
  std::vector<Point> ends;
  for (const Point& p : comp)
    if (p.v == row) ends.push_back(p);
  if (ends.size() != 1) return std::nullopt;
  int xr2 = ends[0].u - 1;  // doubled x of the left corner below/above the end vertex
  if (g.top) return Ends{Point{g.edge.u, 2 * n - 2}, Point{xr2, 2 * n}};
  return Ends{Point{g.edge.u, 4}, Point{xr2, 2}};
}

// True iff no vertex of comp is reachable from the outside sources without
// crossing a barrier edge. The outside is the window sides plus the dual rows
// the component does not touch.
bool encloses(const Board& board, const PointSet& comp, const EdgeSet& barrier, ComponentClass cls) {
  int lo = INT_MAX, hi = INT_MIN;
  for (const Point& p : comp) lo = std::min(lo, p.u), hi = std::max(hi, p.u);
  for (const EdgeId& e : barrier) lo = std::min(lo, e.u), hi = std::max(hi, e.u);
  lo -= 4;
  hi += 4;
  if ((lo & 1) == 0) --lo;
  if ((hi & 1) == 0) ++hi;
  int top = 2 * board.n + 1;
  PointSet seen;
  std::deque<Point> queue;
  for (int u = lo; u <= hi; u += 2)
    for (int v = 1; v <= top; v += 2) {
      bool src = u == lo || u == hi || (v == top && cls != ComponentClass::Top) ||
                 (v == 1 && cls != ComponentClass::Bottom);
      if (src && seen.insert({u, v}).second) queue.push_back({u, v});
    }
  while (!queue.empty()) {
    Point p = queue.front();
    queue.pop_front();
    if (comp.count(p)) return false;
    for (const EdgeId& f : edges_around_dual(p)) {
      if (!board.contains(f) || barrier.count(f)) continue;
      auto [a, b] = dual_ends(f);
      Point q = a == p ? b : a;
      if (q.u < lo || q.u > hi) continue;
      if (seen.insert(q).second) queue.push_back(q);
    }
  }
  return true;
}

std::string check_simple_path(const std::vector<EdgeId>& path, const Ends& ends) {
  if (path.empty()) return "empty path";
  std::unordered_map<Point, int, PointHash> degree;
  for (const EdgeId& e : path) {
    auto [a, b] = primal_ends(e);
    ++degree[a];
    ++degree[b];
  }
  if (degree.size() != path.size() + 1 || !primal_connected(path)) return "path is not a simple path";
  for (auto& [p, d] : degree) {
    bool end = p == ends.a || p == ends.b;
    if (d != (end ? 1 : 2)) return "path does not join the required ends";
  }
  if (!degree.count(ends.a) || !degree.count(ends.b)) return "path misses an end";
  return "";
}

}  // namespace

nlohmann::json certificate_json(const SecurityCertificate& c) {
  json j;
  j["class"] = to_string(c.cls);
  j["component"] = edges_json(c.component);
  j["path"] = edges_json(c.path);
  if (auto* b = std::get_if<Bracket>(&c.closure)) {
    j["closure"] = {{"bracket", {{"kind", to_string(b->kind)}, {"anchor", {b->x, b->y}}}}};
  } else {
    const Gate& g = std::get<Gate>(c.closure);
    int row = -1;
    for (const EdgeId& e : c.component) {
      auto [a, b2] = dual_ends(e);
      for (const Point& p : {a, b2})
        if (g.top ? p.v > row : (row < 0 || p.v < row)) row = p.v;
    }
    int end_u = INT_MIN;
    for (const EdgeId& e : c.component) {
      auto [a, b2] = dual_ends(e);
      for (const Point& p : {a, b2})
        if (p.v == row) end_u = p.u;
    }
    bool extra = g.edge.u > end_u + 1;
    j["closure"] = {{"gate", edge_json(g.edge)}, {"top", g.top}, {"extra", extra}};
  }
  return j;
}

SecureState::SecureState(int n) : game(make_board(2, n, BoardKind::InfiniteStrip), 1, 1, Variant::Secure) {
  if (n < 2) throw std::invalid_argument("the secure game needs strip width at least 2");
}

int SecureState::owner(const Point& d) const {
  for (std::size_t i = 0; i < certs.size(); ++i)
    for (const EdgeId& e : certs[i].component) {
      auto [a, b] = dual_ends(e);
      if (a == d || b == d) return int(i);
    }
  return -1;
}

SecureCheck validate_certificate(const GameState& g, const SecurityCertificate& c, const DualComponent& comp) {
  auto fail = [](std::string why) { return SecureCheck{false, std::move(why)}; };
  const Board& board = g.board();
  int n = board.n;
  if (comp.edges != c.component) return fail("component mismatch");
  if (comp.cls != c.cls) return fail("class mismatch");
  if (comp.cls == ComponentClass::TopAndBottom) return fail("component crosses");
  if (comp.vertices.size() != comp.edges.size() + 1) return fail("component is not a tree");
  PointSet cv(comp.vertices.begin(), comp.vertices.end());
  int tops = 0, bottoms = 0;
  for (const Point& p : cv) tops += p.v == 2 * n + 1, bottoms += p.v == 1;
  if (tops > 1 || bottoms > 1) return fail("component has two end vertices on one side");

  for (const EdgeId& e : closure_edges(c.closure)) {
    if (!board.contains(e)) return fail("closure edge off board: " + to_string(e));
    if (g.claim(e) == Claim::Red) return fail("closure edge is red: " + to_string(e));
  }
  if (auto* b = std::get_if<Bracket>(&c.closure)) {
    if (c.cls != ComponentClass::Floating) return fail("bracket on a non-floating component");
    for (const Point& p : b->interior())
      if (!cv.count(p)) return fail("bracket interior outside component");
  } else {
    const Gate& gate = std::get<Gate>(c.closure);
    if (c.cls != (gate.top ? ComponentClass::Top : ComponentClass::Bottom)) return fail("gate on wrong side");
    if (!gate.edge.vertical() || gate.edge.v != (gate.top ? 2 * n - 1 : 3)) return fail("gate is not in the end row");
  }
  auto ends = path_ends(c.closure, cv, n);
  if (!ends) return fail("no unique end vertex");
  if (auto* gate = std::get_if<Gate>(&c.closure)) {
    int xp2 = gate->edge.u, xr2 = ends->b.u;
    if (xp2 < xr2 + 2) return fail("gate left of the end vertex");
    if (xp2 > xr2 + 2 && !g.blue_like(gate->edge)) return fail("extra gate not blue");
  }
  for (const EdgeId& e : c.path) {
    if (!board.contains(e) || !g.blue_like(e)) return fail("path edge not blue: " + to_string(e));
    auto [a, b] = dual_ends(e);
    if (!cv.count(a) && !cv.count(b)) return fail("path edge away from component: " + to_string(e));
  }
  if (auto why = check_simple_path(c.path, *ends); !why.empty()) return fail(why);
  EdgeSet barrier(c.path.begin(), c.path.end());
  for (const EdgeId& e : closure_edges(c.closure)) barrier.insert(e);
  if (!encloses(board, cv, barrier, c.cls)) return fail("component not enclosed");
  return {};
}

SecureCheck is_secure(const SecureState& s) {
  const GameState& g = s.game;
  auto comps = dual_components(g.board(), g.red_edges());
  if (comps.size() != s.certs.size())
    return {false, std::to_string(comps.size()) + " components, " + std::to_string(s.certs.size()) + " certificates"};
  std::map<EdgeId, const SecurityCertificate*> by_first;
  for (const auto& c : s.certs) {
    if (c.component.empty()) return {false, "empty certificate"};
    by_first[c.component.front()] = &c;
  }
  for (const auto& comp : comps) {
    auto it = by_first.find(comp.edges.front());
    if (it == by_first.end()) return {false, "no certificate for component at " + to_string(comp.edges.front())};
    SecureCheck r = validate_certificate(g, *it->second, comp);
    if (!r.ok) return {false, to_string(comp.edges.front()) + ": " + r.reason};
  }
  std::map<EdgeId, int> uses;
  for (const auto& c : s.certs)
    for (const EdgeId& e : c.path) ++uses[e];
  for (auto& [e, k] : uses) {
    if (k > 2) return {false, "path edge shared by three certificates: " + to_string(e)};
    if (k == 2 && g.claim(e) != Claim::BlueDouble) return {false, "shared path edge not doubled: " + to_string(e)};
  }
  return {};
}

namespace {

struct Plan {
  std::vector<EdgeId> plays;
  Closure closure;
  std::string label;
  std::vector<EdgeId> pool;  // path candidates besides the plays
};

Plan reflect_plan(const Reflection& r, Plan p) {
  for (EdgeId& e : p.plays) e = r.apply(e);
  if (auto* b = std::get_if<Bracket>(&p.closure)) p.closure = r.apply(*b);
  return p;
}

Plan case1(const EdgeId& e, int n) {
  if (e.horizontal()) {
    int x = (e.u - 1) / 2, y = e.v / 2;
    if (y == 1) return {{vedge(x, 1), hedge(x, 2)}, Gate{vedge(x + 1, 1), false}, "case1-bottom", {}};
    if (y == n) return {{vedge(x, n - 1), hedge(x, n - 1)}, Gate{vedge(x + 1, n - 1), true}, "case1-top", {}};
    return {{vedge(x, y), hedge(x, y + 1)}, Bracket{BracketKind::T3plus, x, y}, "case1", {}};
  }
  int x = e.u / 2, y = (e.v - 1) / 2;
  return {{vedge(x - 1, y), hedge(x - 1, y + 1)}, Bracket{BracketKind::T3minus, x - 1, y}, "case1", {}};
}

// Generic replies when e is a bracket edge and the new vertex is in the
// strip interior. T1 takes its bottom edges, T2 its first two edges, T3+
// all four; the remaining cases are reached by reflection.
std::optional<Plan> t1_generic(const Bracket& b, const EdgeId& e) {
  int x = b.x, y = b.y;
  if (e == at(x, y, 1, 0)) return Plan{{at(x, y, 0, -1), at(x, y, 4, 3)}, Bracket{BracketKind::T2, x, y - 1}, "case2a", {}};
  if (e == at(x, y, 3, 0)) return Plan{{at(x, y, 1, 0), at(x, y, 4, 3)}, Bracket{BracketKind::T3plus, x + 1, y}, "case2a", {}};
  return std::nullopt;
}

std::optional<Plan> t2_generic(const Bracket& b, const EdgeId& e, bool bottom) {
  int x = b.x, y = b.y;
  if (e == at(x, y, 1, 0)) {
    Closure c = bottom ? Closure{Gate{at(x, y, 2, 1), false}} : Closure{Bracket{BracketKind::T3plus, x, y}};
    return Plan{{at(x, y, 3, 2), at(x, y, 4, 3)}, c, "case2b", {}};
  }
  if (e == at(x, y, 2, 1)) return Plan{{}, Bracket{BracketKind::T1, x, y}, "case2b", {}};
  return std::nullopt;
}

std::optional<Plan> t3_generic(const Bracket& b, const EdgeId& e) {
  int x = b.x, y = b.y;
  if (e == at(x, y, 0, -1))
    return Plan{{at(x, y, -1, 0), at(x, y, -2, -1)}, Bracket{BracketKind::T1, x - 1, y - 1}, "case2c", {}};
  if (e == at(x, y, 1, -2))
    return Plan{{at(x, y, 0, -1), at(x, y, 2, 1)}, Bracket{BracketKind::T3plus, x, y - 1}, "case2c", {}};
  if (e == at(x, y, 2, -1))
    return Plan{{at(x, y, 0, -1), at(x, y, 2, 1)}, Bracket{BracketKind::T3minus, x, y - 1}, "case2c", {}};
  if (e == at(x, y, 2, 1))
    return Plan{{at(x, y, 0, -1), at(x, y, 3, 2)}, Bracket{BracketKind::T2, x, y - 1}, "case2c", {}};
  return std::nullopt;
}

template <class F>
std::optional<Plan> via_reflection(const Bracket& b, const EdgeId& e, F generic) {
  Reflection r = corner_swap(b);
  auto p = generic(r.apply(b), r.apply(e));
  if (!p) return std::nullopt;
  return reflect_plan(r, *p);
}

// e is an edge of bracket b and v2 the vertex it adds to the component.
std::optional<Plan> case2_bracket(const Bracket& b, const EdgeId& e, const Point& v2, int n) {
  int x = b.x, y = b.y;
  bool bottom = v2.v == 1, top = v2.v == 2 * n + 1;
  switch (b.kind) {
    case BracketKind::T1:
      if (bottom) {
        Gate g{at(x, y, 4, 1), false};
        if (e == at(x, y, 1, 0)) return Plan{{at(x, y, 4, 1), at(x, y, 4, 3)}, g, "case2a-bottom", {}};
        if (e == at(x, y, 3, 0)) return Plan{{at(x, y, 4, 3), at(x, y, 1, 0)}, g, "case2a-bottom", {}};
        return std::nullopt;
      }
      if (e.horizontal()) return t1_generic(b, e);
      return via_reflection(b, e, t1_generic);
    case BracketKind::T2:
      if (e == at(x, y, 1, 0) || e == at(x, y, 2, 1)) return t2_generic(b, e, bottom);
      return via_reflection(b, e, [](const Bracket& b2, const EdgeId& e2) { return t2_generic(b2, e2, false); });
    case BracketKind::T3plus:
      if (bottom) {
        // Reply as drawn in the construction figure: the printed offsets for
        // this sub-case put the plays one row too high.
        if (e == at(x, y, 1, -2) && y == 2)
          return Plan{{at(x, y, 0, -1), at(x, y, 2, 1)}, Gate{at(x, y, 2, -1), false}, "case2c-bottom", {}};
        return std::nullopt;
      }
      return t3_generic(b, e);
    case BracketKind::T3minus:
      if (bottom) {
        Gate g{at(x, y, 4, 1), false};
        if (e == at(x, y, 1, 0)) return Plan{{at(x, y, 3, 2), at(x, y, 4, 1)}, g, "case2d-bottom", {}};
        if (e == at(x, y, 3, 0)) return Plan{{at(x, y, 1, 0), at(x, y, 3, 2)}, g, "case2d-bottom", {}};
        return std::nullopt;
      }
      if (top) {
        if (e == at(x, y, 3, 2))
          return Plan{{at(x, y, 1, 0), at(x, y, 3, 0)}, Gate{at(x, y, 4, 1), true}, "case2d-top", {}};
        return std::nullopt;
      }
      if (auto p = via_reflection(b, e, t3_generic)) {
        p->label = "case2d";
        return p;
      }
      return std::nullopt;
  }
  return std::nullopt;
}

// Two floating components whose brackets share e. One bracket is brought
// to T3+ with e as its left edge (swapping roles and reflecting as needed)
// and the other is looked up relative to it.
std::optional<Plan> bracket_pair(const Bracket& b1, const Bracket& b2, const EdgeId& e) {
  for (int swap = 0; swap < 2; ++swap)
    for (int refl = 0; refl < 2; ++refl) {
      const Bracket& X = swap ? b2 : b1;
      const Bracket& Y = swap ? b1 : b2;
      std::optional<Reflection> r;
      if (refl) r = corner_swap(X);
      Bracket X2 = r ? r->apply(X) : X, Y2 = r ? r->apply(Y) : Y;
      EdgeId e2 = r ? r->apply(e) : e;
      int x = X2.x, y = X2.y;
      if (X2.kind != BracketKind::T3plus || e2 != at(x, y, 0, -1)) continue;
      struct Row {
        Bracket other;
        std::vector<EdgeId> plays;
        Bracket next;
        const char* label;
      };
      using K = BracketKind;
      const Row rows[] = {
          {{K::T1, x - 2, y - 2}, {at(x, y, -3, -4), at(x, y, 2, 1)}, {K::T2, x - 1, y - 2}, "case3a"},
          {{K::T1, x - 2, y - 1}, {at(x, y, -3, -2)}, {K::T1, x - 1, y - 1}, "case3b"},
          {{K::T2, x - 2, y - 2}, {at(x, y, -3, -4), at(x, y, -2, -3)}, {K::T1, x - 1, y - 1}, "case3c"},
          {{K::T3plus, x - 1, y - 1}, {at(x, y, -2, -3), at(x, y, 2, 1)}, {K::T2, x - 1, y - 2}, "case3d"},
          {{K::T3plus, x - 1, y}, {at(x, y, -2, -1)}, {K::T1, x - 1, y - 1}, "case3e"},
          {{K::T3minus, x - 2, y - 1}, {at(x, y, -3, -2), at(x, y, -1, 0)}, {K::T1, x - 1, y - 1}, "case3f"},
      };
      for (const Row& row : rows) {
        if (!(row.other == Y2)) continue;
        Plan p{row.plays, row.next, row.label, {}};
        if (r) p = reflect_plan(*r, p);
        if (swap || refl) p.label += "-reflected";
        return p;
      }
    }
  return std::nullopt;
}

std::vector<Plan> case3(const SecurityCertificate& A, const SecurityCertificate& B, const EdgeId& e) {
  auto pool_of = [&](std::vector<EdgeId> extra) {
    std::vector<EdgeId> pool = A.path;
    pool.insert(pool.end(), B.path.begin(), B.path.end());
    pool.insert(pool.end(), extra.begin(), extra.end());
    return pool;
  };
  bool inA = contains(A.path, e), inB = contains(B.path, e);
  const Bracket* ba = std::get_if<Bracket>(&A.closure);
  const Bracket* bb = std::get_if<Bracket>(&B.closure);
  if (inA && inB) {
    if (!ba || !bb) throw ContractViolation("shared path edge between non-floating components");
    // Claim one bracket and close with the other. Which one works depends
    // on how the two cycles overlap, so both are offered.
    auto ea = ba->edges(), eb = bb->edges();
    std::vector<EdgeId> pa(ea.begin(), ea.end()), pb(eb.begin(), eb.end());
    return {Plan{pa, *bb, "case3-paths", pool_of(pa)}, Plan{pb, *ba, "case3-paths", pool_of(pb)}};
  }
  if (inA || inB) {
    const SecurityCertificate& X = inA ? A : B;  // path holder
    const SecurityCertificate& Y = inA ? B : A;
    const Bracket* by = std::get_if<Bracket>(&Y.closure);
    if (!by || !by->has_edge(e)) return {};
    std::vector<EdgeId> plays;
    for (const EdgeId& f : by->edges())
      if (f != e) plays.push_back(f);
    return {Plan{plays, X.closure, "case3-path-bracket", pool_of(plays)}};
  }
  const Gate* ga = std::get_if<Gate>(&A.closure);
  const Gate* gb = std::get_if<Gate>(&B.closure);
  if ((ga && ga->edge == e && bb) || (gb && gb->edge == e && ba)) {
    const Gate& g = ga && ga->edge == e ? *ga : *gb;
    const Bracket& other = ga && ga->edge == e ? *bb : *ba;
    int x = e.u / 2;
    if (g.top || other.kind != BracketKind::T3plus || other.x != x || other.y != 2)
      throw ContractViolation("gate " + to_string(e) + " meets an unexpected bracket");
    std::vector<EdgeId> plays{vedge(x + 1, 1), vedge(x + 1, 2)};
    return {Plan{plays, Gate{vedge(x + 1, 1), false}, "case3-gate", pool_of({vedge(x + 1, 2)})}};
  }
  if (ba && bb && ba->has_edge(e) && bb->has_edge(e)) {
    if (auto p = bracket_pair(*ba, *bb, e)) {
      p->pool = pool_of(p->plays);
      return {*p};
    }
  }
  return {};
}

// One component lies inside the other's securing cycle, so the outer
// certificate still encloses the union.
std::vector<Plan> nested(const SecurityCertificate& A, const SecurityCertificate& B, const EdgeId& e) {
  std::vector<Plan> out;
  for (const SecurityCertificate* X : {&A, &B}) {
    if (contains(X->path, e) || contains(closure_edges(X->closure), e)) continue;
    out.push_back(Plan{{}, X->closure, "case3-nested", X->path});
  }
  return out;
}

// Least unclaimed edges at or right of the fallback cursor, which is kept
// clear of all red edges.
std::vector<EdgeId> fallback_edges(SecureState& s, int k, const std::set<EdgeId>& taken,
                                   const std::function<bool(const EdgeId&)>& usable) {
  std::vector<EdgeId> out;
  if (k <= 0) return out;
  int n = s.n();
  int max_red = INT_MIN;
  for (auto& [e, c] : s.game.claims())
    if (c == Claim::Red) max_red = std::max(max_red, e.u);
  int u = s.fallback_cursor;
  if (max_red != INT_MIN) u = std::max(u, max_red + 12);
  for (; int(out.size()) < k; ++u)
    for (int v = 2; v <= 2 * n && int(out.size()) < k; ++v) {
      EdgeId e{u, v};
      if (!e.valid() || !s.game.board().contains(e) || !s.game.unclaimed(e) || taken.count(e) || !usable(e)) continue;
      out.push_back(e);
    }
  s.fallback_cursor = u;
  return out;
}

// Depth-first search for a blue path between the ends that, together with
// the closure, encloses the component.
std::optional<std::vector<EdgeId>> extract_path(const GameState& g, const std::vector<EdgeId>& pool, const Ends& ends,
                                                const Closure& closure, const PointSet& comp, ComponentClass cls) {
  auto closure_es = closure_edges(closure);
  std::map<Point, std::vector<std::pair<Point, EdgeId>>> adj;
  std::set<EdgeId> usable;
  for (const EdgeId& e : pool) {
    if (!g.blue_like(e)) continue;
    auto [a, b] = dual_ends(e);
    if (!comp.count(a) && !comp.count(b)) continue;
    usable.insert(e);
  }
  for (const EdgeId& e : usable) {
    auto [a, b] = primal_ends(e);
    adj[a].push_back({b, e});
    adj[b].push_back({a, e});
  }
  std::vector<EdgeId> path;
  std::set<Point> on_path{ends.a};
  long budget = 200000;
  std::optional<std::vector<EdgeId>> found;
  std::function<void(const Point&)> dfs = [&](const Point& p) {
    if (found || --budget < 0) return;
    if (p == ends.b) {
      EdgeSet barrier(path.begin(), path.end());
      for (const EdgeId& e : closure_es) barrier.insert(e);
      if (encloses(g.board(), comp, barrier, cls)) found = path;
      return;
    }
    for (auto& [q, e] : adj[p]) {
      if (on_path.count(q)) continue;
      on_path.insert(q);
      path.push_back(e);
      dfs(q);
      path.pop_back();
      on_path.erase(q);
      if (found) return;
    }
  };
  dfs(ends.a);
  return found;
}

// Closures worth trying for a component: every bracket whose interior lies
// in it, or the gates right of its end vertex.
std::vector<Closure> candidate_closures(const PointSet& comp, ComponentClass cls, int n) {
  std::vector<Closure> out;
  if (cls == ComponentClass::Floating) {
    std::set<std::tuple<int, int, int>> seen;
    for (const Point& p : comp)
      for (BracketKind k : {BracketKind::T1, BracketKind::T2, BracketKind::T3plus, BracketKind::T3minus})
        for (int dx = -2; dx <= 0; ++dx)
          for (int dy = -2; dy <= 1; ++dy) {
            Bracket b{k, (p.u - 1) / 2 + dx, (p.v - 1) / 2 + dy};
            if (!seen.insert({int(k), b.x, b.y}).second) continue;
            auto in = b.interior();
            if (std::all_of(in.begin(), in.end(), [&](const Point& q) { return comp.count(q) != 0; }))
              out.push_back(b);
          }
    return out;
  }
  bool top = cls == ComponentClass::Top;
  int row = top ? 2 * n + 1 : 1, hi = INT_MIN, end_u = 0;
  for (const Point& p : comp) {
    hi = std::max(hi, p.u);
    if (p.v == row) end_u = p.u;
  }
  for (int u2 = end_u + 1; u2 <= hi + 3; u2 += 2) out.push_back(Gate{EdgeId{u2, top ? 2 * n - 1 : 3}, top});
  return out;
}

void sync_floating_paths(SecureState& s) {
  std::unordered_set<EdgeId, EdgeHash> es;
  for (const auto& c : s.certs)
    if (c.cls == ComponentClass::Floating) es.insert(c.path.begin(), c.path.end());
  s.game.set_floating_path_edges(std::move(es));
}

}  // namespace

SecureResponse respond_secure(SecureState& s, const EdgeId& e) {
  GameState& g = s.game;
  int n = s.n();
  auto [d1, d2] = dual_ends(e);
  int c1 = s.owner(d1), c2 = s.owner(d2);
  g.apply(Move{Player::Breaker, {e}, ""});
  if (g.verdict() != Verdict::Ongoing) throw ContractViolation("red crossing after " + to_string(e));
  int budget = g.owed();

  std::vector<Plan> plans;
  std::vector<int> merged;
  if (c1 < 0 && c2 < 0) {
    plans = {case1(e, n)};
  } else if (c1 >= 0 && c2 >= 0) {
    plans = case3(s.certs[c1], s.certs[c2], e);
    for (Plan& p : nested(s.certs[c1], s.certs[c2], e)) plans.push_back(std::move(p));
    if (plans.empty()) throw ContractViolation("no reply for edge " + to_string(e) + " joining two components");
    merged = {c1, c2};
  } else {
    int ci = c1 >= 0 ? c1 : c2;
    Point inside = c1 >= 0 ? d1 : d2, v2 = c1 >= 0 ? d2 : d1;
    const SecurityCertificate& C = s.certs[ci];
    merged = {ci};
    const Gate* gate = std::get_if<Gate>(&C.closure);
    const Bracket* bracket = std::get_if<Bracket>(&C.closure);
    Plan plan;
    if (contains(C.path, e)) {
      for (const EdgeId& f : edges_around_dual(v2))
        if (f != e && g.board().contains(f)) plan.plays.push_back(f);
      plan.closure = C.closure;
      plan.label = "case2-path";
    } else if (gate && gate->edge == e) {
      if (inside.u > v2.u) throw ContractViolation("gate " + to_string(e) + " claimed from the right");
      int x = e.u / 2;
      int row = gate->top ? n - 1 : 1;
      int far = gate->top ? n - 1 : 2;
      plan = {{hedge(x, far), vedge(x + 1, row)}, Gate{vedge(x + 1, row), gate->top}, "case2-gate", {}};
    } else if (bracket && bracket->has_edge(e)) {
      auto p = case2_bracket(*bracket, e, v2, n);
      if (!p) throw ContractViolation("no reply for bracket edge " + to_string(e));
      plan = *p;
    } else {
      plan.closure = C.closure;
      plan.label = "case2-interior";
    }
    plan.pool = C.path;
    plan.pool.insert(plan.pool.end(), plan.plays.begin(), plan.plays.end());
    plans = {plan};
  }

  std::set<EdgeId> comp_edges{e};
  for (int i : merged) comp_edges.insert(s.certs[i].component.begin(), s.certs[i].component.end());
  DualComponent dc;
  dc.edges.assign(comp_edges.begin(), comp_edges.end());
  PointSet cv = vertices_of(dc.edges);
  dc.vertices.assign(cv.begin(), cv.end());
  std::sort(dc.vertices.begin(), dc.vertices.end());
  dc.cls = classify(cv, n);

  std::string failure;
  for (Plan& plan : plans) {
    if (plan.pool.empty()) plan.pool = plan.plays;
    std::set<EdgeId> taken;
    std::vector<EdgeId> reply;
    for (const EdgeId& f : plan.plays) {
      if (!taken.insert(f).second) continue;
      if (!g.board().contains(f) || g.claim(f) == Claim::Red)
        throw ContractViolation(plan.label + ": cannot play " + to_string(f));
      reply.push_back(f);
    }
    if (int(reply.size()) > budget) throw ContractViolation(plan.label + ": reply exceeds budget");
    int cursor = s.fallback_cursor;
    auto extra = fallback_edges(s, budget - int(reply.size()), taken, [](const EdgeId&) { return true; });
    reply.insert(reply.end(), extra.begin(), extra.end());
    GameState trial(g);
    trial.apply(Move{Player::Maker, reply, plan.label});

    SecurityCertificate cert;
    cert.component = dc.edges;
    cert.cls = dc.cls;
    cert.closure = plan.closure;
    auto ends = path_ends(cert.closure, cv, n);
    std::optional<std::vector<EdgeId>> path;
    if (ends) path = extract_path(trial, plan.pool, *ends, cert.closure, cv, cert.cls);
    SecureCheck check{false, "no securing path"};
    if (path) {
      cert.path = *path;
      check = validate_certificate(trial, cert, dc);
    }
    if (!check.ok) {
      // The planned closure can fail when an old path runs along its own
      // bracket; fall back to searching all closures on the blue edges
      // around the new component.
      std::vector<EdgeId> pool;
      for (auto& [f, c] : trial.claims())
        if (c == Claim::Blue || c == Claim::BlueDouble) {
          auto [a, b] = dual_ends(f);
          if (cv.count(a) || cv.count(b)) pool.push_back(f);
        }
      std::sort(pool.begin(), pool.end());
      for (const Closure& cl : candidate_closures(cv, dc.cls, n)) {
        auto cl_ends = path_ends(cl, cv, n);
        if (!cl_ends) continue;
        bool red = false;
        for (const EdgeId& f : closure_edges(cl)) red = red || !trial.board().contains(f) || trial.claim(f) == Claim::Red;
        if (red) continue;
        auto p2 = extract_path(trial, pool, *cl_ends, cl, cv, dc.cls);
        if (!p2) continue;
        SecurityCertificate alt = cert;
        alt.closure = cl;
        alt.path = *p2;
        if (validate_certificate(trial, alt, dc).ok) {
          cert = alt;
          check = {};
          plan.label += "+recertified";
          break;
        }
      }
    }
    if (!check.ok) {
      failure = plan.label + " after " + to_string(e) + ": " + check.reason;
      s.fallback_cursor = cursor;
      continue;
    }
    g = std::move(trial);
    std::sort(merged.rbegin(), merged.rend());
    for (int i : merged) s.certs.erase(s.certs.begin() + i);
    s.certs.push_back(std::move(cert));
    sync_floating_paths(s);
    return {reply, plan.label};
  }
  throw ContractViolation(failure);
}

std::vector<EdgeId> order_moves(const Board& board, const std::vector<EdgeId>& red_before, const std::vector<EdgeId>& d) {
  std::vector<EdgeId> all(red_before);
  all.insert(all.end(), d.begin(), d.end());
  std::map<EdgeId, int> dist;
  for (const auto& comp : dual_components(board, all)) {
    std::unordered_map<Point, int, PointHash> depth;
    if (comp.cls != ComponentClass::Floating) {
      // Distances from the end vertex (the bottom one if both exist).
      int row = comp.cls == ComponentClass::Top ? board.dual_top() : board.dual_bottom();
      std::unordered_map<Point, std::vector<Point>, PointHash> adj;
      for (const EdgeId& e : comp.edges) {
        auto [a, b] = dual_ends(e);
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
      std::deque<Point> queue;
      for (const Point& p : comp.vertices)
        if (p.v == row) depth[p] = 0, queue.push_back(p);
      while (!queue.empty()) {
        Point p = queue.front();
        queue.pop_front();
        for (const Point& q : adj[p])
          if (!depth.count(q)) depth[q] = depth[p] + 1, queue.push_back(q);
      }
    }
    for (const EdgeId& e : comp.edges) {
      auto [a, b] = dual_ends(e);
      dist[e] = depth.empty() ? 0 : std::min(depth[a], depth[b]);
    }
  }
  std::vector<EdgeId> out(d);
  std::sort(out.begin(), out.end(), [&](const EdgeId& x, const EdgeId& y) {
    return std::pair(dist[x], x) < std::pair(dist[y], y);
  });
  return out;
}

std::vector<EdgeId> double_response(SecureState& s, const GameState& real, const std::vector<EdgeId>& d) {
  std::set<EdgeId> dset(d.begin(), d.end());
  std::vector<EdgeId> red_before;
  for (const EdgeId& e : real.red_edges())
    if (!dset.count(e)) red_before.push_back(e);
  std::set<EdgeId> blue_before;
  for (const EdgeId& e : s.game.blue_edges()) blue_before.insert(e);
  for (const EdgeId& e : order_moves(real.board(), red_before, d)) respond_secure(s, e);

  std::vector<EdgeId> reply;
  std::set<EdgeId> taken;
  for (const EdgeId& e : s.game.blue_edges())
    if (!blue_before.count(e) && real.board().contains(e) && real.unclaimed(e)) reply.push_back(e), taken.insert(e);
  std::size_t need = 2 * d.size();
  if (real.board().finite()) need = std::min(need, real.unclaimed_count());
  if (reply.size() > need) throw ContractViolation("double response produced more than 2r edges");
  std::size_t short_by = need - reply.size();
  if (real.board().finite()) {
    for (const EdgeId& e : edge_set(real.board())) {
      if (reply.size() == need) break;
      if (real.unclaimed(e) && !taken.count(e)) reply.push_back(e), taken.insert(e);
    }
  } else {
    // Padding edges stay unclaimed in the shadow game; the cursor moves past
    // them so later fallbacks never reuse them.
    auto pad = fallback_edges(s, int(short_by), taken, [&](const EdgeId& e) { return real.unclaimed(e); });
    reply.insert(reply.end(), pad.begin(), pad.end());
  }
  return reply;
}

int min_dual_break(const GameState& g) {
  const Board& board = g.board();
  int n = board.n;
  int lo, hi;
  if (board.finite()) {
    lo = 1, hi = 2 * board.m + 1;
  } else {
    lo = INT_MAX, hi = INT_MIN;
    for (auto& [e, c] : g.claims()) lo = std::min(lo, e.u), hi = std::max(hi, e.u);
    if (lo > hi) return n;
    lo -= 2 * n + 4, hi += 2 * n + 4;
    if ((lo & 1) == 0) --lo;
    if ((hi & 1) == 0) ++hi;
  }
  auto usable = [&](const EdgeId& f) {
    if (!board.contains(f)) return false;
    if (board.kind == BoardKind::Lambda && f.vertical() && (f.u == 2 || f.u == 2 * board.m)) return false;
    return true;
  };
  const int inf = std::numeric_limits<int>::max();
  std::unordered_map<Point, int, PointHash> best;
  std::deque<Point> dq;
  for (int u = lo; u <= hi; u += 2) best[{u, 1}] = 0, dq.push_back({u, 1});
  while (!dq.empty()) {
    Point p = dq.front();
    dq.pop_front();
    int dp = best[p];
    if (p.v == 2 * n + 1) return dp;
    for (const EdgeId& f : edges_around_dual(p)) {
      if (!usable(f)) continue;
      Claim c = g.claim(f);
      if (c == Claim::Blue || c == Claim::BlueDouble) continue;
      int w = c == Claim::Red ? 0 : 1;
      auto [a, b] = dual_ends(f);
      Point q = a == p ? b : a;
      if (q.u < lo || q.u > hi) continue;
      auto it = best.find(q);
      if (it != best.end() && it->second <= dp + w) continue;
      best[q] = dp + w;
      if (w == 0)
        dq.push_front(q);
      else
        dq.push_back(q);
    }
  }
  return inf;
}

}  // namespace crossing
