#include "crossing/switching.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <unordered_map>

#include "crossing/errors.hpp"

namespace crossing {

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a), b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

}  // namespace

int Multigraph::add_edge(int a, int b) {
  if (a < 0 || b < 0 || a >= vertex_count || b >= vertex_count) throw std::invalid_argument("edge endpoint out of range");
  edges.emplace_back(a, b);
  return int(edges.size()) - 1;
}

int Multigraph::multiplicity(int u, int v) const {
  int c = 0;
  for (auto [a, b] : edges)
    if ((a == u && b == v) || (a == v && b == u)) ++c;
  return c;
}

bool connected_spanning(const Multigraph& g, const std::vector<int>& edge_ids) {
  if (g.vertex_count <= 1) return true;
  Dsu d(g.vertex_count);
  int comps = g.vertex_count;
  for (int e : edge_ids)
    if (d.unite(g.edges[e].first, g.edges[e].second)) --comps;
  return comps == 1;
}

std::optional<std::vector<std::vector<int>>> is_k_positive(const Multigraph& g, int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  int need = g.vertex_count - 1;
  if (need <= 0) return std::vector<std::vector<int>>(k);
  int m = int(g.edges.size());
  if (m < k * need) return std::nullopt;

  // Assign each edge to one of k forests or leave it out; forests are
  // interchangeable so an edge may open at most one new forest.
  std::vector<std::vector<int>> forests(k);
  std::vector<std::vector<int>> comp(k, std::vector<int>(g.vertex_count));
  for (auto& c : comp) std::iota(c.begin(), c.end(), 0);
  auto root = [](std::vector<int>& c, int x) {
    while (c[x] != x) x = c[x];
    return x;
  };
  std::function<bool(int, int)> rec = [&](int idx, int placed) -> bool {
    if (placed == k * need) return true;
    if (placed + (m - idx) < k * need) return false;
    auto [a, b] = g.edges[idx];
    bool opened_empty = false;
    for (int i = 0; i < k; ++i) {
      if (forests[i].size() == std::size_t(need)) continue;
      if (forests[i].empty()) {
        if (opened_empty) continue;
        opened_empty = true;
      }
      int ra = root(comp[i], a), rb = root(comp[i], b);
      if (ra == rb) continue;
      comp[i][rb] = ra;
      forests[i].push_back(idx);
      if (rec(idx + 1, placed + 1)) return true;
      forests[i].pop_back();
      comp[i][rb] = rb;
    }
    return rec(idx + 1, placed);
  };
  if (!rec(0, 0)) return std::nullopt;
  return forests;
}

SwitchingPosition::SwitchingPosition(Multigraph g, int a_, int b_, std::vector<std::vector<int>> spanning_)
    : graph(std::move(g)), a(a_), b(b_), safe(graph.edges.size(), 0), deleted(graph.edges.size(), 0),
      spanning(std::move(spanning_)) {}

std::vector<int> SwitchingPosition::current(int i) const {
  std::vector<char> in(graph.edges.size(), 0);
  for (int e : spanning[i])
    if (!deleted[e]) in[e] = 1;
  for (std::size_t e = 0; e < safe.size(); ++e)
    if (safe[e]) in[e] = 1;
  std::vector<int> out;
  for (std::size_t e = 0; e < in.size(); ++e)
    if (in[e]) out.push_back(int(e));
  return out;
}

bool SwitchingPosition::invariant_holds() const {
  for (std::size_t i = 0; i < safe.size(); ++i)
    if (safe[i] && deleted[i]) return false;
  for (std::size_t i = 0; i < spanning.size(); ++i)
    if (!connected_spanning(graph, current(int(i)))) return false;
  return true;
}

bool SwitchingPosition::joined() const {
  Dsu d(graph.vertex_count);
  for (std::size_t e = 0; e < safe.size(); ++e)
    if (safe[e]) d.unite(graph.edges[e].first, graph.edges[e].second);
  return d.find(a) == d.find(b);
}

std::optional<int> SwitchingPosition::least_unsafe() const {
  for (std::size_t e = 0; e < safe.size(); ++e)
    if (unsafe(int(e))) return int(e);
  return std::nullopt;
}

namespace {

// Component labels of G_i^t.
std::vector<int> labels(const SwitchingPosition& pos, int i) {
  Dsu d(pos.graph.vertex_count);
  for (int e : pos.current(i)) d.unite(pos.graph.edges[e].first, pos.graph.edges[e].second);
  std::vector<int> out(pos.graph.vertex_count);
  for (int v = 0; v < pos.graph.vertex_count; ++v) out[v] = d.find(v);
  return out;
}

// Edge path from x to y in G_j^t, following edges in index order.
std::vector<int> path_in(const SwitchingPosition& pos, int j, int x, int y) {
  int nv = pos.graph.vertex_count;
  std::vector<std::vector<std::pair<int, int>>> adj(nv);
  for (int e : pos.current(j)) {
    auto [a, b] = pos.graph.edges[e];
    adj[a].push_back({b, e});
    adj[b].push_back({a, e});
  }
  std::vector<int> via(nv, -1), prev(nv, -1);
  std::vector<char> seen(nv, 0);
  std::deque<int> queue{x};
  seen[x] = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (v == y) break;
    for (auto [w, e] : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        via[w] = e;
        prev[w] = v;
        queue.push_back(w);
      }
  }
  if (!seen[y]) throw InvariantBroken("no path in spanning subgraph " + std::to_string(j));
  std::vector<int> edges;
  for (int v = y; v != x; v = prev[v]) edges.push_back(via[v]);
  std::reverse(edges.begin(), edges.end());
  return edges;
}

}  // namespace

std::vector<int> kk_join_move(SwitchingPosition& pos, const std::vector<int>& cuts) {
  for (int c : cuts) {
    if (c < 0 || std::size_t(c) >= pos.safe.size()) throw std::invalid_argument("cut edge out of range");
    if (!pos.unsafe(c)) throw std::invalid_argument("cut edge is already safe or deleted");
  }
  for (int c : cuts) pos.deleted[c] = 1;
  int k = int(pos.spanning.size());
  std::vector<char> broken(k, 0);
  for (int i = 0; i < k; ++i) broken[i] = !connected_spanning(pos.graph, pos.current(i));
  std::vector<int> saved;
  for (int i = 0; i < k; ++i) {
    if (!broken[i]) continue;
    int j = -1;
    for (int c = 0; c < k; ++c)
      if (c != i && !broken[c]) {
        j = c;
        break;
      }
    if (j < 0) throw InvariantBroken("no intact spanning subgraph to repair from");
    for (int c : cuts) {
      auto lab = labels(pos, i);
      auto [x, y] = pos.graph.edges[c];
      if (lab[x] == lab[y]) continue;
      std::vector<int> path = path_in(pos, j, x, y);
      int f = -1;
      for (int e : path) {
        auto [p, q] = pos.graph.edges[e];
        if (lab[p] != lab[q]) {
          f = e;
          break;
        }
      }
      if (f < 0 || !pos.unsafe(f)) throw InvariantBroken("repair edge not available");
      pos.safe[f] = 1;
      saved.push_back(f);
    }
    if (!connected_spanning(pos.graph, pos.current(i))) throw InvariantBroken("repair left subgraph disconnected");
    broken[i] = 0;
  }
  return saved;
}

std::optional<int> join_move(SwitchingPosition& pos, int cut) {
  auto saved = kk_join_move(pos, {cut});
  if (saved.empty()) return std::nullopt;
  return saved.front();
}

int BridgitSetup::index_of(const EdgeId& e) const {
  auto it = std::lower_bound(board_edges.begin(), board_edges.end(), e);
  if (it == board_edges.end() || *it != e) return -1;
  return int(it - board_edges.begin());
}

BridgitSetup bridgit_setup(int n, const EdgeId& first) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  Board board = make_board(n + 1, n, BoardKind::S);
  if (!board.contains(first)) throw std::invalid_argument("first edge " + to_string(first) + " is not on the board");
  BridgitSetup s;
  s.n = n;
  s.first = first;
  s.board_edges = edge_set(board);

  // Green horizontal edge hedge(x,y) occupies column x in [1,n] and row y.
  std::vector<char> col_used(n + 2, 0), row_used(n + 2, 0);
  if (first.horizontal()) {
    int x = (first.u - 1) / 2, y = first.v / 2;
    col_used[x] = row_used[y] = 1;
  } else {
    int x = first.u / 2, y = (first.v - 1) / 2;
    EdgeId f1 = hedge(x, y), f2 = hedge(x - 1, y + 1);
    s.recolored = {f1, f2};
    col_used[x] = row_used[y] = 1;
    col_used[x - 1] = row_used[y + 1] = 1;
  }
  std::vector<int> free_cols, free_rows;
  for (int x = 1; x <= n; ++x)
    if (!col_used[x]) free_cols.push_back(x);
  for (int y = 1; y <= n; ++y)
    if (!row_used[y]) free_rows.push_back(y);
  for (std::size_t i = 0; i < free_cols.size(); ++i) s.recolored.push_back(hedge(free_cols[i], free_rows[i]));
  std::sort(s.recolored.begin(), s.recolored.end());

  Multigraph g;
  g.vertex_count = 2 + (n - 1) * n;
  auto vid = [&](const Point& p) {
    int x = p.u / 2, y = p.v / 2;
    if (x == 1) return 0;
    if (x == n + 1) return 1;
    return 2 + (x - 2) * n + (y - 1);
  };
  std::vector<int> g1, g2;
  for (std::size_t i = 0; i < s.board_edges.size(); ++i) {
    const EdgeId& e = s.board_edges[i];
    auto [p, q] = primal_ends(e);
    g.add_edge(vid(p), vid(q));
    bool in_a = std::binary_search(s.recolored.begin(), s.recolored.end(), e);
    bool green = e.horizontal() && !in_a;
    if (e == first) {
      g1.push_back(int(i));
      g2.push_back(int(i));
    } else if (green) {
      g1.push_back(int(i));
    } else {
      g2.push_back(int(i));
    }
  }
  s.position = SwitchingPosition(g, 0, 1, {g1, g2});
  s.position.safe[s.index_of(first)] = 1;
  s.triple = GameTriple{g, {0}, {1}};
  if (!s.position.invariant_holds()) throw ContractViolation("Bridg-it setup produced a disconnected subgraph");
  return s;
}

BridgitMaker::BridgitMaker(int n, const EdgeId& first) : setup_(bridgit_setup(n, first)) {}

bool BridgitMaker::owns(const EdgeId& e) const { return setup_.index_of(e) >= 0; }

void BridgitMaker::absorb(const EdgeId& breaker_edge) {
  int idx = setup_.index_of(breaker_edge);
  if (idx < 0 || !setup_.position.unsafe(idx)) return;
  if (std::find(pending_.begin(), pending_.end(), idx) == pending_.end()) pending_.push_back(idx);
}

std::optional<EdgeId> BridgitMaker::reply() {
  std::vector<int> cuts;
  cuts.swap(pending_);
  auto saved = kk_join_move(setup_.position, cuts);
  if (!saved.empty()) return setup_.board_edges[saved.front()];
  auto f = setup_.position.least_unsafe();
  if (!f) return std::nullopt;
  setup_.position.safe[*f] = 1;
  return setup_.board_edges[*f];
}

std::optional<EdgeId> BridgitMaker::respond(const EdgeId& breaker_edge) {
  absorb(breaker_edge);
  return reply();
}

void BridgitMaker::claim_extra(const EdgeId& e) {
  int idx = setup_.index_of(e);
  if (idx >= 0 && setup_.position.unsafe(idx)) setup_.position.safe[idx] = 1;
}

Multigraph vertex_separation(const Multigraph& g, int v, const SeparationAssignment& asg) {
  if (v < 0 || v >= g.vertex_count) throw std::invalid_argument("vertex out of range");
  std::unordered_map<int, int> side, fate;
  for (auto [e, s] : asg.incidences) side[e] = s;
  for (auto [e, f] : asg.loops) fate[e] = f;
  Multigraph out;
  out.vertex_count = g.vertex_count + 1;
  int v2 = g.vertex_count;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    auto [a, b] = g.edges[i];
    int e = int(i);
    if (a == v && b == v) {
      auto it = fate.find(e);
      if (it == fate.end() || it->second < 0 || it->second > 2)
        throw std::invalid_argument("loop " + std::to_string(e) + " at separated vertex needs a fate in {0,1,2}");
      if (it->second == 0) out.edges.emplace_back(v, v2);
      else if (it->second == 1) out.edges.emplace_back(v, v);
      else out.edges.emplace_back(v2, v2);
    } else if (a == v || b == v) {
      auto it = side.find(e);
      if (it == side.end() || (it->second != 1 && it->second != 2))
        throw std::invalid_argument("edge " + std::to_string(e) + " at separated vertex needs side 1 or 2");
      int nv = it->second == 1 ? v : v2;
      out.edges.emplace_back(a == v ? nv : a, b == v ? nv : b);
    } else {
      out.edges.emplace_back(a, b);
    }
  }
  out.edges.emplace_back(v, v2);
  return out;
}

Multigraph edge_contraction(const Multigraph& g, int e) {
  if (e < 0 || std::size_t(e) >= g.edges.size()) throw std::invalid_argument("edge out of range");
  auto [a, b] = g.edges[e];
  Multigraph out;
  if (a == b) {
    out = g;
    out.edges.erase(out.edges.begin() + e);
    return out;
  }
  int keep = std::min(a, b), gone = std::max(a, b);
  auto map = [&](int x) {
    if (x == gone) return keep;
    return x > gone ? x - 1 : x;
  };
  out.vertex_count = g.vertex_count - 1;
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    if (int(i) != e) out.edges.emplace_back(map(g.edges[i].first), map(g.edges[i].second));
  return out;
}

namespace {

void erase_vertex_terminal(std::vector<int>& s, int v) {
  std::vector<int> out;
  for (int x : s) {
    if (x == v) continue;
    out.push_back(x > v ? x - 1 : x);
  }
  s = out;
}

}  // namespace

GameTriple monotone_reduce(GameTriple t, const std::vector<ReduceOp>& ops) {
  for (const ReduceOp& op : ops) {
    Multigraph& g = t.graph;
    switch (op.kind) {
      case ReduceOp::DeleteEdge:
        if (op.target < 0 || std::size_t(op.target) >= g.edges.size()) throw std::invalid_argument("edge out of range");
        g.edges.erase(g.edges.begin() + op.target);
        break;
      case ReduceOp::DeleteVertex: {
        int v = op.target;
        if (v < 0 || v >= g.vertex_count) throw std::invalid_argument("vertex out of range");
        Multigraph out;
        out.vertex_count = g.vertex_count - 1;
        for (auto [a, b] : g.edges) {
          if (a == v || b == v) continue;
          out.edges.emplace_back(a > v ? a - 1 : a, b > v ? b - 1 : b);
        }
        g = out;
        erase_vertex_terminal(t.A, v);
        erase_vertex_terminal(t.B, v);
        break;
      }
      case ReduceOp::Separate: {
        int v = op.target;
        g = vertex_separation(g, v, op.assignment);
        int v2 = g.vertex_count - 1;
        for (auto* s : {&t.A, &t.B}) {
          if (std::find(s->begin(), s->end(), v) == s->end()) continue;
          if (op.side_for_terminals == 2) std::replace(s->begin(), s->end(), v, v2);
          else if (op.side_for_terminals == 3) s->push_back(v2);
        }
        break;
      }
      case ReduceOp::Contract: {
        auto [a, b] = g.edges.at(op.target);
        g = edge_contraction(g, op.target);
        if (a != b) {
          int keep = std::min(a, b), gone = std::max(a, b);
          for (auto* s : {&t.A, &t.B}) {
            for (int& x : *s) x = x == gone ? keep : (x > gone ? x - 1 : x);
            std::sort(s->begin(), s->end());
            s->erase(std::unique(s->begin(), s->end()), s->end());
          }
        }
        break;
      }
    }
  }
  return t;
}

bool shannon_maker_wins(const GameTriple& t, int p, int q, bool breaker_first) {
  const Multigraph& g = t.graph;
  int m = int(g.edges.size());
  if (m > 24) throw LimitExceeded("shannon_maker_wins is limited to 24 edges");
  auto ab_connected = [&](std::uint32_t mask) {
    Dsu d(g.vertex_count);
    for (int e = 0; e < m; ++e)
      if (mask >> e & 1) d.unite(g.edges[e].first, g.edges[e].second);
    for (int a : t.A)
      for (int b : t.B)
        if (d.find(a) == d.find(b)) return true;
    return false;
  };
  std::uint32_t all = m == 32 ? ~0u : ((1u << m) - 1);
  std::unordered_map<std::uint64_t, bool> memo;
  // Returns true iff Maker wins with `maker_turn` to move.
  std::function<bool(std::uint32_t, std::uint32_t, bool)> rec = [&](std::uint32_t mk, std::uint32_t br, bool maker_turn) {
    if (ab_connected(mk)) return true;
    if (!ab_connected(all & ~br)) return false;
    std::uint64_t key = (std::uint64_t(mk) << 32 | br) * 2 + maker_turn;
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::uint32_t free = all & ~mk & ~br;
    int quota = std::min(maker_turn ? p : q, __builtin_popcount(free));
    std::vector<int> idx;
    for (int e = 0; e < m; ++e)
      if (free >> e & 1) idx.push_back(e);
    bool result = !maker_turn;
    std::vector<int> pick;
    std::function<bool(std::size_t)> choose = [&](std::size_t from) -> bool {
      if (int(pick.size()) == quota) {
        std::uint32_t add = 0;
        for (int e : pick) add |= 1u << e;
        bool w = maker_turn ? rec(mk | add, br, false) : rec(mk, br | add, true);
        return w == maker_turn;
      }
      for (std::size_t i = from; i < idx.size(); ++i) {
        pick.push_back(idx[i]);
        bool good = choose(i + 1);
        pick.pop_back();
        if (good) return true;
      }
      return false;
    };
    if (choose(0)) result = maker_turn;
    memo[key] = result;
    return result;
  };
  return rec(0, 0, !breaker_first);
}

}  // namespace crossing
