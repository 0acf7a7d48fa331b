#include "crossing/solver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <unordered_map>

#include <boost/multiprecision/cpp_int.hpp>

#include "crossing/errors.hpp"
#include "crossing/record.hpp"

namespace crossing {

namespace {

using Mask = std::uint64_t;
constexpr int kInf = std::numeric_limits<int>::max() / 4;

struct Adj {
  int to;
  int edge;
};

// Index form of a finite board: primal and dual adjacency over edge indices.
struct Graph {
  Board board;
  std::vector<EdgeId> edges;
  std::unordered_map<EdgeId, int, EdgeHash> index;
  Mask full = 0;

  std::vector<std::vector<Adj>> padj;
  std::vector<char> left, right;
  std::vector<std::vector<Adj>> dadj;
  std::vector<char> bottom, top;

  std::vector<std::vector<int>> flips;  // edge permutations, identity excluded

  explicit Graph(const Board& b, int edge_limit) : board(b) {
    if (!b.finite()) throw std::invalid_argument("solver needs a finite board");
    edges = edge_set(b);
    if (int(edges.size()) > edge_limit || edges.size() > 64)
      throw LimitExceeded("board has " + std::to_string(edges.size()) + " edges, limit " + std::to_string(edge_limit));
    full = edges.size() == 64 ? ~Mask(0) : (Mask(1) << edges.size()) - 1;
    std::unordered_map<Point, int, PointHash> pv, dv;
    auto vid = [&](std::unordered_map<Point, int, PointHash>& m, const Point& p) {
      auto [it, fresh] = m.emplace(p, int(m.size()));
      return it->second;
    };
    for (int i = 0; i < int(edges.size()); ++i) {
      const EdgeId& e = edges[i];
      index[e] = i;
      auto [a, c] = primal_ends(e);
      int ia = vid(pv, a), ic = vid(pv, c);
      padj.resize(pv.size());
      padj[ia].push_back({ic, i});
      padj[ic].push_back({ia, i});
      bool counts = !(b.kind == BoardKind::Lambda && e.vertical() && (e.u == 2 || e.u == 2 * b.m));
      if (counts) {
        auto [da, dc] = dual_ends(e);
        int ja = vid(dv, da), jc = vid(dv, dc);
        dadj.resize(dv.size());
        dadj[ja].push_back({jc, i});
        dadj[jc].push_back({ja, i});
      }
    }
    left.assign(pv.size(), 0);
    right.assign(pv.size(), 0);
    for (auto& [p, i] : pv) {
      left[i] = p.u == 2;
      right[i] = p.u == 2 * b.m;
    }
    bottom.assign(dv.size(), 0);
    top.assign(dv.size(), 0);
    for (auto& [p, i] : dv) {
      bottom[i] = p.v == b.dual_bottom();
      top[i] = p.v == b.dual_top();
    }
    auto add_flip = [&](auto f) {
      std::vector<int> perm(edges.size());
      for (int i = 0; i < int(edges.size()); ++i) {
        auto it = index.find(f(edges[i]));
        if (it == index.end()) return;
        perm[i] = it->second;
      }
      flips.push_back(std::move(perm));
    };
    int M = 2 * b.m + 2, N = 2 * b.n + 2;
    add_flip([&](const EdgeId& e) { return EdgeId{M - e.u, e.v}; });
    add_flip([&](const EdgeId& e) { return EdgeId{e.u, N - e.v}; });
    add_flip([&](const EdgeId& e) { return EdgeId{M - e.u, N - e.v}; });
  }

  Mask mask_of(const std::vector<EdgeId>& es) const {
    Mask m = 0;
    for (const EdgeId& e : es) {
      auto it = index.find(e);
      if (it == index.end()) throw GameError(GameErrorCode::EdgeOffBoard, to_string(e));
      m |= Mask(1) << it->second;
    }
    return m;
  }

  static Mask permute(Mask m, const std::vector<int>& perm) {
    Mask out = 0;
    while (m) {
      int i = __builtin_ctzll(m);
      m &= m - 1;
      out |= Mask(1) << perm[i];
    }
    return out;
  }
};

struct Route {
  int dist = kInf;
  Mask free = 0;  // unclaimed edges on one cheapest route
};

// 0-1 BFS: own edges cost 0, unclaimed cost 1, opponent edges are walls.
Route cheapest(const std::vector<std::vector<Adj>>& adj, const std::vector<char>& src, const std::vector<char>& dst,
               Mask own, Mask wall) {
  int nv = int(adj.size());
  std::vector<int> dist(nv, kInf), pred(nv, -1), from(nv, -1);
  std::deque<int> dq;
  for (int v = 0; v < nv; ++v)
    if (src[v]) {
      dist[v] = 0;
      dq.push_back(v);
    }
  while (!dq.empty()) {
    int v = dq.front();
    dq.pop_front();
    for (const Adj& a : adj[v]) {
      Mask bit = Mask(1) << a.edge;
      if (wall & bit) continue;
      int w = (own & bit) ? 0 : 1;
      if (dist[v] + w < dist[a.to]) {
        dist[a.to] = dist[v] + w;
        pred[a.to] = v;
        from[a.to] = a.edge;
        if (w == 0)
          dq.push_front(a.to);
        else
          dq.push_back(a.to);
      }
    }
  }
  Route r;
  int best = -1;
  for (int v = 0; v < nv; ++v)
    if (dst[v] && dist[v] < r.dist) {
      r.dist = dist[v];
      best = v;
    }
  for (int v = best; v >= 0 && pred[v] >= 0; v = pred[v]) {
    Mask bit = Mask(1) << from[v];
    if (!(own & bit)) r.free |= bit;
  }
  return r;
}

struct Entry {
  Mask blue = 0, red = 0;
  std::uint16_t meta = 0;  // 0 = empty
  bool value = false;
};

class Engine {
 public:
  Engine(const Graph& g, int p, int q, const SolverOptions& opt)
      : g_(g), p_(p), q_(q), opt_(opt), table_(std::size_t(1) << opt.table_bits) {}

  std::uint64_t nodes = 0;
  std::uint64_t hits = 0;

  Route maker_route(Mask blue, Mask red) const { return cheapest(g_.padj, g_.left, g_.right, blue, red); }
  Route breaker_route(Mask blue, Mask red) const { return cheapest(g_.dadj, g_.bottom, g_.top, red, blue); }

  int quota(int mover) const { return mover == 0 ? p_ : q_; }

  // Moves in search order: Maker's cheapest route, Breaker's, then the rest.
  std::vector<int> order(Mask blue, Mask red, const Route& mr, const Route& br) const {
    Mask free = g_.full & ~(blue | red);
    std::vector<int> out;
    for (Mask group : {mr.free & free, br.free & free & ~mr.free, free & ~(mr.free | br.free)})
      while (group) {
        out.push_back(__builtin_ctzll(group));
        group &= group - 1;
      }
    return out;
  }

  // True iff Maker wins with `mover` (0 Maker, 1 Breaker) to place `left`
  // more edges this turn.
  bool search(Mask blue, Mask red, int mover, int left) {
    ++nodes;
    if (opt_.node_limit && nodes > opt_.node_limit) throw LimitExceeded("solver node limit reached");
    Route mr = maker_route(blue, red);
    if (mr.dist == 0) return true;
    Route br = breaker_route(blue, red);
    if (br.dist == 0) return false;
    Mask free = g_.full & ~(blue | red);
    if (!free) return false;
    if (mover == 0 && mr.dist <= left) return true;
    if (mover == 1 && br.dist <= left) return false;

    auto [kb, kr] = canonical(blue, red);
    std::uint16_t meta = std::uint16_t(1 + mover * 128 + left);
    Entry& slot = table_[hash(kb, kr, meta) & (table_.size() - 1)];
    if (slot.meta == meta && slot.blue == kb && slot.red == kr) {
      ++hits;
      return slot.value;
    }

    bool want = mover == 0;
    bool value = !want;
    for (int e : order(blue, red, mr, br)) {
      Mask bit = Mask(1) << e;
      Mask nb = mover == 0 ? blue | bit : blue;
      Mask nr = mover == 1 ? red | bit : red;
      int nm = mover, nl = left - 1;
      if (nl == 0) {
        nm = 1 - mover;
        nl = quota(nm);
      }
      if (search(nb, nr, nm, nl) == want) {
        value = want;
        break;
      }
    }
    Entry& out = table_[hash(kb, kr, meta) & (table_.size() - 1)];
    out = Entry{kb, kr, meta, value};
    return value;
  }

 private:
  std::pair<Mask, Mask> canonical(Mask blue, Mask red) const {
    std::pair<Mask, Mask> best{blue, red};
    if (!opt_.symmetry) return best;
    for (const auto& perm : g_.flips) {
      std::pair<Mask, Mask> img{Graph::permute(blue, perm), Graph::permute(red, perm)};
      best = std::min(best, img);
    }
    return best;
  }

  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }
  static std::uint64_t hash(Mask b, Mask r, std::uint16_t meta) { return mix(b ^ mix(r ^ mix(meta))); }

  const Graph& g_;
  int p_, q_;
  SolverOptions opt_;
  std::vector<Entry> table_;
};

}  // namespace

SolveResult solve(const Board& board, int p, int q, Player first, const SolverOptions& opt) {
  Position pos;
  pos.board = board;
  pos.p = p;
  pos.q = q;
  pos.to_move = first;
  return solve_position(pos, opt);
}

SolveResult solve_position(const Position& pos, const SolverOptions& opt) {
  if (pos.p < 1 || pos.q < 1) throw std::invalid_argument("p and q must be positive");
  if (opt.table_bits < 4 || opt.table_bits > 30) throw std::invalid_argument("table_bits out of range");
  Graph g(pos.board, opt.edge_limit);
  Mask blue = g.mask_of(pos.blue), red = g.mask_of(pos.red);
  if (blue & red) throw std::invalid_argument("edge is both blue and red");
  Engine eng(g, pos.p, pos.q, opt);
  int mover = pos.to_move == Player::Maker ? 0 : 1;
  int left = pos.left > 0 ? pos.left : eng.quota(mover);
  bool maker = eng.search(blue, red, mover, left);

  SolveResult res;
  res.winner = maker ? Player::Maker : Player::Breaker;
  Move cur{pos.to_move, {}, ""};
  for (;;) {
    Route mr = eng.maker_route(blue, red), br = eng.breaker_route(blue, red);
    if (mr.dist == 0 || br.dist == 0 || !(g.full & ~(blue | red))) break;
    int pick = -1;
    int nm = 0, nl = 0;
    for (int e : eng.order(blue, red, mr, br)) {
      Mask bit = Mask(1) << e;
      Mask nb = mover == 0 ? blue | bit : blue;
      Mask nr = mover == 1 ? red | bit : red;
      nm = mover;
      nl = left - 1;
      if (nl == 0) {
        nm = 1 - mover;
        nl = eng.quota(nm);
      }
      if (eng.search(nb, nr, nm, nl) == maker) {
        pick = e;
        break;
      }
    }
    if (pick < 0) throw ContractViolation("principal variation lost the solved value");
    Mask bit = Mask(1) << pick;
    (mover == 0 ? blue : red) |= bit;
    cur.edges.push_back(g.edges[pick]);
    if (nm != mover) {
      res.pv.push_back(cur);
      cur = Move{nm == 0 ? Player::Maker : Player::Breaker, {}, ""};
    }
    mover = nm;
    left = nl;
  }
  if (!cur.edges.empty()) res.pv.push_back(cur);
  res.nodes = eng.nodes;
  res.table_hits = eng.hits;
  return res;
}

nlohmann::json solve_json(const SolveResult& r) {
  nlohmann::json pv = nlohmann::json::array();
  for (const Move& m : r.pv) pv.push_back({{"player", to_string(m.player)}, {"edges", edges_json(m.edges)}});
  return {{"winner", to_string(r.winner)}, {"pv", pv}, {"nodes", r.nodes}, {"hits", r.table_hits}};
}

std::vector<int> enumerate_crossing_paths(const Board& board, std::uint64_t path_limit) {
  Graph g(board, 64);
  int nv = int(g.padj.size());
  std::vector<char> on(nv, 0);
  std::vector<int> out;
  int depth = 0;
  auto dfs = [&](auto& self, int v) -> void {
    for (const Adj& a : g.padj[v]) {
      int w = a.to;
      if (on[w] || g.left[w]) continue;
      if (g.right[w]) {
        out.push_back(depth + 1);
        if (out.size() > path_limit) throw LimitExceeded("more than " + std::to_string(path_limit) + " crossing paths");
        continue;
      }
      on[w] = 1;
      ++depth;
      self(self, w);
      --depth;
      on[w] = 0;
    }
  };
  for (int v = 0; v < nv; ++v) {
    if (!g.left[v]) continue;
    if (g.right[v]) continue;
    on[v] = 1;
    dfs(dfs, v);
    on[v] = 0;
  }
  return out;
}

std::map<int, std::uint64_t> path_histogram(const std::vector<int>& lengths) {
  std::map<int, std::uint64_t> h;
  for (int l : lengths) ++h[l];
  return h;
}

nlohmann::json histogram_json(const std::map<int, std::uint64_t>& h) {
  nlohmann::json out = nlohmann::json::object();
  for (auto& [len, c] : h) out[std::to_string(len)] = c;
  return out;
}

EsResult erdos_selfridge(const Board& board, int p, int q, std::uint64_t path_limit) {
  if (p < 1 || q < 1) throw std::invalid_argument("p and q must be positive");
  auto hist = path_histogram(enumerate_crossing_paths(board, path_limit));
  EsResult r;
  for (auto& [len, c] : hist) r.paths += c;
  int base = 1 + q;
  // Integer c with c^p == base, if any.
  int root = 0;
  for (int c = 2; c <= base; ++c) {
    boost::multiprecision::cpp_int pw = 1;
    for (int i = 0; i < p; ++i) pw *= c;
    if (pw == base) {
      root = c;
      break;
    }
    if (pw > base) break;
  }
  if (root > 0) {
    using boost::multiprecision::cpp_rational;
    cpp_rational sum = 0;
    for (auto& [len, c] : hist) {
      boost::multiprecision::cpp_int den = 1;
      for (int i = 0; i < len; ++i) den *= root;
      sum += cpp_rational(boost::multiprecision::cpp_int(c), den);
    }
    r.exact = boost::multiprecision::numerator(sum).str() + "/" + boost::multiprecision::denominator(sum).str();
    r.sum = sum.convert_to<double>();
    r.passes = sum < cpp_rational(1, base);
  } else {
    for (auto& [len, c] : hist) r.sum += double(c) * std::pow(double(base), -double(len) / p);
    r.passes = r.sum < 1.0 / base - 1e-12;
  }
  return r;
}

nlohmann::json es_json(const EsResult& r) {
  nlohmann::json j{{"sum", r.sum}, {"passes", r.passes}, {"paths", r.paths}};
  if (!r.exact.empty()) j["exact"] = r.exact;
  return j;
}

namespace {

class SolverLocal : public LocalStrategy {
 public:
  SolverLocal(Board local, int maker_quota, SolverOptions opt)
      : board_(local), maker_quota_(maker_quota), opt_(opt), all_(edge_set(local)) {}

  void absorb(const EdgeId&) override {}

  std::vector<EdgeId> play(int count, const ClaimLookup& claim) override {
    Position pos;
    pos.board = board_;
    pos.p = maker_quota_;
    pos.q = count;
    pos.to_move = Player::Breaker;
    for (const EdgeId& e : all_) {
      Claim c = claim(e);
      if (c == Claim::Red)
        pos.red.push_back(e);
      else if (c != Claim::Unclaimed)
        pos.blue.push_back(e);
    }
    std::vector<EdgeId> out;
    SolveResult r = solve_position(pos, opt_);
    if (!r.pv.empty() && r.pv.front().player == Player::Breaker) out = r.pv.front().edges;
    for (const EdgeId& e : all_) {
      if (int(out.size()) >= count) break;
      if (claim(e) == Claim::Unclaimed && std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
    }
    return out;
  }

 private:
  Board board_;
  int maker_quota_;
  SolverOptions opt_;
  std::vector<EdgeId> all_;
};

}  // namespace

std::unique_ptr<LocalStrategy> make_solver_local(const Board& local, int maker_quota, SolverOptions opt) {
  return std::make_unique<SolverLocal>(local, maker_quota, opt);
}

}  // namespace crossing
