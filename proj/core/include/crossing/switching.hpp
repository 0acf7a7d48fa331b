#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "crossing/lattice.hpp"

namespace crossing {

// Multigraph with parallel edges and loops. Edge labels are indices into
// `edges`.
struct Multigraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;

  int add_edge(int a, int b);
  // m_G(u,v) for u != v, or m_G(v) (loops) for u == v.
  int multiplicity(int u, int v) const;
};

struct GameTriple {
  Multigraph graph;
  std::vector<int> A;
  std::vector<int> B;
};

// True iff the listed edges connect all vertices of g.
bool connected_spanning(const Multigraph& g, const std::vector<int>& edge_ids);

// k pairwise edge-disjoint connected spanning subgraphs (spanning trees,
// returned as edge-index lists) if they exist.
std::optional<std::vector<std::vector<int>>> is_k_positive(const Multigraph& g, int k);

// Lehman state: G_i^t = (G_i \ deleted) ∪ safe stays connected spanning.
struct SwitchingPosition {
  Multigraph graph;
  int a = 0;
  int b = 0;
  std::vector<char> safe;
  std::vector<char> deleted;
  std::vector<std::vector<int>> spanning;

  SwitchingPosition() = default;
  SwitchingPosition(Multigraph g, int a, int b, std::vector<std::vector<int>> spanning);

  bool unsafe(int e) const { return !safe[e] && !deleted[e]; }
  // Edges of G_i^t.
  std::vector<int> current(int i) const;
  bool invariant_holds() const;
  // True iff the safe edges join a to b.
  bool joined() const;
  // Least-indexed edge that is neither safe nor deleted.
  std::optional<int> least_unsafe() const;
};

class InvariantBroken : public std::logic_error {
 public:
  explicit InvariantBroken(const std::string& what) : std::logic_error(what) {}
};

// Cut deletes `cut`; returns the edge Join marks safe to repair the broken
// subgraph, or nullopt when no repair is needed.
std::optional<int> join_move(SwitchingPosition& pos, int cut);

// (k,k) form: all cuts are applied first, then each broken subgraph is
// repaired through an intact one. Returns the safe marks (at most k).
std::vector<int> kk_join_move(SwitchingPosition& pos, const std::vector<int>& cuts);

// Bridg-it setup on S_{(n+1)×n} after Maker's first edge.
struct BridgitSetup {
  int n = 0;
  EdgeId first;
  std::vector<EdgeId> recolored;  // the set A
  std::vector<EdgeId> board_edges;  // index -> board edge
  SwitchingPosition position;       // a = 0 (left column), b = 1 (right column)
  GameTriple triple;

  int index_of(const EdgeId& e) const;
};

BridgitSetup bridgit_setup(int n, const EdgeId& first);

// Maker's Bridg-it strategy on S_{(n+1)×n}: Lehman's Join lifted through
// bridgit_setup. The board passed in may carry any already-claimed edges
// elsewhere; only edges of the virtual board are tracked.
class BridgitMaker {
 public:
  BridgitMaker(int n, const EdgeId& first);
  const EdgeId& first_edge() const { return setup_.first; }
  // Records Breaker's edge and returns Maker's reply, or nullopt if every
  // edge is already claimed.
  std::optional<EdgeId> respond(const EdgeId& breaker_edge);
  // Records a Breaker edge without replying yet.
  void absorb(const EdgeId& breaker_edge);
  // Reply to all absorbed edges (a repair if one is pending, else the least
  // unsafe edge).
  std::optional<EdgeId> reply();
  // Marks an edge safe that Maker claimed outside the strategy.
  void claim_extra(const EdgeId& e);
  const SwitchingPosition& position() const { return setup_.position; }
  const BridgitSetup& setup() const { return setup_; }
  bool owns(const EdgeId& e) const;

 private:
  BridgitSetup setup_;
  std::vector<int> pending_;
};

// §5 multigraph transformations.
struct SeparationAssignment {
  // For each edge incident to v (by index, loops excluded), the side 1 or 2
  // that receives v's endpoint.
  std::vector<std::pair<int, int>> incidences;
  // For each loop at v (by index): 0 = becomes a v1v2 edge, 1 = loop at v1,
  // 2 = loop at v2.
  std::vector<std::pair<int, int>> loops;
};

// Replaces v by v (as v1) and a new vertex v2 (index vertex_count), adds
// one v1v2 edge, and redistributes incidences and loops. The new v1v2 edge
// is appended last.
Multigraph vertex_separation(const Multigraph& g, int v, const SeparationAssignment& assignment);

// Contracts edge e; the higher endpoint is merged into the lower one and
// vertices above it shift down. Other edges keep their order.
Multigraph edge_contraction(const Multigraph& g, int e);

struct ReduceOp {
  enum Kind { DeleteVertex, DeleteEdge, Separate, Contract } kind;
  int target = 0;                   // vertex or edge index
  SeparationAssignment assignment;  // for Separate
  int side_for_terminals = 1;       // Separate: which of v1/v2 inherits A/B membership
};

GameTriple monotone_reduce(GameTriple triple, const std::vector<ReduceOp>& ops);

// Exact winner of the (p,q)-Shannon switching game on a small triple.
// breaker_first selects the BF rule. Limited to 24 edges.
bool shannon_maker_wins(const GameTriple& triple, int p, int q, bool breaker_first = false);

}  // namespace crossing
