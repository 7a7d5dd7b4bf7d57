#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lebounds/bitmatrix.hpp"
#include "lebounds/pauli.hpp"

namespace lebounds::graph {

/// Simple undirected graph backed by a symmetric zero-diagonal bit matrix.
/// Nodes are 0-based indices.
class Graph {
 public:
  Graph() = default;
  explicit Graph(size_t n) : adj_(n, n) {}
  Graph(size_t n, const std::vector<std::pair<size_t, size_t>>& edges);
  /// Adopts an adjacency matrix; throws if not symmetric zero-diagonal.
  explicit Graph(gf2::BitMatrix adjacency);

  size_t n() const { return adj_.rows(); }
  bool has_edge(size_t i, size_t j) const { return adj_.get(i, j); }
  void add_edge(size_t i, size_t j);
  void remove_edge(size_t i, size_t j);
  void toggle_edge(size_t i, size_t j);

  std::vector<size_t> neighbors(size_t i) const;
  size_t degree(size_t i) const;
  std::vector<std::pair<size_t, size_t>> edges() const;
  size_t edge_count() const;
  bool is_connected() const;
  const gf2::BitMatrix& adjacency() const { return adj_; }

  bool operator==(const Graph& o) const { return adj_ == o.adj_; }

 private:
  void check_node(size_t i) const;
  gf2::BitMatrix adj_;
};

/// Ordered node sequence; consecutive nodes must be linked in the host graph.
using Path = std::vector<size_t>;

/// Throws std::invalid_argument unless p is a simple path in g.
void validate_path(const Graph& g, const Path& p);

enum class PathCategory { C1, C2 };

/// C1 iff no link joins non-consecutive nodes of the path (chordless).
PathCategory classify_path(const Graph& g, const Path& p);

/// Chordless path between the same endpoints supported on nodes of p,
/// obtained by greedily jumping to the farthest-along linked path node.
Path distill_c1(const Graph& g, const Path& p);

Graph local_complement(const Graph& g, size_t i);

/// Symplectic action of the local complementation unitary at node i:
/// on i the axis map fixes X and swaps Y and Z; on each neighbor it fixes Z
/// and swaps X and Y.
stab::LocalCliffordLayer lc_unitary(const Graph& g, size_t i);

struct LcRecord {
  std::vector<size_t> complemented;   // nodes in application order
  stab::LocalCliffordLayer unitary;   // accumulated product, later ops on the left
  size_t link_ops = 0;                // links created plus deleted
};

/// Creates link (a, b) by local complementations along p, re-distilling the
/// remaining path after every step.
std::pair<Graph, LcRecord> alc_create_link(const Graph& g, size_t a, size_t b, const Path& p);

/// Seed-deterministic randomized depth-first search path from a to b.
Path random_simple_path(const Graph& g, size_t a, size_t b, uint64_t seed);

/// Breadth-first shortest path, smallest-index predecessor on ties.
Path shortest_path(const Graph& g, size_t a, size_t b);

}  // namespace lebounds::graph
