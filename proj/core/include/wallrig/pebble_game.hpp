#pragma once

#include <vector>

namespace wallrig {

/// Generic (k, l) pebble game on a multigraph with loops, 0 <= l < 2k.
///
/// Every vertex starts with k pebbles; an accepted edge is directed out of
/// the endpoint whose pebble covers it, so pebbles(v) + outdeg(v) = k always.
/// An edge is accepted iff l + 1 pebbles can be gathered on its endpoints,
/// which decides (k, l)-sparsity of the accepted set plus the new edge.
/// Loops need l + 1 pebbles on a single vertex, hence are rejected when l >= k.
class PebbleGame {
 public:
  PebbleGame(int n_vertices, int k, int l);

  int k() const { return k_; }
  int l() const { return l_; }
  int n_vertices() const { return static_cast<int>(pebbles_.size()); }
  int pebbles(int v) const { return pebbles_[v]; }
  int free_pebbles() const;

  /// Moves pebbles onto {u, v} until `want` sit there or no more can be
  /// reached. Returns the number on {u, v} (on u alone when u == v).
  int gather(int u, int v, int want);

  /// Gathers l + 1 pebbles and, if successful, inserts the edge under `id`.
  bool try_insert(int u, int v, int id);

  /// Vertices reachable from u or v along directed accepted edges.
  std::vector<int> reach(int u, int v) const;

  /// Ids of accepted edges with both endpoints in `region`.
  std::vector<int> induced_edges(const std::vector<int>& region) const;

  const std::vector<int>& accepted() const { return accepted_; }

 private:
  struct Arc {
    int from;
    int to;
  };

  bool pull_pebble(int target, int frozen);

  int k_;
  int l_;
  std::vector<int> pebbles_;
  std::vector<std::vector<int>> out_;  // arc ids leaving each vertex
  std::vector<Arc> arcs_;              // indexed by position in accepted_
  std::vector<int> accepted_;          // caller-supplied edge ids
};

}  // namespace wallrig
