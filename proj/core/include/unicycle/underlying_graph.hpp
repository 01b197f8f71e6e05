#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "unicycle/cperm.hpp"
#include "unicycle/plane_tree.hpp"

namespace unicycle {

// Multigraph obtained from a plane tree by merging vertices that share a
// permutation cycle. Tree vertex v carries element v+1 of the
// permutation, so a permutation on {1..n+1} decorates a tree with n
// edges. Classes (graph vertices) are numbered by increasing smallest
// tree vertex; every tree edge survives as one graph edge that remembers
// its original endpoints.
struct GraphEdge {
  uint32_t u, v;            // class endpoints
  uint32_t tree_u, tree_v;  // tree endpoints (tree_u is the parent side)
};

class UnderlyingGraph {
 public:
  uint32_t n_classes() const { return n_classes_; }
  uint32_t n_edges() const { return static_cast<uint32_t>(edges_.size()); }
  const GraphEdge& edge(uint32_t e) const { return edges_[e]; }
  const std::vector<GraphEdge>& edges() const { return edges_; }

  // Incident half-edges of class c, packed as (edge_id << 1) | end where
  // end 0 is the edge's u side. A loop contributes both of its ends.
  std::span<const uint32_t> incident(uint32_t c) const {
    return {adj_.data() + adj_off_[c], adj_off_[c + 1] - adj_off_[c]};
  }
  uint32_t degree(uint32_t c) const { return adj_off_[c + 1] - adj_off_[c]; }

  uint32_t class_of(uint32_t tree_vertex) const { return class_of_[tree_vertex]; }
  const std::vector<uint32_t>& class_map() const { return class_of_; }

  // Edges - vertices + 1; twice the genus of the decorated tree.
  uint32_t cyclomatic() const { return n_edges() - n_classes_ + 1; }

  static uint32_t edge_of(uint32_t packed) { return packed >> 1; }
  static uint32_t end_of(uint32_t packed) { return packed & 1; }

  friend UnderlyingGraph build_underlying_graph(const PlaneTree&, const CPermutation&);
  friend UnderlyingGraph build_underlying_graph(const PlaneTree&, const SparseCycles&);
  static UnderlyingGraph build(const PlaneTree& tree, const std::vector<uint32_t>& rep);

 private:
  uint32_t n_classes_ = 0;
  std::vector<GraphEdge> edges_;
  std::vector<uint32_t> adj_off_;
  std::vector<uint32_t> adj_;
  std::vector<uint32_t> class_of_;
};

// Requires sigma.n == tree.n_vertices() and all cycles odd.
UnderlyingGraph build_underlying_graph(const PlaneTree& tree, const CPermutation& sigma);
UnderlyingGraph build_underlying_graph(const PlaneTree& tree, const SparseCycles& sigma);

// A plane tree with n edges paired with an odd-cycle permutation of its
// n+1 vertices. The permutation must have n+1-2g cycles for some g >= 0.
struct CDecoratedTree {
  PlaneTree tree;
  CPermutation sigma;

  // (n+1 - #cycles) / 2. Throws if the sizes are inconsistent.
  uint64_t genus() const;
  void validate() const;
};

UnderlyingGraph build_underlying_graph(const CDecoratedTree& decorated);

// Result of collapsing the graph to its cycle-carrying core: iteratively
// strip degree-1 classes, then contract maximal chains of degree-2
// classes into weighted edges. A kernel edge keeps the number of tree
// edges it replaced (weight), how many interior chain classes were
// crossed through two distinct tree vertices (internal_junctions), and
// the boundary tree vertices at its two ends.
struct KernelEdge {
  uint32_t u, v;  // kernel vertex endpoints (u == v for a contracted loop)
  uint64_t weight;
  uint32_t internal_junctions;
  uint32_t tree_end_u, tree_end_v;
};

class Kernel {
 public:
  uint32_t n_vertices() const { return static_cast<uint32_t>(vertex_class_.size()); }
  uint32_t n_edges() const { return static_cast<uint32_t>(edges_.size()); }
  bool empty() const { return vertex_class_.empty(); }
  const KernelEdge& edge(uint32_t e) const { return edges_[e]; }
  const std::vector<KernelEdge>& edges() const { return edges_; }

  // Original class of a kernel vertex.
  uint32_t class_of(uint32_t kv) const { return vertex_class_[kv]; }

  std::span<const uint32_t> incident(uint32_t kv) const {
    return {adj_.data() + adj_off_[kv], adj_off_[kv + 1] - adj_off_[kv]};
  }

  // Tree endpoint of edge e on side `end` (0 = u side).
  uint32_t tree_end(uint32_t e, uint32_t end) const {
    return end == 0 ? edges_[e].tree_end_u : edges_[e].tree_end_v;
  }

  uint32_t cyclomatic() const {
    return empty() ? 0 : n_edges() - n_vertices() + 1;
  }

  static uint32_t edge_of(uint32_t packed) { return packed >> 1; }
  static uint32_t end_of(uint32_t packed) { return packed & 1; }

  friend Kernel kernelize(const UnderlyingGraph& graph);

 private:
  std::vector<uint32_t> vertex_class_;
  std::vector<KernelEdge> edges_;
  std::vector<uint32_t> adj_off_;
  std::vector<uint32_t> adj_;
};

// Empty kernel for a forest-like graph (cyclomatic number 0). Otherwise
// every kernel vertex has degree >= 3, except for the single-vertex
// kernel of a plain cycle, and edges - vertices + 1 == cyclomatic(graph).
Kernel kernelize(const UnderlyingGraph& graph);

struct DiameterEstimate {
  uint64_t value = 0;
  bool exact = false;  // false: certified lower bound from a double sweep
};

enum class DiameterMode { exact, double_sweep };

// Exact mode runs a BFS from every class and is refused above 10^5
// classes; double sweep runs two BFS passes and reports a lower bound.
DiameterEstimate diameter_estimate(const UnderlyingGraph& graph, DiameterMode mode);

}  // namespace unicycle
