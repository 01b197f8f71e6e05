#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unicycle/exact.hpp"
#include "unicycle/rng.hpp"

namespace unicycle {

// Rooted plane tree with n edges and n+1 vertices.
//
// Vertices are numbered 0..n in depth-first left-to-right discovery order,
// so vertex 0 is the root and the vertex id doubles as the DFS label.
// The balanced word uses '(' for a down-step to a new child and ')' for
// the matching return; it has length 2n and every prefix has at least as
// many '(' as ')'.
class PlaneTree {
 public:
  static constexpr uint32_t npos = UINT32_MAX;

  // Builds a tree from a balanced word. Throws std::invalid_argument on a
  // malformed word (unbalanced, or a prefix dips below zero).
  static PlaneTree from_word(std::string_view word);

  uint32_t n_edges() const { return n_edges_; }
  uint32_t n_vertices() const { return n_edges_ + 1; }
  const std::string& word() const { return word_; }

  // parent(0) == npos.
  uint32_t parent(uint32_t v) const { return parent_[v]; }

  // Children of v, ordered left to right.
  std::span<const uint32_t> children(uint32_t v) const {
    return {child_.data() + child_off_[v], child_off_[v + 1] - child_off_[v]};
  }

  uint32_t degree(uint32_t v) const {
    return child_off_[v + 1] - child_off_[v] + (v == 0 ? 0 : 1);
  }

  // Identity by construction; kept as the documented vertex labelling.
  uint32_t dfs_label(uint32_t v) const { return v; }

 private:
  std::string word_;
  uint32_t n_edges_ = 0;
  std::vector<uint32_t> parent_;
  std::vector<uint32_t> child_off_;
  std::vector<uint32_t> child_;
};

// Samples a uniform plane tree with n edges (n >= 1) by the cycle lemma:
// shuffle a word with n+1 up-steps and n down-steps, rotate to the unique
// point where every proper prefix sum is positive, drop the leading
// up-step. Linear time, exactly uniform over the catalan(n) trees.
PlaneTree sample_plane_tree(uint32_t n, Rng& rng);

// Number of pairs (plane tree with n edges, marked oriented path of
// length ell): 2 * ell * C(2n, n - ell). Zero when ell > n.
// Requires n >= 1 and ell >= 1.
BigInt marked_path_count(uint64_t n, uint64_t ell);

// c[ell] = number of oriented simple paths of length exactly ell in the
// tree, for ell = 0..cap (c[0] = number of vertices). A tree path is the
// unique path between an ordered pair of distinct vertices. Cost is the
// sum of ball sizes; full-length counting (cap >= n_edges) is refused for
// n_edges > 10^4.
std::vector<uint64_t> count_oriented_paths(const PlaneTree& tree, uint32_t cap);

// Number of oriented paths whose length falls in the half-open window
// [ i*L/M, (i+1)*L/M ) with L = scale_num/scale_den. Length membership is
// decided by exact integer comparisons.
uint64_t window_path_count(const PlaneTree& tree, uint32_t window_index, uint32_t subdivisions,
                           uint64_t scale_num, uint64_t scale_den = 1);

}  // namespace unicycle
