#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "unicycle/cperm.hpp"
#include "unicycle/cycle_enum.hpp"
#include "unicycle/exact.hpp"
#include "unicycle/plane_tree.hpp"
#include "unicycle/underlying_graph.hpp"

// Exhaustive small-instance enumeration. Everything here is ground
// truth for the samplers, counters, and the kernel cycle enumerator, so
// the implementations are deliberately direct and unpruned, with hard
// size guards that throw instead of hanging.

namespace unicycle {

// All plane trees with n edges in lexicographic word order. Exactly
// catalan(n) of them; guarded to n <= 12.
void enumerate_plane_trees(uint32_t n, const std::function<void(const PlaneTree&)>& fn);
std::vector<PlaneTree> all_plane_trees(uint32_t n);

// All odd-cycle permutations of {1..n} with n - 2g cycles, guarded to
// n <= 9. Output size equals count_cperms_exact(n, g).
void enumerate_cperms(uint32_t n, uint32_t g,
                      const std::function<void(const CPermutation&)>& fn);
std::vector<CPermutation> all_cperms(uint32_t n, uint32_t g);

// Reference cycle enumeration straight on the full multigraph, no
// kernel, no pruning. Guarded to 200 edges. Output sorted like
// enumerate_short_cycles for direct multiset comparison.
std::vector<CycleRecord> naive_cycle_enumeration(const UnderlyingGraph& graph, uint64_t cap);

// Canonical text key of a cycle profile: the multiset of (length,
// junctions) pairs, sorted, e.g. "(1,1)(3,2)". Empty profile -> "()".
std::string profile_key(std::span<const CycleRecord> cycles);

// Exact distribution of a statistic over all (tree, permutation)
// instances; probabilities are exact rationals summing to 1.
struct ExactDistribution {
  std::vector<std::string> keys;     // sorted
  std::vector<uint64_t> counts;      // instances per key
  std::vector<BigRat> probabilities;
  uint64_t total = 0;
};

// Law of the full short-cycle profile (all simple cycles, loops
// included) of a uniform size-n genus-g instance, by enumerating all
// catalan(n) * count_cperms(n+1, g) pairs. Guarded to n <= 7.
ExactDistribution exact_map_statistics(uint32_t n, uint32_t g);

// Ordered pairs of vertex-disjoint oriented paths of lengths l1 and l2,
// summed over all plane trees with n edges, against the closed-form
// bound 4 l1 l2 (n+l) C(2n, n+l) with l = l1+l2. Guards: n <= 8,
// l1, l2 in [1, 4].
struct PathPairCounts {
  BigInt pairs = 0;
  BigInt bound = 0;
};
PathPairCounts count_disjoint_path_pairs(uint32_t n, uint32_t l1, uint32_t l2);

// Number of distinct shapes of the union of two intersecting oriented
// paths of lengths l1 and l2 (tree plus both path markings, up to
// isomorphism), against the bound 16 (l1+1)(l2+1)(min(l1,l2)+1).
// Guards: l1, l2 in [1, 4].
struct UnionShapeCounts {
  uint64_t shapes = 0;
  uint64_t bound = 0;
};
UnionShapeCounts count_path_union_shapes(uint32_t l1, uint32_t l2);

// Closed non-backtracking walks of length <= cap that are primitive
// (not a power of a shorter walk) but not simple cycles, counted up to
// rotation and reversal. Guards: 200 edges, cap <= 30.
uint64_t count_primitive_nonsimple_walks(const UnderlyingGraph& graph, uint64_t cap);

}  // namespace unicycle
