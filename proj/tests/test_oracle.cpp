#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "unicycle/cperm.hpp"
#include "unicycle/exact.hpp"
#include "unicycle/oracle.hpp"
#include "unicycle/plane_tree.hpp"
#include "unicycle/underlying_graph.hpp"

using namespace unicycle;

TEST_CASE("plane tree enumeration hits every Catalan word once, in order") {
  for (uint32_t n = 1; n <= 8; ++n) {
    std::vector<PlaneTree> trees = all_plane_trees(n);
    CHECK(BigInt(trees.size()) == catalan(n));
    for (size_t i = 0; i < trees.size(); ++i) {
      CHECK(trees[i].n_edges() == n);
      CHECK(PlaneTree::from_word(trees[i].word()).word() == trees[i].word());
      if (i > 0) CHECK(trees[i - 1].word() < trees[i].word());
    }
  }
  CHECK_THROWS_AS(all_plane_trees(13), std::invalid_argument);
}

TEST_CASE("odd-cycle permutation enumeration matches the counter") {
  for (uint32_t n = 1; n <= 8; ++n) {
    for (uint32_t g = 0; 2 * g + 1 <= n; ++g) {
      std::vector<CPermutation> perms = all_cperms(n, g);
      CHECK(BigInt(perms.size()) == count_cperms_exact(n, g));
      std::set<std::string> seen;
      for (const CPermutation& p : perms) {
        CHECK(p.n == n);
        uint32_t excess = 0;
        std::vector<bool> hit(n + 1, false);
        for (const auto& cyc : p.cycles) {
          CHECK(cyc.size() % 2 == 1);
          excess += static_cast<uint32_t>(cyc.size()) - 1;
          for (uint32_t e : cyc) {
            REQUIRE(e >= 1);
            REQUIRE(e <= n);
            CHECK(!hit[e]);
            hit[e] = true;
          }
        }
        CHECK(excess == 2 * g);
        seen.insert(cycle_key(p));
      }
      CHECK(seen.size() == perms.size());
    }
    CHECK(all_cperms(n, (n + 1) / 2).empty());
  }
  CHECK_THROWS_AS(all_cperms(10, 1), std::invalid_argument);
}

TEST_CASE("naive enumeration on the two-loop instance") {
  PlaneTree t = PlaneTree::from_word("(())");
  UnderlyingGraph g = build_underlying_graph(t, CPermutation{3, {{1, 2, 3}}});
  std::vector<CycleRecord> cycles = naive_cycle_enumeration(g, 3);
  REQUIRE(cycles.size() == 2);
  for (const CycleRecord& c : cycles) {
    CHECK(c.length == 1);
    CHECK(c.junctions == 1);
    CHECK(c.loop);
  }
  CHECK(profile_key(cycles) == "(1,1)(1,1)");
}

TEST_CASE("profile keys") {
  CHECK(profile_key({}) == "()");
  std::vector<CycleRecord> v{{3, 2, false}, {1, 1, true}};
  CHECK(profile_key(v) == "(1,1)(3,2)");
  std::vector<CycleRecord> w{{2, 1, false}, {2, 1, false}, {5, 3, false}};
  CHECK(profile_key(w) == "(2,1)(2,1)(5,3)");
}

TEST_CASE("exact map statistics at the smallest sizes") {
  // n = 2, g = 1: both trees meet both 3-cycles, always two loops
  ExactDistribution d = exact_map_statistics(2, 1);
  CHECK(d.total == 4);
  REQUIRE(d.keys.size() == 1);
  CHECK(d.keys[0] == "(1,1)(1,1)");
  CHECK(d.counts[0] == 4);
  CHECK(d.probabilities[0] == BigRat(1));

  // n = 5, g = 1: catalan(5) * h(6, 1) pairs
  ExactDistribution d2 = exact_map_statistics(5, 1);
  CHECK(BigInt(d2.total) == catalan(5) * count_cperms_exact(6, 1));
  CHECK(std::is_sorted(d2.keys.begin(), d2.keys.end()));
  BigRat mass = 0;
  uint64_t count_sum = 0;
  for (size_t i = 0; i < d2.keys.size(); ++i) {
    CHECK(d2.probabilities[i] == BigRat(d2.counts[i], d2.total));
    mass += d2.probabilities[i];
    count_sum += d2.counts[i];
  }
  CHECK(mass == BigRat(1));
  CHECK(count_sum == d2.total);
  CHECK(d2.keys.size() > 1);

  CHECK_THROWS_AS(exact_map_statistics(8, 1), std::invalid_argument);
}

TEST_CASE("disjoint path pairs on three-edge trees") {
  // over the five trees: path 8, both middle shapes 8, stars 0
  PathPairCounts c = count_disjoint_path_pairs(3, 1, 1);
  CHECK(c.pairs == BigInt(24));
  CHECK(c.bound == BigInt(4) * 1 * 1 * 5 * binomial(6, 5));
  CHECK(c.pairs <= c.bound);
}

TEST_CASE("disjoint path pairs stay below the closed-form bound") {
  for (uint32_t n = 2; n <= 6; ++n)
    for (uint32_t l1 = 1; l1 <= 3; ++l1)
      for (uint32_t l2 = 1; l2 <= 3; ++l2) {
        PathPairCounts c = count_disjoint_path_pairs(n, l1, l2);
        CHECK(c.pairs >= 0);
        CHECK(c.pairs <= c.bound);
        // symmetric in the two lengths
        CHECK(c.pairs == count_disjoint_path_pairs(n, l2, l1).pairs);
      }
  CHECK_THROWS_AS(count_disjoint_path_pairs(9, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(count_disjoint_path_pairs(5, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(count_disjoint_path_pairs(5, 1, 5), std::invalid_argument);
}

TEST_CASE("union shapes of intersecting path pairs") {
  for (uint32_t l1 = 1; l1 <= 4; ++l1)
    for (uint32_t l2 = 1; l2 <= l1; ++l2) {
      UnionShapeCounts c = count_path_union_shapes(l1, l2);
      CHECK(c.shapes > 0);
      CHECK(c.bound == 16ull * (l1 + 1) * (l2 + 1) * (std::min(l1, l2) + 1));
      CHECK(c.shapes <= c.bound);
      CHECK(c.shapes == count_path_union_shapes(l2, l1).shapes);
    }
  CHECK_THROWS_AS(count_path_union_shapes(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(count_path_union_shapes(2, 5), std::invalid_argument);
}

TEST_CASE("primitive non-simple walks") {
  // trees have none
  PlaneTree t = PlaneTree::from_word("(()())(())");
  CPermutation id{6, {{1}, {2}, {3}, {4}, {5}, {6}}};
  UnderlyingGraph tree_graph = build_underlying_graph(t, id);
  CHECK(count_primitive_nonsimple_walks(tree_graph, 10) == 0);

  // two loops at one vertex wind around each other
  PlaneTree t2 = PlaneTree::from_word("(())");
  UnderlyingGraph loops = build_underlying_graph(t2, CPermutation{3, {{1, 2, 3}}});
  CHECK(count_primitive_nonsimple_walks(loops, 2) > 0);

  // monotone in the cap
  uint64_t prev = 0;
  for (uint64_t cap = 1; cap <= 8; ++cap) {
    uint64_t cur = count_primitive_nonsimple_walks(loops, cap);
    CHECK(cur >= prev);
    prev = cur;
  }
  CHECK_THROWS_AS(count_primitive_nonsimple_walks(loops, 31), std::invalid_argument);
}
