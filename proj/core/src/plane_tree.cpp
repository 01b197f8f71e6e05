#include "unicycle/plane_tree.hpp"

#include <stdexcept>

namespace unicycle {

PlaneTree PlaneTree::from_word(std::string_view word) {
  if (word.size() % 2 != 0) throw std::invalid_argument("plane tree word has odd length");
  uint32_t n = static_cast<uint32_t>(word.size() / 2);

  PlaneTree t;
  t.word_.assign(word.begin(), word.end());
  t.n_edges_ = n;
  t.parent_.assign(n + 1, npos);

  std::vector<uint32_t> child_count(n + 1, 0);
  std::vector<uint32_t> stack;
  stack.reserve(n + 1);
  stack.push_back(0);
  uint32_t next = 1;
  for (char c : word) {
    if (c == '(') {
      if (next > n) throw std::invalid_argument("plane tree word is unbalanced");
      uint32_t v = next++;
      t.parent_[v] = stack.back();
      ++child_count[stack.back()];
      stack.push_back(v);
    } else if (c == ')') {
      stack.pop_back();
      if (stack.empty()) throw std::invalid_argument("plane tree word dips below the root");
    } else {
      throw std::invalid_argument("plane tree word must consist of '(' and ')'");
    }
  }
  if (stack.size() != 1 || next != n + 1)
    throw std::invalid_argument("plane tree word is unbalanced");

  // children in discovery order: vertex ids themselves are in DFS order,
  // so bucketing by parent with increasing v preserves left-to-right order
  t.child_off_.assign(n + 2, 0);
  for (uint32_t v = 1; v <= n; ++v) ++t.child_off_[t.parent_[v] + 1];
  for (uint32_t v = 0; v <= n; ++v) t.child_off_[v + 1] += t.child_off_[v];
  t.child_.resize(n);
  std::vector<uint32_t> fill(t.child_off_.begin(), t.child_off_.end() - 1);
  for (uint32_t v = 1; v <= n; ++v) t.child_[fill[t.parent_[v]]++] = v;
  return t;
}

PlaneTree sample_plane_tree(uint32_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("sample_plane_tree: n must be >= 1");

  // Word with n+1 up-steps and n down-steps, shuffled uniformly.
  std::vector<int8_t> steps(2 * n + 1, -1);
  for (uint32_t i = 0; i <= n; ++i) steps[i] = 1;
  rng.shuffle(steps.begin(), steps.end());

  // The total is +1, so exactly one rotation keeps every proper prefix
  // positive: the one starting just past the last prefix-sum minimum.
  int64_t sum = 0, min_sum = 0;
  size_t min_pos = 0;  // rotation start: index after the last minimal prefix
  for (size_t i = 0; i < steps.size(); ++i) {
    sum += steps[i];
    if (sum <= min_sum) {
      min_sum = sum;
      min_pos = i + 1;
    }
  }

  std::string word;
  word.reserve(2 * n);
  size_t m = steps.size();
  // skip the leading up-step of the rotated word, emit the remaining 2n
  for (size_t j = 1; j < m; ++j)
    word.push_back(steps[(min_pos + j) % m] == 1 ? '(' : ')');
  return PlaneTree::from_word(word);
}

BigInt marked_path_count(uint64_t n, uint64_t ell) {
  if (n == 0) throw std::invalid_argument("marked_path_count: n must be >= 1");
  if (ell == 0) throw std::invalid_argument("marked_path_count: ell must be >= 1");
  if (ell > n) return 0;
  return 2 * BigInt(ell) * binomial(2 * n, n - ell);
}

std::vector<uint64_t> count_oriented_paths(const PlaneTree& tree, uint32_t cap) {
  uint32_t n = tree.n_edges();
  if (n > 10000 && cap >= n)
    throw std::invalid_argument("count_oriented_paths: full-length counting refused for n > 10^4");

  std::vector<uint64_t> counts(cap + 1, 0);
  counts[0] = tree.n_vertices();
  if (cap == 0) return counts;

  // Depth-limited walk from every vertex. In a tree, never stepping back
  // to the predecessor visits each vertex of the ball exactly once.
  struct Frame {
    uint32_t vertex, from;
    uint32_t depth;
  };
  std::vector<Frame> stack;
  for (uint32_t s = 0; s <= n; ++s) {
    stack.push_back({s, PlaneTree::npos, 0});
    while (!stack.empty()) {
      Frame f = stack.back();
      stack.pop_back();
      if (f.depth > 0) ++counts[f.depth];
      if (f.depth == cap) continue;
      uint32_t p = tree.parent(f.vertex);
      if (p != PlaneTree::npos && p != f.from) stack.push_back({p, f.vertex, f.depth + 1});
      for (uint32_t c : tree.children(f.vertex))
        if (c != f.from) stack.push_back({c, f.vertex, f.depth + 1});
    }
  }
  return counts;
}

uint64_t window_path_count(const PlaneTree& tree, uint32_t window_index, uint32_t subdivisions,
                           uint64_t scale_num, uint64_t scale_den) {
  if (subdivisions == 0 || scale_num == 0 || scale_den == 0)
    throw std::invalid_argument("window_path_count: zero subdivision or scale");

  // ell in [ i*L/M, (i+1)*L/M )  <=>  i*num <= ell*M*den < (i+1)*num,
  // evaluated in unsigned 128-bit arithmetic.
  auto in_window = [&](uint64_t ell) {
    unsigned __int128 lhs = static_cast<unsigned __int128>(ell) * subdivisions * scale_den;
    unsigned __int128 lo = static_cast<unsigned __int128>(window_index) * scale_num;
    unsigned __int128 hi = static_cast<unsigned __int128>(window_index + 1) * scale_num;
    return lhs >= lo && lhs < hi;
  };

  // Largest length possibly in the window: ell < (i+1)*num / (M*den).
  uint64_t cap_bound =
      static_cast<uint64_t>(((static_cast<unsigned __int128>(window_index) + 1) * scale_num +
                             (static_cast<unsigned __int128>(subdivisions) * scale_den - 1)) /
                            (static_cast<unsigned __int128>(subdivisions) * scale_den));
  uint32_t cap = static_cast<uint32_t>(std::min<uint64_t>(cap_bound, tree.n_edges()));

  std::vector<uint64_t> counts = count_oriented_paths(tree, cap);
  uint64_t total = 0;
  for (uint64_t ell = 1; ell <= cap; ++ell)
    if (in_window(ell)) total += counts[ell];
  return total;
}

}  // namespace unicycle
