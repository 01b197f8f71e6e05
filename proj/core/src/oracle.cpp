#include "unicycle/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace unicycle {

namespace {

void gen_words(std::string& word, uint32_t opens, uint32_t closes, uint32_t n,
               const std::function<void(const PlaneTree&)>& fn) {
  if (word.size() == 2 * n) {
    fn(PlaneTree::from_word(word));
    return;
  }
  if (opens < n) {
    word.push_back('(');
    gen_words(word, opens + 1, closes, n, fn);
    word.pop_back();
  }
  if (closes < opens) {
    word.push_back(')');
    gen_words(word, opens, closes + 1, n, fn);
    word.pop_back();
  }
}

}  // namespace

void enumerate_plane_trees(uint32_t n, const std::function<void(const PlaneTree&)>& fn) {
  if (n > 12) throw std::invalid_argument("enumerate_plane_trees: n > 12");
  std::string word;
  word.reserve(2 * n);
  gen_words(word, 0, 0, n, fn);
}

std::vector<PlaneTree> all_plane_trees(uint32_t n) {
  std::vector<PlaneTree> out;
  enumerate_plane_trees(n, [&](const PlaneTree& t) { out.push_back(t); });
  return out;
}

void enumerate_cperms(uint32_t n, uint32_t g,
                      const std::function<void(const CPermutation&)>& fn) {
  if (n > 9) throw std::invalid_argument("enumerate_cperms: n > 9");
  if (n == 0) {
    if (g == 0) fn(CPermutation{});
    return;
  }
  if (2 * g >= n) return;  // would need fewer than one cycle
  std::vector<uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 1u);
  uint32_t want_cycles = n - 2 * g;
  do {
    CPermutation cp;
    cp.n = n;
    std::vector<uint8_t> seen(n + 1, 0);
    bool ok = true;
    for (uint32_t start = 1; start <= n && ok; ++start) {
      if (seen[start]) continue;
      std::vector<uint32_t> cyc;
      uint32_t x = start;
      while (!seen[x]) {
        seen[x] = 1;
        cyc.push_back(x);
        x = perm[x - 1];
      }
      if (cyc.size() % 2 == 0) ok = false;
      cp.cycles.push_back(std::move(cyc));
    }
    if (ok && cp.cycles.size() == want_cycles) {
      canonicalize(cp);
      fn(cp);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
}

std::vector<CPermutation> all_cperms(uint32_t n, uint32_t g) {
  std::vector<CPermutation> out;
  enumerate_cperms(n, g, [&](const CPermutation& p) { out.push_back(p); });
  return out;
}

namespace {

// Independent DFS cycle search on the raw multigraph. Junctions come
// straight from the tree endpoints of consecutive edges, never from
// kernel bookkeeping.
struct NaiveSearch {
  const UnderlyingGraph& g;
  uint64_t cap;
  std::vector<CycleRecord> records;
  std::set<std::vector<uint32_t>> seen;

  std::vector<uint8_t> on_path;
  std::vector<uint8_t> used;
  std::vector<uint32_t> path_e;
  std::vector<uint8_t> path_s;
  uint32_t root = 0;

  uint32_t walk_k(std::span<const uint32_t> seq, std::span<const uint8_t> sides) const {
    uint32_t k = 0;
    size_t m = seq.size();
    for (size_t i = 0; i < m; ++i) {
      const GraphEdge& in = g.edge(seq[i]);
      const GraphEdge& out = g.edge(seq[(i + 1) % m]);
      uint32_t arrive = sides[i] == 0 ? in.tree_v : in.tree_u;
      uint32_t depart = sides[(i + 1) % m] == 0 ? out.tree_u : out.tree_v;
      if (arrive != depart) ++k;
    }
    return k;
  }

  void close(uint32_t e, uint8_t s) {
    std::vector<uint32_t> seq = path_e;
    seq.push_back(e);
    std::vector<uint8_t> sides = path_s;
    sides.push_back(s);
    if (!seen.insert(canonical_cycle_key(seq)).second) return;
    CycleRecord rec;
    rec.length = seq.size();
    rec.junctions = walk_k(seq, sides);
    rec.loop = false;
    records.push_back(rec);
  }

  void go(uint32_t cur) {
    if (path_e.size() >= cap) return;
    for (uint32_t packed : g.incident(cur)) {
      uint32_t e = UnderlyingGraph::edge_of(packed);
      uint8_t s = static_cast<uint8_t>(UnderlyingGraph::end_of(packed));
      const GraphEdge& ge = g.edge(e);
      if (ge.u == ge.v) continue;
      if (used[e]) continue;
      uint32_t nxt = s == 0 ? ge.v : ge.u;
      if (nxt == root) {
        if (!path_e.empty() && path_e.front() < e) close(e, s);
        continue;
      }
      if (nxt < root || on_path[nxt]) continue;
      path_e.push_back(e);
      path_s.push_back(s);
      on_path[nxt] = 1;
      used[e] = 1;
      go(nxt);
      used[e] = 0;
      on_path[nxt] = 0;
      path_e.pop_back();
      path_s.pop_back();
    }
  }
};

}  // namespace

std::vector<CycleRecord> naive_cycle_enumeration(const UnderlyingGraph& graph, uint64_t cap) {
  if (graph.n_edges() > 200) throw std::invalid_argument("naive_cycle_enumeration: too many edges");
  NaiveSearch ns{graph, cap, {}, {}, {}, {}, {}, {}, 0};
  ns.on_path.assign(graph.n_classes(), 0);
  ns.used.assign(graph.n_edges(), 0);

  for (uint32_t e = 0; e < graph.n_edges(); ++e) {
    const GraphEdge& ge = graph.edge(e);
    if (ge.u != ge.v || cap < 1) continue;
    CycleRecord rec;
    rec.length = 1;
    // A tree edge joins two distinct tree vertices, so a loop always
    // switches vertices within its class: one junction.
    rec.junctions = 1;
    rec.loop = true;
    ns.records.push_back(rec);
  }

  for (uint32_t r = 0; r < graph.n_classes(); ++r) {
    ns.root = r;
    ns.on_path[r] = 1;
    ns.go(r);
    ns.on_path[r] = 0;
  }

  std::sort(ns.records.begin(), ns.records.end(), [](const CycleRecord& a, const CycleRecord& b) {
    if (a.length != b.length) return a.length < b.length;
    return a.junctions < b.junctions;
  });
  return ns.records;
}

std::string profile_key(std::span<const CycleRecord> cycles) {
  std::vector<std::pair<uint64_t, uint32_t>> pairs;
  pairs.reserve(cycles.size());
  for (const CycleRecord& c : cycles) pairs.emplace_back(c.length, c.junctions);
  std::sort(pairs.begin(), pairs.end());
  if (pairs.empty()) return "()";
  std::ostringstream os;
  for (auto [l, k] : pairs) os << '(' << l << ',' << k << ')';
  return os.str();
}

ExactDistribution exact_map_statistics(uint32_t n, uint32_t g) {
  if (n > 7) throw std::invalid_argument("exact_map_statistics: n > 7");
  if (2 * g > n) throw std::invalid_argument("exact_map_statistics: infeasible genus");

  std::map<std::string, uint64_t> counts;
  uint64_t total = 0;
  std::vector<CPermutation> perms = all_cperms(n + 1, g);
  enumerate_plane_trees(n, [&](const PlaneTree& tree) {
    for (const CPermutation& sigma : perms) {
      UnderlyingGraph graph = build_underlying_graph(tree, sigma);
      std::vector<CycleRecord> cycles = naive_cycle_enumeration(graph, n);
      ++counts[profile_key(cycles)];
      ++total;
    }
  });
  if (total == 0) throw std::invalid_argument("exact_map_statistics: empty instance set");

  ExactDistribution dist;
  dist.total = total;
  BigRat check = 0;
  for (const auto& [key, cnt] : counts) {
    dist.keys.push_back(key);
    dist.counts.push_back(cnt);
    dist.probabilities.emplace_back(BigInt(cnt), BigInt(total));
    check += dist.probabilities.back();
  }
  if (check != 1) throw std::logic_error("exact_map_statistics: probabilities do not sum to 1");
  return dist;
}

namespace {

// Vertex sets of all oriented paths of a given length in a tree, as
// bitmasks (trees here have at most 13 vertices).
std::vector<uint32_t> path_masks(const PlaneTree& t, uint32_t len) {
  uint32_t nv = t.n_vertices();
  std::vector<uint32_t> depth(nv, 0);
  for (uint32_t v = 1; v < nv; ++v) depth[v] = depth[t.parent(v)] + 1;
  std::vector<uint32_t> out;
  for (uint32_t a = 0; a < nv; ++a) {
    for (uint32_t b = 0; b < nv; ++b) {
      if (a == b) continue;
      uint32_t x = a, y = b, mask = 0, steps = 0;
      while (x != y) {
        if (depth[x] >= depth[y]) {
          mask |= 1u << x;
          x = t.parent(x);
        } else {
          mask |= 1u << y;
          y = t.parent(y);
        }
        ++steps;
      }
      mask |= 1u << x;
      if (steps == len) out.push_back(mask);
    }
  }
  return out;
}

}  // namespace

PathPairCounts count_disjoint_path_pairs(uint32_t n, uint32_t l1, uint32_t l2) {
  if (n > 8) throw std::invalid_argument("count_disjoint_path_pairs: n > 8");
  if (l1 < 1 || l1 > 4 || l2 < 1 || l2 > 4)
    throw std::invalid_argument("count_disjoint_path_pairs: lengths must be in [1,4]");

  PathPairCounts res;
  enumerate_plane_trees(n, [&](const PlaneTree& t) {
    std::vector<uint32_t> m1 = path_masks(t, l1);
    std::vector<uint32_t> m2 = l2 == l1 ? m1 : path_masks(t, l2);
    uint64_t here = 0;
    for (uint32_t a : m1)
      for (uint32_t b : m2)
        if ((a & b) == 0) ++here;
    res.pairs += here;
  });
  uint32_t l = l1 + l2;
  res.bound = BigInt(4) * l1 * l2 * (n + l) * binomial(2 * n, n + l);
  return res;
}

namespace {

// Canonical string of a tree whose vertices carry (position in path 1,
// position in path 2) labels; tried from every root, smallest wins.
std::string rooted_canon(const std::vector<std::vector<uint32_t>>& adj,
                         const std::vector<std::pair<int, int>>& label, uint32_t v,
                         uint32_t parent) {
  std::vector<std::string> subs;
  for (uint32_t w : adj[v])
    if (w != parent) subs.push_back(rooted_canon(adj, label, w, v));
  std::sort(subs.begin(), subs.end());
  std::ostringstream os;
  os << '[' << label[v].first << ':' << label[v].second;
  for (const std::string& s : subs) os << s;
  os << ']';
  return os.str();
}

}  // namespace

UnionShapeCounts count_path_union_shapes(uint32_t l1, uint32_t l2) {
  if (l1 < 1 || l1 > 4 || l2 < 1 || l2 > 4)
    throw std::invalid_argument("count_path_union_shapes: lengths must be in [1,4]");

  // Two intersecting paths in a tree share a (possibly single-vertex)
  // segment; the rest of the second path hangs off the segment ends.
  // Enumerate segment length t, its offset i in path 1, the split of
  // path 2 around it, and the relative direction, then canonize.
  std::set<std::string> shapes;
  for (uint32_t t = 0; t <= std::min(l1, l2); ++t) {
    for (uint32_t i = 0; i + t <= l1; ++i) {
      for (uint32_t a = 0; a + t <= l2; ++a) {
        uint32_t b = l2 - t - a;
        for (int dir = 0; dir < (t == 0 ? 1 : 2); ++dir) {
          uint32_t nv = (l1 + 1) + a + b;
          std::vector<std::vector<uint32_t>> adj(nv);
          std::vector<std::pair<int, int>> label(nv, {-1, -1});
          auto link = [&](uint32_t x, uint32_t y) {
            adj[x].push_back(y);
            adj[y].push_back(x);
          };
          for (uint32_t j = 0; j <= l1; ++j) label[j].first = static_cast<int>(j);
          for (uint32_t j = 0; j < l1; ++j) link(j, j + 1);
          // Path 2 position -> vertex id. Segment first, then tails.
          auto seg_vertex = [&](uint32_t pos2) {
            uint32_t off = pos2 - a;  // 0..t along the segment
            return dir == 0 ? i + off : i + t - off;
          };
          uint32_t fresh = l1 + 1;
          uint32_t prev = UINT32_MAX;
          for (uint32_t pos = 0; pos <= l2; ++pos) {
            uint32_t vid;
            if (pos >= a && pos <= a + t) {
              vid = seg_vertex(pos);
            } else {
              vid = fresh++;
            }
            label[vid].second = static_cast<int>(pos);
            if (pos > 0 && (pos < a + 1 || pos > a + t)) link(prev, vid);
            prev = vid;
          }
          std::string best;
          for (uint32_t r = 0; r < nv; ++r) {
            std::string s = rooted_canon(adj, label, r, UINT32_MAX);
            if (best.empty() || s < best) best = std::move(s);
          }
          shapes.insert(best);
        }
      }
    }
  }
  UnionShapeCounts res;
  res.shapes = shapes.size();
  res.bound = 16ull * (l1 + 1) * (l2 + 1) * (std::min(l1, l2) + 1);
  return res;
}

namespace {

struct WalkSearch {
  const UnderlyingGraph& g;
  uint64_t cap;
  std::set<std::vector<uint32_t>> seen;
  uint64_t found = 0;

  std::vector<uint32_t> steps;  // (edge << 1) | dir, dir 0 = u-to-v
  uint32_t root = 0;

  static uint32_t inverse(uint32_t step) { return step ^ 1u; }

  std::vector<uint32_t> canon() const {
    size_t m = steps.size();
    std::vector<uint32_t> best;
    std::vector<uint32_t> cand(m);
    auto consider = [&](const std::vector<uint32_t>& base) {
      for (size_t r = 0; r < m; ++r) {
        for (size_t j = 0; j < m; ++j) cand[j] = base[(r + j) % m];
        if (best.empty() || cand < best) best = cand;
      }
    };
    consider(steps);
    std::vector<uint32_t> rev(m);
    for (size_t j = 0; j < m; ++j) rev[j] = inverse(steps[m - 1 - j]);
    consider(rev);
    return best;
  }

  bool primitive() const {
    size_t m = steps.size();
    for (size_t d = 1; d < m; ++d) {
      if (m % d != 0) continue;
      bool periodic = true;
      for (size_t j = d; j < m && periodic; ++j) periodic = steps[j] == steps[j - d];
      if (periodic) return false;
    }
    return true;
  }

  bool simple() const {
    // Vertex sequence v_0..v_{m-1}; the walk is a simple cycle iff all
    // of them are distinct.
    std::set<uint32_t> vs;
    uint32_t cur = root;
    for (uint32_t step : steps) {
      if (!vs.insert(cur).second) return false;
      const GraphEdge& e = g.edge(step >> 1);
      cur = (step & 1) == 0 ? e.v : e.u;
    }
    return true;
  }

  void record() {
    if (!primitive() || simple()) return;
    if (seen.insert(canon()).second) ++found;
  }

  void go(uint32_t cur) {
    if (steps.size() == cap) return;
    for (uint32_t packed : g.incident(cur)) {
      uint32_t e = UnderlyingGraph::edge_of(packed);
      uint32_t dir = UnderlyingGraph::end_of(packed);
      uint32_t step = (e << 1) | dir;
      if (!steps.empty() && step == inverse(steps.back())) continue;
      const GraphEdge& ge = g.edge(e);
      uint32_t nxt = dir == 0 ? ge.v : ge.u;
      if (nxt < root) continue;
      steps.push_back(step);
      if (nxt == root && step != inverse(steps.front())) record();
      go(nxt);
      steps.pop_back();
    }
  }
};

}  // namespace

uint64_t count_primitive_nonsimple_walks(const UnderlyingGraph& graph, uint64_t cap) {
  if (graph.n_edges() > 200) throw std::invalid_argument("count_primitive_nonsimple_walks: too many edges");
  if (cap > 30) throw std::invalid_argument("count_primitive_nonsimple_walks: cap > 30");
  WalkSearch ws{graph, cap, {}, 0, {}, 0};
  for (uint32_t r = 0; r < graph.n_classes(); ++r) {
    ws.root = r;
    ws.go(r);
  }
  return ws.found;
}

}  // namespace unicycle
