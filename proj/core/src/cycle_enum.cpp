#include "unicycle/cycle_enum.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>
#include <utility>

namespace unicycle {

namespace {

// Shortest distances from src over the whole kernel (loops ignored).
// Used only as admissible lower bounds, so restricting to the vertices
// a particular search may still visit is unnecessary.
void dijkstra(const Kernel& k, uint32_t src, std::vector<uint64_t>& dist) {
  dist.assign(k.n_vertices(), UINT64_MAX);
  using Item = std::pair<uint64_t, uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  dist[src] = 0;
  pq.emplace(0, src);
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d != dist[v]) continue;
    for (uint32_t packed : k.incident(v)) {
      const KernelEdge& ke = k.edge(Kernel::edge_of(packed));
      if (ke.u == ke.v) continue;
      uint32_t w = Kernel::end_of(packed) == 0 ? ke.v : ke.u;
      uint64_t nd = d + ke.weight;
      if (nd < dist[w]) {
        dist[w] = nd;
        pq.emplace(nd, w);
      }
    }
  }
}

// Junctions of a closed walk given its edges and, per edge, the side at
// the start vertex. One junction per interior of a contracted edge plus
// one per kernel vertex where arrival and departure tree endpoints
// differ.
uint32_t walk_junctions(const Kernel& k, std::span<const uint32_t> seq,
                        std::span<const uint8_t> sides) {
  uint32_t total = 0;
  size_t m = seq.size();
  for (size_t i = 0; i < m; ++i) {
    total += k.edge(seq[i]).internal_junctions;
    size_t j = (i + 1) % m;
    uint32_t arrive = k.tree_end(seq[i], sides[i] ^ 1u);
    uint32_t depart = k.tree_end(seq[j], sides[j]);
    if (arrive != depart) ++total;
  }
  return total;
}

struct Found {
  CycleRecord rec;
  std::vector<uint32_t> seq;
};

struct Searcher {
  const Kernel& k;
  const EnumOptions& opt;
  std::vector<Found>& found;
  std::set<std::vector<uint32_t>>& seen;
  bool& truncated;

  std::vector<uint64_t> dist;
  std::vector<uint8_t> on_path;
  std::vector<uint8_t> used;
  std::vector<uint32_t> path_e;
  std::vector<uint8_t> path_s;
  uint32_t root = 0;
  uint64_t len = 0;
  bool aborted = false;

  void emit(uint32_t close_e, uint8_t close_s, uint64_t close_len) {
    if (found.size() >= opt.max_cycles) {
      truncated = true;
      aborted = true;
      return;
    }
    std::vector<uint32_t> seq = path_e;
    seq.push_back(close_e);
    std::vector<uint8_t> sides = path_s;
    sides.push_back(close_s);
    if (!seen.insert(canonical_cycle_key(seq)).second) return;
    CycleRecord rec;
    rec.length = close_len;
    rec.junctions = walk_junctions(k, seq, sides);
    rec.loop = false;
    found.push_back({rec, std::move(seq)});
  }

  void go(uint32_t cur) {
    for (uint32_t packed : k.incident(cur)) {
      if (aborted) return;
      uint32_t e = Kernel::edge_of(packed);
      uint8_t s = static_cast<uint8_t>(Kernel::end_of(packed));
      const KernelEdge& ke = k.edge(e);
      if (ke.u == ke.v) continue;
      if (used[e]) continue;
      uint32_t nxt = s == 0 ? ke.v : ke.u;
      uint64_t nl = len + ke.weight;
      if (nl > opt.cap) continue;
      if (nxt == root) {
        // Closing edge must exceed the opening edge id so each cycle is
        // emitted in exactly one orientation.
        if (!path_e.empty() && path_e.front() < e) emit(e, s, nl);
        continue;
      }
      if (nxt < root || on_path[nxt]) continue;
      if (opt.prune && dist[nxt] > opt.cap - nl) continue;
      path_e.push_back(e);
      path_s.push_back(s);
      on_path[nxt] = 1;
      used[e] = 1;
      uint64_t save = len;
      len = nl;
      go(nxt);
      len = save;
      used[e] = 0;
      on_path[nxt] = 0;
      path_e.pop_back();
      path_s.pop_back();
    }
  }
};

}  // namespace

std::vector<uint32_t> canonical_cycle_key(std::span<const uint32_t> edge_seq) {
  size_t m = edge_seq.size();
  if (m == 0) return {};
  std::vector<uint32_t> best(edge_seq.begin(), edge_seq.end());
  std::vector<uint32_t> cand(m);
  auto consider = [&](const std::vector<uint32_t>& base) {
    for (size_t r = 0; r < m; ++r) {
      for (size_t i = 0; i < m; ++i) cand[i] = base[(r + i) % m];
      if (cand < best) best = cand;
    }
  };
  std::vector<uint32_t> fwd(edge_seq.begin(), edge_seq.end());
  std::vector<uint32_t> rev(edge_seq.rbegin(), edge_seq.rend());
  consider(fwd);
  consider(rev);
  return best;
}

uint32_t junction_count(const Kernel& kernel, std::span<const uint32_t> edge_seq) {
  size_t m = edge_seq.size();
  if (m == 0) throw std::invalid_argument("junction_count: empty sequence");
  for (uint32_t e : edge_seq)
    if (e >= kernel.n_edges()) throw std::invalid_argument("junction_count: bad edge id");

  if (m == 1) {
    const KernelEdge& ke = kernel.edge(edge_seq[0]);
    if (ke.u != ke.v) throw std::invalid_argument("junction_count: single edge is not a loop");
    return ke.internal_junctions + (ke.tree_end_u != ke.tree_end_v ? 1u : 0u);
  }

  std::vector<uint32_t> sorted(edge_seq.begin(), edge_seq.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("junction_count: repeated edge");

  const KernelEdge& first = kernel.edge(edge_seq[0]);
  const KernelEdge& last = kernel.edge(edge_seq[m - 1]);
  uint32_t start;
  if (first.u == last.u || first.u == last.v)
    start = first.u;
  else if (first.v == last.u || first.v == last.v)
    start = first.v;
  else
    throw std::invalid_argument("junction_count: sequence does not close");

  std::vector<uint8_t> sides(m);
  std::vector<uint8_t> visited(kernel.n_vertices(), 0);
  uint32_t cur = start;
  for (size_t i = 0; i < m; ++i) {
    const KernelEdge& ke = kernel.edge(edge_seq[i]);
    if (ke.u == ke.v) throw std::invalid_argument("junction_count: loop inside longer cycle");
    if (ke.u == cur)
      sides[i] = 0;
    else if (ke.v == cur)
      sides[i] = 1;
    else
      throw std::invalid_argument("junction_count: sequence not contiguous");
    if (visited[cur]) throw std::invalid_argument("junction_count: repeated vertex");
    visited[cur] = 1;
    cur = sides[i] == 0 ? ke.v : ke.u;
  }
  if (cur != start) throw std::invalid_argument("junction_count: sequence does not close");

  return walk_junctions(kernel, edge_seq, sides);
}

EnumResult enumerate_short_cycles(const Kernel& kernel, const EnumOptions& options) {
  EnumResult out;
  if (kernel.empty()) return out;

  std::vector<Found> found;
  std::set<std::vector<uint32_t>> seen;

  for (uint32_t e = 0; e < kernel.n_edges(); ++e) {
    const KernelEdge& ke = kernel.edge(e);
    if (ke.u != ke.v || ke.weight > options.cap) continue;
    if (found.size() >= options.max_cycles) {
      out.truncated = true;
      break;
    }
    CycleRecord rec;
    rec.length = ke.weight;
    rec.junctions = ke.internal_junctions + (ke.tree_end_u != ke.tree_end_v ? 1u : 0u);
    rec.loop = ke.weight == 1;
    found.push_back({rec, {e}});
  }

  if (!out.truncated) {
    Searcher sr{kernel, options, found, seen, out.truncated,
                {}, {}, {}, {}, {}};
    sr.on_path.assign(kernel.n_vertices(), 0);
    sr.used.assign(kernel.n_edges(), 0);
    for (uint32_t r = 0; r < kernel.n_vertices() && !sr.aborted; ++r) {
      if (options.prune) dijkstra(kernel, r, sr.dist);
      sr.root = r;
      sr.on_path[r] = 1;
      sr.len = 0;
      sr.go(r);
      sr.on_path[r] = 0;
    }
  }

  std::vector<size_t> order(found.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    const Found& x = found[a];
    const Found& y = found[b];
    if (x.rec.length != y.rec.length) return x.rec.length < y.rec.length;
    if (x.rec.junctions != y.rec.junctions) return x.rec.junctions < y.rec.junctions;
    return x.seq < y.seq;
  });
  out.cycles.reserve(found.size());
  if (options.keep_edges) out.edges.reserve(found.size());
  for (size_t idx : order) {
    out.cycles.push_back(found[idx].rec);
    if (options.keep_edges) out.edges.push_back(std::move(found[idx].seq));
  }
  return out;
}

}  // namespace unicycle
