#include "unicycle/underlying_graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace unicycle {

// rep[v] = smallest tree vertex sharing v's class.
UnderlyingGraph UnderlyingGraph::build(const PlaneTree& tree, const std::vector<uint32_t>& rep) {
  uint32_t nv = tree.n_vertices();
  UnderlyingGraph g;

  // classes numbered by increasing representative
  std::vector<uint32_t> id(nv, UINT32_MAX);
  uint32_t next = 0;
  g.class_of_.resize(nv);
  for (uint32_t v = 0; v < nv; ++v) {
    if (rep[v] == v) id[v] = next++;
    g.class_of_[v] = id[rep[v]];
  }
  g.n_classes_ = next;

  uint32_t ne = tree.n_edges();
  g.edges_.resize(ne);
  for (uint32_t v = 1; v <= ne; ++v) {
    uint32_t p = tree.parent(v);
    g.edges_[v - 1] = {g.class_of_[p], g.class_of_[v], p, v};
  }

  g.adj_off_.assign(g.n_classes_ + 1, 0);
  for (const GraphEdge& e : g.edges_) {
    ++g.adj_off_[e.u + 1];
    ++g.adj_off_[e.v + 1];
  }
  for (uint32_t c = 0; c < g.n_classes_; ++c) g.adj_off_[c + 1] += g.adj_off_[c];
  g.adj_.resize(2 * static_cast<size_t>(ne));
  std::vector<uint32_t> fill(g.adj_off_.begin(), g.adj_off_.end() - 1);
  for (uint32_t e = 0; e < ne; ++e) {
    g.adj_[fill[g.edges_[e].u]++] = (e << 1) | 0;
    g.adj_[fill[g.edges_[e].v]++] = (e << 1) | 1;
  }
  return g;
}

namespace {

std::vector<uint32_t> rep_from_cycles(const PlaneTree& tree,
                                      const std::vector<std::vector<uint32_t>>& cycles,
                                      uint32_t sigma_n) {
  if (sigma_n != tree.n_vertices())
    throw std::invalid_argument("decorated tree: permutation size must be n_vertices");
  uint32_t nv = tree.n_vertices();
  std::vector<uint32_t> rep(nv);
  for (uint32_t v = 0; v < nv; ++v) rep[v] = v;
  for (const auto& cyc : cycles) {
    if (cyc.size() % 2 == 0)
      throw std::invalid_argument("decorated tree: even cycle in permutation");
    uint32_t mn = UINT32_MAX;
    for (uint32_t e : cyc) {
      if (e == 0 || e > nv)
        throw std::invalid_argument("decorated tree: element out of range");
      mn = std::min(mn, e - 1);
    }
    for (uint32_t e : cyc) {
      if (rep[e - 1] != e - 1 && rep[e - 1] != mn)
        throw std::invalid_argument("decorated tree: cycles are not disjoint");
      rep[e - 1] = mn;
    }
  }
  return rep;
}

}  // namespace

UnderlyingGraph build_underlying_graph(const PlaneTree& tree, const CPermutation& sigma) {
  auto rep = rep_from_cycles(tree, sigma.cycles, sigma.n);
  return UnderlyingGraph::build(tree, rep);
}

UnderlyingGraph build_underlying_graph(const PlaneTree& tree, const SparseCycles& sigma) {
  auto rep = rep_from_cycles(tree, sigma.cycles, sigma.n);
  return UnderlyingGraph::build(tree, rep);
}

uint64_t CDecoratedTree::genus() const {
  validate();
  return (sigma.n - sigma.cycles.size()) / 2;
}

void CDecoratedTree::validate() const {
  if (sigma.n != tree.n_vertices())
    throw std::invalid_argument("decorated tree: permutation size != tree vertex count");
  uint64_t covered = 0;
  for (const auto& cyc : sigma.cycles) {
    if (cyc.size() % 2 == 0)
      throw std::invalid_argument("decorated tree: even cycle in permutation");
    covered += cyc.size();
  }
  if (covered != sigma.n)
    throw std::invalid_argument("decorated tree: cycles do not cover the ground set");
  if ((sigma.n - sigma.cycles.size()) % 2 != 0)
    throw std::invalid_argument("decorated tree: cycle count has wrong parity");
}

UnderlyingGraph build_underlying_graph(const CDecoratedTree& decorated) {
  return build_underlying_graph(decorated.tree, decorated.sigma);
}

Kernel kernelize(const UnderlyingGraph& graph) {
  uint32_t nc = graph.n_classes();
  uint32_t ne = graph.n_edges();
  std::vector<uint8_t> edge_alive(ne, 1);
  std::vector<uint32_t> deg(nc);
  for (uint32_t c = 0; c < nc; ++c) deg[c] = graph.degree(c);

  // strip degree-1 classes until only cycle-carrying classes remain
  std::vector<uint32_t> stack;
  for (uint32_t c = 0; c < nc; ++c)
    if (deg[c] == 1) stack.push_back(c);
  while (!stack.empty()) {
    uint32_t c = stack.back();
    stack.pop_back();
    if (deg[c] != 1) continue;
    for (uint32_t packed : graph.incident(c)) {
      uint32_t e = UnderlyingGraph::edge_of(packed);
      if (!edge_alive[e]) continue;
      edge_alive[e] = 0;
      deg[c] = 0;
      const GraphEdge& ge = graph.edge(e);
      uint32_t other = ge.u == c ? ge.v : ge.u;
      if (--deg[other] == 1) stack.push_back(other);
      break;
    }
  }

  Kernel k;
  std::vector<uint32_t> kernel_id(nc, UINT32_MAX);
  for (uint32_t c = 0; c < nc; ++c)
    if (deg[c] >= 3) {
      kernel_id[c] = static_cast<uint32_t>(k.vertex_class_.size());
      k.vertex_class_.push_back(c);
    }
  if (k.vertex_class_.empty()) {
    // either nothing alive (forest core) or a plain cycle of degree-2
    // classes: anchor the cycle at its smallest class
    uint32_t anchor = UINT32_MAX;
    for (uint32_t c = 0; c < nc && anchor == UINT32_MAX; ++c)
      if (deg[c] >= 2) anchor = c;
    if (anchor == UINT32_MAX) {
      k.adj_off_.assign(1, 0);
      return k;
    }
    kernel_id[anchor] = 0;
    k.vertex_class_.push_back(anchor);
  }

  // contract chains of degree-2 classes between kernel vertices
  std::vector<uint8_t> consumed(ne, 0);
  auto tree_end_at = [&](uint32_t e, uint32_t end) {
    return end == 0 ? graph.edge(e).tree_u : graph.edge(e).tree_v;
  };
  auto class_at = [&](uint32_t e, uint32_t end) {
    return end == 0 ? graph.edge(e).u : graph.edge(e).v;
  };
  for (uint32_t kv = 0; kv < k.vertex_class_.size(); ++kv) {
    uint32_t start_class = k.vertex_class_[kv];
    for (uint32_t packed : graph.incident(start_class)) {
      uint32_t e = UnderlyingGraph::edge_of(packed);
      uint32_t end = UnderlyingGraph::end_of(packed);
      if (!edge_alive[e] || consumed[e]) continue;
      consumed[e] = 1;
      KernelEdge ke;
      ke.u = kv;
      ke.weight = 1;
      ke.internal_junctions = 0;
      ke.tree_end_u = tree_end_at(e, end);
      uint32_t cur = class_at(e, end ^ 1);
      uint32_t enter_tree = tree_end_at(e, end ^ 1);
      while (kernel_id[cur] == UINT32_MAX) {
        // interior chain class: exactly one other live edge continues
        uint32_t next_packed = UINT32_MAX;
        for (uint32_t cand : graph.incident(cur)) {
          uint32_t ce = UnderlyingGraph::edge_of(cand);
          if (edge_alive[ce] && !consumed[ce]) {
            next_packed = cand;
            break;
          }
        }
        if (next_packed == UINT32_MAX)
          throw std::logic_error("kernelize: broken chain");
        uint32_t ne2 = UnderlyingGraph::edge_of(next_packed);
        uint32_t nend = UnderlyingGraph::end_of(next_packed);
        consumed[ne2] = 1;
        if (tree_end_at(ne2, nend) != enter_tree) ++ke.internal_junctions;
        ++ke.weight;
        cur = class_at(ne2, nend ^ 1);
        enter_tree = tree_end_at(ne2, nend ^ 1);
      }
      ke.v = kernel_id[cur];
      ke.tree_end_v = enter_tree;
      k.edges_.push_back(ke);
    }
  }

  uint32_t nk = k.n_vertices();
  k.adj_off_.assign(nk + 1, 0);
  for (const KernelEdge& e : k.edges_) {
    ++k.adj_off_[e.u + 1];
    ++k.adj_off_[e.v + 1];
  }
  for (uint32_t v = 0; v < nk; ++v) k.adj_off_[v + 1] += k.adj_off_[v];
  k.adj_.resize(2 * k.edges_.size());
  std::vector<uint32_t> fill(k.adj_off_.begin(), k.adj_off_.end() - 1);
  for (uint32_t e = 0; e < k.edges_.size(); ++e) {
    k.adj_[fill[k.edges_[e].u]++] = (e << 1) | 0;
    k.adj_[fill[k.edges_[e].v]++] = (e << 1) | 1;
  }
  return k;
}

namespace {

// BFS over classes; returns (farthest class, eccentricity).
std::pair<uint32_t, uint64_t> bfs_far(const UnderlyingGraph& g, uint32_t src,
                                      std::vector<uint32_t>& dist, std::vector<uint32_t>& queue) {
  std::fill(dist.begin(), dist.end(), UINT32_MAX);
  dist[src] = 0;
  queue.clear();
  queue.push_back(src);
  uint32_t far = src;
  for (size_t head = 0; head < queue.size(); ++head) {
    uint32_t c = queue[head];
    for (uint32_t packed : g.incident(c)) {
      const GraphEdge& e = g.edge(UnderlyingGraph::edge_of(packed));
      uint32_t other = UnderlyingGraph::end_of(packed) == 0 ? e.v : e.u;
      if (dist[other] == UINT32_MAX) {
        dist[other] = dist[c] + 1;
        queue.push_back(other);
        if (dist[other] > dist[far]) far = other;
      }
    }
  }
  return {far, dist[far]};
}

}  // namespace

DiameterEstimate diameter_estimate(const UnderlyingGraph& graph, DiameterMode mode) {
  uint32_t nc = graph.n_classes();
  if (nc == 0) return {0, true};
  std::vector<uint32_t> dist(nc);
  std::vector<uint32_t> queue;
  queue.reserve(nc);
  if (mode == DiameterMode::exact) {
    if (nc > 100000)
      throw std::invalid_argument("diameter_estimate: exact mode refused above 10^5 classes");
    uint64_t best = 0;
    for (uint32_t s = 0; s < nc; ++s)
      best = std::max(best, bfs_far(graph, s, dist, queue).second);
    return {best, true};
  }
  auto [far, d1] = bfs_far(graph, 0, dist, queue);
  auto [far2, d2] = bfs_far(graph, far, dist, queue);
  (void)far2;
  return {std::max(d1, d2), false};
}

}  // namespace unicycle
