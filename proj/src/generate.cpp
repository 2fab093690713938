#include "rainbow/generate.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace rainbow {

std::vector<Edge> canonical_form(const Graph& g) {
  if (g.vertex_count > 8) throw PreconditionViolation("canonical_form is limited to 8 vertices");
  std::vector<Vertex> perm(static_cast<std::size_t>(g.vertex_count));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Edge> best;
  do {
    std::vector<Edge> cur;
    for (const Edge& e : g.edges) cur.emplace_back(perm[static_cast<std::size_t>(e.u)], perm[static_cast<std::size_t>(e.v)]);
    std::sort(cur.begin(), cur.end());
    if (best.empty() || cur < best) best = std::move(cur);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<Graph> connected_graphs(int e) {
  if (e < 1) return {};
  std::map<std::vector<Edge>, Graph> layer;
  layer.emplace(std::vector<Edge>{Edge(0, 1)}, Graph{2, {Edge(0, 1)}});
  for (int size = 1; size < e; ++size) {
    std::map<std::vector<Edge>, Graph> next;
    for (const auto& [key, g] : layer) {
      const std::set<Edge> have(g.edges.begin(), g.edges.end());
      auto push = [&](Graph grown) {
        std::vector<Edge> canon = canonical_form(grown);
        if (!next.contains(canon)) next.emplace(canon, Graph{grown.vertex_count, canon});
      };
      for (Vertex a = 0; a < g.vertex_count; ++a) {
        for (Vertex b = a + 1; b < g.vertex_count; ++b)
          if (!have.contains(Edge(a, b))) {
            Graph grown = g;
            grown.edges.emplace_back(a, b);
            push(grown);
          }
        Graph grown = g;
        grown.edges.emplace_back(a, g.vertex_count);
        ++grown.vertex_count;
        push(grown);
      }
    }
    layer = std::move(next);
  }
  std::vector<Graph> out;
  for (auto& [key, g] : layer) out.push_back(std::move(g));
  return out;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  Graph out = a;
  for (const Edge& e : b.edges) out.edges.emplace_back(e.u + a.vertex_count, e.v + a.vertex_count);
  out.vertex_count = a.vertex_count + b.vertex_count;
  return out;
}

std::vector<Graph> graphs_with_edges(int n) {
  std::vector<std::vector<Graph>> conn(static_cast<std::size_t>(n + 1));
  for (int e = 1; e <= n; ++e) conn[static_cast<std::size_t>(e)] = connected_graphs(e);
  std::vector<Graph> out;
  // Components in non-increasing (size, index) order, so each multiset appears once.
  std::function<void(int, int, int, const Graph&)> build = [&](int left, int max_size, int max_index,
                                                               const Graph& acc) {
    if (left == 0) {
      out.push_back(acc);
      return;
    }
    for (int size = std::min(left, max_size); size >= 1; --size) {
      const auto& options = conn[static_cast<std::size_t>(size)];
      const int top = size == max_size ? max_index : static_cast<int>(options.size()) - 1;
      for (int idx = top; idx >= 0; --idx)
        build(left - size, size, idx, disjoint_union(acc, options[static_cast<std::size_t>(idx)]));
    }
  };
  build(n, n, static_cast<int>(conn[static_cast<std::size_t>(n)].size()) - 1, Graph{});
  return out;
}

Graph random_graph(int n, std::mt19937_64& rng) {
  if (n < 1) throw PreconditionViolation("random_graph needs n >= 1");
  int v = 2;
  while (v * (v - 1) / 2 < n) ++v;
  v += static_cast<int>(rng() % static_cast<std::uint64_t>(2 * n - v + 1));
  std::vector<Edge> all;
  for (Vertex a = 0; a < v; ++a)
    for (Vertex b = a + 1; b < v; ++b) all.emplace_back(a, b);
  for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i)
    std::swap(all[i], all[i + rng() % (all.size() - i)]);
  all.resize(static_cast<std::size_t>(n));
  std::sort(all.begin(), all.end());
  std::vector<Vertex> dense(static_cast<std::size_t>(v), -1);
  Graph g;
  for (const Edge& e : all) {
    for (Vertex x : {e.u, e.v})
      if (dense[static_cast<std::size_t>(x)] < 0) dense[static_cast<std::size_t>(x)] = g.vertex_count++;
    g.edges.emplace_back(dense[static_cast<std::size_t>(e.u)], dense[static_cast<std::size_t>(e.v)]);
  }
  return g;
}

}  // namespace rainbow
