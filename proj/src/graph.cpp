#include "rainbow/graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace rainbow {

Edge::Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {
  if (a == b) throw PreconditionViolation("loop edge at vertex " + std::to_string(a));
}

std::string to_string(const Edge& e) {
  return std::to_string(e.u) + "-" + std::to_string(e.v);
}

void Graph::validate() const {
  EdgeSet seen;
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v >= vertex_count)
      throw PreconditionViolation("edge " + to_string(e) + " outside vertex range");
    if (!seen.insert(e).second) throw PreconditionViolation("duplicate edge " + to_string(e));
  }
}

std::vector<int> Graph::degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(vertex_count), 0);
  for (const Edge& e : edges) {
    ++deg[static_cast<std::size_t>(e.u)];
    ++deg[static_cast<std::size_t>(e.v)];
  }
  return deg;
}

std::vector<std::vector<int>> Graph::edge_components() const {
  std::vector<int> parent(static_cast<std::size_t>(vertex_count));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const Edge& e : edges) parent[static_cast<std::size_t>(find(e.u))] = find(e.v);

  // Components ordered by their first edge in input order.
  std::vector<int> slot(static_cast<std::size_t>(vertex_count), -1);
  std::vector<std::vector<int>> out;
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    int root = find(edges[static_cast<std::size_t>(i)].u);
    int& s = slot[static_cast<std::size_t>(root)];
    if (s < 0) {
      s = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[static_cast<std::size_t>(s)].push_back(i);
  }
  return out;
}

bool Graph::is_linear_forest() const {
  return rainbow::is_linear_forest(EdgeSet(edges.begin(), edges.end()), vertex_count);
}

Decomposition::Decomposition(int order, int class_count)
    : order_(order), classes_(static_cast<std::size_t>(class_count)) {}

void Decomposition::add(int cls, const Edge& e) {
  if (!at(cls).insert(e).second)
    throw InvariantViolation("decomposition", "edge " + to_string(e) + " already in class");
}

void Decomposition::remove(int cls, const Edge& e) {
  if (at(cls).erase(e) == 0)
    throw InvariantViolation("decomposition", "edge " + to_string(e) + " not in class");
}

void Decomposition::move(const Edge& e, int from, int to) {
  remove(from, e);
  add(to, e);
}

void Decomposition::swap_classes(int a, int b) {
  std::swap(at(a), at(b));
}

void Decomposition::set_order(int new_order) {
  if (new_order < order_) throw PreconditionViolation("cannot shrink a decomposition");
  order_ = new_order;
}

std::optional<int> Decomposition::class_of(const Edge& e) const {
  for (int i = 0; i < class_count(); ++i)
    if (at(i).contains(e)) return i;
  return std::nullopt;
}

std::size_t Decomposition::edge_count() const {
  std::size_t total = 0;
  for (const auto& c : classes_) total += c.size();
  return total;
}

void Decomposition::check_disjoint(const std::string& stage) const {
  EdgeSet seen;
  for (int i = 0; i < class_count(); ++i) {
    for (const Edge& e : at(i)) {
      if (e.u < 0 || e.v >= order_)
        throw InvariantViolation(stage, "edge " + to_string(e) + " outside K_" +
                                            std::to_string(order_));
      if (!seen.insert(e).second)
        throw InvariantViolation(stage, "edge " + to_string(e) + " in two classes");
    }
  }
}

bool Decomposition::is_complete() const {
  const auto expected = static_cast<std::size_t>(order_) * static_cast<std::size_t>(order_ - 1) / 2;
  EdgeSet seen;
  for (const auto& c : classes_)
    for (const Edge& e : c) {
      if (e.u < 0 || e.v >= order_ || !seen.insert(e).second) return false;
    }
  return seen.size() == expected;
}

void Decomposition::check_complete(const std::string& stage) const {
  check_disjoint(stage);
  const auto expected = static_cast<std::size_t>(order_) * static_cast<std::size_t>(order_ - 1) / 2;
  if (edge_count() != expected)
    throw InvariantViolation(stage, "classes cover " + std::to_string(edge_count()) +
                                        " edges of K_" + std::to_string(order_) + ", expected " +
                                        std::to_string(expected));
}

LinearForestView analyze_linear_forest(const EdgeSet& class_edges, int order) {
  const auto m = static_cast<std::size_t>(order);
  LinearForestView view;
  view.degree.assign(m, 0);
  view.path_of.assign(m, -1);
  view.partner.assign(m, -1);
  std::vector<std::vector<Vertex>> adj(m);
  for (const Edge& e : class_edges) {
    if (e.u < 0 || e.v >= order)
      throw PreconditionViolation("edge " + to_string(e) + " outside K_" + std::to_string(order));
    auto& du = view.degree[static_cast<std::size_t>(e.u)];
    auto& dv = view.degree[static_cast<std::size_t>(e.v)];
    if (++du > 2 || ++dv > 2)
      throw NotLinearForest("vertex of degree 3 at edge " + to_string(e));
    adj[static_cast<std::size_t>(e.u)].push_back(e.v);
    adj[static_cast<std::size_t>(e.v)].push_back(e.u);
  }

  std::size_t covered = 0;
  for (Vertex x = 0; x < order; ++x) {
    const auto xi = static_cast<std::size_t>(x);
    if (view.degree[xi] == 0) {
      view.isolated.push_back(x);
    } else if (view.degree[xi] == 1 && view.path_of[xi] < 0) {
      std::vector<Vertex> path{x};
      Vertex prev = -1;
      Vertex cur = x;
      while (true) {
        Vertex next = -1;
        for (Vertex y : adj[static_cast<std::size_t>(cur)])
          if (y != prev) next = y;
        if (next < 0) break;
        prev = cur;
        cur = next;
        path.push_back(cur);
      }
      const int idx = static_cast<int>(view.paths.size());
      for (Vertex y : path) view.path_of[static_cast<std::size_t>(y)] = idx;
      view.partner[xi] = cur;
      view.partner[static_cast<std::size_t>(cur)] = x;
      covered += path.size();
      view.paths.push_back(std::move(path));
    }
  }
  // Any degree-2 vertex not reached from an endpoint lies on a cycle.
  if (covered + view.isolated.size() != m) throw NotLinearForest("class contains a cycle");

  for (Vertex x = 0; x < order; ++x) {
    const int d = view.degree[static_cast<std::size_t>(x)];
    if (d == 1) view.endpoints.push_back(x);
    if (d == 2) view.interior.push_back(x);
  }
  return view;
}

bool is_linear_forest(const EdgeSet& class_edges, int order) {
  try {
    analyze_linear_forest(class_edges, order);
    return true;
  } catch (const NotLinearForest&) {
    return false;
  }
}

bool is_hamiltonian_cycle(const EdgeSet& class_edges, int order) {
  if (order < 3 || class_edges.size() != static_cast<std::size_t>(order)) return false;
  std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(order));
  for (const Edge& e : class_edges) {
    if (e.u < 0 || e.v >= order) return false;
    adj[static_cast<std::size_t>(e.u)].push_back(e.v);
    adj[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  for (const auto& a : adj)
    if (a.size() != 2) return false;
  // Walk the cycle from vertex 0 and count distinct vertices.
  int steps = 1;
  Vertex prev = 0;
  Vertex cur = adj[0][0];
  while (cur != 0) {
    const auto& a = adj[static_cast<std::size_t>(cur)];
    Vertex next = a[0] == prev ? a[1] : a[0];
    prev = cur;
    cur = next;
    ++steps;
  }
  return steps == order;
}

EdgeSet make_edge_set(std::span<const Edge> edges) {
  EdgeSet out;
  for (const Edge& e : edges) {
    if (e.u == e.v) throw PreconditionViolation("loop edge");
    if (!out.insert(e).second) throw PreconditionViolation("duplicate edge " + to_string(e));
  }
  return out;
}

Decomposition walecki(int n) {
  if (n < 1) throw PreconditionViolation("walecki needs n >= 1");
  const int ring = 2 * n;
  const Vertex hub = ring;
  Decomposition d(ring + 1, n);
  for (int k = 0; k < n; ++k) {
    std::vector<Vertex> seq;
    seq.reserve(static_cast<std::size_t>(ring));
    for (int j = 0; j < ring; ++j) {
      const int offset = (j % 2 == 1) ? (j + 1) / 2 : -(j / 2);
      seq.push_back(((k + offset) % ring + ring) % ring);
    }
    d.add(k, Edge(hub, seq.front()));
    for (std::size_t j = 0; j + 1 < seq.size(); ++j) d.add(k, Edge(seq[j], seq[j + 1]));
    d.add(k, Edge(seq.back(), hub));
  }
  return d;
}

Decomposition truncate(const Decomposition& d, int m) {
  Decomposition out(m, d.class_count());
  for (int i = 0; i < d.class_count(); ++i)
    for (const Edge& e : d.at(i))
      if (e.v < m) out.add(i, e);
  return out;
}

Decomposition relabel(const Decomposition& d, std::span<const Vertex> perm) {
  if (perm.size() != static_cast<std::size_t>(d.order()))
    throw PreconditionViolation("relabel: permutation size mismatch");
  Decomposition out(d.order(), d.class_count());
  for (int i = 0; i < d.class_count(); ++i)
    for (const Edge& e : d.at(i))
      out.add(i, Edge(perm[static_cast<std::size_t>(e.u)], perm[static_cast<std::size_t>(e.v)]));
  return out;
}

std::vector<std::vector<Edge>> round_robin_matchings(int r) {
  if (r < 1) return {};
  const int even = r % 2 == 0 ? r : r + 1;
  const int rounds = even - 1;
  std::vector<std::vector<Edge>> out(static_cast<std::size_t>(rounds));
  for (int q = 0; q < rounds; ++q) {
    auto& matching = out[static_cast<std::size_t>(q)];
    if (q < r && even - 1 < r) matching.emplace_back(q, even - 1);
    for (int d = 1; d < even / 2; ++d) {
      const int a = (q + d) % rounds;
      const int b = (q - d + rounds) % rounds;
      if (a < r && b < r) matching.emplace_back(a, b);
    }
    std::sort(matching.begin(), matching.end());
  }
  return out;
}

}  // namespace rainbow
