#include "rainbow/coloring.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <string>

namespace rainbow {

BipartiteMultigraph::BipartiteMultigraph(int x_size, int y_size)
    : x_size_(x_size), y_size_(y_size) {
  if (x_size < 0 || y_size < 0) throw PreconditionViolation("negative bipartition size");
}

int BipartiteMultigraph::add_edge(int x, int y) {
  const int id = next_id_;
  add_edge(x, y, id);
  return id;
}

void BipartiteMultigraph::add_edge(int x, int y, int id) {
  if (x < 0 || x >= x_size_ || y < 0 || y >= y_size_)
    throw PreconditionViolation("bipartite edge endpoint out of range");
  if (index_.contains(id)) throw PreconditionViolation("duplicate edge id " + std::to_string(id));
  index_.emplace(id, edges_.size());
  edges_.push_back({x, y, id});
  next_id_ = std::max(next_id_, id + 1);
}

const BipartiteEdge& BipartiteMultigraph::edge(int id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw PreconditionViolation("unknown edge id " + std::to_string(id));
  return edges_[it->second];
}

std::map<std::pair<int, int>, std::vector<int>> BipartiteMultigraph::bundles() const {
  std::map<std::pair<int, int>, std::vector<int>> out;
  for (const auto& e : edges_) out[{e.x, e.y}].push_back(e.id);
  for (auto& [key, ids] : out) std::sort(ids.begin(), ids.end());
  return out;
}

BipartiteMultigraph BipartiteMultigraph::subgraph(const std::set<int>& ids) const {
  BipartiteMultigraph out(x_size_, y_size_);
  for (const auto& e : edges_)
    if (ids.contains(e.id)) out.add_edge(e.x, e.y, e.id);
  return out;
}

int BipartiteMultigraph::x_degree(int x, const std::set<int>& ids) const {
  int d = 0;
  for (const auto& e : edges_)
    if (e.x == x && ids.contains(e.id)) ++d;
  return d;
}

int BipartiteMultigraph::y_degree(int y, const std::set<int>& ids) const {
  int d = 0;
  for (const auto& e : edges_)
    if (e.y == y && ids.contains(e.id)) ++d;
  return d;
}

namespace {

// Per-vertex and per-bundle colour counts. Vertex index: X first, then Y.
struct ColorCounts {
  int k = 0;
  std::vector<std::vector<int>> vertex;
  std::vector<std::vector<int>> bundle;
  std::vector<int> bundle_of_edge;  // by edge index
};

ColorCounts count_colors(const BipartiteMultigraph& g, const std::vector<int>& color, int k,
                         const std::map<std::pair<int, int>, int>& bundle_index) {
  ColorCounts c;
  c.k = k;
  const auto nv = static_cast<std::size_t>(g.x_size() + g.y_size());
  c.vertex.assign(nv, std::vector<int>(static_cast<std::size_t>(k) + 1, 0));
  c.bundle.assign(bundle_index.size(), std::vector<int>(static_cast<std::size_t>(k) + 1, 0));
  c.bundle_of_edge.resize(g.edge_count());
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const auto& e = g.edges()[i];
    const auto col = static_cast<std::size_t>(color[i]);
    ++c.vertex[static_cast<std::size_t>(e.x)][col];
    ++c.vertex[static_cast<std::size_t>(g.x_size() + e.y)][col];
    const int b = bundle_index.at({e.x, e.y});
    c.bundle_of_edge[i] = b;
    ++c.bundle[static_cast<std::size_t>(b)][col];
  }
  return c;
}

std::int64_t potential_of(const ColorCounts& c) {
  std::int64_t phi = 0;
  for (const auto& row : c.vertex)
    for (int v : row) phi += static_cast<std::int64_t>(v) * v;
  for (const auto& row : c.bundle)
    for (int v : row) phi += static_cast<std::int64_t>(v) * v;
  return phi;
}

// First violating (lo, hi) colour pair over vertices, then bundles.
std::optional<std::pair<int, int>> find_violation(const ColorCounts& c) {
  auto scan = [&](const std::vector<std::vector<int>>& rows) -> std::optional<std::pair<int, int>> {
    for (const auto& row : rows) {
      int lo = 1;
      int hi = 1;
      for (int col = 2; col <= c.k; ++col) {
        if (row[static_cast<std::size_t>(col)] < row[static_cast<std::size_t>(lo)]) lo = col;
        if (row[static_cast<std::size_t>(col)] > row[static_cast<std::size_t>(hi)]) hi = col;
      }
      if (row[static_cast<std::size_t>(hi)] - row[static_cast<std::size_t>(lo)] >= 2)
        return std::make_pair(std::min(lo, hi), std::max(lo, hi));
    }
    return std::nullopt;
  };
  if (auto v = scan(c.vertex)) return v;
  return scan(c.bundle);
}

// Recolours every edge currently coloured ci or cj so that each vertex and
// bundle splits as evenly as possible between the two colours.
void repair_pair(const BipartiteMultigraph& g, std::vector<int>& color, int ci, int cj) {
  std::map<std::pair<int, int>, std::vector<std::size_t>> bundle;
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    if (color[i] != ci && color[i] != cj) continue;
    const auto& e = g.edges()[i];
    bundle[{e.x, e.y}].push_back(i);
  }
  std::vector<std::size_t> residual;
  for (auto& [key, list] : bundle) {
    std::size_t p = 0;
    for (; p + 1 < list.size(); p += 2) {
      color[list[p]] = ci;
      color[list[p + 1]] = cj;
    }
    if (p < list.size()) residual.push_back(list[p]);
  }

  // Euler partition of the residual simple graph: trails start at odd
  // vertices while any remain, so every vertex ends with imbalance <= 1.
  const int nv = g.x_size() + g.y_size();
  std::vector<std::vector<std::size_t>> inc(static_cast<std::size_t>(nv));
  auto yv = [&](int y) { return g.x_size() + y; };
  for (std::size_t r = 0; r < residual.size(); ++r) {
    const auto& e = g.edges()[residual[r]];
    inc[static_cast<std::size_t>(e.x)].push_back(r);
    inc[static_cast<std::size_t>(yv(e.y))].push_back(r);
  }
  std::vector<char> used(residual.size(), 0);
  std::vector<int> remaining(static_cast<std::size_t>(nv));
  for (int v = 0; v < nv; ++v) remaining[static_cast<std::size_t>(v)] = static_cast<int>(inc[static_cast<std::size_t>(v)].size());
  std::vector<std::size_t> cursor(static_cast<std::size_t>(nv), 0);

  auto next_unused = [&](int v) -> std::optional<std::size_t> {
    auto& cur = cursor[static_cast<std::size_t>(v)];
    const auto& list = inc[static_cast<std::size_t>(v)];
    while (cur < list.size() && used[list[cur]]) ++cur;
    if (cur == list.size()) return std::nullopt;
    return list[cur];
  };

  std::size_t left = residual.size();
  while (left > 0) {
    int start = -1;
    for (int v = 0; v < nv && start < 0; ++v)
      if (remaining[static_cast<std::size_t>(v)] % 2 == 1) start = v;
    for (int v = 0; v < nv && start < 0; ++v)
      if (remaining[static_cast<std::size_t>(v)] > 0) start = v;
    int cur = start;
    int col = ci;
    while (auto r = next_unused(cur)) {
      used[*r] = 1;
      --left;
      const auto& e = g.edges()[residual[*r]];
      const int other = (cur == e.x) ? yv(e.y) : e.x;
      --remaining[static_cast<std::size_t>(cur)];
      --remaining[static_cast<std::size_t>(other)];
      color[residual[*r]] = col;
      col = (col == ci) ? cj : ci;
      cur = other;
    }
  }
}

}  // namespace

bool is_balanced(const BipartiteMultigraph& g, const EdgeColoring& coloring) {
  std::map<std::pair<int, int>, int> bundle_index;
  for (const auto& e : g.edges()) bundle_index.try_emplace({e.x, e.y}, static_cast<int>(bundle_index.size()));
  std::vector<int> color(g.edge_count());
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    auto it = coloring.color.find(g.edges()[i].id);
    if (it == coloring.color.end() || it->second < 1 || it->second > coloring.k) return false;
    color[i] = it->second;
  }
  return !find_violation(count_colors(g, color, coloring.k, bundle_index)).has_value();
}

std::int64_t coloring_potential(const BipartiteMultigraph& g, const EdgeColoring& coloring) {
  std::map<std::pair<int, int>, int> bundle_index;
  for (const auto& e : g.edges()) bundle_index.try_emplace({e.x, e.y}, static_cast<int>(bundle_index.size()));
  std::vector<int> color(g.edge_count());
  for (std::size_t i = 0; i < g.edge_count(); ++i) color[i] = coloring.color.at(g.edges()[i].id);
  return potential_of(count_colors(g, color, coloring.k, bundle_index));
}

EdgeColoring balanced_k_coloring(const BipartiteMultigraph& g, int k, std::uint64_t seed,
                                 ColoringStats* stats) {
  if (k < 1) throw PreconditionViolation("balanced_k_coloring needs k >= 1");
  std::map<std::pair<int, int>, int> bundle_index;
  for (const auto& e : g.edges()) bundle_index.try_emplace({e.x, e.y}, static_cast<int>(bundle_index.size()));

  std::vector<int> color(g.edge_count());
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < g.edge_count(); ++i)
    color[i] = seed == 0 ? static_cast<int>(i % static_cast<std::size_t>(k)) + 1
                         : static_cast<int>(rng() % static_cast<std::uint64_t>(k)) + 1;

  ColorCounts counts = count_colors(g, color, k, bundle_index);
  std::int64_t phi = potential_of(counts);
  if (stats) stats->potential.push_back(phi);
  while (auto pair = find_violation(counts)) {
    repair_pair(g, color, pair->first, pair->second);
    counts = count_colors(g, color, k, bundle_index);
    const std::int64_t next = potential_of(counts);
    if (next >= phi)
      throw InvariantViolation("balanced_k_coloring", "potential did not decrease");
    phi = next;
    if (stats) {
      ++stats->repairs;
      stats->potential.push_back(phi);
    }
  }

  EdgeColoring out;
  out.k = k;
  for (std::size_t i = 0; i < g.edge_count(); ++i) out.color[g.edges()[i].id] = color[i];
  return out;
}

void validate_pairing(const BipartiteMultigraph& g, const Pairing& pairing) {
  if (pairing.pairs.size() > static_cast<std::size_t>(g.x_size()))
    throw PreconditionViolation("pairing lists more X vertices than the graph has");
  std::set<int> seen;
  // bundle (x,y) -> number of its edges paired with an edge to another y
  std::map<std::pair<int, int>, int> cross;
  for (std::size_t x = 0; x < pairing.pairs.size(); ++x) {
    for (const auto& [a, b] : pairing.pairs[x]) {
      if (!g.has_edge(a) || !g.has_edge(b)) throw PreconditionViolation("pairing names unknown edge");
      if (a == b) throw PreconditionViolation("edge paired with itself");
      const auto& ea = g.edge(a);
      const auto& eb = g.edge(b);
      if (ea.x != static_cast<int>(x) || eb.x != static_cast<int>(x))
        throw PreconditionViolation("paired edges must share the X endpoint");
      if (!seen.insert(a).second || !seen.insert(b).second)
        throw PreconditionViolation("edge appears in two pairs");
      if (ea.y != eb.y) {
        ++cross[{ea.x, ea.y}];
        ++cross[{eb.x, eb.y}];
      }
    }
  }
  const auto bundles = g.bundles();
  for (const auto& [key, count] : cross) {
    if (bundles.at(key).size() >= 2 && count > 1)
      throw PreconditionViolation("more than one parallel edge paired across bundles");
  }
}

TwoColoring paired_balanced_2_coloring(const BipartiteMultigraph& f, const Pairing& pairing) {
  std::vector<int> ydeg(static_cast<std::size_t>(f.y_size()), 0);
  for (const auto& e : f.edges()) ++ydeg[static_cast<std::size_t>(e.y)];
  for (int y = 0; y < f.y_size(); ++y)
    if (ydeg[static_cast<std::size_t>(y)] % 2 != 0)
      throw PreconditionViolation("Y vertex " + std::to_string(y) + " has odd degree");
  validate_pairing(f, pairing);

  // Partner links by edge id. x-links: given pairs, then leftovers paired in id order.
  std::unordered_map<int, int> x_link;
  std::unordered_map<int, int> y_link;
  for (const auto& list : pairing.pairs)
    for (const auto& [a, b] : list) {
      x_link[a] = b;
      x_link[b] = a;
    }
  std::vector<std::vector<int>> at_x(static_cast<std::size_t>(f.x_size()));
  for (const auto& e : f.edges())
    if (!x_link.contains(e.id)) at_x[static_cast<std::size_t>(e.x)].push_back(e.id);
  for (auto& list : at_x) {
    std::sort(list.begin(), list.end());
    for (std::size_t p = 0; p + 1 < list.size(); p += 2) {
      x_link[list[p]] = list[p + 1];
      x_link[list[p + 1]] = list[p];
    }
  }
  // y-links: parallel edges first so every bundle splits evenly.
  std::vector<std::vector<int>> leftovers(static_cast<std::size_t>(f.y_size()));
  for (const auto& [key, ids] : f.bundles()) {
    std::size_t p = 0;
    for (; p + 1 < ids.size(); p += 2) {
      y_link[ids[p]] = ids[p + 1];
      y_link[ids[p + 1]] = ids[p];
    }
    if (p < ids.size()) leftovers[static_cast<std::size_t>(key.second)].push_back(ids[p]);
  }
  for (auto& list : leftovers) {
    std::sort(list.begin(), list.end());
    for (std::size_t p = 0; p + 1 < list.size(); p += 2) {
      y_link[list[p]] = list[p + 1];
      y_link[list[p + 1]] = list[p];
    }
  }

  // Alternating walk: from e0 follow x-link, y-link, x-link, ... in both
  // directions; components are paths or even cycles.
  std::unordered_map<int, int> side;
  std::vector<int> ids;
  for (const auto& e : f.edges()) ids.push_back(e.id);
  std::sort(ids.begin(), ids.end());
  for (int e0 : ids) {
    if (side.contains(e0)) continue;
    side[e0] = 1;
    for (int first_link = 0; first_link < 2; ++first_link) {
      int cur = e0;
      bool use_x = first_link == 0;
      while (true) {
        const auto& links = use_x ? x_link : y_link;
        auto it = links.find(cur);
        if (it == links.end()) break;
        const int next = it->second;
        const int want = side[cur] == 1 ? 2 : 1;
        if (auto s = side.find(next); s != side.end()) {
          if (s->second != want)
            throw InvariantViolation("paired_balanced_2_coloring", "odd alternating cycle");
          break;
        }
        side[next] = want;
        cur = next;
        use_x = !use_x;
      }
    }
  }

  TwoColoring out;
  for (const auto& [id, s] : side) (s == 1 ? out.first : out.second).insert(id);
  return out;
}

std::set<int> rebalance_drop_one(const BipartiteMultigraph& g, const std::set<int>& a,
                                 const std::set<int>& b, int x0, int eta) {
  for (int id : a)
    if (b.contains(id)) throw PreconditionViolation("A and B overlap");
  for (const auto& e : g.edges())
    if (!a.contains(e.id) && !b.contains(e.id))
      throw PreconditionViolation("A and B must partition E(G)");
  if (a.size() + b.size() != g.edge_count())
    throw PreconditionViolation("A and B name edges outside G");
  if (x0 < 0 || x0 >= g.x_size()) throw PreconditionViolation("x0 out of range");

  std::vector<int> ax(static_cast<std::size_t>(g.x_size()), 0), bx(ax);
  std::vector<int> ay(static_cast<std::size_t>(g.y_size()), 0), by(ay);
  for (const auto& e : g.edges()) {
    const bool in_a = a.contains(e.id);
    ++(in_a ? ax : bx)[static_cast<std::size_t>(e.x)];
    ++(in_a ? ay : by)[static_cast<std::size_t>(e.y)];
  }
  for (int y = 0; y < g.y_size(); ++y)
    if (by[static_cast<std::size_t>(y)] < ay[static_cast<std::size_t>(y)])
      throw PreconditionViolation("deg_B(y) < deg_A(y) at y=" + std::to_string(y));
  for (int x = 0; x < g.x_size(); ++x)
    if (ax[static_cast<std::size_t>(x)] > eta || bx[static_cast<std::size_t>(x)] > eta)
      throw PreconditionViolation("degree above eta at x=" + std::to_string(x));
  const int a0 = ax[static_cast<std::size_t>(x0)];
  const int b0 = bx[static_cast<std::size_t>(x0)];
  bool alt = a0 > b0;
  if (!alt && a0 == b0 && a0 % 2 == 1 && eta % 2 == 0) {
    alt = true;
    for (int v : by)
      if (v % 2 != 0) alt = false;
  }
  if (!alt) throw PreconditionViolation("x0 satisfies neither admissible alternative");

  // Incidence lists in id order.
  std::vector<std::vector<int>> a_at_x(static_cast<std::size_t>(g.x_size()));
  std::vector<std::vector<int>> b_at_y(static_cast<std::size_t>(g.y_size()));
  std::vector<BipartiteEdge> sorted = g.edges();
  std::sort(sorted.begin(), sorted.end(), [](const auto& l, const auto& r) { return l.id < r.id; });
  for (const auto& e : sorted) {
    if (a.contains(e.id)) a_at_x[static_cast<std::size_t>(e.x)].push_back(e.id);
    else b_at_y[static_cast<std::size_t>(e.y)].push_back(e.id);
  }

  // BFS over alternating A/B paths from x0, starting with an A-edge.
  std::vector<int> parent_edge_x(static_cast<std::size_t>(g.x_size()), -1);  // B-edge into x
  std::vector<int> parent_edge_y(static_cast<std::size_t>(g.y_size()), -1);  // A-edge into y
  std::vector<char> seen_x(static_cast<std::size_t>(g.x_size()), 0);
  std::vector<char> seen_y(static_cast<std::size_t>(g.y_size()), 0);
  std::queue<int> frontier;
  frontier.push(x0);
  seen_x[static_cast<std::size_t>(x0)] = 1;
  int target = -1;
  while (!frontier.empty() && target < 0) {
    const int x = frontier.front();
    frontier.pop();
    for (int ea : a_at_x[static_cast<std::size_t>(x)]) {
      const int y = g.edge(ea).y;
      if (seen_y[static_cast<std::size_t>(y)]) continue;
      seen_y[static_cast<std::size_t>(y)] = 1;
      parent_edge_y[static_cast<std::size_t>(y)] = ea;
      for (int eb : b_at_y[static_cast<std::size_t>(y)]) {
        const int nx = g.edge(eb).x;
        if (seen_x[static_cast<std::size_t>(nx)]) continue;
        seen_x[static_cast<std::size_t>(nx)] = 1;
        parent_edge_x[static_cast<std::size_t>(nx)] = eb;
        if (ax[static_cast<std::size_t>(nx)] < eta) {
          target = nx;
          break;
        }
        frontier.push(nx);
      }
      if (target >= 0) break;
    }
  }
  if (target < 0) throw InternalInfeasible("rebalance_drop_one: no alternating path found");

  std::set<int> c = a;
  for (int x = target; x != x0;) {
    const int eb = parent_edge_x[static_cast<std::size_t>(x)];
    const int y = g.edge(eb).y;
    const int ea = parent_edge_y[static_cast<std::size_t>(y)];
    c.insert(eb);
    c.erase(ea);
    x = g.edge(ea).x;
  }

  // Postconditions.
  for (int y = 0; y < g.y_size(); ++y)
    if (g.y_degree(y, c) != ay[static_cast<std::size_t>(y)])
      throw InvariantViolation("rebalance_drop_one", "deg_C(y) changed");
  for (int x = 0; x < g.x_size(); ++x) {
    const int d = g.x_degree(x, c);
    if (x == x0 ? d != a0 - 1 : (d < ax[static_cast<std::size_t>(x)] || d > eta))
      throw InvariantViolation("rebalance_drop_one", "X degree postcondition fails");
  }
  return c;
}

}  // namespace rainbow
