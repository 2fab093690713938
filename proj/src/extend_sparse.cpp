#include "rainbow/extend_sparse.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace rainbow {

namespace {

enum class ClassKind { Rainbow, Bridge, Other };

ClassKind kind_of(const ExtendState& st, int bridge, int i) {
  if (i < st.t + st.s) return ClassKind::Rainbow;
  return i == bridge ? ClassKind::Bridge : ClassKind::Other;
}

// Lower bound on deg_{G1}(c_i) + deg_{G2}(c_i).
int con_deg_floor(ClassKind kind, int x) {
  switch (kind) {
    case ClassKind::Rainbow: return 4 - x;
    case ClassKind::Bridge: return 3 - x;
    case ClassKind::Other: return 5 - x;
  }
  return 0;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : "; ") + p;
  return out;
}

// The far end of the path through `from`, which has degree <= 1.
Vertex path_end(const std::vector<std::vector<Vertex>>& adj, Vertex from) {
  Vertex prev = -1, cur = from;
  for (;;) {
    Vertex next = -1;
    for (Vertex y : adj[static_cast<std::size_t>(cur)])
      if (y != prev) next = y;
    if (next < 0) return cur;
    prev = cur;
    cur = next;
  }
}

Pairing endpoint_pairing(const BipartiteMultigraph& f, const ExtendState& st,
                         const std::vector<LinearForestView>& views, int vertex_limit) {
  Pairing pairing(f.x_size());
  std::vector<std::map<Vertex, int>> leftover(static_cast<std::size_t>(f.x_size()));
  for (const auto& [key, ids] : f.bundles()) {
    const auto [x, y] = key;
    if (y >= vertex_limit) continue;
    std::size_t p = 0;
    for (; p + 1 < ids.size(); p += 2) pairing.pairs[static_cast<std::size_t>(x)].emplace_back(ids[p], ids[p + 1]);
    if (p < ids.size()) leftover[static_cast<std::size_t>(x)][y] = ids[p];
  }
  for (int i = 0; i < st.n; ++i) {
    auto& left = leftover[static_cast<std::size_t>(i)];
    for (const auto& path : views[static_cast<std::size_t>(i)].paths) {
      auto a = left.find(path.front());
      auto b = left.find(path.back());
      if (a != left.end() && b != left.end()) {
        pairing.pairs[static_cast<std::size_t>(i)].emplace_back(a->second, b->second);
        left.erase(path.front());
        left.erase(path.back());
      }
    }
  }
  return pairing;
}

}  // namespace

void check_extend_invariants(const ExtendState& st, const std::string& stage) {
  const int m = st.m();
  if (st.q.order() != m || st.q.class_count() != st.n)
    throw InvariantViolation(stage, "decomposition shape does not match K_{2s+r}");
  st.q.check_complete(stage);
  const int rainbow = st.t + st.s;
  EdgeSet seen;
  for (int i = 0; i < st.n; ++i) {
    const EdgeSet& cls = st.q.at(i);
    if (!is_linear_forest(cls, m))
      throw InvariantViolation(stage, "class " + std::to_string(i) + " is not a linear forest");
    const long floor = i < rainbow ? st.floor_rainbow() : st.floor_other();
    if (static_cast<long>(cls.size()) < floor)
      throw InvariantViolation(stage, "class " + std::to_string(i) + " has " + std::to_string(cls.size()) +
                                          " < " + std::to_string(floor) + " edges");
    const auto& h = st.h_edge[static_cast<std::size_t>(i)];
    if ((i < rainbow) != h.has_value())
      throw InvariantViolation(stage, "rainbow ledger broken at class " + std::to_string(i));
    if (h && (!cls.contains(*h) || !seen.insert(*h).second))
      throw InvariantViolation(stage, "rainbow edge missing or repeated at class " + std::to_string(i));
  }
}

AuxiliaryGraph build_auxiliary(const ExtendState& st) {
  const int m = st.m(), n = st.n, k = st.k();
  AuxiliaryGraph aux;
  aux.g = BipartiteMultigraph(n, m);
  aux.multiplicity.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(m), 0));
  aux.slack.assign(static_cast<std::size_t>(n), 0);
  std::vector<int> udeg(static_cast<std::size_t>(m), 0);
  for (int i = 0; i < n; ++i) {
    const LinearForestView view = analyze_linear_forest(st.q.at(i), m);
    int deg = 0;
    for (Vertex j = 0; j < m; ++j) {
      const int d = view.degree[static_cast<std::size_t>(j)];
      const int mult = d == 0 ? 2 : d == 1 ? 1 : 0;
      aux.multiplicity[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = mult;
      for (int c = 0; c < mult; ++c) aux.g.add_edge(i, j);
      deg += mult;
      udeg[static_cast<std::size_t>(j)] += mult;
    }
    if (deg != 4 * st.s + 2 * st.r - 2 * static_cast<int>(st.q.at(i).size()))
      throw InvariantViolation("build_auxiliary", "deg(c_" + std::to_string(i) + ") identity fails");
    aux.slack[static_cast<std::size_t>(i)] = k - deg / 2;
  }
  for (Vertex j = 0; j < m; ++j)
    if (udeg[static_cast<std::size_t>(j)] != k)
      throw InvariantViolation("build_auxiliary", "deg(u_" + std::to_string(j) + ") != k");
  return aux;
}

std::vector<std::string> witness_violations(const ExtendState& st, const AuxiliaryGraph& aux,
                                            const AttachmentWitness& w) {
  std::vector<std::string> bad;
  const int n = st.n, m = st.m(), b = w.bridge_class;
  if (b < st.t + st.s || b >= n) return {"bridge class out of range"};
  if (w.g1.size() != static_cast<std::size_t>(n) || w.g2.size() != static_cast<std::size_t>(n))
    return {"witness has wrong class count"};

  std::vector<LinearForestView> views;
  for (int i = 0; i < n; ++i) views.push_back(analyze_linear_forest(st.q.at(i), m));

  for (int side = 0; side < 2; ++side) {
    const auto& g = side == 0 ? w.g1 : w.g2;
    const std::string tag = side == 0 ? "G1" : "G2";
    std::vector<int> cover(static_cast<std::size_t>(m), 0);
    for (int i = 0; i < n; ++i) {
      const auto& at = g[static_cast<std::size_t>(i)];
      for (Vertex j : at) {
        if (j < 0 || j >= m) {
          bad.push_back(tag + ": vertex out of range");
          return bad;
        }
        ++cover[static_cast<std::size_t>(j)];
      }
      if (std::set<Vertex>(at.begin(), at.end()).size() != at.size())
        bad.push_back(tag + ": repeated vertex at class " + std::to_string(i));
      // At most two attachments per class, one for the bridge class.
      if (at.size() > (i == b ? 1u : 2u))
        bad.push_back("degree: " + tag + " degree of class " + std::to_string(i));
      // Never both ends of one path.
      if (at.size() == 2 && views[static_cast<std::size_t>(i)].same_path_ends(at[0], at[1]))
        bad.push_back("path ends: " + tag + " joins both ends of a path in class " + std::to_string(i));
    }
    // Every old vertex is covered exactly once per side.
    for (Vertex j = 0; j < m; ++j)
      if (cover[static_cast<std::size_t>(j)] != 1)
        bad.push_back("cover: " + tag + " covers vertex " + std::to_string(j) + " " +
                      std::to_string(cover[static_cast<std::size_t>(j)]) + " times");
  }
  for (int i = 0; i < n; ++i) {
    const auto& a1 = w.g1[static_cast<std::size_t>(i)];
    const auto& a2 = w.g2[static_cast<std::size_t>(i)];
    std::map<Vertex, int> used;
    for (Vertex j : a1) ++used[j];
    for (Vertex j : a2) ++used[j];
    for (const auto& [j, c] : used) {
      const int mult = aux.multiplicity[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (c > mult) bad.push_back("multiplicity: class " + std::to_string(i) + " uses vertex " + std::to_string(j) +
                                  " beyond its auxiliary multiplicity");
      if (i == b && c > 1) bad.push_back("bridge: bridge class attaches both new vertices to one vertex");
    }
    // Size floors.
    const int total = static_cast<int>(a1.size() + a2.size());
    const int floor = con_deg_floor(kind_of(st, b, i), aux.slack[static_cast<std::size_t>(i)]);
    if (total < floor)
      bad.push_back("floor: class " + std::to_string(i) + " receives " + std::to_string(total) + " < " +
                    std::to_string(floor));
  }
  // The bridge edge must not close a path.
  const auto& b1 = w.g1[static_cast<std::size_t>(b)];
  const auto& b2 = w.g2[static_cast<std::size_t>(b)];
  if (b1.size() == 1 && b2.size() == 1 && views[static_cast<std::size_t>(b)].same_path_ends(b1[0], b2[0]))
    bad.push_back("bridge: bridge class would close a path through the bridge edge");

  if (bad.empty()) {
    // Acyclicity after attachment.
    for (int i = 0; i < n; ++i) {
      EdgeSet cls = st.q.at(i);
      for (Vertex j : w.g1[static_cast<std::size_t>(i)]) cls.insert(Edge(m, j));
      for (Vertex j : w.g2[static_cast<std::size_t>(i)]) cls.insert(Edge(m + 1, j));
      if (i == b) cls.insert(Edge(m, m + 1));
      if (!is_linear_forest(cls, m + 2))
        bad.push_back("attachment closes a cycle in class " + std::to_string(i));
    }
  }
  return bad;
}

AttachmentWitness color_witness(const ExtendState& st, const AuxiliaryGraph& aux, std::uint64_t seed) {
  const int n = st.n, m = st.m(), k = st.k(), rainbow = st.t + st.s;
  if (k < 4) throw PreconditionViolation("color_witness needs k >= 4");
  std::vector<LinearForestView> views;
  for (int i = 0; i < n; ++i) views.push_back(analyze_linear_forest(st.q.at(i), m));

  // Doubled graph; Y vertex m is the extra vertex u'.
  const Vertex uprime = m;
  BipartiteMultigraph ghat(n, m + 1);
  for (int i = 0; i < n; ++i)
    for (Vertex j = 0; j < m; ++j)
      for (int c = 0; c < 2 * aux.multiplicity[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; ++c)
        ghat.add_edge(i, j);
  for (int i = rainbow; i < n; ++i)
    for (int c = 0; c < 4; ++c) ghat.add_edge(i, uprime);

  const EdgeColoring col = balanced_k_coloring(ghat, k, seed);
  std::vector<std::set<int>> colour(static_cast<std::size_t>(k + 1));
  std::vector<std::vector<int>> uprime_edges(static_cast<std::size_t>(k + 1));
  for (const auto& e : ghat.edges()) {
    const int c = col.color.at(e.id);
    colour[static_cast<std::size_t>(c)].insert(e.id);
    if (e.y == uprime) uprime_edges[static_cast<std::size_t>(c)].push_back(e.id);
  }
  std::vector<int> candidates;
  for (int c = 1; c <= k; ++c)
    if (uprime_edges[static_cast<std::size_t>(c)].size() == 1) candidates.push_back(c);
  if (candidates.empty()) throw InvariantViolation("color_witness", "no colour with a single u' edge");
  std::rotate(candidates.begin(),
              candidates.begin() + static_cast<std::ptrdiff_t>(seed % candidates.size()), candidates.end());

  auto without_uprime = [&](int c) {
    std::set<int> out;
    for (int id : colour[static_cast<std::size_t>(c)])
      if (ghat.edge(id).y != uprime) out.insert(id);
    return out;
  };
  auto degree_at = [&](const std::set<int>& ids, int x) {
    int d = 0;
    for (int id : ids) d += ghat.edge(id).x == x ? 1 : 0;
    return d;
  };
  auto reduce = [&](const std::set<int>& a, const std::set<int>& b, int x0) {
    if (degree_at(a, x0) < 3) return a;
    std::set<int> both = a;
    both.insert(b.begin(), b.end());
    return rebalance_drop_one(ghat.subgraph(both), a, b, x0, 4);
  };
  auto side_meets_floor = [&](const std::set<int>& side, int bridge) {
    for (int i = 0; i < n; ++i)
      if (degree_at(side, i) < con_deg_floor(kind_of(st, bridge, i), aux.slack[static_cast<std::size_t>(i)]))
        return false;
    return true;
  };

  std::string last = "no candidate colour";
  int rejected = 0;
  for (int q : candidates) {
    const int bridge = ghat.edge(uprime_edges[static_cast<std::size_t>(q)].front()).x;
    std::vector<int> others;
    for (int c = 1; c <= k; ++c)
      if (c != q)
        for (int id : uprime_edges[static_cast<std::size_t>(c)])
          if (ghat.edge(id).x == bridge) others.push_back(c);
    if (others.size() != 3) {
      last = "u'-bridge bundle not spread over four colours";
      ++rejected;
      continue;
    }
    try {
      const std::set<int> l1 = reduce(without_uprime(q), without_uprime(others[0]), bridge);
      const std::set<int> l3 = reduce(without_uprime(others[1]), without_uprime(others[2]), bridge);
      std::set<int> lprime = l1;
      lprime.insert(l3.begin(), l3.end());
      const BipartiteMultigraph f = ghat.subgraph(lprime);
      const TwoColoring e = paired_balanced_2_coloring(f, endpoint_pairing(f, st, views, m));

      for (const std::set<int>* side : {&e.first, &e.second}) {
        if (!side_meets_floor(*side, bridge)) {
          last = "side fails the con-deg floors";
          continue;
        }
        const BipartiteMultigraph f1 = ghat.subgraph(*side);
        const TwoColoring split = paired_balanced_2_coloring(f1, endpoint_pairing(f1, st, views, m));
        AttachmentWitness w;
        w.bridge_class = bridge;
        w.g1.resize(static_cast<std::size_t>(n));
        w.g2.resize(static_cast<std::size_t>(n));
        for (int id : split.first) w.g1[static_cast<std::size_t>(ghat.edge(id).x)].push_back(ghat.edge(id).y);
        for (int id : split.second) w.g2[static_cast<std::size_t>(ghat.edge(id).x)].push_back(ghat.edge(id).y);
        for (auto& v : w.g1) std::sort(v.begin(), v.end());
        for (auto& v : w.g2) std::sort(v.begin(), v.end());
        const auto bad = witness_violations(st, aux, w);
        if (bad.empty()) {
          w.origin = "coloring(seed=" + std::to_string(seed) + ",colour=" + std::to_string(q) +
                     ",rejected=" + std::to_string(rejected) + ")";
          return w;
        }
        last = join(bad);
      }
      ++rejected;
    } catch (const Error& ex) {
      last = ex.what();
      ++rejected;
    }
  }
  throw WitnessRejected(seed, "attachment witness rejected: " + last);
}

AttachmentWitness search_witness(const ExtendState& st, const AuxiliaryGraph& aux, long budget) {
  const int n = st.n, m = st.m();
  long nodes = 0;
  for (int bridge = st.t + st.s; bridge < n; ++bridge) {
    // adj[i][v] over m+2 vertices, per class.
    std::vector<std::vector<std::vector<Vertex>>> adj(static_cast<std::size_t>(n),
                                                      std::vector<std::vector<Vertex>>(static_cast<std::size_t>(m + 2)));
    for (int i = 0; i < n; ++i)
      for (const Edge& e : st.q.at(i)) {
        adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(e.u)].push_back(e.v);
        adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(e.v)].push_back(e.u);
      }
    adj[static_cast<std::size_t>(bridge)][static_cast<std::size_t>(m)].push_back(m + 1);
    adj[static_cast<std::size_t>(bridge)][static_cast<std::size_t>(m + 1)].push_back(m);

    std::vector<int> need(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      need[static_cast<std::size_t>(i)] = con_deg_floor(kind_of(st, bridge, i), aux.slack[static_cast<std::size_t>(i)]);
    AttachmentWitness w;
    w.bridge_class = bridge;
    w.g1.assign(static_cast<std::size_t>(n), {});
    w.g2.assign(static_cast<std::size_t>(n), {});
    const std::size_t cap_b = 1;

    auto can_attach = [&](int i, Vertex nv, Vertex j, const std::vector<Vertex>& at) {
      if (at.size() >= (i == bridge ? cap_b : 2u)) return false;
      const auto& a = adj[static_cast<std::size_t>(i)];
      if (a[static_cast<std::size_t>(j)].size() >= 2) return false;
      if (std::find(a[static_cast<std::size_t>(nv)].begin(), a[static_cast<std::size_t>(nv)].end(), j) !=
          a[static_cast<std::size_t>(nv)].end())
        return false;
      return a[static_cast<std::size_t>(nv)].empty() || path_end(a, nv) != j;
    };
    auto link = [&](int i, Vertex a, Vertex b, bool on) {
      auto& la = adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)];
      auto& lb = adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)];
      if (on) {
        la.push_back(b);
        lb.push_back(a);
      } else {
        la.pop_back();
        lb.pop_back();
      }
    };
    auto feasible = [&](Vertex from) {
      long deficit = 0;
      for (int i = 0; i < n; ++i) {
        const int have = static_cast<int>(w.g1[static_cast<std::size_t>(i)].size() + w.g2[static_cast<std::size_t>(i)].size());
        const int room = (i == bridge ? 2 : 4) - have;
        const int d = need[static_cast<std::size_t>(i)] - have;
        if (d > room) return false;
        deficit += std::max(d, 0);
      }
      return deficit <= 2L * (m - from);
    };

    std::vector<int> order(static_cast<std::size_t>(n));
    std::function<bool(Vertex)> place = [&](Vertex j) -> bool {
      if (++nodes > budget) throw SearchExhausted("witness search budget exhausted");
      if (j == m) return true;
      std::iota(order.begin(), order.end(), 0);
      std::vector<int> local = order;
      auto deficit = [&](int i) {
        return need[static_cast<std::size_t>(i)] -
               static_cast<int>(w.g1[static_cast<std::size_t>(i)].size() + w.g2[static_cast<std::size_t>(i)].size());
      };
      std::stable_sort(local.begin(), local.end(), [&](int a, int b) { return deficit(a) > deficit(b); });
      for (int a : local) {
        if (aux.multiplicity[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)] == 0) continue;
        if (!can_attach(a, m, j, w.g1[static_cast<std::size_t>(a)])) continue;
        link(a, m, j, true);
        w.g1[static_cast<std::size_t>(a)].push_back(j);
        for (int b : local) {
          if (aux.multiplicity[static_cast<std::size_t>(b)][static_cast<std::size_t>(j)] == 0) continue;
          if (b == a && (b == bridge || aux.multiplicity[static_cast<std::size_t>(b)][static_cast<std::size_t>(j)] < 2)) continue;
          if (!can_attach(b, m + 1, j, w.g2[static_cast<std::size_t>(b)])) continue;
          link(b, m + 1, j, true);
          w.g2[static_cast<std::size_t>(b)].push_back(j);
          if (feasible(j + 1) && place(j + 1)) return true;
          w.g2[static_cast<std::size_t>(b)].pop_back();
          link(b, m + 1, j, false);
        }
        w.g1[static_cast<std::size_t>(a)].pop_back();
        link(a, m, j, false);
      }
      return false;
    };
    if (place(0)) {
      for (auto& v : w.g1) std::sort(v.begin(), v.end());
      for (auto& v : w.g2) std::sort(v.begin(), v.end());
      const auto bad = witness_violations(st, aux, w);
      if (!bad.empty()) throw InvariantViolation("search_witness", join(bad));
      w.origin = "search(nodes=" + std::to_string(nodes) + ")";
      return w;
    }
  }
  throw SearchExhausted("no witness exists for any bridge class");
}

ExtendState attach_pair(const ExtendState& st, const AttachmentWitness& w) {
  const int m = st.m();
  ExtendState out = st;
  out.q.set_order(m + 2);
  for (int i = 0; i < st.n; ++i) {
    for (Vertex j : w.g1[static_cast<std::size_t>(i)]) out.q.add(i, Edge(m, j));
    for (Vertex j : w.g2[static_cast<std::size_t>(i)]) out.q.add(i, Edge(m + 1, j));
  }
  const Edge bridge(m, m + 1);
  out.q.add(w.bridge_class, bridge);
  out.h_edge[static_cast<std::size_t>(w.bridge_class)] = bridge;
  const int slot = st.t + st.s;
  out.q.swap_classes(w.bridge_class, slot);
  std::swap(out.h_edge[static_cast<std::size_t>(w.bridge_class)], out.h_edge[static_cast<std::size_t>(slot)]);
  out.s = st.s + 1;
  check_extend_invariants(out, "attach_pair");
  return out;
}

SparseResult extend_with_k2s(const Decomposition& p, const std::vector<std::optional<Edge>>& h_edge,
                             int n, int t, const SparseOptions& opt) {
  SparseResult res;
  ExtendState& st = res.state;
  st.q = p;
  st.h_edge = h_edge;
  st.s = 0;
  st.t = t;
  st.r = p.order();
  st.n = n;
  check_extend_invariants(st, "extend_with_k2s.init");
  while (st.s < n - t) {
    if (st.k() < 4) throw InvariantViolation("extend_with_k2s", "k < 4 inside the loop");
    const AuxiliaryGraph aux = build_auxiliary(st);
    std::optional<AttachmentWitness> w;
    std::string reasons;
    for (int a = 0; a < opt.attempts && !w; ++a) {
      const std::uint64_t seed = opt.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(a);
      try {
        w = color_witness(st, aux, seed);
      } catch (const WitnessRejected& ex) {
        reasons = ex.what();
      }
    }
    if (!w) {
      w = search_witness(st, aux, opt.search_budget);
      ++res.fallback_steps;
    }
    std::ostringstream tag;
    tag << "extend:s=" << st.s << "->" << st.s + 1 << " k=" << st.k() << " " << w->origin;
    res.trace.push_back(tag.str());
    st = attach_pair(st, *w);
  }
  return res;
}

}  // namespace rainbow
