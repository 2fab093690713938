#include "support.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "rainbow/errors.hpp"
#include "rainbow/extend_sparse.hpp"
#include "rainbow/generate.hpp"
#include "rainbow/hilton_extend.hpp"
#include "rainbow/solver.hpp"

namespace rainbow::testing {

Graph family(const std::vector<Shape>& parts) {
  Graph g;
  for (Shape s : parts) {
    const Vertex b = g.vertex_count;
    switch (s) {
      case Shape::K2: g.edges.emplace_back(b, b + 1); g.vertex_count += 2; break;
      case Shape::P3:
        g.edges.emplace_back(b, b + 1);
        g.edges.emplace_back(b + 1, b + 2);
        g.vertex_count += 3;
        break;
      case Shape::P4:
        g.edges.emplace_back(b, b + 1);
        g.edges.emplace_back(b + 1, b + 2);
        g.edges.emplace_back(b + 2, b + 3);
        g.vertex_count += 4;
        break;
      case Shape::Triangle:
        g.edges.emplace_back(b, b + 1);
        g.edges.emplace_back(b + 1, b + 2);
        g.edges.emplace_back(b, b + 2);
        g.vertex_count += 3;
        break;
      case Shape::Star3:
        for (int i = 1; i <= 3; ++i) g.edges.emplace_back(b, b + i);
        g.vertex_count += 4;
        break;
    }
  }
  return g;
}

std::string describe(const std::vector<Shape>& parts) {
  std::map<std::string, int> count;
  std::vector<std::string> order;
  for (Shape s : parts) {
    const char* name = s == Shape::K2 ? "K2" : s == Shape::P3 ? "P3" : s == Shape::P4 ? "P4"
                     : s == Shape::Triangle ? "K3" : "K1,3";
    if (count[name]++ == 0) order.push_back(name);
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i) os << '+';
    if (count[order[i]] > 1) os << count[order[i]];
    os << order[i];
  }
  return os.str();
}

namespace {

template <class F>
void check(StageAudit& a, const std::string& stage, F&& body) {
  ++a.checks;
  try {
    if (!body()) a.violations.push_back(stage);
  } catch (const std::exception& e) {
    a.violations.push_back(stage + ": " + e.what());
  }
}

}  // namespace

StageAudit audit_pipeline(const Graph& h, std::uint64_t seed) {
  StageAudit a;
  const int n = static_cast<int>(h.edges.size());
  const ComponentSplit split = split_components(h);
  a.n = n;
  a.t = split.t;
  a.r = split.r;
  if (route(h, split) != Route::MainPipeline) {
    a.violations.push_back("instance does not take the main pipeline");
    return a;
  }

  // H' relabelled onto [0, r) by first appearance.
  std::vector<Vertex> inner(static_cast<std::size_t>(h.vertex_count), -1);
  Vertex next = 0;
  Graph hp;
  for (int idx : split.h_prime_edges) {
    const Edge& e = h.edges[static_cast<std::size_t>(idx)];
    for (Vertex x : {e.u, e.v})
      if (inner[static_cast<std::size_t>(x)] < 0) inner[static_cast<std::size_t>(x)] = next++;
    hp.edges.emplace_back(inner[static_cast<std::size_t>(e.u)], inner[static_cast<std::size_t>(e.v)]);
  }
  hp.vertex_count = split.r;
  a.branch = dense_branch(n, split.r);
  a.params = case_params(n, split.t, split.r);

  SolveOptions opt;
  opt.seed = seed;
  DenseResult dense;
  try {
    dense = embed_dense(DenseInstance{hp, n}, [&](const Graph& sub, int) { return solve_graph(sub, opt); });
  } catch (const std::exception& e) {
    a.violations.push_back(std::string("embed_dense: ") + e.what());
    return a;
  }
  if (dense.branch != a.branch) a.violations.push_back("embed_dense took an unexpected branch");

  ExtendState st;
  st.q = dense.p;
  st.h_edge.assign(static_cast<std::size_t>(n), std::nullopt);
  for (int j = 0; j < split.t; ++j)
    st.h_edge[static_cast<std::size_t>(dense.class_of_edge[static_cast<std::size_t>(j)])] = hp.edges[static_cast<std::size_t>(j)];
  st.t = split.t;
  st.r = split.r;
  st.n = n;

  check(a, "dense postconditions", [&] {
    DenseState ds;
    ds.p = dense.p;
    ds.h_edge = st.h_edge;
    ds.n = n;
    ds.t = split.t;
    ds.r = split.r;
    check_dense_postconditions(ds, "audit.dense");
    return true;
  });
  if (!a.ok()) return a;

  while (st.s < n - split.t) {
    check(a, "extend invariants s=" + std::to_string(st.s), [&] {
      check_extend_invariants(st, "audit.extend");
      return true;
    });
    AuxiliaryGraph aux;
    check(a, "auxiliary graph s=" + std::to_string(st.s), [&] {
      aux = build_auxiliary(st);
      return true;
    });
    if (!a.ok()) return a;
    const int k = st.k(), m = st.m();
    // Degree identities of the auxiliary graph, counted from the multiplicities.
    check(a, "Y degrees equal k s=" + std::to_string(st.s), [&] {
      for (Vertex j = 0; j < m; ++j) {
        int d = 0;
        for (int i = 0; i < n; ++i) d += aux.multiplicity[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (d != k) return false;
      }
      return true;
    });
    check(a, "X degrees 2k-2x with x in range s=" + std::to_string(st.s), [&] {
      for (int i = 0; i < n; ++i) {
        int d = 0;
        for (Vertex j = 0; j < m; ++j) d += aux.multiplicity[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        const int x = aux.slack[static_cast<std::size_t>(i)];
        if (d != 2 * k - 2 * x || x < (i < st.t + st.s ? 0 : 1)) return false;
      }
      return true;
    });

    std::optional<AttachmentWitness> w;
    for (int attempt = 0; attempt < 8 && !w; ++attempt) {
      try {
        w = color_witness(st, aux, seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(attempt));
      } catch (const WitnessRejected&) {
        ++a.rejected_colours;
      }
    }
    if (!w) {
      ++a.fallback_steps;
      try {
        w = search_witness(st, aux, 5'000'000);
      } catch (const std::exception& e) {
        a.violations.push_back(std::string("no witness: ") + e.what());
        return a;
      }
    } else {
      const auto pos = w->origin.find("rejected=");
      if (pos != std::string::npos) a.rejected_colours += std::stoi(w->origin.substr(pos + 9));
    }
    check(a, "attachment conditions s=" + std::to_string(st.s), [&] {
      const auto bad = witness_violations(st, aux, *w);
      for (const auto& b : bad) a.violations.push_back("attachment s=" + std::to_string(st.s) + ": " + b);
      return true;
    });
    check(a, "attach s=" + std::to_string(st.s), [&] {
      st = attach_pair(st, *w);
      return true;
    });
    if (!a.ok()) return a;
    ++a.extend_steps;
  }
  check(a, "extend invariants final", [&] {
    check_extend_invariants(st, "audit.extend.final");
    return true;
  });

  Decomposition q = st.q;
  while (q.order() < 2 * n) {
    check(a, "completion bound at K" + std::to_string(q.order()), [&] { return completion_condition_holds(q, n); });
    if (!a.ok()) return a;
    try {
      q = single_vertex_step(q, n);
    } catch (const std::exception& e) {
      a.violations.push_back(std::string("insertion: ") + e.what());
      return a;
    }
    ++a.insertions;
  }
  if (q.order() == 2 * n)
    check(a, "close final vertex", [&] {
      q = close_final_vertex(q);
      return true;
    });
  check(a, "rainbow HCD", [&] {
    for (int i = 0; i < n; ++i)
      if (!is_hamiltonian_cycle(q.at(i), 2 * n + 1)) return false;
    for (int i = 0; i < n; ++i)
      if (st.h_edge[static_cast<std::size_t>(i)] && !q.at(i).contains(*st.h_edge[static_cast<std::size_t>(i)]))
        return false;
    return true;
  });
  return a;
}

BipartiteMultigraph random_bipartite(std::mt19937_64& rng, int max_edges) {
  const int xs = 1 + static_cast<int>(rng() % 8);
  const int ys = 1 + static_cast<int>(rng() % 8);
  BipartiteMultigraph g(xs, ys);
  const int want = static_cast<int>(rng() % static_cast<std::uint64_t>(max_edges + 1));
  std::map<std::pair<int, int>, int> mult;
  for (int tries = 0; static_cast<int>(g.edge_count()) < want && tries < 10 * max_edges; ++tries) {
    const int x = static_cast<int>(rng() % static_cast<std::uint64_t>(xs));
    const int y = static_cast<int>(rng() % static_cast<std::uint64_t>(ys));
    if (mult[{x, y}] >= 4) continue;
    ++mult[{x, y}];
    g.add_edge(x, y);
  }
  return g;
}

BipartiteMultigraph random_even_bipartite(std::mt19937_64& rng, int max_edges) {
  const BipartiteMultigraph g = random_bipartite(rng, max_edges);
  std::vector<int> deg(static_cast<std::size_t>(g.y_size()), 0);
  for (const auto& e : g.edges()) ++deg[static_cast<std::size_t>(e.y)];
  std::set<int> keep;
  for (const auto& e : g.edges()) {
    if (deg[static_cast<std::size_t>(e.y)] % 2 == 1) {
      --deg[static_cast<std::size_t>(e.y)];
      continue;
    }
    keep.insert(e.id);
  }
  return g.subgraph(keep);
}

Pairing random_pairing(const BipartiteMultigraph& g, std::mt19937_64& rng) {
  Pairing p(g.x_size());
  for (int x = 0; x < g.x_size(); ++x) {
    std::vector<int> ids;
    for (const auto& e : g.edges())
      if (e.x == x) ids.push_back(e.id);
    std::shuffle(ids.begin(), ids.end(), rng);
    for (std::size_t i = 0; i + 1 < ids.size(); i += 2) {
      if (rng() % 3 == 0) continue;
      auto& mine = p.pairs[static_cast<std::size_t>(x)];
      mine.emplace_back(ids[i], ids[i + 1]);
      try {
        validate_pairing(g, p);
      } catch (const PreconditionViolation&) {
        mine.pop_back();
      }
    }
  }
  return p;
}

namespace {

std::vector<int> x_degrees(const BipartiteMultigraph& g, const std::set<int>& ids) {
  std::vector<int> d(static_cast<std::size_t>(g.x_size()), 0);
  for (int id : ids) ++d[static_cast<std::size_t>(g.edge(id).x)];
  return d;
}

std::vector<int> y_degrees(const BipartiteMultigraph& g, const std::set<int>& ids) {
  std::vector<int> d(static_cast<std::size_t>(g.y_size()), 0);
  for (int id : ids) ++d[static_cast<std::size_t>(g.edge(id).y)];
  return d;
}

}  // namespace

std::optional<ReductionInstance> random_reduction_instance(std::mt19937_64& rng, int max_edges) {
  ReductionInstance in;
  in.g = random_bipartite(rng, max_edges);
  for (const auto& e : in.g.edges()) (rng() % 2 ? in.a : in.b).insert(e.id);
  // Push A edges into B until every Y vertex has deg_B >= deg_A.
  for (int y = 0; y < in.g.y_size(); ++y) {
    for (;;) {
      const auto da = y_degrees(in.g, in.a), db = y_degrees(in.g, in.b);
      if (db[static_cast<std::size_t>(y)] >= da[static_cast<std::size_t>(y)]) break;
      for (int id : in.a)
        if (in.g.edge(id).y == y) {
          in.a.erase(id);
          in.b.insert(id);
          break;
        }
    }
  }
  const auto da = x_degrees(in.g, in.a), db = x_degrees(in.g, in.b);
  int top = 0;
  for (int x = 0; x < in.g.x_size(); ++x)
    top = std::max({top, da[static_cast<std::size_t>(x)], db[static_cast<std::size_t>(x)]});
  in.eta = top + static_cast<int>(rng() % 2);
  std::vector<int> strict, equal_odd;
  for (int x = 0; x < in.g.x_size(); ++x) {
    const int a = da[static_cast<std::size_t>(x)], b = db[static_cast<std::size_t>(x)];
    if (a > b) strict.push_back(x);
    else if (a == b && a % 2 == 1) equal_odd.push_back(x);
  }
  if (!strict.empty()) {
    in.x0 = strict[rng() % strict.size()];
    return in;
  }
  const auto dby = y_degrees(in.g, in.b);
  const bool b_even = std::all_of(dby.begin(), dby.end(), [](int d) { return d % 2 == 0; });
  if (equal_odd.empty() || !b_even) return std::nullopt;
  if (in.eta % 2 == 1) ++in.eta;
  in.x0 = equal_odd[rng() % equal_odd.size()];
  return in;
}

bool reduction_post_holds(const ReductionInstance& in, const std::set<int>& c) {
  for (int id : c)
    if (!in.g.has_edge(id)) return false;
  if (y_degrees(in.g, c) != y_degrees(in.g, in.a)) return false;
  const auto dc = x_degrees(in.g, c), da = x_degrees(in.g, in.a);
  for (int x = 0; x < in.g.x_size(); ++x) {
    const int cx = dc[static_cast<std::size_t>(x)], ax = da[static_cast<std::size_t>(x)];
    if (x == in.x0 ? cx != ax - 1 : (cx < ax || cx > in.eta)) return false;
  }
  return true;
}

std::optional<std::set<int>> brute_force_reduction(const ReductionInstance& in) {
  std::vector<int> ids;
  for (const auto& e : in.g.edges()) ids.push_back(e.id);
  if (ids.size() > 20) throw PreconditionViolation("brute force limited to 20 edges");
  for (std::uint32_t mask = 0; mask < (1u << ids.size()); ++mask) {
    std::set<int> c;
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (mask >> i & 1u) c.insert(ids[i]);
    if (reduction_post_holds(in, c)) return c;
  }
  return std::nullopt;
}

bool balanced_by_count(const BipartiteMultigraph& g, const std::map<int, int>& colour, int k) {
  std::map<std::pair<char, int>, std::vector<int>> at;
  std::map<std::pair<int, int>, std::vector<int>> bundle;
  for (const auto& e : g.edges()) {
    const auto it = colour.find(e.id);
    if (it == colour.end() || it->second < 1 || it->second > k) return false;
    const auto c = static_cast<std::size_t>(it->second - 1);
    for (auto* v : {&at[{'x', e.x}], &at[{'y', e.y}], &bundle[{e.x, e.y}]}) {
      v->resize(static_cast<std::size_t>(k), 0);
      ++(*v)[c];
    }
  }
  auto spread_ok = [](const std::vector<int>& v) {
    return *std::max_element(v.begin(), v.end()) - *std::min_element(v.begin(), v.end()) <= 1;
  };
  for (const auto& [key, v] : at)
    if (!spread_ok(v)) return false;
  for (const auto& [key, v] : bundle)
    if (!spread_ok(v)) return false;
  return true;
}

std::size_t brute_force_class_count(int n) {
  const int v = 2 * n;
  std::vector<Edge> all;
  for (Vertex a = 0; a < v; ++a)
    for (Vertex b = a + 1; b < v; ++b) all.emplace_back(a, b);
  std::set<std::vector<Edge>> seen;
  std::vector<int> pick(static_cast<std::size_t>(n));
  std::function<void(int, int)> rec = [&](int depth, int from) {
    if (depth == n) {
      Graph g;
      std::vector<bool> used(static_cast<std::size_t>(v), false);
      for (int i : pick) {
        g.edges.push_back(all[static_cast<std::size_t>(i)]);
        used[static_cast<std::size_t>(all[static_cast<std::size_t>(i)].u)] = true;
        used[static_cast<std::size_t>(all[static_cast<std::size_t>(i)].v)] = true;
      }
      // Only graphs whose vertex set is a prefix [0, w); every class has one.
      const int w = static_cast<int>(std::count(used.begin(), used.end(), true));
      for (int x = 0; x < w; ++x)
        if (!used[static_cast<std::size_t>(x)]) return;
      g.vertex_count = w;
      seen.insert(canonical_form(g));
      return;
    }
    for (int i = from; i < static_cast<int>(all.size()); ++i) {
      pick[static_cast<std::size_t>(depth)] = i;
      rec(depth + 1, i + 1);
    }
  };
  rec(0, 0);
  return seen.size();
}

}  // namespace rainbow::testing
