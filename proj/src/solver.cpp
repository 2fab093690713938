#include "rainbow/solver.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include "rainbow/embed_dense.hpp"
#include "rainbow/extend_sparse.hpp"
#include "rainbow/hilton_extend.hpp"

namespace rainbow {

namespace {

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

template <class T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng() % i]);
}

// Relabelling sending `image[x]` to x for x < image.size(); the remaining
// vertices of K_order take the free labels in ascending order.
std::vector<Vertex> pull_back(const std::vector<Vertex>& image, int order) {
  std::vector<Vertex> perm(static_cast<std::size_t>(order), -1);
  std::vector<char> label_used(static_cast<std::size_t>(order), 0);
  for (std::size_t x = 0; x < image.size(); ++x) {
    perm[static_cast<std::size_t>(image[x])] = static_cast<Vertex>(x);
    label_used[x] = 1;
  }
  Vertex next = 0;
  for (auto& p : perm) {
    if (p >= 0) continue;
    while (label_used[static_cast<std::size_t>(next)]) ++next;
    p = next;
    label_used[static_cast<std::size_t>(next)] = 1;
  }
  return perm;
}

Solution finish(const Graph& h, int n, Solution sol, const std::string& stage) {
  check_solution(h, n, sol, stage);
  return sol;
}

}  // namespace

const char* to_string(Route r) {
  switch (r) {
    case Route::BaseSmall: return "base_small";
    case Route::AllK2: return "all_k2";
    case Route::LinearForest: return "linear_forest";
    case Route::MainPipeline: return "main_pipeline";
  }
  return "?";
}

ComponentSplit split_components(const Graph& h) {
  ComponentSplit split;
  std::vector<char> in_prime(static_cast<std::size_t>(h.vertex_count), 0);
  for (const auto& comp : h.edge_components()) {
    auto& into = comp.size() == 1 ? split.k2_edges : split.h_prime_edges;
    into.insert(into.end(), comp.begin(), comp.end());
    if (comp.size() > 1)
      for (int idx : comp) {
        in_prime[static_cast<std::size_t>(h.edges[static_cast<std::size_t>(idx)].u)] = 1;
        in_prime[static_cast<std::size_t>(h.edges[static_cast<std::size_t>(idx)].v)] = 1;
      }
  }
  std::sort(split.h_prime_edges.begin(), split.h_prime_edges.end());
  std::sort(split.k2_edges.begin(), split.k2_edges.end());
  split.t = static_cast<int>(split.h_prime_edges.size());
  split.r = static_cast<int>(std::count(in_prime.begin(), in_prime.end(), 1));
  return split;
}

Route route(const Graph& h, const ComponentSplit& split) {
  const int n = static_cast<int>(h.edges.size());
  if (n <= 5) return Route::BaseSmall;
  if (split.t == 0) return Route::AllK2;
  if (h.is_linear_forest()) return Route::LinearForest;
  return Route::MainPipeline;
}

Solution backtrack_rainbow_hcd(const Graph& h, int n, const SolveOptions& opt) {
  const int big = 2 * n + 1;
  const int e = static_cast<int>(h.edges.size());
  if (e > n) throw PreconditionViolation("backtrack_rainbow_hcd: more H edges than classes");
  if (h.vertex_count > big) throw InfeasibleInput("H has more than 2n+1 vertices");

  const auto N = static_cast<std::size_t>(big);
  for (int attempt = 0; attempt < opt.restarts; ++attempt) {
    std::mt19937_64 rng(mix(opt.seed, static_cast<std::uint64_t>(attempt)));
    std::vector<std::vector<char>> avail(N, std::vector<char>(N, 1));
    for (std::size_t v = 0; v < N; ++v) avail[v][v] = 0;
    for (const Edge& he : h.edges) {
      avail[static_cast<std::size_t>(he.u)][static_cast<std::size_t>(he.v)] = 0;
      avail[static_cast<std::size_t>(he.v)][static_cast<std::size_t>(he.u)] = 0;
    }
    std::vector<std::vector<Vertex>> cycles;
    std::vector<Vertex> path;
    std::vector<char> on_path(N, 0);
    long nodes = 0;

    auto set_cycle = [&](const std::vector<Vertex>& cyc, char value) {
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        const auto a = static_cast<std::size_t>(cyc[i]);
        const auto b = static_cast<std::size_t>(cyc[(i + 1) % cyc.size()]);
        avail[a][b] = avail[b][a] = value;
      }
    };
    // Every vertex off the path needs two usable neighbours to be threaded in.
    auto viable = [&]() {
      const auto start = static_cast<std::size_t>(path.front());
      const auto end = static_cast<std::size_t>(path.back());
      for (std::size_t w = 0; w < N; ++w) {
        if (on_path[w]) continue;
        int d = 0;
        for (std::size_t y = 0; y < N && d < 2; ++y)
          if (avail[w][y] && (!on_path[y] || y == start || y == end)) ++d;
        if (d < 2) return false;
      }
      return true;
    };

    std::function<bool(int)> solve_class;
    std::function<bool(int)> extend = [&](int c) -> bool {
      if (++nodes > opt.search_budget) throw BudgetExceeded("restart");
      const auto end = static_cast<std::size_t>(path.back());
      if (path.size() == N) {
        const auto start = static_cast<std::size_t>(path.front());
        if (!avail[end][start]) return false;
        const std::vector<Vertex> cyc = path;
        set_cycle(cyc, 0);
        cycles.push_back(cyc);
        if (solve_class(c + 1)) return true;
        cycles.pop_back();
        set_cycle(cyc, 1);
        if (c < e) {
          // The planted edge stays reserved.
          avail[static_cast<std::size_t>(cyc[0])][static_cast<std::size_t>(cyc[1])] = 0;
          avail[static_cast<std::size_t>(cyc[1])][static_cast<std::size_t>(cyc[0])] = 0;
        }
        return false;
      }
      std::vector<Vertex> cand;
      for (std::size_t v = 0; v < N; ++v)
        if (!on_path[v] && avail[end][v]) cand.push_back(static_cast<Vertex>(v));
      shuffle(cand, rng);
      for (Vertex v : cand) {
        path.push_back(v);
        on_path[static_cast<std::size_t>(v)] = 1;
        if (viable() && extend(c)) return true;
        on_path[static_cast<std::size_t>(v)] = 0;
        path.pop_back();
      }
      return false;
    };
    solve_class = [&](int c) -> bool {
      if (c == n) return true;
      std::vector<Vertex> saved = path;
      std::vector<char> saved_on = on_path;
      std::fill(on_path.begin(), on_path.end(), 0);
      if (c < e) path = {h.edges[static_cast<std::size_t>(c)].u, h.edges[static_cast<std::size_t>(c)].v};
      else path = {0};
      for (Vertex v : path) on_path[static_cast<std::size_t>(v)] = 1;
      const bool ok = extend(c);
      if (!ok) {
        path = saved;
        on_path = saved_on;
      }
      return ok;
    };

    try {
      if (!solve_class(0)) continue;
    } catch (const BudgetExceeded&) {
      continue;
    }
    Solution sol;
    sol.hcd = Decomposition(big, n);
    for (int c = 0; c < n; ++c) {
      const auto& cyc = cycles[static_cast<std::size_t>(c)];
      for (std::size_t i = 0; i < cyc.size(); ++i) sol.hcd.add(c, Edge(cyc[i], cyc[(i + 1) % cyc.size()]));
    }
    sol.assignment.resize(static_cast<std::size_t>(e));
    std::iota(sol.assignment.begin(), sol.assignment.end(), 0);
    sol.trace.push_back("backtrack(restart=" + std::to_string(attempt) + ")");
    return finish(h, n, std::move(sol), "backtrack_rainbow_hcd");
  }
  throw SearchExhausted("backtracking found no rainbow HCD within the restart budget");
}

Solution embed_in_walecki(const Graph& h, int n, const SolveOptions& opt) {
  const int big = 2 * n + 1;
  const Decomposition w = walecki(n);
  std::vector<std::vector<int>> cls(static_cast<std::size_t>(big), std::vector<int>(static_cast<std::size_t>(big), -1));
  for (int c = 0; c < n; ++c)
    for (const Edge& e : w.at(c))
      cls[static_cast<std::size_t>(e.u)][static_cast<std::size_t>(e.v)] =
          cls[static_cast<std::size_t>(e.v)][static_cast<std::size_t>(e.u)] = c;

  // H vertices in BFS order per component; neighbours listed per vertex.
  const int v = h.vertex_count;
  std::vector<std::vector<Vertex>> nbr(static_cast<std::size_t>(v));
  for (const Edge& e : h.edges) {
    nbr[static_cast<std::size_t>(e.u)].push_back(e.v);
    nbr[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  std::vector<Vertex> order;
  std::vector<char> seen(static_cast<std::size_t>(v), 0);
  for (Vertex root = 0; root < v; ++root) {
    if (seen[static_cast<std::size_t>(root)]) continue;
    seen[static_cast<std::size_t>(root)] = 1;
    std::size_t head = order.size();
    order.push_back(root);
    for (; head < order.size(); ++head) {
      for (Vertex y : nbr[static_cast<std::size_t>(order[head])])
        if (!seen[static_cast<std::size_t>(y)]) {
          seen[static_cast<std::size_t>(y)] = 1;
          order.push_back(y);
        }
    }
  }

  for (int attempt = 0; attempt < opt.restarts; ++attempt) {
    std::mt19937_64 rng(mix(opt.seed ^ 0x5bd1e995ULL, static_cast<std::uint64_t>(attempt)));
    std::vector<Vertex> phi(static_cast<std::size_t>(v), -1);
    std::vector<char> image_used(static_cast<std::size_t>(big), 0);
    std::vector<char> class_used(static_cast<std::size_t>(n), 0);
    long nodes = 0;
    std::function<bool(std::size_t)> place = [&](std::size_t idx) -> bool {
      if (++nodes > opt.search_budget) throw BudgetExceeded("restart");
      if (idx == order.size()) return true;
      const Vertex x = order[idx];
      std::vector<Vertex> cand;
      for (Vertex y = 0; y < big; ++y)
        if (!image_used[static_cast<std::size_t>(y)]) cand.push_back(y);
      shuffle(cand, rng);
      for (Vertex y : cand) {
        std::vector<int> taken;
        bool ok = true;
        for (Vertex z : nbr[static_cast<std::size_t>(x)]) {
          const Vertex pz = phi[static_cast<std::size_t>(z)];
          if (pz < 0) continue;
          const int c = cls[static_cast<std::size_t>(y)][static_cast<std::size_t>(pz)];
          if (class_used[static_cast<std::size_t>(c)]) {
            ok = false;
            break;
          }
          class_used[static_cast<std::size_t>(c)] = 1;
          taken.push_back(c);
        }
        if (ok) {
          phi[static_cast<std::size_t>(x)] = y;
          image_used[static_cast<std::size_t>(y)] = 1;
          if (place(idx + 1)) return true;
          phi[static_cast<std::size_t>(x)] = -1;
          image_used[static_cast<std::size_t>(y)] = 0;
        }
        for (int c : taken) class_used[static_cast<std::size_t>(c)] = 0;
      }
      return false;
    };
    try {
      if (!place(0)) continue;
    } catch (const BudgetExceeded&) {
      continue;
    }
    Solution sol;
    sol.hcd = relabel(w, pull_back(phi, big));
    for (const Edge& e : h.edges)
      sol.assignment.push_back(cls[static_cast<std::size_t>(phi[static_cast<std::size_t>(e.u)])]
                                  [static_cast<std::size_t>(phi[static_cast<std::size_t>(e.v)])]);
    sol.trace.push_back("walecki_embed(restart=" + std::to_string(attempt) + ")");
    return finish(h, n, std::move(sol), "embed_in_walecki");
  }
  throw SearchExhausted("no rainbow embedding into the Walecki decomposition found");
}

Solution base_small(const Graph& h, const SolveOptions& opt) {
  return backtrack_rainbow_hcd(h, static_cast<int>(h.edges.size()), opt);
}

Solution base_all_k2(const Graph& h) {
  const int n = static_cast<int>(h.edges.size());
  const int big = 2 * n + 1;
  const Decomposition w = walecki(n);
  std::vector<Edge> pick(static_cast<std::size_t>(n));
  std::vector<char> used(static_cast<std::size_t>(big), 0);
  std::function<bool(int)> choose = [&](int c) -> bool {
    if (c == n) return true;
    for (const Edge& e : w.at(c)) {
      if (used[static_cast<std::size_t>(e.u)] || used[static_cast<std::size_t>(e.v)]) continue;
      used[static_cast<std::size_t>(e.u)] = used[static_cast<std::size_t>(e.v)] = 1;
      pick[static_cast<std::size_t>(c)] = e;
      if (choose(c + 1)) return true;
      used[static_cast<std::size_t>(e.u)] = used[static_cast<std::size_t>(e.v)] = 0;
    }
    return false;
  };
  if (!choose(0)) throw SearchExhausted("no rainbow matching in the Walecki decomposition");
  // image[x] = Walecki vertex playing H's vertex x.
  std::vector<Vertex> image(static_cast<std::size_t>(h.vertex_count), -1);
  for (int c = 0; c < n; ++c) {
    image[static_cast<std::size_t>(h.edges[static_cast<std::size_t>(c)].u)] = pick[static_cast<std::size_t>(c)].u;
    image[static_cast<std::size_t>(h.edges[static_cast<std::size_t>(c)].v)] = pick[static_cast<std::size_t>(c)].v;
  }
  Solution sol;
  sol.hcd = relabel(w, pull_back(image, big));
  sol.assignment.resize(static_cast<std::size_t>(n));
  std::iota(sol.assignment.begin(), sol.assignment.end(), 0);
  sol.trace.push_back("walecki_matching");
  return finish(h, n, std::move(sol), "base_all_k2");
}

namespace {

// Singleton H classes padded with round-robin matchings, then completion.
Solution plant_and_complete(const Graph& h, int n) {
  const int v = h.vertex_count;
  Decomposition d(v, n);
  for (int j = 0; j < static_cast<int>(h.edges.size()); ++j) d.add(j, h.edges[static_cast<std::size_t>(j)]);
  const EdgeSet hs(h.edges.begin(), h.edges.end());
  int cls = 0;
  for (const auto& round : round_robin_matchings(v)) {
    std::vector<Edge> rest;
    for (const Edge& e : round)
      if (!hs.contains(e)) rest.push_back(e);
    if (rest.empty()) continue;
    if (cls >= n) throw PreconditionViolation("plant_and_complete: more matchings than classes");
    for (const Edge& e : rest) d.add(cls, e);
    ++cls;
  }
  check_completion_condition(d, n, "plant_and_complete");
  Solution sol;
  sol.hcd = extend_to_hcd(d, n);
  sol.assignment.resize(h.edges.size());
  std::iota(sol.assignment.begin(), sol.assignment.end(), 0);
  sol.trace.push_back("plant_and_complete");
  return finish(h, n, std::move(sol), "plant_and_complete");
}

}  // namespace

Solution base_linear_forest(const Graph& h, const SolveOptions& opt) {
  const int n = static_cast<int>(h.edges.size());
  std::vector<std::string> notes;
  try {
    return embed_in_walecki(h, n, opt);
  } catch (const SearchExhausted& e) {
    notes.push_back(std::string("walecki_embed failed: ") + e.what());
  }
  try {
    Solution sol = plant_and_complete(h, n);
    sol.trace.insert(sol.trace.begin(), notes.begin(), notes.end());
    return sol;
  } catch (const PreconditionViolation& e) {
    notes.push_back(std::string("plant_and_complete skipped: ") + e.what());
  } catch (const InternalInfeasible& e) {
    notes.push_back(std::string("plant_and_complete failed: ") + e.what());
  }
  Solution sol = backtrack_rainbow_hcd(h, n, opt);
  sol.trace.insert(sol.trace.begin(), notes.begin(), notes.end());
  return sol;
}

Solution main_pipeline(const Graph& h, const SolveOptions& opt) {
  const int n = static_cast<int>(h.edges.size());
  const ComponentSplit split = split_components(h);
  const int t = split.t, r = split.r;

  // Internal labels: H' on [0, r) in order of appearance, the q-th K_2 on
  // (r + 2q, r + 2q + 1).
  std::vector<Vertex> inner(static_cast<std::size_t>(h.vertex_count), -1);
  Vertex next = 0;
  auto label = [&](Vertex x) {
    auto& l = inner[static_cast<std::size_t>(x)];
    if (l < 0) l = next++;
    return l;
  };
  Graph h_prime;
  for (int idx : split.h_prime_edges) {
    const Edge& e = h.edges[static_cast<std::size_t>(idx)];
    const Vertex a = label(e.u);
    const Vertex b = label(e.v);
    h_prime.edges.emplace_back(a, b);
  }
  h_prime.vertex_count = r;
  for (int idx : split.k2_edges) {
    const Edge& e = h.edges[static_cast<std::size_t>(idx)];
    label(e.u);
    label(e.v);
  }

  Solution out;
  const RecursiveSolver recurse = [&](const Graph& sub, int s) {
    if (s >= n) throw InvariantViolation("main_pipeline", "recursion does not shrink n");
    return solve_graph(sub, opt);
  };
  const DenseResult dense = embed_dense(DenseInstance{h_prime, n}, recurse);
  out.trace.insert(out.trace.end(), dense.trace.begin(), dense.trace.end());

  std::vector<std::optional<Edge>> h_edge(static_cast<std::size_t>(n));
  for (int j = 0; j < t; ++j)
    h_edge[static_cast<std::size_t>(dense.class_of_edge[static_cast<std::size_t>(j)])] = h_prime.edges[static_cast<std::size_t>(j)];

  SparseOptions sparse_opt;
  sparse_opt.seed = opt.seed;
  const SparseResult sparse = extend_with_k2s(dense.p, h_edge, n, t, sparse_opt);
  out.trace.insert(out.trace.end(), sparse.trace.begin(), sparse.trace.end());
  const int m = sparse.state.q.order();
  if (m != 2 * n - 2 * t + r) throw InvariantViolation("main_pipeline", "extension stopped at the wrong order");

  const Decomposition full = extend_to_hcd(sparse.state.q, n);
  out.trace.push_back("hilton:K" + std::to_string(m) + "->K" + std::to_string(2 * n + 1));

  // Back to H's labels.
  std::vector<Vertex> image(static_cast<std::size_t>(h.vertex_count));
  for (Vertex x = 0; x < h.vertex_count; ++x) image[static_cast<std::size_t>(x)] = inner[static_cast<std::size_t>(x)];
  out.hcd = relabel(full, pull_back(image, 2 * n + 1));
  out.assignment.assign(h.edges.size(), -1);
  for (int j = 0; j < t; ++j)
    out.assignment[static_cast<std::size_t>(split.h_prime_edges[static_cast<std::size_t>(j)])] =
        dense.class_of_edge[static_cast<std::size_t>(j)];
  for (int q = 0; q < split.k2_count(); ++q)
    out.assignment[static_cast<std::size_t>(split.k2_edges[static_cast<std::size_t>(q)])] = t + q;
  return finish(h, n, std::move(out), "main_pipeline");
}

Solution solve_graph(const Graph& h, const SolveOptions& opt) {
  const int n = static_cast<int>(h.edges.size());
  if (n < 1) throw InfeasibleInput("H has no edges");
  h.validate();
  if (h.vertex_count > 2 * n + 1) throw InfeasibleInput("H has more than 2n+1 vertices");
  for (int d : h.degrees())
    if (d == 0) throw PreconditionViolation("solve_graph: H has an isolated vertex");

  const ComponentSplit split = split_components(h);
  const Route rt = route(h, split);
  Solution sol;
  switch (rt) {
    case Route::BaseSmall: sol = base_small(h, opt); break;
    case Route::AllK2: sol = base_all_k2(h); break;
    case Route::LinearForest: sol = base_linear_forest(h, opt); break;
    case Route::MainPipeline: sol = main_pipeline(h, opt); break;
  }
  sol.trace.insert(sol.trace.begin(), std::string("route:") + to_string(rt) + "(n=" + std::to_string(n) +
                                          ",t=" + std::to_string(split.t) + ",r=" + std::to_string(split.r) + ")");
  return finish(h, n, std::move(sol), "solve");
}

RainbowCertificate solve(const Graph& h, const SolveOptions& opt) {
  const Solution sol = solve_graph(h, opt);
  RainbowCertificate cert;
  cert.n = static_cast<int>(h.edges.size());
  cert.decomposition = sol.hcd;
  cert.h_edges = h.edges;
  cert.assignment = sol.assignment;
  cert.label_map.resize(static_cast<std::size_t>(h.vertex_count));
  std::iota(cert.label_map.begin(), cert.label_map.end(), 0);
  cert.seed = opt.seed;
  cert.pipeline_trace = sol.trace;
  const VerificationReport report = verify_certificate(cert);
  if (!report.ok()) throw InvariantViolation("solve", report.to_string());
  return cert;
}

}  // namespace rainbow
