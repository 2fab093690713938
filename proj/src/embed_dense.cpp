#include "rainbow/embed_dense.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

namespace rainbow {

CaseParams case_params(int n, int t, int r) {
  return {std::max(t - n + 1, 0), r % 2};
}

const char* to_string(DenseBranch b) {
  switch (b) {
    case DenseBranch::SmallR: return "small_r";
    case DenseBranch::Case1: return "case1";
    case DenseBranch::Case2: return "case2";
  }
  return "?";
}

DenseBranch dense_branch(int n, int r) {
  if (r <= n) return DenseBranch::SmallR;
  return 3 * r <= 4 * n - 1 ? DenseBranch::Case1 : DenseBranch::Case2;
}

std::string MoveRecipe::describe() const {
  std::ostringstream os;
  os << "target " << target << " <- donor " << donor << " (" << moved << " edges";
  if (excluded_h) os << ", e'=" << to_string(*excluded_h);
  if (e1) os << ", e1=" << to_string(*e1);
  if (e2) os << ", e2=" << to_string(*e2);
  os << ")";
  if (second_donor >= 0) {
    os << " + donor " << second_donor << " (" << moved_second << " edges, blocking {";
    for (std::size_t i = 0; i < blocking.size(); ++i) os << (i ? "," : "") << to_string(blocking[i]);
    os << "})";
  }
  return os.str();
}

namespace {

std::string dump_log(const DenseState& st) {
  std::ostringstream os;
  os << "n=" << st.n << " t=" << st.t << " r=" << st.r << " s=" << st.s << "; sizes:";
  for (int i = 0; i < st.p.class_count(); ++i) os << ' ' << st.p.at(i).size();
  for (const auto& m : st.log) os << "\n  " << m.describe();
  return os.str();
}

// Edges of `cls` incident with x, ascending.
std::vector<Edge> edges_at(const EdgeSet& cls, Vertex x) {
  std::vector<Edge> out;
  for (const Edge& e : cls)
    if (e.touches(x)) out.push_back(e);
  return out;
}

// Edge of the donor path leaving `from` in the direction of `to` (same path).
Edge edge_toward(const LinearForestView& view, Vertex from, Vertex to) {
  const auto& path = view.paths[static_cast<std::size_t>(view.path_of[static_cast<std::size_t>(from)])];
  const auto pf = std::find(path.begin(), path.end(), from) - path.begin();
  const auto pt = std::find(path.begin(), path.end(), to) - path.begin();
  const auto step = pt > pf ? 1 : -1;
  return Edge(from, path[static_cast<std::size_t>(pf + step)]);
}

// Blockers e1 (at a) and e2 (at b) so that in donor minus {e1, e2} a and b
// lie in different components and each has degree <= 1.
std::pair<std::optional<Edge>, std::optional<Edge>> choose_blockers(const EdgeSet& donor, int order,
                                                                    Vertex a, Vertex b) {
  const LinearForestView view = analyze_linear_forest(donor, order);
  std::optional<Edge> e1, e2;
  const int pa = view.path_of[static_cast<std::size_t>(a)];
  const int pb = view.path_of[static_cast<std::size_t>(b)];
  if (pa >= 0 && pa == pb) {
    e1 = edge_toward(view, a, b);
    e2 = edge_toward(view, b, a);
  } else {
    if (view.degree[static_cast<std::size_t>(a)] == 2) e1 = edges_at(donor, a).front();
    if (view.degree[static_cast<std::size_t>(b)] == 2) e2 = edges_at(donor, b).front();
  }
  return {e1, e2};
}

bool keeps_linear_forest(const LinearForestView& view, const Edge& e) {
  const auto u = static_cast<std::size_t>(e.u);
  const auto v = static_cast<std::size_t>(e.v);
  if (view.degree[u] >= 2 || view.degree[v] >= 2) return false;
  return !(view.degree[u] == 1 && view.degree[v] == 1 && view.partner[u] == e.v);
}

// Moves `count` edges of donor \ excluded into target one at a time, each
// keeping the target a linear forest. Prefers edges avoiding the target's
// current vertices, then the lowest edge.
int transfer(DenseState& st, int target, int donor, int count, const EdgeSet& excluded,
             const std::string& stage) {
  for (int moved = 0; moved < count; ++moved) {
    const LinearForestView view = analyze_linear_forest(st.p.at(target), st.r);
    std::optional<Edge> fallback;
    std::optional<Edge> pick;
    for (const Edge& e : st.p.at(donor)) {
      if (excluded.contains(e) || !keeps_linear_forest(view, e)) continue;
      const bool touches = view.degree[static_cast<std::size_t>(e.u)] > 0 ||
                           view.degree[static_cast<std::size_t>(e.v)] > 0;
      if (!touches) {
        pick = e;
        break;
      }
      if (!fallback) fallback = e;
    }
    if (!pick) pick = fallback;
    if (!pick)
      throw InvariantViolation(stage, "donor " + std::to_string(donor) + " cannot supply edge " +
                                          std::to_string(moved + 1) + "/" + std::to_string(count) +
                                          " to class " + std::to_string(target) + "\n" + dump_log(st));
    st.p.move(*pick, donor, target);
  }
  return count;
}

// Blocking set in the second donor: every edge at an inner vertex of the
// target, plus at most one edge per target endpoint so that each target
// path's two ends are separated and have degree <= 1.
EdgeSet blocking_set(const EdgeSet& donor, const LinearForestView& target, int order) {
  EdgeSet block;
  for (Vertex v : target.interior)
    for (const Edge& e : edges_at(donor, v)) block.insert(e);

  auto remaining = [&]() {
    EdgeSet rest;
    for (const Edge& e : donor)
      if (!block.contains(e)) rest.insert(e);
    return rest;
  };
  for (const auto& path : target.paths) {
    const Vertex z = path.front();
    const Vertex w = path.back();
    const EdgeSet rest = remaining();
    const LinearForestView rv = analyze_linear_forest(rest, order);
    const int pz = rv.path_of[static_cast<std::size_t>(z)];
    if (pz >= 0 && pz == rv.path_of[static_cast<std::size_t>(w)]) {
      block.insert(edge_toward(rv, z, w));
      block.insert(edge_toward(rv, w, z));
    }
  }
  for (Vertex z : target.endpoints) {
    const EdgeSet rest = remaining();
    const auto at = edges_at(rest, z);
    if (at.size() == 2) block.insert(at.front());
  }
  return block;
}

void require(bool ok, const DenseState& st, const std::string& stage, const std::string& what) {
  if (!ok) throw InvariantViolation(stage, what + "\n" + dump_log(st));
}

std::size_t sz(const DenseState& st, int i) { return st.p.at(i).size(); }

}  // namespace

RecursiveCall choose_subgraph(const Graph& h_prime, int s) {
  const int t = static_cast<int>(h_prime.edges.size());
  if (s < 1 || s > t) throw PreconditionViolation("choose_subgraph needs 1 <= s <= t");
  RecursiveCall call;
  call.s = s;
  for (const auto& comp : h_prime.edge_components()) {
    const int need = s - static_cast<int>(call.edge_indices.size());
    if (need == 0) break;
    if (static_cast<int>(comp.size()) <= need) {
      call.edge_indices.insert(call.edge_indices.end(), comp.begin(), comp.end());
      continue;
    }
    // Connected piece: edge-BFS from the component's first edge.
    std::vector<char> taken(h_prime.edges.size(), 0);
    std::queue<int> q;
    q.push(comp.front());
    taken[static_cast<std::size_t>(comp.front())] = 1;
    int got = 0;
    while (!q.empty() && got < need) {
      const int cur = q.front();
      q.pop();
      call.edge_indices.push_back(cur);
      ++got;
      const Edge& ce = h_prime.edges[static_cast<std::size_t>(cur)];
      for (int other : comp) {
        const Edge& oe = h_prime.edges[static_cast<std::size_t>(other)];
        if (!taken[static_cast<std::size_t>(other)] &&
            (oe.touches(ce.u) || oe.touches(ce.v))) {
          taken[static_cast<std::size_t>(other)] = 1;
          q.push(other);
        }
      }
    }
  }
  std::sort(call.edge_indices.begin(), call.edge_indices.end());

  std::vector<Vertex> compact(static_cast<std::size_t>(h_prime.vertex_count), -1);
  auto id_of = [&](Vertex x) {
    auto& c = compact[static_cast<std::size_t>(x)];
    if (c < 0) {
      c = static_cast<Vertex>(call.to_parent.size());
      call.to_parent.push_back(x);
    }
    return c;
  };
  for (int idx : call.edge_indices) {
    const Edge& e = h_prime.edges[static_cast<std::size_t>(idx)];
    const Vertex a = id_of(e.u);
    const Vertex b = id_of(e.v);
    call.h_doubleprime.edges.emplace_back(a, b);
  }
  call.h_doubleprime.vertex_count = static_cast<int>(call.to_parent.size());
  return call;
}

DenseState contract_to_kr(const Solution& hcd, const RecursiveCall& call, const Graph& h_prime,
                          int n) {
  const int s = call.s;
  const int r = h_prime.vertex_count;
  const int big = 2 * s + 1;
  const int drop = r % 2 == 0 ? 1 : 2;
  const std::string stage = "contract_to_Kr";
  if (hcd.hcd.order() != big || hcd.hcd.class_count() != s)
    throw InvariantViolation(stage, "recursive HCD has wrong shape");
  if (big - drop != r) throw InvariantViolation(stage, "order arithmetic: 2s+1-drop != r");
  const int inner = call.h_doubleprime.vertex_count;
  if (big - drop < inner) throw InvariantViolation(stage, "no removable vertex outside H''");

  std::vector<char> in_sub(static_cast<std::size_t>(r), 0);
  for (Vertex x : call.to_parent) in_sub[static_cast<std::size_t>(x)] = 1;
  std::vector<Vertex> rest;
  for (Vertex x = 0; x < r; ++x)
    if (!in_sub[static_cast<std::size_t>(x)]) rest.push_back(x);

  // Highest-numbered vertices are removed; they lie outside H''.
  std::vector<Vertex> map(static_cast<std::size_t>(big), -1);
  for (Vertex c = 0; c < inner; ++c) map[static_cast<std::size_t>(c)] = call.to_parent[static_cast<std::size_t>(c)];
  for (Vertex c = inner; c < big - drop; ++c)
    map[static_cast<std::size_t>(c)] = rest[static_cast<std::size_t>(c - inner)];

  DenseState st;
  st.n = n;
  st.t = static_cast<int>(h_prime.edges.size());
  st.r = r;
  st.s = s;
  st.p = Decomposition(r, n);
  st.h_edge.assign(static_cast<std::size_t>(n), std::nullopt);
  for (int i = 0; i < s; ++i) {
    for (const Edge& e : hcd.hcd.at(i)) {
      const Vertex a = map[static_cast<std::size_t>(e.u)];
      const Vertex b = map[static_cast<std::size_t>(e.v)];
      if (a >= 0 && b >= 0) st.p.add(i, Edge(a, b));
    }
    const std::size_t size = st.p.at(i).size();
    const bool ok = r % 2 == 0 ? size == static_cast<std::size_t>(r - 1)
                               : size + 2 >= static_cast<std::size_t>(r);
    if (!ok) throw InvariantViolation(stage, "class " + std::to_string(i) + " has " +
                                                 std::to_string(size) + " edges after contraction");
  }
  for (std::size_t j = 0; j < call.edge_indices.size(); ++j) {
    const int cls = hcd.assignment[j];
    const Edge e = h_prime.edges[static_cast<std::size_t>(call.edge_indices[j])];
    if (!st.p.at(cls).contains(e)) throw InvariantViolation(stage, "H'' edge lost in contraction");
    st.h_edge[static_cast<std::size_t>(cls)] = e;
  }
  st.p.check_complete(stage);
  return st;
}

void split_new_singletons(DenseState& st, const Graph& h_prime, const RecursiveCall& call) {
  const std::string stage = "split_new_singletons";
  std::vector<char> chosen(h_prime.edges.size(), 0);
  for (int idx : call.edge_indices) chosen[static_cast<std::size_t>(idx)] = 1;
  int next = st.s;
  for (std::size_t idx = 0; idx < h_prime.edges.size(); ++idx) {
    if (chosen[idx]) continue;
    const Edge& e = h_prime.edges[idx];
    const auto cls = st.p.class_of(e);
    if (!cls || *cls >= st.s) throw InvariantViolation(stage, "extra edge not in classes [0, s)");
    st.p.move(e, *cls, next);
    st.h_edge[static_cast<std::size_t>(next)] = e;
    ++next;
  }
  if (next != st.t) throw InvariantViolation(stage, "expected t - s new singletons");

  std::vector<int> order(static_cast<std::size_t>(st.s));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return st.p.at(a).size() > st.p.at(b).size(); });
  std::vector<EdgeSet> classes;
  std::vector<std::optional<Edge>> holders;
  for (int i : order) {
    classes.push_back(st.p.at(i));
    holders.push_back(st.h_edge[static_cast<std::size_t>(i)]);
  }
  for (int i = 0; i < st.s; ++i) {
    st.p.at(i) = std::move(classes[static_cast<std::size_t>(i)]);
    st.h_edge[static_cast<std::size_t>(i)] = holders[static_cast<std::size_t>(i)];
  }
}

void case1_rebalance(DenseState& st) {
  const std::string stage = "case1";
  const int n = st.n, t = st.t, r = st.r, s = st.s;
  require(n + 1 <= r && 3 * r <= 4 * n - 1, st, stage, "case bounds fail");
  // The counting chain is contradicted iff f_n(r) > 0.
  const long f = 2L * (r - n + 1) * (4L * n - 3L * r) - 2L * n + r;
  require(f > 0, st, stage, "feasibility chain f_n(r) = " + std::to_string(f) + " <= 0");
  require(n - s <= s, st, stage, "donor range overlaps targets");
  require(static_cast<long>(sz(st, n - s - 1)) >= 4L * r - 4L * n - 1, st, stage,
          "donor bound |P_{n-s}| >= 4r-4n-1 fails");

  for (int target = s; target < t; ++target) {
    const int donor = target - s;
    const Edge ab = *st.h_edge[static_cast<std::size_t>(target)];
    const auto eprime = st.h_edge[static_cast<std::size_t>(donor)];
    require(eprime.has_value(), st, stage, "donor without H'' edge");
    MoveRecipe rec;
    rec.target = target;
    rec.donor = donor;
    rec.excluded_h = eprime;
    std::tie(rec.e1, rec.e2) = choose_blockers(st.p.at(donor), r, ab.u, ab.v);
    EdgeSet excluded{*eprime};
    if (rec.e1) excluded.insert(*rec.e1);
    if (rec.e2) excluded.insert(*rec.e2);
    rec.moved = 2 * r - 2 * n - 2;
    st.log.push_back(rec);
    transfer(st, target, donor, rec.moved, excluded, stage);
    require(static_cast<long>(sz(st, target)) == 2L * r - 2L * n - 1, st, stage, "target size");
    require(static_cast<long>(sz(st, donor)) >= 2L * r - 2L * n + 1, st, stage, "donor residue");
  }
  for (int target = t; target < n; ++target) {
    const int donor = target - s;
    const auto eprime = st.h_edge[static_cast<std::size_t>(donor)];
    require(eprime.has_value(), st, stage, "donor without H'' edge");
    MoveRecipe rec;
    rec.target = target;
    rec.donor = donor;
    rec.excluded_h = eprime;
    rec.moved = 2 * r - 2 * n;
    st.log.push_back(rec);
    transfer(st, target, donor, rec.moved, EdgeSet{*eprime}, stage);
    require(static_cast<long>(sz(st, donor)) >= 2L * r - 2L * n - 1, st, stage, "donor residue");
  }
}

void case2_rebalance(DenseState& st) {
  const std::string stage = "case2";
  const int n = st.n, t = st.t, r = st.r, s = st.s;
  const auto [eps, delta] = case_params(n, t, r);
  require(3 * r >= 4 * n && 2 * r <= 3 * t - 1, st, stage, "case bounds fail");
  const long f = static_cast<long>(3 * r - 4 * n + 2) * (3L * n - 2L * r - delta + eps) - 2L * t +
                 r + delta;
  require(f > 0, st, stage, "feasibility chain f_{n,t}(r) = " + std::to_string(f) + " <= 0");
  require(2 * n - 2 * s <= s, st, stage, "donor range overlaps targets");
  require(static_cast<long>(sz(st, 2 * n - 2 * s - 1)) >= 3L * r - 3L * n - eps, st, stage,
          "donor bound |P_{2n-2s}| >= 3r-3n-eps fails");

  auto second_move = [&](MoveRecipe& rec, int target, int donor2, int count) {
    const auto eprime = st.h_edge[static_cast<std::size_t>(donor2)];
    require(eprime.has_value(), st, stage, "second donor without H'' edge");
    const LinearForestView tv = analyze_linear_forest(st.p.at(target), r);
    EdgeSet block = blocking_set(st.p.at(donor2), tv, r);
    require(block.size() <= 2 * st.p.at(target).size(), st, stage, "blocking set too large");
    rec.second_donor = donor2;
    rec.second_excluded_h = eprime;
    rec.blocking.assign(block.begin(), block.end());
    rec.moved_second = count;
    block.insert(*eprime);
    transfer(st, target, donor2, count, block, stage);
  };

  for (int target = s; target < t; ++target) {
    const int donor = target - s;
    const int donor2 = target - 2 * s + t;
    const Edge ab = *st.h_edge[static_cast<std::size_t>(target)];
    const auto eprime = st.h_edge[static_cast<std::size_t>(donor)];
    require(eprime.has_value(), st, stage, "donor without H'' edge");
    MoveRecipe rec;
    rec.target = target;
    rec.donor = donor;
    rec.excluded_h = eprime;
    std::tie(rec.e1, rec.e2) = choose_blockers(st.p.at(donor), r, ab.u, ab.v);
    EdgeSet excluded{*eprime};
    if (rec.e1) excluded.insert(*rec.e1);
    if (rec.e2) excluded.insert(*rec.e2);
    rec.moved = r - n - 2;
    transfer(st, target, donor, rec.moved, excluded, stage);
    second_move(rec, target, donor2, r - n);
    st.log.push_back(rec);
    require(static_cast<long>(sz(st, target)) == 2L * r - 2L * n - 1, st, stage, "target size");
  }
  if (t < n) require(eps == 0, st, stage, "epsilon must vanish when t < n");
  for (int target = t; target < n; ++target) {
    const int donor = target + t - 2 * s;
    const int donor2 = target + n - 2 * s;
    const auto eprime = st.h_edge[static_cast<std::size_t>(donor)];
    require(eprime.has_value(), st, stage, "donor without H'' edge");
    MoveRecipe rec;
    rec.target = target;
    rec.donor = donor;
    rec.excluded_h = eprime;
    rec.moved = r - n - 1;
    transfer(st, target, donor, rec.moved, EdgeSet{*eprime}, stage);
    second_move(rec, target, donor2, r - n + 1);
    st.log.push_back(rec);
    require(static_cast<long>(sz(st, target)) == 2L * r - 2L * n, st, stage, "target size");
  }
  for (int j = 0; j < 2 * n - 2 * s; ++j)
    require(static_cast<long>(sz(st, j)) >= 2L * r - 2L * n - 1, st, stage, "donor residue");
}

DenseResult direct_small_r(const DenseInstance& inst) {
  const int n = inst.n, t = inst.t(), r = inst.r();
  if (r > n) throw PreconditionViolation("direct_small_r needs r <= n");
  DenseState st;
  st.n = n;
  st.t = t;
  st.r = r;
  st.p = Decomposition(r, n);
  st.h_edge.assign(static_cast<std::size_t>(n), std::nullopt);
  for (int i = 0; i < t; ++i) {
    st.p.add(i, inst.h_prime.edges[static_cast<std::size_t>(i)]);
    st.h_edge[static_cast<std::size_t>(i)] = inst.h_prime.edges[static_cast<std::size_t>(i)];
  }
  const EdgeSet h(inst.h_prime.edges.begin(), inst.h_prime.edges.end());

  // Matchings of a round-robin 1-factorisation, minus H', one per class.
  int cls = 0;
  for (const auto& round : round_robin_matchings(r)) {
    std::vector<Edge> matching;
    for (const Edge& e : round)
      if (!h.contains(e)) matching.push_back(e);
    if (matching.empty()) continue;
    if (cls >= n) throw InvariantViolation("direct_small_r", "more matchings than classes");
    for (const Edge& e : matching) st.p.add(cls, e);
    ++cls;
  }
  check_dense_postconditions(st, "direct_small_r");

  DenseResult out;
  out.p = st.p;
  out.branch = DenseBranch::SmallR;
  out.class_of_edge.resize(static_cast<std::size_t>(t));
  std::iota(out.class_of_edge.begin(), out.class_of_edge.end(), 0);
  out.trace.push_back("embed:small_r(r=" + std::to_string(r) + ")");
  return out;
}

void check_dense_postconditions(const DenseState& st, const std::string& stage) {
  st.p.check_complete(stage);
  EdgeSet h;
  for (const auto& e : st.h_edge)
    if (e) h.insert(*e);
  if (static_cast<int>(h.size()) != st.t)
    throw InvariantViolation(stage, "rainbow prefix does not hold t distinct H' edges");
  for (int i = 0; i < st.n; ++i) {
    const EdgeSet& cls = st.p.at(i);
    if (!is_linear_forest(cls, st.r))
      throw InvariantViolation(stage, "class " + std::to_string(i) + " is not a linear forest");
    int held = 0;
    for (const Edge& e : cls) held += h.contains(e) ? 1 : 0;
    const auto& mine = st.h_edge[static_cast<std::size_t>(i)];
    if (i < st.t) {
      if (!mine || !cls.contains(*mine) || held != 1)
        throw InvariantViolation(stage, "class " + std::to_string(i) + " breaks the rainbow prefix");
    } else if (held != 0 || mine) {
      throw InvariantViolation(stage, "class " + std::to_string(i) + " holds an H' edge");
    }
    const long bound = i < st.t ? 2L * st.r - 2L * st.n - 1 : 2L * st.r - 2L * st.n;
    if (static_cast<long>(cls.size()) < bound)
      throw InvariantViolation(stage, "class " + std::to_string(i) + " has " +
                                          std::to_string(cls.size()) + " < " + std::to_string(bound) +
                                          " edges");
  }
}

DenseResult embed_dense(const DenseInstance& inst, const RecursiveSolver& recurse) {
  const int n = inst.n, t = inst.t(), r = inst.r();
  if (t == 0) throw PreconditionViolation("embed_dense: H' is empty");
  if (t > n) throw PreconditionViolation("embed_dense: t > n");
  inst.h_prime.validate();
  for (const auto& comp : inst.h_prime.edge_components())
    if (comp.size() < 2) throw PreconditionViolation("embed_dense: H' has a K2 component");
  for (int d : inst.h_prime.degrees())
    if (d == 0) throw PreconditionViolation("embed_dense: H' has an isolated vertex");

  const DenseBranch branch = dense_branch(n, r);
  if (branch == DenseBranch::SmallR) return direct_small_r(inst);

  if (2 * r > 3 * t - 1)
    throw InvariantViolation("embed_dense", "r > (3t-1)/2; H must not be a linear forest");
  const int s = (r + 1) / 2;
  if (s >= n) throw InvariantViolation("embed_dense", "recursive call would not shrink n");
  const RecursiveCall call = choose_subgraph(inst.h_prime, s);
  const Solution sub = recurse(call.h_doubleprime, s);
  check_solution(call.h_doubleprime, s, sub, "embed_dense.recursion");

  DenseState st = contract_to_kr(sub, call, inst.h_prime, n);
  split_new_singletons(st, inst.h_prime, call);
  if (branch == DenseBranch::Case1) case1_rebalance(st);
  else case2_rebalance(st);
  check_dense_postconditions(st, std::string("embed_dense.") + to_string(branch));

  DenseResult out;
  out.p = st.p;
  out.branch = branch;
  out.log = st.log;
  out.class_of_edge.resize(static_cast<std::size_t>(t));
  for (int j = 0; j < t; ++j) {
    const Edge& e = inst.h_prime.edges[static_cast<std::size_t>(j)];
    for (int i = 0; i < t; ++i)
      if (st.h_edge[static_cast<std::size_t>(i)] == e) out.class_of_edge[static_cast<std::size_t>(j)] = i;
  }
  std::ostringstream tag;
  tag << "embed:" << to_string(branch) << "(r=" << r << ",t=" << t << ",s=" << s << ")";
  out.trace.push_back(tag.str());
  out.trace.push_back("recurse(n=" + std::to_string(s) + "){");
  out.trace.insert(out.trace.end(), sub.trace.begin(), sub.trace.end());
  out.trace.push_back("}");
  return out;
}

}  // namespace rainbow
