#include "rainbow/hilton_extend.hpp"

#include <algorithm>
#include <limits>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/push_relabel_max_flow.hpp>

namespace rainbow {

namespace {

// Feasible flow with lower bounds via the usual circulation reduction.
class LowerBoundFlow {
 public:
  explicit LowerBoundFlow(int nodes) : nodes_(nodes) {}

  int add_arc(int from, int to, long lo, long hi) {
    arcs_.push_back({from, to, lo, hi});
    return static_cast<int>(arcs_.size()) - 1;
  }

  bool solve() {
    using Traits = boost::adjacency_list_traits<boost::vecS, boost::vecS, boost::directedS>;
    using G = boost::adjacency_list<
        boost::vecS, boost::vecS, boost::directedS, boost::no_property,
        boost::property<boost::edge_capacity_t, long,
                        boost::property<boost::edge_residual_capacity_t, long,
                                        boost::property<boost::edge_reverse_t, Traits::edge_descriptor>>>>;
    const int super_s = nodes_;
    const int super_t = nodes_ + 1;
    G g(static_cast<std::size_t>(nodes_ + 2));
    auto cap = boost::get(boost::edge_capacity, g);
    auto rev = boost::get(boost::edge_reverse, g);
    auto res = boost::get(boost::edge_residual_capacity, g);
    auto link = [&](int u, int v, long c) {
      const auto e = boost::add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v), g).first;
      const auto r = boost::add_edge(static_cast<std::size_t>(v), static_cast<std::size_t>(u), g).first;
      cap[e] = c;
      cap[r] = 0;
      rev[e] = r;
      rev[r] = e;
      return e;
    };
    std::vector<long> excess(static_cast<std::size_t>(nodes_), 0);
    std::vector<Traits::edge_descriptor> handles;
    for (const Arc& a : arcs_) {
      if (a.lo > a.hi) return false;
      handles.push_back(link(a.from, a.to, a.hi - a.lo));
      excess[static_cast<std::size_t>(a.to)] += a.lo;
      excess[static_cast<std::size_t>(a.from)] -= a.lo;
    }
    long demand = 0;
    for (int v = 0; v < nodes_; ++v) {
      const long x = excess[static_cast<std::size_t>(v)];
      if (x > 0) {
        link(super_s, v, x);
        demand += x;
      } else if (x < 0) {
        link(v, super_t, -x);
      }
    }
    const long got = boost::push_relabel_max_flow(g, static_cast<std::size_t>(super_s),
                                                  static_cast<std::size_t>(super_t));
    if (got != demand) return false;
    flow_.clear();
    for (std::size_t i = 0; i < arcs_.size(); ++i)
      flow_.push_back(arcs_[i].lo + cap[handles[i]] - res[handles[i]]);
    return true;
  }

  long flow(int arc) const { return flow_[static_cast<std::size_t>(arc)]; }

 private:
  struct Arc {
    int from, to;
    long lo, hi;
  };
  int nodes_;
  std::vector<Arc> arcs_;
  std::vector<long> flow_;
};

long size_floor(int m, int n) { return 2L * m - 2L * n - 1; }

}  // namespace

bool completion_condition_holds(const Decomposition& q, int n) {
  try {
    check_completion_condition(q, n, "completion");
    return true;
  } catch (const PreconditionViolation&) {
    return false;
  }
}

void check_completion_condition(const Decomposition& q, int n, const std::string& stage) {
  const int m = q.order();
  if (q.class_count() != n) throw PreconditionViolation(stage + ": expected " + std::to_string(n) + " classes");
  if (m < 1 || m > 2 * n + 1) throw PreconditionViolation(stage + ": order out of range");
  if (!q.is_complete()) throw PreconditionViolation(stage + ": classes do not partition E(K_m)");
  if (m == 2 * n + 1) {
    for (int i = 0; i < n; ++i)
      if (!is_hamiltonian_cycle(q.at(i), m))
        throw PreconditionViolation(stage + ": class " + std::to_string(i) + " is not a Hamiltonian cycle");
    return;
  }
  for (int i = 0; i < n; ++i) {
    if (!is_linear_forest(q.at(i), m))
      throw PreconditionViolation(stage + ": class " + std::to_string(i) + " is not a linear forest");
    if (static_cast<long>(q.at(i).size()) < size_floor(m, n))
      throw PreconditionViolation(stage + ": class " + std::to_string(i) + " has " +
                                  std::to_string(q.at(i).size()) + " < 2m-2n-1 edges");
  }
}

InsertionPlan plan_insertion(const Decomposition& q, int n) {
  const int m = q.order();
  if (m >= 2 * n) throw PreconditionViolation("plan_insertion needs m < 2n");
  std::vector<LinearForestView> views;
  for (int i = 0; i < n; ++i) views.push_back(analyze_linear_forest(q.at(i), m));

  // Nodes: 0 source, 1 sink, classes, path gadgets, old vertices.
  const int source = 0, sink = 1, class_base = 2;
  std::vector<int> gadget_base(static_cast<std::size_t>(n));
  int next = class_base + n;
  for (int i = 0; i < n; ++i) {
    gadget_base[static_cast<std::size_t>(i)] = next;
    next += static_cast<int>(views[static_cast<std::size_t>(i)].paths.size());
  }
  const int vertex_base = next;
  LowerBoundFlow flow(vertex_base + m);

  struct Choice {
    int arc, cls;
    Vertex v;
  };
  std::vector<Choice> choices;
  for (int i = 0; i < n; ++i) {
    const auto& view = views[static_cast<std::size_t>(i)];
    const long need = std::max(0L, size_floor(m + 1, n) - static_cast<long>(q.at(i).size()));
    const int node = class_base + i;
    flow.add_arc(source, node, need, 2);
    for (std::size_t p = 0; p < view.paths.size(); ++p) {
      const int gadget = gadget_base[static_cast<std::size_t>(i)] + static_cast<int>(p);
      flow.add_arc(node, gadget, 0, 1);
      for (Vertex end : {view.paths[p].front(), view.paths[p].back()})
        choices.push_back({flow.add_arc(gadget, vertex_base + end, 0, 1), i, end});
    }
    for (Vertex v : view.isolated) choices.push_back({flow.add_arc(node, vertex_base + v, 0, 1), i, v});
  }
  for (Vertex v = 0; v < m; ++v) flow.add_arc(vertex_base + v, sink, 1, 1);
  flow.add_arc(sink, source, 0, std::numeric_limits<int>::max());

  if (!flow.solve())
    throw InternalInfeasible("no insertion plan for vertex " + std::to_string(m) + " (n=" +
                             std::to_string(n) + ")");
  InsertionPlan plan;
  plan.new_vertex = m;
  plan.class_of_vertex.assign(static_cast<std::size_t>(m), -1);
  plan.attachments.resize(static_cast<std::size_t>(n));
  for (const Choice& c : choices) {
    if (flow.flow(c.arc) == 0) continue;
    plan.class_of_vertex[static_cast<std::size_t>(c.v)] = c.cls;
    plan.attachments[static_cast<std::size_t>(c.cls)].push_back(c.v);
  }
  for (auto& a : plan.attachments) std::sort(a.begin(), a.end());
  return plan;
}

Decomposition apply_plan(const Decomposition& q, const InsertionPlan& plan) {
  Decomposition out = q;
  out.set_order(q.order() + 1);
  for (std::size_t i = 0; i < plan.attachments.size(); ++i)
    for (Vertex v : plan.attachments[i]) out.add(static_cast<int>(i), Edge(plan.new_vertex, v));
  return out;
}

Decomposition single_vertex_step(const Decomposition& q, int n) {
  check_completion_condition(q, n, "single_vertex_step.pre");
  const InsertionPlan plan = plan_insertion(q, n);
  for (int c : plan.class_of_vertex)
    if (c < 0) throw InvariantViolation("single_vertex_step", "old vertex left unassigned");
  Decomposition out = apply_plan(q, plan);
  try {
    check_completion_condition(out, n, "single_vertex_step.post");
  } catch (const PreconditionViolation& e) {
    throw InvariantViolation("single_vertex_step", e.what());
  }
  return out;
}

Decomposition close_final_vertex(const Decomposition& q) {
  const int m = q.order();
  const int n = q.class_count();
  if (m != 2 * n) throw PreconditionViolation("close_final_vertex needs K_{2n}");
  Decomposition out = q;
  out.set_order(m + 1);
  for (int i = 0; i < n; ++i) {
    const EdgeSet& cls = q.at(i);
    if (static_cast<int>(cls.size()) != m - 1 || !is_linear_forest(cls, m))
      throw PreconditionViolation("close_final_vertex: class " + std::to_string(i) +
                                  " is not a Hamiltonian path");
    const LinearForestView view = analyze_linear_forest(cls, m);
    if (view.paths.size() != 1) throw PreconditionViolation("close_final_vertex: class is not spanning");
    out.add(i, Edge(m, view.paths.front().front()));
    out.add(i, Edge(m, view.paths.front().back()));
  }
  out.check_complete("close_final_vertex");
  for (int i = 0; i < n; ++i)
    if (!is_hamiltonian_cycle(out.at(i), m + 1))
      throw InvariantViolation("close_final_vertex", "class " + std::to_string(i) + " is not a cycle");
  return out;
}

Decomposition extend_to_hcd(const Decomposition& q, int n) {
  check_completion_condition(q, n, "extend_to_hcd");
  Decomposition cur = q;
  while (cur.order() < 2 * n) cur = single_vertex_step(cur, n);
  if (cur.order() == 2 * n) cur = close_final_vertex(cur);
  for (int i = 0; i < n; ++i)
    if (!q.at(i).empty() && !std::includes(cur.at(i).begin(), cur.at(i).end(), q.at(i).begin(), q.at(i).end()))
      throw InvariantViolation("extend_to_hcd", "a class lost an original edge");
  return cur;
}

}  // namespace rainbow
