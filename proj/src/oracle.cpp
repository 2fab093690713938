#include "rainbow/oracle.hpp"

#include <algorithm>
#include <functional>

namespace rainbow {

namespace {

// Classes grown as linear forests inside K_N until each is a Hamiltonian cycle.
class HcdSearch {
 public:
  HcdSearch(int n, long budget)
      : n_(n),
        big_(2 * n + 1),
        budget_(budget),
        owner_(static_cast<std::size_t>(big_), std::vector<int>(static_cast<std::size_t>(big_), -1)),
        adj_(static_cast<std::size_t>(n), std::vector<std::vector<Vertex>>(static_cast<std::size_t>(big_))),
        size_(static_cast<std::size_t>(n), 0),
        pinned_(static_cast<std::size_t>(n), 0) {}

  int order() const { return big_; }
  long nodes() const { return nodes_; }

  bool addable(int c, Vertex x, Vertex y) const {
    if (x == y || owner_[ux(x)][ux(y)] >= 0) return false;
    const auto& a = adj_[ux(c)];
    if (a[ux(x)].size() >= 2 || a[ux(y)].size() >= 2) return false;
    if (!a[ux(x)].empty() && far_end(c, x) == y) return size_[ux(c)] == big_ - 1;
    return true;
  }
  void add(int c, Vertex x, Vertex y) {
    owner_[ux(x)][ux(y)] = owner_[ux(y)][ux(x)] = c;
    adj_[ux(c)][ux(x)].push_back(y);
    adj_[ux(c)][ux(y)].push_back(x);
    ++size_[ux(c)];
  }
  void remove(int c, Vertex x, Vertex y) {
    owner_[ux(x)][ux(y)] = owner_[ux(y)][ux(x)] = -1;
    adj_[ux(c)][ux(x)].pop_back();
    adj_[ux(c)][ux(y)].pop_back();
    --size_[ux(c)];
  }
  void pin(int c) { pinned_[ux(c)] = 1; }
  void unpin(int c) { pinned_[ux(c)] = 0; }

  // Depth-first growth; on_found returns true to stop.
  bool grow(const std::function<bool(const Decomposition&)>& on_found) {
    if (++nodes_ > budget_) throw BudgetExceeded("oracle node budget exhausted");
    int c = 0;
    while (c < n_ && size_[ux(c)] == big_) ++c;
    if (c == n_) return on_found(snapshot());
    if (!feasible()) return false;
    Vertex x = 0;
    while (adj_[ux(c)][ux(x)].size() >= 2) ++x;

    if (!adj_[ux(c)][ux(x)].empty()) {
      for (Vertex y = 0; y < big_; ++y) {
        if (!addable(c, x, y)) continue;
        add(c, x, y);
        const bool stop = grow(on_found);
        remove(c, x, y);
        if (stop) return true;
      }
      return false;
    }
    // Both edges at x at once, as an unordered pair.
    bool fresh = true;
    for (int later = c; later < n_; ++later)
      if (size_[ux(later)] != 0 || pinned_[ux(later)]) fresh = false;
    for (Vertex y1 = 0; y1 < big_; ++y1) {
      if (!addable(c, x, y1)) continue;
      add(c, x, y1);
      for (Vertex y2 = y1 + 1; y2 < big_; ++y2) {
        if (!addable(c, x, y2)) continue;
        add(c, x, y2);
        const bool stop = grow(on_found);
        remove(c, x, y2);
        if (stop) {
          remove(c, x, y1);
          return true;
        }
      }
      remove(c, x, y1);
      // Interchangeable empty classes: the smallest free edge at x opens this one.
      if (fresh) break;
    }
    return false;
  }

  Decomposition snapshot() const {
    Decomposition d(big_, n_);
    for (Vertex a = 0; a < big_; ++a)
      for (Vertex b = a + 1; b < big_; ++b) d.add(owner_[ux(a)][ux(b)], Edge(a, b));
    return d;
  }

  int owner(const Edge& e) const { return owner_[ux(e.u)][ux(e.v)]; }

 private:
  static std::size_t ux(int v) { return static_cast<std::size_t>(v); }

  Vertex far_end(int c, Vertex from) const {
    const auto& a = adj_[ux(c)];
    Vertex prev = -1, cur = from;
    for (;;) {
      Vertex next = -1;
      for (Vertex y : a[ux(cur)])
        if (y != prev) next = y;
      if (next < 0) return cur;
      prev = cur;
      cur = next;
    }
  }

  // Each missing class-degree must still be coverable by free edges.
  bool feasible() const {
    for (int c = 0; c < n_; ++c) {
      if (size_[ux(c)] == big_) continue;
      const auto& a = adj_[ux(c)];
      for (Vertex v = 0; v < big_; ++v) {
        const int need = 2 - static_cast<int>(a[ux(v)].size());
        if (need == 0) continue;
        int free = 0;
        for (Vertex y = 0; y < big_ && free < need; ++y)
          if (y != v && owner_[ux(v)][ux(y)] < 0 && a[ux(y)].size() < 2) ++free;
        if (free < need) return false;
      }
    }
    return true;
  }

  int n_;
  int big_;
  long budget_;
  long nodes_ = 0;
  std::vector<std::vector<int>> owner_;
  std::vector<std::vector<std::vector<Vertex>>> adj_;
  std::vector<int> size_;
  std::vector<char> pinned_;
};

}  // namespace

OracleResult exhaustive_rainbow_hcd(const Graph& h, int n, const std::vector<std::optional<int>>& precoloring,
                                    const OracleOptions& opt) {
  if (n < 1) throw PreconditionViolation("oracle needs n >= 1");
  if (n > 5 && !opt.allow_large) throw PreconditionViolation("oracle is limited to n <= 5 without override");
  h.validate();
  if (h.vertex_count > 2 * n + 1) throw InfeasibleInput("H does not fit in K_{2n+1}");
  if (!precoloring.empty() && precoloring.size() != h.edges.size())
    throw PreconditionViolation("precoloring must list every H edge");

  HcdSearch search(n, opt.budget);
  OracleResult result;
  const std::size_t e = h.edges.size();
  std::vector<int> cls(e, -1);
  std::vector<char> holds_h(static_cast<std::size_t>(n), 0);

  for (std::size_t j = 0; j < e && !precoloring.empty(); ++j) {
    if (!precoloring[j]) continue;
    const int c = *precoloring[j];
    if (c < 0 || c >= n) throw PreconditionViolation("precolored class out of range");
    const Edge& he = h.edges[j];
    if (!search.addable(c, he.u, he.v)) return result;  // pinned classes already not linear forests
    search.add(c, he.u, he.v);
    search.pin(c);
    cls[j] = c;
    holds_h[static_cast<std::size_t>(c)] = 1;
  }

  auto on_found = [&](const Decomposition& d) {
    Solution sol;
    sol.hcd = d;
    for (const Edge& he : h.edges) sol.assignment.push_back(search.owner(he));
    sol.trace.push_back("oracle");
    result.solution = std::move(sol);
    result.outcome = OracleOutcome::Found;
    return true;
  };

  // Free H edges: classes without H edges are still empty and interchangeable,
  // so each free edge takes the first of them.
  std::function<bool(std::size_t)> place = [&](std::size_t j) -> bool {
    if (j == e) return search.grow(on_found);
    if (cls[j] >= 0) return place(j + 1);
    const Edge& he = h.edges[j];
    int c = 0;
    while (c < n && holds_h[static_cast<std::size_t>(c)]) ++c;
    if (c == n) return false;
    search.add(c, he.u, he.v);
    search.pin(c);
    holds_h[static_cast<std::size_t>(c)] = 1;
    cls[j] = c;
    const bool stop = place(j + 1);
    cls[j] = -1;
    holds_h[static_cast<std::size_t>(c)] = 0;
    search.remove(c, he.u, he.v);
    search.unpin(c);
    return stop;
  };
  try {
    // With a precoloring this is an extension question: unpinned H edges are
    // ordinary edges of the host.
    if (precoloring.empty()) place(0);
    else search.grow(on_found);
  } catch (const BudgetExceeded&) {
    result.nodes = search.nodes();
    throw;
  }
  result.nodes = search.nodes();
  return result;
}

std::vector<Decomposition> enumerate_hcds(int n) {
  if (n < 1 || n > 3) throw PreconditionViolation("enumerate_hcds supports 1 <= n <= 3");
  HcdSearch search(n, 100'000'000);
  std::vector<Decomposition> out;
  search.grow([&](const Decomposition& d) {
    out.push_back(d);
    return false;
  });
  return out;
}

std::uint64_t count_hcds_edgewise(int n) {
  if (n < 1 || n > 3) throw PreconditionViolation("count_hcds_edgewise supports 1 <= n <= 3");
  const int big = 2 * n + 1;
  std::vector<Edge> edges;
  for (Vertex a = 0; a < big; ++a)
    for (Vertex b = a + 1; b < big; ++b) edges.emplace_back(a, b);
  // Last edge index touching each vertex.
  std::vector<std::size_t> last(static_cast<std::size_t>(big), 0);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    last[static_cast<std::size_t>(edges[i].u)] = i;
    last[static_cast<std::size_t>(edges[i].v)] = i;
  }
  std::vector<std::vector<int>> deg(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(big), 0));
  std::vector<EdgeSet> cls(static_cast<std::size_t>(n));
  std::uint64_t count = 0;

  auto closes_early = [&](int c, const Edge& e) {
    EdgeSet trial = cls[static_cast<std::size_t>(c)];
    trial.insert(e);
    if (static_cast<int>(trial.size()) == big) return !is_hamiltonian_cycle(trial, big);
    return !is_linear_forest(trial, big);
  };
  std::function<void(std::size_t, int)> step = [&](std::size_t i, int opened) {
    if (i == edges.size()) {
      ++count;
      return;
    }
    const Edge& e = edges[i];
    for (int c = 0; c < std::min(opened + 1, n); ++c) {
      auto& d = deg[static_cast<std::size_t>(c)];
      if (d[static_cast<std::size_t>(e.u)] == 2 || d[static_cast<std::size_t>(e.v)] == 2) continue;
      if (closes_early(c, e)) continue;
      ++d[static_cast<std::size_t>(e.u)];
      ++d[static_cast<std::size_t>(e.v)];
      cls[static_cast<std::size_t>(c)].insert(e);
      bool ok = true;
      for (Vertex v : {e.u, e.v}) {
        if (last[static_cast<std::size_t>(v)] != i) continue;
        for (int q = 0; q < n; ++q)
          if (deg[static_cast<std::size_t>(q)][static_cast<std::size_t>(v)] != 2) ok = false;
      }
      if (ok) step(i + 1, std::max(opened, c + 1));
      cls[static_cast<std::size_t>(c)].erase(e);
      --d[static_cast<std::size_t>(e.u)];
      --d[static_cast<std::size_t>(e.v)];
    }
  };
  step(0, 0);
  return count;
}

}  // namespace rainbow
