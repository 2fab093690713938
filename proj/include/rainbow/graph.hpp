#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "rainbow/errors.hpp"

namespace rainbow {

using Vertex = int;

// Unordered pair of distinct vertices, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b);

  bool touches(Vertex x) const noexcept { return u == x || v == x; }
  Vertex other(Vertex x) const noexcept { return x == u ? v : u; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

std::string to_string(const Edge& e);

using EdgeSet = std::set<Edge>;

// A simple graph on vertices [0, vertex_count).
struct Graph {
  int vertex_count = 0;
  std::vector<Edge> edges;

  // Throws PreconditionViolation on duplicate edges or out-of-range endpoints.
  void validate() const;
  std::vector<int> degrees() const;
  // Connected components over edges only; each entry lists edge indices.
  std::vector<std::vector<int>> edge_components() const;
  bool is_linear_forest() const;
};

// Edge set of K_m partitioned into n labelled classes.
class Decomposition {
 public:
  Decomposition() = default;
  Decomposition(int order, int class_count);

  int order() const noexcept { return order_; }
  int class_count() const noexcept { return static_cast<int>(classes_.size()); }

  const EdgeSet& at(int i) const { return classes_.at(static_cast<std::size_t>(i)); }
  EdgeSet& at(int i) { return classes_.at(static_cast<std::size_t>(i)); }
  const std::vector<EdgeSet>& classes() const noexcept { return classes_; }

  void add(int cls, const Edge& e);
  void remove(int cls, const Edge& e);
  void move(const Edge& e, int from, int to);
  void swap_classes(int a, int b);
  // Grows the host to K_{new_order}; new vertices start with no edges.
  void set_order(int new_order);

  // Class holding e, or nullopt.
  std::optional<int> class_of(const Edge& e) const;
  std::size_t edge_count() const;

  // Throws InvariantViolation(stage) on overlap or out-of-range endpoints.
  void check_disjoint(const std::string& stage) const;
  // Disjointness plus union == E(K_order).
  void check_complete(const std::string& stage) const;
  bool is_complete() const;

  friend bool operator==(const Decomposition&, const Decomposition&) = default;

 private:
  int order_ = 0;
  std::vector<EdgeSet> classes_;
};

// Path / isolated-vertex structure of one class inside K_order.
struct LinearForestView {
  std::vector<std::vector<Vertex>> paths;  // each has >= 2 vertices
  std::vector<Vertex> isolated;
  std::vector<Vertex> endpoints;
  std::vector<Vertex> interior;
  // Per host vertex: 0, 1 or 2.
  std::vector<int> degree;
  // Per host vertex: index into `paths`, or -1 when isolated.
  std::vector<int> path_of;
  // For a path endpoint, the opposite end of its path; -1 otherwise.
  std::vector<Vertex> partner;

  bool is_isolated(Vertex x) const { return degree[static_cast<std::size_t>(x)] == 0; }
  bool is_endpoint(Vertex x) const { return degree[static_cast<std::size_t>(x)] == 1; }
  bool same_path_ends(Vertex a, Vertex b) const {
    return is_endpoint(a) && partner[static_cast<std::size_t>(a)] == b;
  }
};

// Throws NotLinearForest when a vertex has degree >= 3 or a cycle exists.
LinearForestView analyze_linear_forest(const EdgeSet& class_edges, int order);
bool is_linear_forest(const EdgeSet& class_edges, int order);

bool is_hamiltonian_cycle(const EdgeSet& class_edges, int order);

// Builds an EdgeSet, rejecting duplicates and loops.
EdgeSet make_edge_set(std::span<const Edge> edges);

// Hub vertex 2n with the zig-zag path on 0..2n-1 rotated n times.
Decomposition walecki(int n);

// Round-robin 1-factorisation of K_{r'} (r' = r rounded up to even),
// restricted to [0, r). Returns r' - 1 matchings.
std::vector<std::vector<Edge>> round_robin_matchings(int r);

// Restriction of every class to vertices [0, m).
Decomposition truncate(const Decomposition& d, int m);

// Applies a vertex relabelling: vertex x becomes perm[x].
Decomposition relabel(const Decomposition& d, std::span<const Vertex> perm);

}  // namespace rainbow
