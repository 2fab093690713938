#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rainbow/errors.hpp"

namespace rainbow {

struct BipartiteEdge {
  int x = 0;
  int y = 0;
  int id = 0;
};

// Bipartite multigraph with individually addressable parallel edges.
class BipartiteMultigraph {
 public:
  BipartiteMultigraph() = default;
  BipartiteMultigraph(int x_size, int y_size);

  int x_size() const noexcept { return x_size_; }
  int y_size() const noexcept { return y_size_; }
  const std::vector<BipartiteEdge>& edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  // Adds an edge with the next free id and returns the id.
  int add_edge(int x, int y);
  // Adds an edge with a caller-chosen id; ids must be unique.
  void add_edge(int x, int y, int id);

  bool has_edge(int id) const { return index_.contains(id); }
  const BipartiteEdge& edge(int id) const;

  // (x, y) -> edge ids in ascending order.
  std::map<std::pair<int, int>, std::vector<int>> bundles() const;

  // Subgraph on the given edge ids, same vertex sets.
  BipartiteMultigraph subgraph(const std::set<int>& ids) const;

  int x_degree(int x, const std::set<int>& ids) const;
  int y_degree(int y, const std::set<int>& ids) const;

 private:
  int x_size_ = 0;
  int y_size_ = 0;
  int next_id_ = 0;
  std::vector<BipartiteEdge> edges_;
  std::unordered_map<int, std::size_t> index_;
};

struct EdgeColoring {
  int k = 0;
  std::map<int, int> color;  // edge id -> color in [1, k]
};

// x-pairs: for each X vertex, disjoint 2-sets of incident edge ids.
struct Pairing {
  std::vector<std::vector<std::pair<int, int>>> pairs;

  explicit Pairing(int x_size = 0) : pairs(static_cast<std::size_t>(x_size)) {}
};

// Throws PreconditionViolation describing the first broken pairing rule.
void validate_pairing(const BipartiteMultigraph& g, const Pairing& pairing);

bool is_balanced(const BipartiteMultigraph& g, const EdgeColoring& coloring);

// sum_v sum_c deg_c(v)^2 + sum_bundles sum_c |C_c(u,v)|^2
std::int64_t coloring_potential(const BipartiteMultigraph& g, const EdgeColoring& coloring);

struct ColoringStats {
  int repairs = 0;
  std::vector<std::int64_t> potential;  // value before the first repair and after each one
};

// Balanced k-edge coloring by pairwise repair: recolour the two-colour
// subgraph of a violating pair with bundle pairs plus alternating Euler trails.
// A nonzero seed randomises the starting colouring.
EdgeColoring balanced_k_coloring(const BipartiteMultigraph& g, int k, std::uint64_t seed = 0,
                                 ColoringStats* stats = nullptr);

struct TwoColoring {
  std::set<int> first;
  std::set<int> second;
};

// Balanced 2-colouring splitting every x-pair. Requires even Y degrees.
TwoColoring paired_balanced_2_coloring(const BipartiteMultigraph& f, const Pairing& pairing);

// Alternating-path reduction: returns C with deg_C(y) = deg_A(y) for all y,
// deg_C(x0) = deg_A(x0) - 1 and deg_A(x) <= deg_C(x) <= eta elsewhere.
std::set<int> rebalance_drop_one(const BipartiteMultigraph& g, const std::set<int>& a,
                                 const std::set<int>& b, int x0, int eta);

}  // namespace rainbow
