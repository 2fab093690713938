#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "rainbow/coloring.hpp"
#include "rainbow/embed_dense.hpp"
#include "rainbow/graph.hpp"

namespace rainbow::testing {

// Component shapes for structured families.
enum class Shape { K2, P3, P4, Triangle, Star3 };

// Disjoint union of the shapes, in the given order, with vertices numbered
// consecutively so H' comes first when the K2s are listed last.
Graph family(const std::vector<Shape>& parts);
std::string describe(const std::vector<Shape>& parts);

// Step-by-step rerun of the main pipeline with every stage invariant
// re-asserted from outside. Violations are collected, never thrown.
struct StageAudit {
  int n = 0, t = 0, r = 0;
  DenseBranch branch = DenseBranch::SmallR;
  CaseParams params;
  long checks = 0;
  int extend_steps = 0;
  int fallback_steps = 0;
  int rejected_colours = 0;
  int insertions = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};
StageAudit audit_pipeline(const Graph& h, std::uint64_t seed = 0);

// Random bipartite multigraph with sides <= 8 and bundle multiplicity <= 4.
BipartiteMultigraph random_bipartite(std::mt19937_64& rng, int max_edges = 40);
// Same, then with one edge removed at every odd-degree Y vertex.
BipartiteMultigraph random_even_bipartite(std::mt19937_64& rng, int max_edges = 40);
// Random valid pairing on g (pairs that would break validity are skipped).
Pairing random_pairing(const BipartiteMultigraph& g, std::mt19937_64& rng);

// One accepted input of rebalance_drop_one.
struct ReductionInstance {
  BipartiteMultigraph g;
  std::set<int> a, b;
  int x0 = 0;
  int eta = 0;
};
std::optional<ReductionInstance> random_reduction_instance(std::mt19937_64& rng, int max_edges);
// The three degree postconditions.
bool reduction_post_holds(const ReductionInstance& in, const std::set<int>& c);
// Some subset of E(G) satisfying the postconditions, by exhaustion.
std::optional<std::set<int>> brute_force_reduction(const ReductionInstance& in);

// Balance at every vertex and bundle, counted directly.
bool balanced_by_count(const BipartiteMultigraph& g, const std::map<int, int>& colour, int k);

// Isomorphism classes of graphs with n edges and no isolated vertices, by
// brute force over edge subsets of K_{2n}. A second method beside
// graphs_with_edges.
std::size_t brute_force_class_count(int n);

}  // namespace rainbow::testing
