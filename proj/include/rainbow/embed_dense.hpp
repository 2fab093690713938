#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rainbow/graph.hpp"
#include "rainbow/solution.hpp"

namespace rainbow {

// H' (components with >= 2 edges) on vertices [0, r), to be embedded into K_r
// with n classes.
struct DenseInstance {
  Graph h_prime;
  int n = 0;

  int t() const { return static_cast<int>(h_prime.edges.size()); }
  int r() const { return h_prime.vertex_count; }
};

struct CaseParams {
  int epsilon = 0;  // max(t - n + 1, 0)
  int delta = 0;    // r mod 2
};
CaseParams case_params(int n, int t, int r);

enum class DenseBranch { SmallR, Case1, Case2 };
const char* to_string(DenseBranch b);
// Exact integer dispatch: r <= n, else Case 1 iff 3r <= 4n - 1.
DenseBranch dense_branch(int n, int r);

// One edge transfer of the rebalancing phase, kept for diagnostics.
struct MoveRecipe {
  int target = -1;
  int donor = -1;
  int second_donor = -1;
  std::optional<Edge> excluded_h;  // the H'' edge of the donor
  std::optional<Edge> e1;
  std::optional<Edge> e2;
  std::optional<Edge> second_excluded_h;
  std::vector<Edge> blocking;  // withheld from the second donor
  int moved = 0;
  int moved_second = 0;

  std::string describe() const;
};

// Working state of the embedding: classes plus, per class, the H' edge it holds.
struct DenseState {
  Decomposition p;
  std::vector<std::optional<Edge>> h_edge;  // per class
  int n = 0;
  int t = 0;
  int r = 0;
  int s = 0;
  std::vector<MoveRecipe> log;
};

struct RecursiveCall {
  std::vector<int> edge_indices;  // into h_prime.edges, ascending
  Graph h_doubleprime;            // compact relabelling of the chosen edges
  std::vector<Vertex> to_parent;  // compact vertex -> H' vertex
  int s = 0;
};

struct DenseResult {
  Decomposition p;                // n classes over K_r
  std::vector<int> class_of_edge;  // per H' edge, its class (a bijection onto [0, t))
  DenseBranch branch = DenseBranch::SmallR;
  std::vector<MoveRecipe> log;
  std::vector<std::string> trace;
};

// Whole components in input order, then a connected piece of the next one.
RecursiveCall choose_subgraph(const Graph& h_prime, int s);

// Deletes one (r even) or two (r odd) vertices outside H'' from an HCD of
// K_{2s+1} and renames the rest onto K_r. Classes keep their order.
DenseState contract_to_kr(const Solution& hcd, const RecursiveCall& call, const Graph& h_prime,
                          int n);

// Moves each H' \ H'' edge into its own class s..t-1, then orders classes
// [0, s) by non-increasing size (stable).
void split_new_singletons(DenseState& state, const Graph& h_prime, const RecursiveCall& call);

void case1_rebalance(DenseState& state);
void case2_rebalance(DenseState& state);

DenseResult direct_small_r(const DenseInstance& inst);

// Conditions (1)-(4): linear forests, rainbow prefix, size bounds, partition.
void check_dense_postconditions(const DenseState& state, const std::string& stage);

DenseResult embed_dense(const DenseInstance& inst, const RecursiveSolver& recurse);

}  // namespace rainbow
