#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rainbow/coloring.hpp"
#include "rainbow/graph.hpp"

namespace rainbow {

// Decomposition of K_{2s+r} during the two-vertex extension loop. Classes
// [0, t+s) each hold one rainbow edge (h_edge); the rest hold none.
struct ExtendState {
  Decomposition q;
  std::vector<std::optional<Edge>> h_edge;  // per class
  int s = 0;
  int t = 0;
  int r = 0;
  int n = 0;

  int m() const { return 2 * s + r; }
  int k() const { return 2 * n - 2 * s - r + 1; }
  long floor_rainbow() const { return 4L * s + 2L * r - 2L * n - 1; }
  long floor_other() const { return 4L * s + 2L * r - 2L * n; }
};

// Throws InvariantViolation(stage): completeness, linear forests, size ledger,
// rainbow ledger.
void check_extend_invariants(const ExtendState& st, const std::string& stage);

// Class-vertex incidence multigraph: X = classes, Y = vertices. Multiplicity
// 1 to path endpoints, 2 to isolated vertices.
struct AuxiliaryGraph {
  BipartiteMultigraph g;
  std::vector<std::vector<int>> multiplicity;  // [class][vertex]
  std::vector<int> slack;                      // x_i with deg(c_i) = 2k - 2x_i
};

AuxiliaryGraph build_auxiliary(const ExtendState& st);

// Attachment choices for the two new vertices m (g1) and m+1 (g2).
struct AttachmentWitness {
  std::vector<std::vector<Vertex>> g1;  // per class, ascending
  std::vector<std::vector<Vertex>> g2;
  int bridge_class = -1;
  std::string origin;
};

// Every violated condition, empty when the witness is usable. Also rejects a
// witness whose attachment would close a cycle in some class.
std::vector<std::string> witness_violations(const ExtendState& st, const AuxiliaryGraph& aux,
                                            const AttachmentWitness& w);

// The coloring route: balanced k-coloring of the doubled graph, reduction
// repairs, paired 2-coloring, final split. Throws WitnessRejected.
AttachmentWitness color_witness(const ExtendState& st, const AuxiliaryGraph& aux, std::uint64_t seed);

// Direct backtracking over the same conditions, bounded by `budget` nodes.
// Throws SearchExhausted.
AttachmentWitness search_witness(const ExtendState& st, const AuxiliaryGraph& aux, long budget);

// Adds vertices m, m+1, puts the bridge edge in the bridge class and moves
// that class to position t+s.
ExtendState attach_pair(const ExtendState& st, const AttachmentWitness& w);

struct SparseResult {
  ExtendState state;
  std::vector<std::string> trace;
  int fallback_steps = 0;
};

struct SparseOptions {
  std::uint64_t seed = 0;
  int attempts = 8;
  long search_budget = 5'000'000;
};

// Runs the loop from s = 0 to s = n - t. p covers K_r with t rainbow classes
// first; the returned decomposition covers K_{2n-2t+r}.
SparseResult extend_with_k2s(const Decomposition& p, const std::vector<std::optional<Edge>>& h_edge,
                             int n, int t, const SparseOptions& opt = {});

}  // namespace rainbow
