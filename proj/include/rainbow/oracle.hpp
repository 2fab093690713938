#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "rainbow/graph.hpp"
#include "rainbow/solution.hpp"

namespace rainbow {

enum class OracleOutcome { Found, ProvedNone };

struct OracleResult {
  OracleOutcome outcome = OracleOutcome::ProvedNone;
  std::optional<Solution> solution;  // set when Found
  long nodes = 0;
};

struct OracleOptions {
  long budget = 100'000'000;
  bool allow_large = false;  // lifts the n <= 5 guard
};

// Exhaustive search for an HCD of K_{2n+1} in which H is rainbow. With a
// precoloring (per H edge, optional 0-based class) the question becomes
// whether the pinned edges extend to an HCD; unpinned H edges are then
// unconstrained and H need not be rainbow.
// Throws BudgetExceeded when the node cap is hit before a decision.
OracleResult exhaustive_rainbow_hcd(const Graph& h, int n,
                                    const std::vector<std::optional<int>>& precoloring = {},
                                    const OracleOptions& opt = {});

// Every HCD of K_{2n+1}, as unordered sets of cycles, by growing one cycle at a time.
std::vector<Decomposition> enumerate_hcds(int n);

// Same count by assigning the edges of K_{2n+1} in lexicographic order.
std::uint64_t count_hcds_edgewise(int n);

}  // namespace rainbow
