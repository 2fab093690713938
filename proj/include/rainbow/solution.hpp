#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rainbow/graph.hpp"

namespace rainbow {

// Internal solver result: an HCD of K_{2n+1} whose vertices [0, h.vertex_count)
// are H's vertices, plus the class of each H edge (aligned with h.edges).
struct Solution {
  Decomposition hcd;
  std::vector<int> assignment;
  std::vector<std::string> trace;
};

// Full solver entry used for recursive sub-instances.
using RecursiveSolver = std::function<Solution(const Graph& h, int n)>;

// Throws InvariantViolation(stage) unless `sol` is a rainbow HCD for h.
void check_solution(const Graph& h, int n, const Solution& sol, const std::string& stage);

}  // namespace rainbow
