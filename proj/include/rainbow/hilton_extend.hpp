#pragma once

#include <string>
#include <vector>

#include "rainbow/graph.hpp"

namespace rainbow {

// Where the edges of a new vertex go when K_m grows to K_{m+1}.
struct InsertionPlan {
  Vertex new_vertex = 0;
  std::vector<int> class_of_vertex;              // per old vertex
  std::vector<std::vector<Vertex>> attachments;  // per class, ascending
};

// Every class a linear forest with |C_i| >= 2m - 2n - 1, q complete, m <= 2n + 1.
bool completion_condition_holds(const Decomposition& q, int n);
// Throws PreconditionViolation naming the first failed part of the condition.
void check_completion_condition(const Decomposition& q, int n, const std::string& stage);

// Feasible plan for one insertion, or InternalInfeasible. Requires m < 2n.
InsertionPlan plan_insertion(const Decomposition& q, int n);
Decomposition apply_plan(const Decomposition& q, const InsertionPlan& plan);

Decomposition single_vertex_step(const Decomposition& q, int n);

// Every class a Hamiltonian path of K_{2n}; joins vertex 2n to both ends of each.
Decomposition close_final_vertex(const Decomposition& q);

// Completes q (over K_m) to a Hamiltonian cycle decomposition of K_{2n+1}.
Decomposition extend_to_hcd(const Decomposition& q, int n);

}  // namespace rainbow
