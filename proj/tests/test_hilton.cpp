#include <gtest/gtest.h>

#include "rainbow/errors.hpp"
#include "rainbow/hilton_extend.hpp"

using namespace rainbow;

TEST(Completion, WaleckiTruncationsSatisfyTheBound) {
  for (int n = 1; n <= 8; ++n)
    for (int m = 1; m <= 2 * n + 1; ++m) EXPECT_TRUE(completion_condition_holds(truncate(walecki(n), m), n)) << n << ' ' << m;
}

TEST(Completion, UndersizedClassFailsTheBound) {
  Decomposition q = truncate(walecki(3), 5);
  // Move one class's edges into another: the emptied class is too small.
  const EdgeSet moved = q.at(0);
  for (const Edge& e : moved) q.move(e, 0, 1);
  EXPECT_FALSE(completion_condition_holds(q, 3));
  EXPECT_THROW(check_completion_condition(q, 3, "test"), PreconditionViolation);
}

TEST(Completion, ExtendsEveryTruncation) {
  for (int n = 1; n <= 8; ++n) {
    const Decomposition w = walecki(n);
    for (int m = 3; m <= 2 * n + 1; ++m) {
      const Decomposition q = truncate(w, m);
      const Decomposition full = extend_to_hcd(q, n);
      ASSERT_TRUE(full.is_complete());
      for (int i = 0; i < n; ++i) {
        ASSERT_TRUE(is_hamiltonian_cycle(full.at(i), 2 * n + 1)) << n << ' ' << m << ' ' << i;
        for (const Edge& e : q.at(i)) ASSERT_TRUE(full.at(i).contains(e));
      }
    }
  }
}

TEST(Completion, ClosingRestoresTheHub) {
  // Removing Walecki's hub leaves Hamiltonian paths; closing puts it back.
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(close_final_vertex(truncate(walecki(n), 2 * n)), walecki(n)) << n;
}

TEST(Insertion, PlanAssignsEveryOldVertexOnce) {
  const Decomposition q = truncate(walecki(5), 6);
  const InsertionPlan plan = plan_insertion(q, 5);
  EXPECT_EQ(plan.new_vertex, 6);
  ASSERT_EQ(plan.class_of_vertex.size(), 6u);
  std::size_t attached = 0;
  for (const auto& a : plan.attachments) {
    EXPECT_LE(a.size(), 2u);
    attached += a.size();
  }
  EXPECT_EQ(attached, 6u);
  const Decomposition next = apply_plan(q, plan);
  EXPECT_TRUE(next.is_complete());
  EXPECT_TRUE(completion_condition_holds(next, 5));
}

TEST(Insertion, FinalStepNeedsHamiltonianPaths) {
  Decomposition q = truncate(walecki(2), 4);
  const EdgeSet moved = q.at(0);
  q.move(*moved.begin(), 0, 1);
  EXPECT_THROW(close_final_vertex(q), PreconditionViolation);
}
