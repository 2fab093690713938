#include <gtest/gtest.h>

#include "rainbow/errors.hpp"
#include "rainbow/generate.hpp"
#include "rainbow/oracle.hpp"
#include "rainbow/solution.hpp"

using namespace rainbow;

TEST(Oracle, PathOnThreeVerticesInK5) {
  const Graph h{3, {Edge(0, 1), Edge(1, 2)}};
  const OracleResult res = exhaustive_rainbow_hcd(h, 2);
  ASSERT_EQ(res.outcome, OracleOutcome::Found);
  EXPECT_NO_THROW(check_solution(h, 2, *res.solution, "test"));
}

TEST(Oracle, EmptyGraphFindsAnyDecomposition) {
  const OracleResult res = exhaustive_rainbow_hcd(Graph{}, 2);
  ASSERT_EQ(res.outcome, OracleOutcome::Found);
  EXPECT_TRUE(res.solution->hcd.is_complete());
}

TEST(Oracle, PrecoloredPathAndEdgeCannotExtendInK5) {
  const Graph h{5, {Edge(0, 1), Edge(1, 2), Edge(3, 4)}};
  EXPECT_EQ(exhaustive_rainbow_hcd(h, 2, {0, 0, 1}).outcome, OracleOutcome::ProvedNone);
  EXPECT_EQ(exhaustive_rainbow_hcd(h, 2, {0, 0, 0}).outcome, OracleOutcome::Found);
}

TEST(Oracle, PrecoloringRestrictionsStillExtend) {
  // Whenever a full pinning extends, dropping any one pin keeps it extendable.
  const std::vector<std::pair<Graph, int>> cases = {
      {Graph{5, {Edge(0, 1), Edge(1, 2), Edge(3, 4)}}, 2},
      {Graph{4, {Edge(0, 1), Edge(2, 3)}}, 2},
      {Graph{6, {Edge(0, 1), Edge(1, 2), Edge(3, 4), Edge(4, 5)}}, 3},
      {Graph{5, {Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(3, 4)}}, 3},
  };
  int extendable = 0;
  for (const auto& [h, n] : cases) {
    const std::size_t e = h.edges.size();
    std::vector<int> pin(e, 0);
    for (;;) {
      std::vector<std::optional<int>> full(pin.begin(), pin.end());
      if (exhaustive_rainbow_hcd(h, n, full).outcome == OracleOutcome::Found) {
        ++extendable;
        for (std::size_t j = 0; j < e; ++j) {
          auto partial = full;
          partial[j].reset();
          EXPECT_EQ(exhaustive_rainbow_hcd(h, n, partial).outcome, OracleOutcome::Found);
        }
      }
      std::size_t j = 0;
      while (j < e && ++pin[j] == n) pin[j++] = 0;
      if (j == e) break;
    }
  }
  EXPECT_GT(extendable, 0);
}

TEST(Oracle, BudgetAndGuard) {
  const Graph h{4, {Edge(0, 1), Edge(2, 3)}};
  EXPECT_THROW(exhaustive_rainbow_hcd(h, 5, {}, OracleOptions{1, false}), BudgetExceeded);
  EXPECT_THROW(exhaustive_rainbow_hcd(h, 6), PreconditionViolation);
  EXPECT_THROW(exhaustive_rainbow_hcd(h, 2, {7, std::nullopt}), PreconditionViolation);
}

TEST(Oracle, FindsEverySmallInstance) {
  for (int n = 1; n <= 4; ++n)
    for (const Graph& h : graphs_with_edges(n)) {
      const OracleResult res = exhaustive_rainbow_hcd(h, n);
      ASSERT_EQ(res.outcome, OracleOutcome::Found);
      EXPECT_NO_THROW(check_solution(h, n, *res.solution, "oracle"));
    }
}

TEST(Enumerate, TriangleIsTheOnlyDecompositionOfK3) {
  const auto all = enumerate_hcds(1);
  ASSERT_EQ(all.size(), 1u);
  EXPECT_TRUE(is_hamiltonian_cycle(all[0].at(0), 3));
}

TEST(Enumerate, TwoMethodsAgree) {
  for (int n = 2; n <= 3; ++n) {
    const auto all = enumerate_hcds(n);
    EXPECT_EQ(all.size(), count_hcds_edgewise(n)) << n;
    std::set<std::set<EdgeSet>> distinct;
    for (const Decomposition& d : all) {
      ASSERT_TRUE(d.is_complete());
      for (int i = 0; i < n; ++i) ASSERT_TRUE(is_hamiltonian_cycle(d.at(i), 2 * n + 1));
      distinct.insert(std::set<EdgeSet>(d.classes().begin(), d.classes().end()));
    }
    EXPECT_EQ(distinct.size(), all.size()) << n;
  }
}

TEST(Enumerate, KFiveHasSixDecompositions) {
  // Each 5-cycle of K_5 has a 5-cycle complement: 12 cycles in pairs.
  EXPECT_EQ(enumerate_hcds(2).size(), 6u);
}
