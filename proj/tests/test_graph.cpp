#include <gtest/gtest.h>

#include <numeric>

#include "rainbow/errors.hpp"
#include "rainbow/graph.hpp"

using namespace rainbow;

TEST(Edge, StoresEndpointsInOrder) {
  const Edge e(5, 2);
  EXPECT_EQ(e.u, 2);
  EXPECT_EQ(e.v, 5);
  EXPECT_EQ(e.other(2), 5);
  EXPECT_THROW(Edge(3, 3), PreconditionViolation);
}

TEST(Graph, ValidateRejectsDuplicatesAndRange) {
  EXPECT_THROW((Graph{3, {Edge(0, 1), Edge(1, 0)}}.validate()), PreconditionViolation);
  EXPECT_THROW((Graph{2, {Edge(0, 2)}}.validate()), PreconditionViolation);
  EXPECT_NO_THROW((Graph{3, {Edge(0, 1), Edge(1, 2)}}.validate()));
}

TEST(Graph, ComponentsAndLinearForest) {
  const Graph g{7, {Edge(0, 1), Edge(1, 2), Edge(3, 4), Edge(4, 5), Edge(3, 5)}};
  EXPECT_EQ(g.edge_components().size(), 2u);
  EXPECT_FALSE(g.is_linear_forest());
  const Graph star{4, {Edge(0, 1), Edge(0, 2), Edge(0, 3)}};
  EXPECT_FALSE(star.is_linear_forest());
  EXPECT_TRUE((Graph{4, {Edge(0, 1), Edge(2, 3)}}.is_linear_forest()));
}

TEST(LinearForest, TriangleIsRejected) {
  const EdgeSet tri{Edge(0, 1), Edge(1, 2), Edge(0, 2)};
  EXPECT_THROW(analyze_linear_forest(tri, 3), NotLinearForest);
  EXPECT_FALSE(is_linear_forest(tri, 3));
}

TEST(LinearForest, ViewRecordsPathsEndsAndIsolated) {
  const EdgeSet f{Edge(0, 1), Edge(1, 2), Edge(4, 5)};
  const LinearForestView v = analyze_linear_forest(f, 7);
  EXPECT_EQ(v.paths.size(), 2u);
  EXPECT_EQ(v.isolated, (std::vector<Vertex>{3, 6}));
  EXPECT_TRUE(v.same_path_ends(0, 2));
  EXPECT_TRUE(v.same_path_ends(5, 4));
  EXPECT_FALSE(v.same_path_ends(0, 4));
  EXPECT_TRUE(v.is_endpoint(2));
  EXPECT_FALSE(v.is_endpoint(1));
  EXPECT_TRUE(v.is_isolated(6));
}

TEST(Hamiltonian, CycleRecognition) {
  EXPECT_TRUE(is_hamiltonian_cycle({Edge(0, 1), Edge(1, 2), Edge(0, 2)}, 3));
  // Two triangles cover K_6's vertices but are not one cycle.
  EXPECT_FALSE(is_hamiltonian_cycle({Edge(0, 1), Edge(1, 2), Edge(0, 2), Edge(3, 4), Edge(4, 5), Edge(3, 5)}, 6));
}

TEST(Walecki, OneClassIsTheTriangle) {
  const Decomposition d = walecki(1);
  ASSERT_EQ(d.class_count(), 1);
  EXPECT_EQ(d.at(0), (EdgeSet{Edge(0, 1), Edge(1, 2), Edge(0, 2)}));
}

TEST(Walecki, IsAHamiltonianDecompositionForSmallN) {
  for (int n = 1; n <= 12; ++n) {
    const Decomposition d = walecki(n);
    EXPECT_TRUE(d.is_complete()) << n;
    for (int i = 0; i < n; ++i) EXPECT_TRUE(is_hamiltonian_cycle(d.at(i), 2 * n + 1)) << n << ' ' << i;
  }
}

TEST(Decomposition, TruncateKeepsCompletenessAndRelabelRoundTrips) {
  const Decomposition d = walecki(4);
  const Decomposition t = truncate(d, 6);
  EXPECT_EQ(t.order(), 6);
  EXPECT_TRUE(t.is_complete());
  std::vector<Vertex> perm(9);
  std::iota(perm.rbegin(), perm.rend(), 0);
  const Decomposition back = relabel(relabel(d, perm), perm);
  EXPECT_EQ(back, d);
}

TEST(Decomposition, MoveAndClassOf) {
  Decomposition d(4, 2);
  d.add(0, Edge(0, 1));
  EXPECT_EQ(d.class_of(Edge(1, 0)), 0);
  d.move(Edge(0, 1), 0, 1);
  EXPECT_EQ(d.class_of(Edge(0, 1)), 1);
  EXPECT_FALSE(d.is_complete());
  EXPECT_THROW(d.check_complete("test"), InvariantViolation);
}

TEST(RoundRobin, MatchingsPartitionTheCompleteGraph) {
  for (int r = 2; r <= 11; ++r) {
    const auto ms = round_robin_matchings(r);
    const int rr = r + r % 2;
    EXPECT_EQ(static_cast<int>(ms.size()), rr - 1);
    EdgeSet seen;
    for (const auto& m : ms) {
      std::vector<int> deg(static_cast<std::size_t>(r), 0);
      for (const Edge& e : m) {
        EXPECT_LT(e.v, r);
        EXPECT_TRUE(seen.insert(e).second);
        EXPECT_LE(++deg[static_cast<std::size_t>(e.u)], 1);
        EXPECT_LE(++deg[static_cast<std::size_t>(e.v)], 1);
      }
    }
    EXPECT_EQ(static_cast<int>(seen.size()), r * (r - 1) / 2);
  }
}
