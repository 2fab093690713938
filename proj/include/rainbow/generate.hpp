#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rainbow/graph.hpp"

namespace rainbow {

// Canonical edge list: lexicographically least relabelling over all vertex
// permutations. Meant for graphs with at most 8 vertices.
std::vector<Edge> canonical_form(const Graph& g);

// One representative per isomorphism class of connected graphs with e edges.
std::vector<Graph> connected_graphs(int e);

// One representative per isomorphism class of graphs with n edges and no
// isolated vertices, built as multisets of connected components.
std::vector<Graph> graphs_with_edges(int n);

Graph disjoint_union(const Graph& a, const Graph& b);

// n distinct edges on at most 2n vertices, isolated vertices dropped.
Graph random_graph(int n, std::mt19937_64& rng);

}  // namespace rainbow
