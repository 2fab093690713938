#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rainbow/certificate.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/solution.hpp"

namespace rainbow {

enum class Route { BaseSmall, AllK2, LinearForest, MainPipeline };
const char* to_string(Route r);

// H = H' plus (n - t) isolated edges.
struct ComponentSplit {
  std::vector<int> h_prime_edges;  // indices into h.edges, ascending
  std::vector<int> k2_edges;       // indices into h.edges, ascending
  int t = 0;
  int r = 0;  // vertices of H'
  int k2_count() const { return static_cast<int>(k2_edges.size()); }
};

ComponentSplit split_components(const Graph& h);
Route route(const Graph& h, const ComponentSplit& split);

struct SolveOptions {
  std::uint64_t seed = 0;
  long search_budget = 2'000'000;  // nodes per restart in the backtracking searches
  int restarts = 200;
};

// H must have no isolated vertices; its vertices stay fixed in the output.
Solution solve_graph(const Graph& h, const SolveOptions& opt = {});

// Full contract: a verified certificate for H with identity label map.
RainbowCertificate solve(const Graph& h, const SolveOptions& opt = {});

// Strategies, each returning a verified solution.
Solution base_small(const Graph& h, const SolveOptions& opt);
Solution base_all_k2(const Graph& h);
Solution base_linear_forest(const Graph& h, const SolveOptions& opt);
Solution main_pipeline(const Graph& h, const SolveOptions& opt);

// Class-by-class Hamiltonian cycle backtracking with H planted one edge per
// class. Throws SearchExhausted after the restart budget.
Solution backtrack_rainbow_hcd(const Graph& h, int n, const SolveOptions& opt);

// Injective map of H into walecki(n) with H rainbow, relabelled so H keeps
// its vertices. Throws SearchExhausted.
Solution embed_in_walecki(const Graph& h, int n, const SolveOptions& opt);

}  // namespace rainbow
