#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rainbow/graph.hpp"

namespace rainbow {

// Output of the solver: a Hamiltonian cycle decomposition of K_{2n+1} and the
// injective map from H's edges to the classes holding them.
struct RainbowCertificate {
  int n = 0;
  Decomposition decomposition;
  std::vector<Edge> h_edges;
  std::vector<int> assignment;  // 0-based class index per h_edge
  // Caller label of internal vertex i, for i < label_map.size().
  std::vector<std::int64_t> label_map;
  std::uint64_t seed = 0;
  std::vector<std::string> pipeline_trace;
};

struct VerificationCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerificationReport {
  std::vector<VerificationCheck> checks;
  bool ok() const;
  std::string to_string() const;
};

// Pure predicate over the certificate; failures are report entries.
VerificationReport verify_certificate(const RainbowCertificate& cert);

}  // namespace rainbow
