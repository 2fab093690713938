#include "rainbow/certificate.hpp"

#include "rainbow/solution.hpp"

#include <map>
#include <set>
#include <sstream>

namespace rainbow {

bool VerificationReport::ok() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return !checks.empty();
}

std::string VerificationReport::to_string() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
    os << '\n';
  }
  return os.str();
}

VerificationReport verify_certificate(const RainbowCertificate& cert) {
  VerificationReport report;
  const Decomposition& d = cert.decomposition;
  const int order = 2 * cert.n + 1;

  {
    VerificationCheck c{"partition", true, ""};
    if (cert.n < 1 || d.order() != order || d.class_count() != cert.n) {
      c.passed = false;
      c.detail = "expected " + std::to_string(cert.n) + " classes over K_" + std::to_string(order);
    } else if (!d.is_complete()) {
      c.passed = false;
      c.detail = "classes do not partition E(K_" + std::to_string(order) + ")";
    }
    report.checks.push_back(std::move(c));
  }
  {
    VerificationCheck c{"hamiltonian", true, ""};
    for (int i = 0; i < d.class_count(); ++i) {
      if (!is_hamiltonian_cycle(d.at(i), order)) {
        c.passed = false;
        c.detail += "class " + std::to_string(i + 1) + " is not a Hamiltonian cycle; ";
      }
    }
    report.checks.push_back(std::move(c));
  }
  {
    VerificationCheck c{"rainbow", true, ""};
    if (cert.assignment.size() != cert.h_edges.size()) {
      c.passed = false;
      c.detail = "assignment length differs from h_edges";
    } else {
      std::map<int, int> held;
      for (int cls : cert.assignment) ++held[cls];
      for (const auto& [cls, count] : held)
        if (count > 1) {
          c.passed = false;
          c.detail += "rainbow violation: class " + std::to_string(cls + 1) + " holds " + std::to_string(count) +
                      " H-edges; ";
        }
      if (std::set<Edge>(cert.h_edges.begin(), cert.h_edges.end()).size() != cert.h_edges.size()) {
        c.passed = false;
        c.detail += "duplicate h_edges; ";
      }
    }
    report.checks.push_back(std::move(c));
  }
  {
    VerificationCheck c{"membership", true, ""};
    for (std::size_t j = 0; j < cert.h_edges.size() && j < cert.assignment.size(); ++j) {
      const int cls = cert.assignment[j];
      if (cls < 0 || cls >= d.class_count() || !d.at(cls).contains(cert.h_edges[j])) {
        c.passed = false;
        c.detail += "h_edge " + rainbow::to_string(cert.h_edges[j]) + " not in class " +
                    std::to_string(cls + 1) + "; ";
      }
    }
    report.checks.push_back(std::move(c));
  }
  return report;
}

void check_solution(const Graph& h, int n, const Solution& sol, const std::string& stage) {
  RainbowCertificate cert;
  cert.n = n;
  cert.decomposition = sol.hcd;
  cert.h_edges = h.edges;
  cert.assignment = sol.assignment;
  const VerificationReport report = verify_certificate(cert);
  if (!report.ok()) throw InvariantViolation(stage, "solution rejected:\n" + report.to_string());
}

}  // namespace rainbow
