#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rainbow/certificate.hpp"
#include "rainbow/generate.hpp"
#include "rainbow/io.hpp"
#include "rainbow/oracle.hpp"
#include "rainbow/solver.hpp"

using namespace rainbow;

namespace {

constexpr int kParse = 1;
constexpr int kInfeasible = 2;
constexpr int kInternal = 3;
constexpr int kBudget = 4;
constexpr int kVerify = 5;

// Maps the error taxonomy onto exit codes.
template <class F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const InfeasibleInput& e) {
    std::cerr << "infeasible input: " << e.what() << '\n';
    return kInfeasible;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const Error& e) {
    std::cerr << "internal failure: " << e.what() << '\n';
    return kInternal;
  }
}

int parse_class(const std::string& tok, int n) {
  std::size_t used = 0;
  int c = 0;
  try {
    c = std::stoi(tok, &used);
  } catch (const std::exception&) {
    throw ParseError("--precolor entry '" + tok + "' is not a class index");
  }
  if (used != tok.size() || c < 1 || c > n) throw ParseError("--precolor entry '" + tok + "' is out of range");
  return c - 1;
}

RainbowCertificate solve_instance(const Instance& inst, std::uint64_t seed) {
  SolveOptions opt;
  opt.seed = seed;
  RainbowCertificate cert = solve(inst.h, opt);
  cert.label_map = inst.labels;
  return cert;
}

int cmd_solve(const std::string& path, std::uint64_t seed, const std::string& out, bool trace) {
  const Instance inst = load_instance(path);
  const RainbowCertificate cert = solve_instance(inst, seed);
  if (trace)
    for (const auto& line : cert.pipeline_trace) std::cerr << line << '\n';
  const std::string doc = certificate_to_json(cert);
  if (out.empty()) std::cout << doc;
  else save_text(out, doc);
  return 0;
}

int cmd_verify(const std::string& cert_path, const std::string& inst_path) {
  const RainbowCertificate cert = load_certificate(cert_path);
  const Instance inst = load_instance(inst_path);
  const VerificationReport report = verify_certificate(cert);
  std::cout << report.to_string();
  const bool match = certificate_matches_instance(cert, inst);
  std::cout << (match ? "PASS" : "FAIL") << " instance: h_edges "
            << (match ? "match" : "do not match") << " the instance\n";
  return report.ok() && match ? 0 : kVerify;
}

int cmd_oracle(const std::string& path, long budget, const std::string& precolor, int classes,
               const std::string& out) {
  const Instance inst = load_instance(path);
  // A precoloring may put several H edges in one class, so the host can be
  // smaller than K_{2e+1}.
  const int n = classes > 0 ? classes : inst.n;
  std::vector<std::optional<int>> pre;
  if (!precolor.empty()) {
    std::istringstream in(precolor);
    for (std::string tok; std::getline(in, tok, ',');) {
      if (tok == "-" || tok.empty()) pre.emplace_back();
      else pre.emplace_back(parse_class(tok, n));
    }
    if (pre.size() != inst.h.edges.size()) throw ParseError("--precolor needs one entry per edge");
  }
  OracleOptions opt;
  opt.budget = budget;
  opt.allow_large = true;
  const OracleResult res = exhaustive_rainbow_hcd(inst.h, n, pre, opt);
  std::cout << (res.outcome == OracleOutcome::Found ? "found" : "proved-none") << " nodes=" << res.nodes << '\n';
  if (res.solution && !out.empty()) {
    RainbowCertificate cert;
    cert.n = n;
    cert.decomposition = res.solution->hcd;
    cert.h_edges = inst.h.edges;
    cert.assignment = res.solution->assignment;
    cert.label_map = inst.labels;
    cert.pipeline_trace = res.solution->trace;
    save_text(out, certificate_to_json(cert));
  }
  return 0;
}

int cmd_walecki(int n) {
  if (n < 1) throw ParseError("n must be at least 1");
  const Decomposition d = walecki(n);
  for (int i = 0; i < d.class_count(); ++i) {
    std::cout << "class " << i + 1 << ':';
    for (const Edge& e : d.at(i)) std::cout << ' ' << e.u << '-' << e.v;
    std::cout << '\n';
  }
  return 0;
}

int cmd_bench(const std::string& range, int samples, std::uint64_t seed, bool exhaustive) {
  int lo = 0, hi = 0;
  if (std::sscanf(range.c_str(), "%d..%d", &lo, &hi) != 2 || lo < 1 || hi < lo)
    throw ParseError("--n-range must look like A..B with 1 <= A <= B");
  if (exhaustive && hi > 6) throw ParseError("--exhaustive supports n <= 6");
  std::printf("%-14s %3s %-16s %10s %10s %s\n", "instance", "n", "route", "ms", "checksum", "status");
  int failures = 0;
  for (int n = lo; n <= hi; ++n) {
    std::vector<Graph> graphs;
    if (exhaustive) {
      graphs = graphs_with_edges(n);
    } else {
      std::mt19937_64 rng(seed * 1000003ULL + static_cast<std::uint64_t>(n));
      for (int i = 0; i < samples; ++i) graphs.push_back(random_graph(n, rng));
    }
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      const auto start = std::chrono::steady_clock::now();
      std::string route = "-", status = "ok";
      std::uint32_t sum = 0;
      try {
        SolveOptions opt;
        opt.seed = seed;
        const RainbowCertificate cert = solve(graphs[i], opt);
        route = cert.pipeline_trace.empty() ? "-" : cert.pipeline_trace.front().substr(6);
        route = route.substr(0, route.find('('));
        if (!verify_certificate(cert).ok()) throw InvariantViolation("bench", "verification failed");
        sum = checksum(certificate_to_json(cert));
      } catch (const Error& e) {
        status = std::string("FAIL ") + e.what();
        ++failures;
      }
      const double ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      const std::string id = "n" + std::to_string(n) + "#" + std::to_string(i);
      std::printf("%-14s %3d %-16s %10.1f   %08x %s\n", id.c_str(), n, route.c_str(), ms, sum, status.c_str());
    }
  }
  return failures == 0 ? 0 : kInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rainbow Hamiltonian cycle decompositions of K_{2n+1}"};
  app.require_subcommand(1);

  std::string inst_path, cert_path, out, precolor, range = "1..5";
  std::uint64_t seed = 0;
  bool trace = false, exhaustive = false;
  long budget = 100'000'000;
  int walecki_n = 0, samples = 10, classes = 0;

  auto* solve_cmd = app.add_subcommand("solve", "Build and emit a certificate for an instance");
  solve_cmd->add_option("instance", inst_path, "Instance file")->required();
  solve_cmd->add_option("--seed", seed, "Seed for randomised stages");
  solve_cmd->add_option("--out", out, "Write the certificate here instead of stdout");
  solve_cmd->add_flag("--trace", trace, "Print the pipeline trace to stderr");

  auto* verify_cmd = app.add_subcommand("verify", "Check a certificate against an instance");
  verify_cmd->add_option("certificate", cert_path, "Certificate file")->required();
  verify_cmd->add_option("instance", inst_path, "Instance file")->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive search for small instances");
  oracle_cmd->add_option("instance", inst_path, "Instance file")->required();
  oracle_cmd->add_option("--budget", budget, "Node cap");
  oracle_cmd->add_option("--precolor", precolor, "Comma list of 1-based classes per edge, '-' for free");
  oracle_cmd->add_option("--n", classes, "Number of classes (default: the edge count)");
  oracle_cmd->add_option("--out", out, "Write a certificate when one is found");

  auto* walecki_cmd = app.add_subcommand("walecki", "Print the Walecki decomposition of K_{2n+1}");
  walecki_cmd->add_option("n", walecki_n, "Number of cycles")->required();

  auto* bench_cmd = app.add_subcommand("bench", "Solve and verify generated instances");
  bench_cmd->add_option("--n-range", range, "Edge counts A..B");
  bench_cmd->add_option("--samples", samples, "Random instances per n");
  bench_cmd->add_option("--seed", seed, "Seed");
  bench_cmd->add_flag("--exhaustive", exhaustive, "Every isomorphism class instead of samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kParse;
  }

  if (*solve_cmd) return guarded([&] { return cmd_solve(inst_path, seed, out, trace); });
  if (*verify_cmd) return guarded([&] { return cmd_verify(cert_path, inst_path); });
  if (*oracle_cmd) return guarded([&] { return cmd_oracle(inst_path, budget, precolor, classes, out); });
  if (*walecki_cmd) return guarded([&] { return cmd_walecki(walecki_n); });
  return guarded([&] { return cmd_bench(range, samples, seed, exhaustive); });
}
