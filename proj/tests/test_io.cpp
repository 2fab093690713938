#include <gtest/gtest.h>

#include <sstream>

#include "rainbow/certificate.hpp"
#include "rainbow/io.hpp"
#include "rainbow/solver.hpp"

using namespace rainbow;

namespace {

Instance parse(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

RainbowCertificate triangle_certificate() {
  RainbowCertificate c;
  c.n = 1;
  c.decomposition = walecki(1);
  c.h_edges = {Edge(0, 1)};
  c.assignment = {0};
  c.label_map = {0, 1};
  return c;
}

bool check_passed(const VerificationReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return c.passed;
  return false;
}

}  // namespace

TEST(Verify, TriangleWithOneEdge) { EXPECT_TRUE(verify_certificate(triangle_certificate()).ok()); }

TEST(Verify, TwoHEdgesInOneClass) {
  RainbowCertificate c;
  c.n = 2;
  c.decomposition = walecki(2);
  c.h_edges.assign(c.decomposition.at(0).begin(), std::next(c.decomposition.at(0).begin(), 2));
  c.assignment = {0, 0};
  const VerificationReport r = verify_certificate(c);
  EXPECT_FALSE(check_passed(r, "rainbow"));
  EXPECT_NE(r.to_string().find("rainbow violation"), std::string::npos);
}

TEST(Verify, MissingEdgeAndBrokenCycle) {
  RainbowCertificate c = triangle_certificate();
  c.decomposition.remove(0, Edge(0, 2));
  const VerificationReport r = verify_certificate(c);
  EXPECT_FALSE(check_passed(r, "partition"));
  EXPECT_FALSE(check_passed(r, "hamiltonian"));
}

TEST(Verify, AssignmentMustHoldTheEdge) {
  RainbowCertificate c;
  c.n = 2;
  c.decomposition = walecki(2);
  c.h_edges = {*c.decomposition.at(0).begin()};
  c.assignment = {1};
  EXPECT_FALSE(check_passed(verify_certificate(c), "membership"));
}

TEST(Instance, ParsesLabelsByFirstAppearance) {
  const Instance inst = parse("# comment\n3\n100 7 # trailing\n\n7 42\n5 6\n");
  EXPECT_EQ(inst.n, 3);
  EXPECT_EQ(inst.labels, (std::vector<std::int64_t>{100, 7, 42, 5, 6}));
  EXPECT_EQ(inst.h.edges[0], Edge(0, 1));
  EXPECT_EQ(inst.h.edges[1], Edge(1, 2));
  EXPECT_EQ(inst.h.vertex_count, 5);
  EXPECT_EQ(format_instance(inst), "3\n100 7\n7 42\n5 6\n");
}

TEST(Instance, RejectsMalformedInput) {
  EXPECT_THROW(parse("2\n0 1\n1 2\n2 3\n"), ParseError);
  EXPECT_THROW(parse("0\n"), ParseError);
  EXPECT_THROW(parse(""), ParseError);
  EXPECT_THROW(parse("2\n0 1\n"), ParseError);
  EXPECT_THROW(parse("1\n3 3\n"), ParseError);
  EXPECT_THROW(parse("2\n0 1\n1 0\n"), ParseError);
  EXPECT_THROW(parse("1\n0 x\n"), ParseError);
  EXPECT_THROW(parse("1\n-1 2\n"), ParseError);
  EXPECT_THROW(parse("1\n0 1 2\n"), ParseError);
}

TEST(CertificateJson, RoundTripIsExact) {
  const Instance inst = parse("3\n10 20\n20 30\n40 50\n");
  RainbowCertificate cert = solve(inst.h, SolveOptions{3});
  cert.label_map = inst.labels;
  const std::string doc = certificate_to_json(cert);
  const RainbowCertificate back = certificate_from_json(doc);
  EXPECT_EQ(certificate_to_json(back), doc);
  EXPECT_EQ(back.decomposition, cert.decomposition);
  EXPECT_EQ(back.assignment, cert.assignment);
  EXPECT_TRUE(certificate_matches_instance(back, inst));
  EXPECT_TRUE(verify_certificate(back).ok());
}

TEST(CertificateJson, ClassesAreOneBasedOnDisk) {
  const std::string doc = certificate_to_json(triangle_certificate());
  EXPECT_NE(doc.find("\"assignment\": [\n  1\n ]"), std::string::npos) << doc;
  const auto keys = {"\"n\"", "\"order\"", "\"label_map\"", "\"classes\"", "\"h_edges\"", "\"assignment\"",
                     "\"seed\"", "\"pipeline_trace\""};
  std::size_t last = 0;
  for (const char* k : keys) {
    const std::size_t at = doc.find(k);
    ASSERT_NE(at, std::string::npos) << k;
    EXPECT_GE(at, last);
    last = at;
  }
}

TEST(CertificateJson, MalformedDocumentsAreParseErrors) {
  const std::string doc = certificate_to_json(triangle_certificate());
  EXPECT_THROW(certificate_from_json(doc.substr(0, doc.size() / 2)), ParseError);
  EXPECT_THROW(certificate_from_json("{\"n\": 1}"), ParseError);
  EXPECT_THROW(certificate_from_json("[]"), ParseError);
}

TEST(CertificateJson, InstanceMismatchIsDetected) {
  const Instance other = parse("1\n1 2\n");
  EXPECT_FALSE(certificate_matches_instance(triangle_certificate(), other));
  EXPECT_TRUE(certificate_matches_instance(triangle_certificate(), parse("1\n1 0\n")));
}

TEST(Checksum, KnownValue) {
  // Adler-32 of "Wikipedia".
  EXPECT_EQ(checksum("Wikipedia"), 0x11E60398u);
}
