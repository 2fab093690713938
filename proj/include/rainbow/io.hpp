#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rainbow/certificate.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/graph.hpp"

namespace rainbow {

class ParseError : public Error {
 public:
  using Error::Error;
};

// Instance text: first line n, then n lines "u v" with non-negative integer
// labels. '#' starts a comment. Labels become dense ids by first appearance.
struct Instance {
  int n = 0;
  Graph h;
  std::vector<std::int64_t> labels;  // dense id -> caller label
};

Instance parse_instance(std::istream& in);
Instance load_instance(const std::string& path);
std::string format_instance(const Instance& inst);

std::string certificate_to_json(const RainbowCertificate& cert);
RainbowCertificate certificate_from_json(const std::string& text);
RainbowCertificate load_certificate(const std::string& path);
void save_text(const std::string& path, const std::string& text);

// True iff the certificate's h_edges, read through its label_map, are exactly
// the instance's edges in the instance's labels.
bool certificate_matches_instance(const RainbowCertificate& cert, const Instance& inst);

// Adler-32 style checksum of a certificate document, for bench tables.
std::uint32_t checksum(const std::string& text);

}  // namespace rainbow
