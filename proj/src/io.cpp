#include "rainbow/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace rainbow {

namespace {

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

bool blank(const std::string& s) { return s.find_first_not_of(" \t\r") == std::string::npos; }

std::int64_t parse_label(const std::string& token, int line_no) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(token, &used);
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line_no) + ": '" + token + "' is not an integer");
  }
  if (used != token.size() || v < 0)
    throw ParseError("line " + std::to_string(line_no) + ": label must be a non-negative integer");
  return v;
}

}  // namespace

Instance parse_instance(std::istream& in) {
  Instance inst;
  std::map<std::int64_t, Vertex> dense;
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  bool have_n = false;
  int line_no = 0;
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = strip_comment(raw);
    if (blank(line)) continue;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (!have_n) {
      if (tok.size() != 1) throw ParseError("line " + std::to_string(line_no) + ": expected the edge count n");
      const std::int64_t n = parse_label(tok[0], line_no);
      if (n < 1) throw ParseError("n must be at least 1");
      if (n > 100000) throw ParseError("n is unreasonably large");
      inst.n = static_cast<int>(n);
      have_n = true;
      continue;
    }
    if (tok.size() != 2) throw ParseError("line " + std::to_string(line_no) + ": expected 'u v'");
    const std::int64_t a = parse_label(tok[0], line_no);
    const std::int64_t b = parse_label(tok[1], line_no);
    if (a == b) throw ParseError("line " + std::to_string(line_no) + ": loop edge");
    if (!seen.insert({std::min(a, b), std::max(a, b)}).second)
      throw ParseError("line " + std::to_string(line_no) + ": duplicate edge");
    if (static_cast<int>(inst.h.edges.size()) == inst.n)
      throw ParseError("more than n = " + std::to_string(inst.n) + " edge lines");
    auto id = [&](std::int64_t label) {
      auto [it, fresh] = dense.emplace(label, static_cast<Vertex>(inst.labels.size()));
      if (fresh) inst.labels.push_back(label);
      return it->second;
    };
    const Vertex u = id(a);
    const Vertex v = id(b);
    inst.h.edges.emplace_back(u, v);
  }
  if (!have_n) throw ParseError("empty instance");
  if (static_cast<int>(inst.h.edges.size()) != inst.n)
    throw ParseError("expected " + std::to_string(inst.n) + " edge lines, found " +
                     std::to_string(inst.h.edges.size()));
  inst.h.vertex_count = static_cast<int>(inst.labels.size());
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_instance(in);
}

std::string format_instance(const Instance& inst) {
  std::ostringstream os;
  os << inst.n << '\n';
  for (const Edge& e : inst.h.edges)
    os << inst.labels[static_cast<std::size_t>(e.u)] << ' ' << inst.labels[static_cast<std::size_t>(e.v)] << '\n';
  return os.str();
}

std::string certificate_to_json(const RainbowCertificate& cert) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["n"] = cert.n;
  doc["order"] = cert.decomposition.order();
  doc["label_map"] = cert.label_map;
  ordered_json classes = ordered_json::array();
  for (const EdgeSet& cls : cert.decomposition.classes()) {
    ordered_json list = ordered_json::array();
    for (const Edge& e : cls) list.push_back({e.u, e.v});
    classes.push_back(std::move(list));
  }
  doc["classes"] = std::move(classes);
  ordered_json h = ordered_json::array();
  for (const Edge& e : cert.h_edges) h.push_back({e.u, e.v});
  doc["h_edges"] = std::move(h);
  ordered_json assignment = ordered_json::array();
  for (int c : cert.assignment) assignment.push_back(c + 1);  // classes are 1-based on disk
  doc["assignment"] = std::move(assignment);
  doc["seed"] = cert.seed;
  doc["pipeline_trace"] = cert.pipeline_trace;
  return doc.dump(1) + "\n";
}

RainbowCertificate certificate_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("certificate is not valid JSON: ") + e.what());
  }
  try {
    RainbowCertificate cert;
    cert.n = doc.at("n").get<int>();
    const int order = doc.at("order").get<int>();
    const auto& classes = doc.at("classes");
    if (cert.n < 1 || order < 1 || order > 200001 || !classes.is_array())
      throw ParseError("certificate header out of range");
    cert.decomposition = Decomposition(order, static_cast<int>(classes.size()));
    for (std::size_t i = 0; i < classes.size(); ++i)
      for (const auto& pair : classes[i]) {
        const Edge e(pair.at(0).get<int>(), pair.at(1).get<int>());
        if (e.u < 0 || e.v >= order) throw ParseError("class edge outside K_order");
        if (cert.decomposition.at(static_cast<int>(i)).contains(e)) throw ParseError("edge repeated in a class");
        cert.decomposition.at(static_cast<int>(i)).insert(e);
      }
    for (const auto& pair : doc.at("h_edges")) cert.h_edges.emplace_back(pair.at(0).get<int>(), pair.at(1).get<int>());
    for (const auto& c : doc.at("assignment")) cert.assignment.push_back(c.get<int>() - 1);
    cert.label_map = doc.at("label_map").get<std::vector<std::int64_t>>();
    cert.seed = doc.at("seed").get<std::uint64_t>();
    cert.pipeline_trace = doc.at("pipeline_trace").get<std::vector<std::string>>();
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what());
  } catch (const PreconditionViolation& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what());
  }
}

RainbowCertificate load_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return certificate_from_json(buf.str());
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

bool certificate_matches_instance(const RainbowCertificate& cert, const Instance& inst) {
  if (cert.n != inst.n || cert.h_edges.size() != inst.h.edges.size()) return false;
  auto label_of = [](const std::vector<std::int64_t>& map, Vertex v, std::int64_t& out) {
    if (v < 0 || static_cast<std::size_t>(v) >= map.size()) return false;
    out = map[static_cast<std::size_t>(v)];
    return true;
  };
  std::set<std::pair<std::int64_t, std::int64_t>> want, got;
  for (const Edge& e : inst.h.edges) {
    std::int64_t a = 0, b = 0;
    label_of(inst.labels, e.u, a);
    label_of(inst.labels, e.v, b);
    want.insert({std::min(a, b), std::max(a, b)});
  }
  for (const Edge& e : cert.h_edges) {
    std::int64_t a = 0, b = 0;
    if (!label_of(cert.label_map, e.u, a) || !label_of(cert.label_map, e.v, b)) return false;
    got.insert({std::min(a, b), std::max(a, b)});
  }
  return want == got;
}

std::uint32_t checksum(const std::string& text) {
  std::uint32_t a = 1, b = 0;
  for (unsigned char ch : text) {
    a = (a + ch) % 65521u;
    b = (b + a) % 65521u;
  }
  return (b << 16) | a;
}

}  // namespace rainbow
