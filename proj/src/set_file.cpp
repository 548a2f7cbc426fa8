#include "dsp/set_file.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "dsp/error.hpp"

namespace dsp {

using nlohmann::ordered_json;

namespace {

std::vector<Int> int_list(const ordered_json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + " must be an array");
  std::vector<Int> out;
  for (const auto& v : j) {
    if (!v.is_number_unsigned()) throw ParseError(what + " must hold nonnegative integers");
    out.push_back(v.get<Int>());
  }
  return out;
}

const ordered_json& field(const ordered_json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + name + "\"");
  return *it;
}

ordered_json parse_json(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

SetFile parse_plain(const std::string& text, std::optional<Int> n_override) {
  SetFile f;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t\r");
    const std::string tok = line.substr(b, e - b + 1);
    if (!std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }) || tok.size() > 19) {
      throw ParseError("line " + std::to_string(lineno) + ": expected a nonnegative integer, got \"" + tok + "\"");
    }
    f.elements.push_back(std::stoull(tok));
  }
  std::sort(f.elements.begin(), f.elements.end());
  if (std::adjacent_find(f.elements.begin(), f.elements.end()) != f.elements.end()) {
    throw ParseError("repeated element");
  }
  f.n_limit = n_override ? *n_override : (f.elements.empty() ? 1 : f.elements.back());
  f.meta["kind"] = "plain";
  return f;
}

}  // namespace

SubsetProductSet SetFile::to_set() const {
  try {
    if (meta.contains("partition")) {
      const auto& p = meta["partition"];
      auto part = PrimePartition::custom(n_limit, int_list(field(p, "small"), "partition.small"),
                                         int_list(field(p, "medium"), "partition.medium"),
                                         int_list(field(p, "large"), "partition.large"));
      return SubsetProductSet(std::move(part), elements);
    }
    return SubsetProductSet(n_limit, elements);
  } catch (const InvalidInput& e) {
    throw ParseError(std::string("set file does not describe a valid set: ") + e.what());
  }
}

SetFile to_set_file(const ConstructionOutput& out) {
  SetFile f;
  f.n_limit = out.set.n_limit();
  f.elements = out.set.values();
  f.meta["kind"] = out.kind;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : out.parameters) params[k] = v;
  f.meta["parameters"] = params;
  f.meta["predicted_count"] = out.predicted_count;
  return f;
}

SetFile to_set_file(const SubsetProductSet& set, std::string kind) {
  SetFile f;
  f.n_limit = set.n_limit();
  f.elements = set.values();
  f.meta["kind"] = std::move(kind);
  if (set.partition().is_custom()) {
    const auto& p = set.partition();
    f.meta["partition"] = {{"small", p.small()}, {"medium", p.medium()}, {"large", p.large()}};
  }
  return f;
}

std::string write_set_file(const SetFile& file) {
  ordered_json j;
  j["format_version"] = kSetFormat;
  j["n_limit"] = file.n_limit;
  j["elements"] = file.elements;
  j["meta"] = file.meta;
  return j.dump(2) + "\n";
}

SetFile parse_set_file(const std::string& text, std::optional<Int> n_override) {
  const auto b = text.find_first_not_of(" \t\r\n");
  if (b == std::string::npos || text[b] != '{') return parse_plain(text, n_override);
  const ordered_json j = parse_json(text);
  const auto& version = field(j, "format_version");
  if (!version.is_string() || version.get<std::string>() != kSetFormat) {
    throw ParseError("unsupported format_version, expected " + std::string(kSetFormat));
  }
  SetFile f;
  const auto& n = field(j, "n_limit");
  if (!n.is_number_unsigned()) throw ParseError("n_limit must be a nonnegative integer");
  f.n_limit = n_override ? *n_override : n.get<Int>();
  f.elements = int_list(field(j, "elements"), "elements");
  for (std::size_t i = 0; i < f.elements.size(); ++i) {
    if (f.elements[i] == 0 || f.elements[i] > f.n_limit) {
      throw ParseError("element " + std::to_string(f.elements[i]) + " outside [1, n_limit]");
    }
    if (i > 0 && f.elements[i] <= f.elements[i - 1]) throw ParseError("elements must be strictly ascending");
  }
  if (j.contains("meta")) {
    if (!j["meta"].is_object()) throw ParseError("meta must be an object");
    f.meta = j["meta"];
  }
  return f;
}

CertificateFile to_certificate_file(const CollisionCertificate& cert) {
  return {cert.subset_b, cert.subset_c, product_of(cert.subset_b).str()};
}

std::string write_certificate_file(const CertificateFile& file) {
  ordered_json j;
  j["format_version"] = kCertFormat;
  j["subset_b"] = file.subset_b;
  j["subset_c"] = file.subset_c;
  j["product"] = file.product;
  return j.dump(2) + "\n";
}

CertificateFile parse_certificate_file(const std::string& text) {
  const ordered_json j = parse_json(text);
  const auto& version = field(j, "format_version");
  if (!version.is_string() || version.get<std::string>() != kCertFormat) {
    throw ParseError("unsupported format_version, expected " + std::string(kCertFormat));
  }
  CertificateFile f;
  f.subset_b = int_list(field(j, "subset_b"), "subset_b");
  f.subset_c = int_list(field(j, "subset_c"), "subset_c");
  const auto& p = field(j, "product");
  if (!p.is_string()) throw ParseError("product must be a decimal string");
  f.product = p.get<std::string>();
  return f;
}

EkTable parse_ek_table(const std::string& text) {
  const ordered_json j = parse_json(text);
  if (!j.is_array()) throw ParseError("EkTable file must be an array of rows");
  std::vector<EkRow> rows;
  for (const auto& r : j) {
    if (!r.is_object()) throw ParseError("EkTable row must be an object");
    const auto& k = field(r, "k");
    const auto& g = field(r, "g");
    if (!k.is_number_unsigned() || !g.is_number_unsigned()) throw ParseError("k and g must be nonnegative integers");
    rows.push_back({k.get<unsigned>(), g.get<Int>(), int_list(field(r, "elements"), "elements")});
  }
  return EkTable(std::move(rows));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << content;
  if (!out) throw InvalidInput("write failed for " + path);
}

}  // namespace dsp
