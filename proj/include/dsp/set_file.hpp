#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dsp/arithmetic.hpp"
#include "dsp/constructions.hpp"
#include "dsp/verifier.hpp"

namespace dsp {

inline constexpr std::string_view kSetFormat = "dsp-set/1";
inline constexpr std::string_view kCertFormat = "dsp-cert/1";

/// {"format_version", "n_limit", "elements", "meta"}. meta holds kind,
/// parameters and predicted_count, and optionally a "partition" object with
/// explicit small/medium/large prime lists.
struct SetFile {
  Int n_limit = 0;
  std::vector<Int> elements;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();

  /// Builds the set, honoring meta.partition when present.
  SubsetProductSet to_set() const;
};

SetFile to_set_file(const ConstructionOutput& out);
SetFile to_set_file(const SubsetProductSet& set, std::string kind);

/// Two-space indented JSON with a trailing newline.
std::string write_set_file(const SetFile& file);

/// Accepts the JSON format or plain text with one integer per line (blank
/// lines and lines starting with '#' are skipped). For plain text n_limit is
/// `n_override` if given, else the largest element. Throws ParseError.
SetFile parse_set_file(const std::string& text, std::optional<Int> n_override = std::nullopt);

struct CertificateFile {
  std::vector<Int> subset_b;
  std::vector<Int> subset_c;
  std::string product;  // decimal
};

CertificateFile to_certificate_file(const CollisionCertificate& cert);
std::string write_certificate_file(const CertificateFile& file);
CertificateFile parse_certificate_file(const std::string& text);

/// [{"k": 1, "g": 1, "elements": [1]}, ...]. Throws ParseError on malformed
/// JSON and InvalidInput when a row breaks the table invariants.
EkTable parse_ek_table(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace dsp
