#pragma once

// JSON forms of the library's values. Rationals are "p/q" strings, digit
// strings are arrays indexed from position 2, per-position maps are keyed
// by the decimal position.

#include <string>

#include "factoradic/c0.hpp"
#include "factoradic/certificate.hpp"
#include "factoradic/fns.hpp"
#include "factoradic/slalom.hpp"
#include "factoradic/translate.hpp"
#include "json.hpp"

namespace factoradic {

using Json = nlohmann::json;

Json to_json(const FnsNumber& x);  // {"depth": N, "digits": [...]}
FnsNumber fns_from_json(const Json& j);

Json to_json(const BasicInterval& interval);  // {"level": n, "prefix": [...]}
BasicInterval interval_from_json(const Json& j);

Json to_json(const Slalom& slalom);  // {"depth": N, "allowed": {"2": [...], ...}}
Slalom slalom_from_json(const Json& j);

struct CertificateContext {
  std::string source;  // "perfect-set" or "slalom"
  std::string oracle;  // oracle name, perfect-set certificates only
  int height = -1;
};

Json to_json(const TranslationCertificate& cert, const CertificateContext& context);
TranslationCertificate certificate_from_json(const Json& j);

struct CoverVerificationRecord {
  CoverMode mode = CoverMode::kExhaustive;
  std::uint64_t checked = 0;
  bool ok = false;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

Json to_json(const CoverReport& report, const CoverVerificationRecord& record);
CoverReport cover_from_json(const Json& j);

// Parses text; throws Error(kParse) on malformed JSON.
Json parse_json(const std::string& text);

// Deterministic dump (sorted keys, two-space indent, trailing newline).
std::string dump(const Json& j);

}  // namespace factoradic
