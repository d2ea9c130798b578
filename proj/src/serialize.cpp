#include "factoradic/serialize.hpp"

#include <algorithm>
#include <utility>

#include "factoradic/error.hpp"

namespace factoradic {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::kParse, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) bad(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

std::vector<int> int_array(const Json& j, const std::string& what) {
  if (!j.is_array()) bad(what + " must be an array");
  std::vector<int> out;
  for (const Json& v : j) {
    if (!v.is_number_integer()) bad(what + " must hold integers");
    out.push_back(v.get<int>());
  }
  return out;
}

Rational rational_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) bad(std::string("field '") + key + "' must be a \"p/q\" string");
  return parse_rational(v.get<std::string>());
}

// Domain errors while rebuilding values from a file are input errors.
template <typename F>
auto rebuild(const std::string& what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kParse) throw;
    bad(what + ": " + e.what());
  }
}

Json per_position(const std::vector<std::vector<int>>& sets) {
  Json j = Json::object();
  for (std::size_t i = 0; i < sets.size(); ++i) j[std::to_string(i + 2)] = sets[i];
  return j;
}

std::vector<std::vector<int>> per_position_from(const Json& j, int depth, const std::string& what) {
  if (!j.is_object()) bad(what + " must be an object keyed by position");
  if (j.size() != static_cast<std::size_t>(depth - 1)) bad(what + " must cover positions 2..N");
  std::vector<std::vector<int>> out;
  for (int n = 2; n <= depth; ++n) {
    const std::string key = std::to_string(n);
    if (!j.contains(key)) bad(what + " lacks position " + key);
    out.push_back(int_array(j.at(key), what + "[" + key + "]"));
  }
  return out;
}

}  // namespace

Json to_json(const FnsNumber& x) { return {{"depth", x.depth()}, {"digits", x.digits()}}; }

FnsNumber fns_from_json(const Json& j) {
  const int depth = int_field(j, "depth");
  std::vector<int> digits = int_array(field(j, "digits"), "digits");
  if (static_cast<int>(digits.size()) + 1 != depth) bad("digits do not match depth");
  return rebuild("digit string", [&] { return FnsNumber(std::move(digits)); });
}

Json to_json(const BasicInterval& interval) {
  return {{"level", interval.level()}, {"prefix", interval.prefix()}};
}

BasicInterval interval_from_json(const Json& j) {
  const int level = int_field(j, "level");
  std::vector<int> prefix = int_array(field(j, "prefix"), "prefix");
  return rebuild("basic interval", [&] { return BasicInterval(level, std::move(prefix)); });
}

Json to_json(const Slalom& slalom) {
  return {{"depth", slalom.depth}, {"allowed", per_position(slalom.allowed)}};
}

Slalom slalom_from_json(const Json& j) {
  Slalom s;
  s.depth = int_field(j, "depth");
  if (s.depth < 2) bad("slalom depth must be >= 2");
  s.allowed = per_position_from(field(j, "allowed"), s.depth, "allowed");
  for (auto& a : s.allowed) std::sort(a.begin(), a.end());
  return s;
}

Json to_json(const TranslationCertificate& cert, const CertificateContext& context) {
  Json proofs = Json::array();
  for (const PositionProof& p : cert.proofs) {
    Json entry = {{"n", p.position}, {"y", p.y}};
    if (p.position >= kFirstFreePosition) {
      entry["forbidden"] = p.forbidden;
    } else {
      entry["rule"] = "zero-prefix";
    }
    proofs.push_back(std::move(entry));
  }
  Json samples = Json::array();
  for (const SampleCheck& s : cert.samples) {
    samples.push_back({{"q", s.q.digits()}, {"sum", s.sum.digits()}, {"carries", s.carries}});
  }
  Json j = {
      {"kind", "translation-certificate"},
      {"source", context.source},
      {"depth", cert.depth},
      {"shift", format_rational(cert.shift)},
      {"y", cert.y.digits()},
      {"levels", cert.levels},
      {"supports", per_position(cert.supports)},
      {"proofs", std::move(proofs)},
      {"samples", std::move(samples)},
      {"translate", format_rational(cert.translate())},
  };
  if (!context.oracle.empty()) j["oracle"] = context.oracle;
  if (context.height >= 0) j["height"] = context.height;
  return j;
}

TranslationCertificate certificate_from_json(const Json& j) {
  TranslationCertificate cert;
  cert.depth = int_field(j, "depth");
  if (cert.depth < 2) bad("certificate depth must be >= 2");
  cert.shift = rational_field(j, "shift");
  std::vector<int> y = int_array(field(j, "y"), "y");
  if (static_cast<int>(y.size()) + 1 != cert.depth) bad("y does not match depth");
  cert.y = rebuild("translation digits", [&] { return FnsNumber(std::move(y)); });
  cert.levels = int_array(field(j, "levels"), "levels");
  cert.supports = per_position_from(field(j, "supports"), cert.depth, "supports");

  const Json& proofs = field(j, "proofs");
  if (!proofs.is_array()) bad("proofs must be an array");
  for (const Json& p : proofs) {
    PositionProof proof;
    proof.position = int_field(p, "n");
    proof.y = int_field(p, "y");
    if (p.contains("forbidden")) proof.forbidden = int_array(p.at("forbidden"), "forbidden");
    cert.proofs.push_back(std::move(proof));
  }

  const Json& samples = field(j, "samples");
  if (!samples.is_array()) bad("samples must be an array");
  for (const Json& s : samples) {
    std::vector<int> q = int_array(field(s, "q"), "sample q");
    std::vector<int> sum = int_array(field(s, "sum"), "sample sum");
    cert.samples.push_back(rebuild("sample", [&] {
      return SampleCheck{FnsNumber(std::move(q)), FnsNumber(std::move(sum)),
                         int_array(field(s, "carries"), "sample carries")};
    }));
  }
  return cert;
}

Json to_json(const CoverReport& report, const CoverVerificationRecord& record) {
  Json blocks = Json::object();
  for (std::size_t i = 0; i < report.blocks.size(); ++i) blocks[std::to_string(i + 2)] = report.blocks[i];
  Json slaloms = Json::array();
  for (const CoverEntry& e : report.slaloms) {
    slaloms.push_back({{"choice", e.choice}, {"shift", format_rational(e.shift)}, {"y", e.y.digits()}});
  }
  return {
      {"kind", "cover-report"},
      {"depth", report.depth},
      {"policy", report.policy},
      {"mode", to_string(report.mode)},
      {"slalomCount", report.slalom_count.get_str()},
      {"lowerBound", format_rational(report.lower_bound)},
      {"blocks", std::move(blocks)},
      {"slaloms", std::move(slaloms)},
      {"verification",
       {{"mode", to_string(record.mode)},
        {"checked", record.checked},
        {"ok", record.ok},
        {"samples", record.samples},
        {"seed", record.seed}}},
  };
}

CoverReport cover_from_json(const Json& j) {
  CoverReport report;
  report.depth = int_field(j, "depth");
  if (report.depth < 2) bad("cover depth must be >= 2");
  const Json& policy = field(j, "policy");
  if (!policy.is_string()) bad("policy must be a string");
  report.policy = policy.get<std::string>();
  const Json& mode = field(j, "mode");
  if (!mode.is_string()) bad("mode must be a string");
  report.mode = rebuild("mode", [&] { return parse_cover_mode(mode.get<std::string>()); });
  const Json& count = field(j, "slalomCount");
  if (!count.is_string() || report.slalom_count.set_str(count.get<std::string>(), 10) != 0) {
    bad("slalomCount must be a decimal string");
  }
  report.lower_bound = rational_field(j, "lowerBound");

  const Json& blocks = field(j, "blocks");
  if (!blocks.is_object() || blocks.size() != static_cast<std::size_t>(report.depth - 1)) {
    bad("blocks must cover positions 2..N");
  }
  for (int n = 2; n <= report.depth; ++n) {
    const std::string key = std::to_string(n);
    if (!blocks.contains(key) || !blocks.at(key).is_array()) bad("blocks lacks position " + key);
    std::vector<std::vector<int>> partition;
    for (const Json& b : blocks.at(key)) partition.push_back(int_array(b, "block"));
    report.blocks.push_back(std::move(partition));
  }

  const Json& slaloms = field(j, "slaloms");
  if (!slaloms.is_array()) bad("slaloms must be an array");
  for (const Json& e : slaloms) {
    CoverEntry entry;
    const Json& choice = field(e, "choice");
    if (!choice.is_array()) bad("choice must be an array");
    for (const Json& c : choice) {
      if (!c.is_number_unsigned()) bad("choice entries must be block indices");
      entry.choice.push_back(c.get<std::size_t>());
    }
    if (entry.choice.size() != report.blocks.size()) bad("choice has the wrong length");
    for (std::size_t i = 0; i < entry.choice.size(); ++i) {
      if (entry.choice[i] >= report.blocks[i].size()) bad("choice index out of range");
    }
    entry.shift = rational_field(e, "shift");
    std::vector<int> y = int_array(field(e, "y"), "y");
    if (static_cast<int>(y.size()) + 1 != report.depth) bad("slalom y does not match depth");
    entry.y = rebuild("slalom translation digits", [&] { return FnsNumber(std::move(y)); });
    report.slaloms.push_back(std::move(entry));
  }
  return report;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace factoradic
