// factoradic: embed perfect sets into translates of C0, run the slalom
// covering experiment, and re-check the certificates they produce.
//
// Exit codes: 0 success, 1 verification failure, 2 input or parse error,
// 3 budget exceeded.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "factoradic/error.hpp"
#include "factoradic/serialize.hpp"
#include "factoradic/slalom.hpp"
#include "factoradic/translate.hpp"

namespace {

using namespace factoradic;

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kBudget:
      return kExitBudget;
    case ErrorKind::kInfeasible:
      return kExitVerification;
    default:
      return kExitInput;
  }
}

int report_error(const std::string& kind, const std::string& message, int code) {
  std::cerr << Json{{"error", kind}, {"message", message}}.dump() << "\n";
  return code;
}

int report_failures(const VerificationReport& report) {
  Json failures = Json::array();
  for (const Finding& f : report.failures) {
    failures.push_back({{"stage", to_string(f.stage)}, {"position", f.position}, {"message", f.message}});
  }
  std::cerr << Json{{"error", "verification"}, {"failures", failures}}.dump() << "\n";
  return kExitVerification;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kParse, "cannot write " + path);
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kParse, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string digits_text(const FnsNumber& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.digits().size(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(x.digits()[i]);
  }
  return s + ")";
}

struct EmbedArgs {
  std::string oracle = "cantor-scaled";
  int height = 3;
  std::string out = "certificate.json";
  std::size_t samples = 64;
  int max_level = 1024;
};

int run_embed(const EmbedArgs& args) {
  EmbedOptions options;
  options.samples = args.samples;
  options.build.max_level = args.max_level;
  const EmbedResult result = embed(make_oracle(args.oracle), args.height, options);
  const TranslationCertificate& cert = result.certificate;
  write_file(args.out, dump(to_json(cert, {"perfect-set", args.oracle, args.height})));

  std::cout << "oracle      " << args.oracle << "\n";
  std::cout << "levels      ";
  for (int l : cert.levels) std::cout << l << " ";
  std::cout << "\nleaves      " << result.tree.leaves().size() << "\n";
  std::cout << "shift       " << format_rational(result.shift) << "\n";
  std::cout << "y digits    " << digits_text(cert.y) << "\n";
  std::cout << "translate   x = " << format_rational(cert.translate())
            << " (exact through depth " << cert.depth << "; Q is inside C0 + x)\n";
  for (const std::string& fact : result.report.facts) std::cout << "ok          " << fact << "\n";
  std::cout << "certificate " << args.out << "\n";
  return result.report.ok() ? kExitOk : report_failures(result.report);
}

struct CoverArgs {
  int depth = 8;
  std::string mode = "exhaustive";
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  std::string policy = "default";
  std::string out = "cover.json";
};

int run_cover(const CoverArgs& args) {
  const CoverMode mode = parse_cover_mode(args.mode);
  const FPolicy policy = FPolicy::parse(args.policy);
  const CoverReport report = build_cover(args.depth, policy, mode);
  const CoverVerdict verdict = verify_cover(report, mode, args.samples, args.seed);
  CoverVerificationRecord record{mode, verdict.checked, verdict.ok,
                                 mode == CoverMode::kSampled ? args.samples : 0,
                                 mode == CoverMode::kSampled ? args.seed : 0};
  write_file(args.out, dump(to_json(report, record)));

  std::cout << "depth        " << report.depth << "\n";
  std::cout << "policy       " << report.policy << "\n";
  std::cout << "slaloms      " << report.slalom_count.get_str() << "\n";
  std::cout << "lower bound  " << format_rational(report.lower_bound) << "\n";
  std::cout << "strings      " << string_count(report.depth).get_str() << "\n";
  std::cout << "checked      " << verdict.checked << " (" << to_string(mode) << ")\n";
  std::cout << "report       " << args.out << "\n";
  if (!verdict.ok) {
    Json err = {{"error", "verification"}, {"reason", verdict.reason}};
    if (verdict.counterexample) err["counterexample"] = verdict.counterexample->digits();
    std::cerr << err.dump() << "\n";
    return kExitVerification;
  }
  std::cout << "ok           " << verdict.reason << "\n";
  return kExitOk;
}

struct SlalomArgs {
  std::string in;
  std::string policy = "default";
  std::string out = "slalom-certificate.json";
  std::size_t samples = 100;
  std::uint64_t seed = 1;
};

int run_slalom(const SlalomArgs& args) {
  const Slalom slalom = slalom_from_json(parse_json(read_file(args.in)));
  const FPolicy policy = FPolicy::parse(args.policy);
  TranslationCertificate cert = slalom_translation(slalom, policy);
  attach_slalom_samples(cert, slalom, std::min<std::size_t>(args.samples, 64), args.seed);
  const VerificationReport report = verify_slalom(slalom, cert, args.samples, args.seed);
  write_file(args.out, dump(to_json(cert, {"slalom", "", -1})));
  std::cout << "shift       " << format_rational(cert.shift) << "\n";
  std::cout << "y digits    " << digits_text(cert.y) << "\n";
  std::cout << "translate   x = " << format_rational(cert.translate()) << "\n";
  for (const std::string& fact : report.facts) std::cout << "ok          " << fact << "\n";
  std::cout << "certificate " << args.out << "\n";
  return report.ok() ? kExitOk : report_failures(report);
}

struct CheckArgs {
  std::string path;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
};

int run_check(const CheckArgs& args) {
  const Json j = parse_json(read_file(args.path));
  const std::string kind = j.is_object() && j.contains("kind") && j.at("kind").is_string()
                               ? j.at("kind").get<std::string>()
                               : "";
  if (kind == "translation-certificate") {
    const TranslationCertificate cert = certificate_from_json(j);
    const VerificationReport report = verify_certificate_standalone(cert, args.samples, args.seed);
    for (const std::string& fact : report.facts) std::cout << "ok  " << fact << "\n";
    return report.ok() ? kExitOk : report_failures(report);
  }
  if (kind == "cover-report") {
    const CoverReport report = cover_from_json(j);
    const CoverMode mode = report.slaloms.empty() ? CoverMode::kSampled : CoverMode::kExhaustive;
    const CoverVerdict verdict = verify_cover(report, mode, args.samples, args.seed);
    if (!verdict.ok) {
      Json err = {{"error", "verification"}, {"reason", verdict.reason}};
      if (verdict.counterexample) err["counterexample"] = verdict.counterexample->digits();
      std::cerr << err.dump() << "\n";
      return kExitVerification;
    }
    std::cout << "ok  " << verdict.reason << " (" << verdict.checked << " checked, "
              << to_string(mode) << ")\n";
    return kExitOk;
  }
  throw Error(ErrorKind::kParse, "unknown artifact kind '" + kind + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact factorial-base constructions around the compact nullset C0"};
  app.require_subcommand(1);

  EmbedArgs embed_args;
  auto* embed_cmd = app.add_subcommand("embed", "Embed a perfect subset of an oracle set into a translate of C0");
  embed_cmd->add_option("--oracle", embed_args.oracle, "Catalog name or file:<path>");
  embed_cmd->add_option("--height", embed_args.height, "Tree height K")->check(CLI::Range(0, 28));
  embed_cmd->add_option("--out", embed_args.out, "Certificate output path");
  embed_cmd->add_option("--samples", embed_args.samples, "Leaf samples to check and record");
  embed_cmd->add_option("--max-level", embed_args.max_level, "Separation level budget");

  CoverArgs cover_args;
  auto* cover_cmd = app.add_subcommand("cover", "Cover all digit strings of a depth by translated slaloms");
  cover_cmd->add_option("--depth", cover_args.depth, "Depth N")->check(CLI::Range(2, 100000));
  cover_cmd->add_option("--mode", cover_args.mode, "exhaustive or sampled");
  cover_cmd->add_option("--samples", cover_args.samples, "Random strings in sampled mode");
  cover_cmd->add_option("--seed", cover_args.seed, "Random seed");
  cover_cmd->add_option("--f", cover_args.policy, "f-policy: default or table:a2,a3,...");
  cover_cmd->add_option("--out", cover_args.out, "Cover report output path");

  SlalomArgs slalom_args;
  auto* slalom_cmd = app.add_subcommand("slalom", "Translate one f-slalom into C0");
  slalom_cmd->add_option("--in", slalom_args.in, "Slalom file")->required();
  slalom_cmd->add_option("--f", slalom_args.policy, "f-policy: default or table:a2,a3,...");
  slalom_cmd->add_option("--out", slalom_args.out, "Certificate output path");
  slalom_cmd->add_option("--samples", slalom_args.samples, "Random members to check");
  slalom_cmd->add_option("--seed", slalom_args.seed, "Random seed");

  CheckArgs check_args;
  auto* check_cmd = app.add_subcommand("check", "Re-verify a certificate or cover report from its file");
  check_cmd->add_option("path", check_args.path, "Artifact to check")->required();
  check_cmd->add_option("--samples", check_args.samples, "Extra random checks");
  check_cmd->add_option("--seed", check_args.seed, "Random seed");

  auto* oracles_cmd = app.add_subcommand("oracles", "List the built-in perfect-set catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*embed_cmd) return run_embed(embed_args);
    if (*cover_cmd) return run_cover(cover_args);
    if (*slalom_cmd) return run_slalom(slalom_args);
    if (*check_cmd) return run_check(check_args);
    if (*oracles_cmd) {
      for (const std::string& name : catalog_names()) std::cout << name << "\n";
      std::cout << "file:<path>\n";
      return kExitOk;
    }
  } catch (const Error& e) {
    return report_error(std::string(to_string(e.kind())), e.what(), exit_code_for(e.kind()));
  }
  return kExitInput;
}
