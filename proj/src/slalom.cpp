#include "factoradic/slalom.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <sstream>
#include <utility>

#include "factoradic/c0.hpp"
#include "factoradic/error.hpp"
#include "factoradic/random.hpp"

namespace factoradic {

int default_f(int position) {
  if (position < 2) {
    throw Error(ErrorKind::kDomain, "f is defined from position 2");
  }
  if (position <= 5) return 1;
  const int log2 = static_cast<int>(std::bit_width(static_cast<unsigned>(position))) - 1;
  return std::min(log2, (position - 2) / 2);
}

FPolicy::FPolicy(std::string name, std::function<int(int)> f)
    : name_(std::move(name)), f_(std::move(f)) {}

FPolicy FPolicy::default_policy() { return FPolicy("default", default_f); }

FPolicy FPolicy::parse(const std::string& spec) {
  if (spec == "default") return default_policy();
  if (spec.rfind("table:", 0) == 0) {
    std::vector<int> table;
    std::stringstream in(spec.substr(6));
    std::string item;
    while (std::getline(in, item, ',')) {
      char* end = nullptr;
      const long v = std::strtol(item.c_str(), &end, 10);
      if (item.empty() || *end != '\0') {
        throw Error(ErrorKind::kInvalidArgument, "bad f-policy entry '" + item + "'");
      }
      table.push_back(static_cast<int>(v));
    }
    return FPolicy(spec, [table](int n) {
      const auto i = static_cast<std::size_t>(n - 2);
      return n >= 2 && i < table.size() ? table[i] : default_f(n);
    });
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown f-policy '" + spec + "'");
}

void FPolicy::validate(int depth) const {
  for (int n = 2; n <= depth; ++n) {
    const int v = f_(n);
    const bool ok = n <= 5 ? v == 1 : (v >= 1 && 2 * v < n - 1);
    if (!ok) {
      throw Error(ErrorKind::kInvalidArgument,
                  "f-policy '" + name_ + "' gives f(" + std::to_string(n) + ") = " + std::to_string(v) +
                      "; need f(2..5) = 1 and 1 <= f(n) < (n-1)/2 beyond");
    }
  }
}

bool Slalom::contains(const FnsNumber& s) const {
  if (s.depth() != depth) return false;
  for (int n = 2; n <= depth; ++n) {
    const auto& a = at(n);
    if (!std::binary_search(a.begin(), a.end(), s.digit(n))) return false;
  }
  return true;
}

void Slalom::validate(const FPolicy& f) const {
  if (depth < 2 || allowed.size() != static_cast<std::size_t>(depth - 1)) {
    throw Error(ErrorKind::kInvalidArgument, "slalom needs one digit set per position 2..N");
  }
  f.validate(depth);
  for (int n = 2; n <= depth; ++n) {
    const auto& a = at(n);
    const bool well_formed = !a.empty() && std::is_sorted(a.begin(), a.end()) &&
                             std::adjacent_find(a.begin(), a.end()) == a.end() && a.front() >= 0 &&
                             a.back() <= n - 1;
    if (!well_formed) {
      throw Error(ErrorKind::kInvalidArgument,
                  "A_" + std::to_string(n) + " must be a nonempty sorted subset of {0.." +
                      std::to_string(n - 1) + "}");
    }
    if (static_cast<int>(a.size()) > f(n)) {
      throw Error(ErrorKind::kInvalidArgument, "|A_" + std::to_string(n) + "| = " +
                                                   std::to_string(a.size()) + " exceeds f(" +
                                                   std::to_string(n) + ") = " + std::to_string(f(n)));
    }
  }
}

TranslationCertificate slalom_translation(const Slalom& slalom, const FPolicy& f) {
  slalom.validate(f);
  Rational shift(0);
  std::vector<std::vector<int>> supports;
  for (int n = 2; n <= slalom.depth; ++n) {
    if (n < kFirstFreePosition) {
      shift -= Rational(slalom.at(n).front()) * inverse_factorial(static_cast<unsigned long>(n));
      supports.push_back({0});
    } else {
      supports.push_back(slalom.at(n));
    }
  }
  shift.canonicalize();
  return certify_supports(std::move(supports), std::move(shift));
}

FnsNumber shifted_member(const FnsNumber& s, const TranslationCertificate& cert) {
  Rational moved = fns_to_rational(s) + cert.shift;
  moved.canonicalize();
  if (moved < 0 || moved >= 1) {
    throw Error(ErrorKind::kDomain, "shifted member leaves [0, 1)");
  }
  Expansion e = expand(moved, s.depth());
  if (e.residual != 0) {
    throw Error(ErrorKind::kDomain, "shift does not keep the member at depth " + std::to_string(s.depth()));
  }
  return e.digits;
}

namespace {

std::optional<Finding> check_member(const FnsNumber& s, const TranslationCertificate& cert) {
  FnsNumber q = FnsNumber::zero(2);
  try {
    q = shifted_member(s, cert);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kDomain) throw;
    return Finding{FindingStage::kNumeric, 0, e.what()};
  }
  return check_sample(q, cert.y).failure;
}

FnsNumber random_member(const Slalom& slalom, std::mt19937_64& rng) {
  std::vector<int> digits;
  for (int n = 2; n <= slalom.depth; ++n) {
    const auto& a = slalom.at(n);
    digits.push_back(a[uniform_below(rng, a.size())]);
  }
  return FnsNumber(std::move(digits));
}

FnsNumber extreme_member(const Slalom& slalom, bool largest) {
  std::vector<int> digits;
  for (int n = 2; n <= slalom.depth; ++n) digits.push_back(largest ? slalom.at(n).back() : slalom.at(n).front());
  return FnsNumber(std::move(digits));
}

}  // namespace

VerificationReport verify_slalom(const Slalom& slalom, const TranslationCertificate& cert,
                                 std::size_t samples, std::uint64_t seed) {
  VerificationReport report;
  if (cert.depth != slalom.depth) {
    report.failures.push_back({FindingStage::kStructure, 0, "certificate depth differs from the slalom"});
    return report;
  }
  for (int n = kFirstFreePosition; n <= slalom.depth; ++n) {
    if (cert.support(n) != slalom.at(n)) {
      report.failures.push_back({FindingStage::kStructure, n,
                                 "support at position " + std::to_string(n) + " differs from A_n"});
    }
  }
  report.merge(check_symbolic(cert));
  report.merge(check_stored_samples(cert));

  std::mt19937_64 rng(seed);
  std::size_t drawn = 0;
  for (; drawn < samples; ++drawn) {
    if (auto failure = check_member(random_member(slalom, rng), cert)) {
      report.failures.push_back(*failure);
      ++drawn;
      break;
    }
  }
  report.numeric_samples += drawn;
  if (drawn > 0 && report.stage_ok(FindingStage::kNumeric)) {
    report.facts.push_back("numeric: " + std::to_string(drawn) + " members of S* land in C0");
  }
  return report;
}

void attach_slalom_samples(TranslationCertificate& cert, const Slalom& slalom, std::size_t count,
                           std::uint64_t seed) {
  std::vector<FnsNumber> members;
  if (count > 0) members.push_back(extreme_member(slalom, false));
  if (count > 1) members.push_back(extreme_member(slalom, true));
  std::mt19937_64 rng(seed);
  while (members.size() < count) members.push_back(random_member(slalom, rng));
  for (const FnsNumber& s : members) {
    SampleOutcome outcome = check_sample(shifted_member(s, cert), cert.y);
    if (outcome.check) cert.samples.push_back(std::move(*outcome.check));
  }
}

const char* to_string(CoverMode mode) noexcept {
  return mode == CoverMode::kExhaustive ? "exhaustive" : "sampled";
}

CoverMode parse_cover_mode(const std::string& text) {
  if (text == "exhaustive") return CoverMode::kExhaustive;
  if (text == "sampled") return CoverMode::kSampled;
  throw Error(ErrorKind::kInvalidArgument, "mode must be 'exhaustive' or 'sampled'");
}

Slalom CoverReport::slalom_of(const std::vector<std::size_t>& choice) const {
  if (choice.size() != blocks.size()) {
    throw Error(ErrorKind::kInvalidArgument, "block choice has the wrong length");
  }
  Slalom s;
  s.depth = depth;
  for (std::size_t i = 0; i < choice.size(); ++i) {
    if (choice[i] >= blocks[i].size()) {
      throw Error(ErrorKind::kInvalidArgument, "block index out of range");
    }
    s.allowed.push_back(blocks[i][choice[i]]);
  }
  return s;
}

BigInt string_count(int depth) { return factorial(static_cast<unsigned long>(depth)); }

std::uint64_t exhaustive_budget() {
  if (const char* env = std::getenv("FACTORADIC_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return 40320;
}

namespace {

void require_budget(int depth, std::optional<std::uint64_t> budget) {
  const std::uint64_t limit = budget.value_or(exhaustive_budget());
  if (string_count(depth) > BigInt(std::to_string(limit))) {
    throw Error(ErrorKind::kBudget, "exhaustive mode at depth " + std::to_string(depth) + " needs " +
                                        string_count(depth).get_str() + " strings; budget is " +
                                        std::to_string(limit));
  }
}

// Advances a mixed-radix counter; false after the last value.
bool advance(std::vector<std::size_t>& counter, const std::vector<std::size_t>& radices) {
  for (std::size_t i = counter.size(); i-- > 0;) {
    if (++counter[i] < radices[i]) return true;
    counter[i] = 0;
  }
  return false;
}

}  // namespace

CoverReport build_cover(int depth, const FPolicy& f, CoverMode mode,
                        std::optional<std::uint64_t> budget) {
  if (depth < 2) throw Error(ErrorKind::kDomain, "depth must be >= 2");
  f.validate(depth);
  if (mode == CoverMode::kExhaustive) require_budget(depth, budget);

  CoverReport report;
  report.depth = depth;
  report.policy = f.name();
  report.mode = mode;
  report.slalom_count = 1;
  BigInt digits_product = 1;
  BigInt f_product = 1;
  for (int n = 2; n <= depth; ++n) {
    const int width = f(n);
    std::vector<std::vector<int>> partition;
    for (int start = 0; start < n; start += width) {
      std::vector<int> block;
      for (int d = start; d < std::min(start + width, n); ++d) block.push_back(d);
      partition.push_back(std::move(block));
    }
    report.slalom_count *= static_cast<unsigned long>(partition.size());
    digits_product *= n;
    f_product *= width;
    report.blocks.push_back(std::move(partition));
  }
  report.lower_bound = Rational(digits_product, f_product);
  report.lower_bound.canonicalize();
  if (Rational(report.slalom_count) < report.lower_bound) {
    throw Error(ErrorKind::kInfeasible, "slalom count fell below the counting bound");
  }

  if (mode == CoverMode::kExhaustive) {
    std::vector<std::size_t> radices;
    for (const auto& partition : report.blocks) radices.push_back(partition.size());
    std::vector<std::size_t> choice(radices.size(), 0);
    do {
      TranslationCertificate cert = slalom_translation(report.slalom_of(choice), f);
      report.slaloms.push_back({choice, std::move(cert.shift), std::move(cert.y)});
    } while (advance(choice, radices));
  }
  return report;
}

namespace {

// Certificate for one listed slalom, rebuilt from the report alone.
TranslationCertificate entry_certificate(const CoverReport& report, const Slalom& slalom,
                                         const CoverEntry& entry) {
  TranslationCertificate cert;
  cert.depth = report.depth;
  cert.shift = entry.shift;
  cert.y = entry.y;
  for (int n = 2; n <= report.depth; ++n) {
    cert.supports.push_back(n < kFirstFreePosition ? std::vector<int>{0} : slalom.at(n));
  }
  return cert;
}

std::uint64_t rank_of(const FnsNumber& s) {
  std::uint64_t r = 0;
  for (int n = 2; n <= s.depth(); ++n) r = r * static_cast<std::uint64_t>(n) + s.digit(n);
  return r;
}

FnsNumber unrank(std::uint64_t r, int depth) {
  std::vector<int> digits(static_cast<std::size_t>(depth - 1));
  for (int n = depth; n >= 2; --n) {
    digits[static_cast<std::size_t>(n - 2)] = static_cast<int>(r % static_cast<std::uint64_t>(n));
    r /= static_cast<std::uint64_t>(n);
  }
  return FnsNumber(std::move(digits));
}

CoverVerdict reject(std::uint64_t checked, FnsNumber counterexample, std::string reason) {
  return {false, checked, std::move(counterexample), std::move(reason)};
}

}  // namespace

CoverVerdict verify_cover(const CoverReport& report, CoverMode mode, std::size_t samples,
                          std::uint64_t seed, std::optional<std::uint64_t> budget) {
  if (report.depth < 2 || report.blocks.size() != static_cast<std::size_t>(report.depth - 1)) {
    return {false, 0, std::nullopt, "report depth and block table disagree"};
  }
  const int depth = report.depth;

  if (mode == CoverMode::kExhaustive) {
    require_budget(depth, budget);
    if (report.slaloms.empty()) {
      return {false, 0, std::nullopt, "exhaustive verification needs the listed slaloms"};
    }
    const std::uint64_t total = string_count(depth).get_ui();
    std::vector<bool> covered(total, false);
    std::uint64_t checked = 0;
    for (const CoverEntry& entry : report.slaloms) {
      const Slalom slalom = report.slalom_of(entry.choice);
      const TranslationCertificate cert = entry_certificate(report, slalom, entry);
      const VerificationReport symbolic = check_symbolic(cert);
      std::vector<std::size_t> radices;
      for (const auto& a : slalom.allowed) radices.push_back(a.size());
      std::vector<std::size_t> pick(radices.size(), 0);
      do {
        std::vector<int> digits;
        for (std::size_t i = 0; i < pick.size(); ++i) digits.push_back(slalom.allowed[i][pick[i]]);
        FnsNumber s(std::move(digits));
        ++checked;
        if (!symbolic.ok()) {
          return reject(checked, s, "slalom translation fails the symbolic check: " +
                                        symbolic.failures.front().message);
        }
        if (auto failure = check_member(s, cert)) {
          return reject(checked, s, "translate misses C0: " + failure->message);
        }
        covered[rank_of(s)] = true;
      } while (advance(pick, radices));
    }
    const auto gap = std::find(covered.begin(), covered.end(), false);
    if (gap != covered.end()) {
      return reject(checked, unrank(static_cast<std::uint64_t>(gap - covered.begin()), depth),
                    "string is not covered by any listed slalom");
    }
    return {true, checked, std::nullopt, "every string of depth " + std::to_string(depth) +
                                             " lies in a translate of truncated C0"};
  }

  const FPolicy policy = FPolicy::parse(report.policy);
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    std::vector<int> digits;
    for (int n = 2; n <= depth; ++n) {
      digits.push_back(static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n))));
    }
    FnsNumber s(std::move(digits));
    std::optional<TranslationCertificate> cert;
    if (!report.slaloms.empty()) {
      for (const CoverEntry& entry : report.slaloms) {
        const Slalom slalom = report.slalom_of(entry.choice);
        if (slalom.contains(s)) {
          cert = entry_certificate(report, slalom, entry);
          break;
        }
      }
    } else {
      std::vector<std::size_t> choice;
      for (int n = 2; n <= depth; ++n) {
        const auto& partition = report.blocks[static_cast<std::size_t>(n - 2)];
        const auto it = std::find_if(partition.begin(), partition.end(), [&](const std::vector<int>& b) {
          return std::binary_search(b.begin(), b.end(), s.digit(n));
        });
        if (it == partition.end()) break;
        choice.push_back(static_cast<std::size_t>(it - partition.begin()));
      }
      if (choice.size() == report.blocks.size()) {
        cert = slalom_translation(report.slalom_of(choice), policy);
      }
    }
    if (!cert) return reject(i + 1, s, "string is not covered by any slalom");
    const VerificationReport symbolic = check_symbolic(*cert);
    if (!symbolic.ok()) {
      return reject(i + 1, s, "slalom translation fails the symbolic check: " +
                                  symbolic.failures.front().message);
    }
    if (auto failure = check_member(s, *cert)) {
      return reject(i + 1, s, "translate misses C0: " + failure->message);
    }
  }
  return {true, samples, std::nullopt,
          std::to_string(samples) + " random strings of depth " + std::to_string(depth) +
              " lie in translates of truncated C0"};
}

}  // namespace factoradic
