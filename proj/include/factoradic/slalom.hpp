#pragma once

// f-slaloms, their translation into C0, and the finite-depth covering
// experiment: cover every digit string of depth N by f-slaloms and move each
// slalom into C0 with its own translate.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "factoradic/certificate.hpp"
#include "factoradic/rational.hpp"

namespace factoradic {

// f(n) = 1 for n <= 5, min(floor(log2 n), ceil((n - 3) / 2)) beyond.
int default_f(int position);

class FPolicy {
 public:
  FPolicy(std::string name, std::function<int(int)> f);

  // "default", or "table:a2,a3,..." giving f(2), f(3), ...; positions past
  // the table follow default_f.
  static FPolicy parse(const std::string& spec);
  static FPolicy default_policy();

  const std::string& name() const noexcept { return name_; }
  int operator()(int position) const { return f_(position); }

  // f(2..5) = 1, 1 <= f(n) and 2 f(n) < n - 1 for 6 <= n <= depth.
  // Throws Error(kInvalidArgument).
  void validate(int depth) const;

 private:
  std::string name_;
  std::function<int(int)> f_;
};

struct Slalom {
  int depth = 0;
  std::vector<std::vector<int>> allowed;  // allowed[n - 2] = A_n, sorted

  const std::vector<int>& at(int position) const {
    return allowed[static_cast<std::size_t>(position - 2)];
  }
  bool contains(const FnsNumber& s) const;

  // Throws Error(kInvalidArgument) unless 1 <= |A_n| <= f(n) and
  // A_n is a subset of {0, ..., n-1}.
  void validate(const FPolicy& f) const;
};

// shift = -(sum of the forced digits at positions 2..5) so that S* + shift
// sits in [0, 1/5!); y_n for n >= 6 is the least digit keeping s + y_n out
// of {n-2, n-1} for every s in A_n.
TranslationCertificate slalom_translation(const Slalom& slalom, const FPolicy& f);

// Digits of s + shift for a member s (zeroes positions 2..5).
FnsNumber shifted_member(const FnsNumber& s, const TranslationCertificate& cert);

// Symbolic check plus `samples` random members of S* (seeded), each moved by
// shift + y along both the digit and the rational route.
VerificationReport verify_slalom(const Slalom& slalom, const TranslationCertificate& cert,
                                 std::size_t samples, std::uint64_t seed);

// Records `count` members of S* as stored samples: the smallest and largest
// members, then seeded random ones. Members whose sum fails are skipped, so
// verification still sees the failure.
void attach_slalom_samples(TranslationCertificate& cert, const Slalom& slalom, std::size_t count,
                           std::uint64_t seed);

enum class CoverMode { kExhaustive, kSampled };

const char* to_string(CoverMode mode) noexcept;
CoverMode parse_cover_mode(const std::string& text);

struct CoverEntry {
  std::vector<std::size_t> choice;  // block index per position 2..N
  Rational shift;
  FnsNumber y = FnsNumber::zero(2);
};

struct CoverReport {
  int depth = 0;
  std::string policy;
  CoverMode mode = CoverMode::kExhaustive;
  // blocks[n - 2]: partition of {0, ..., n-1} into runs of at most f(n) digits.
  std::vector<std::vector<std::vector<int>>> blocks;
  BigInt slalom_count;
  Rational lower_bound;  // prod n / prod f(n)
  // Every slalom with its translation. Only materialized in exhaustive mode.
  std::vector<CoverEntry> slaloms;

  Slalom slalom_of(const std::vector<std::size_t>& choice) const;
};

// Number of digit strings at depth N, i.e. N!.
BigInt string_count(int depth);

// Exhaustive budget: FACTORADIC_BUDGET if set, else 8! strings.
std::uint64_t exhaustive_budget();

// Throws Error(kBudget) when exhaustive mode is requested past the budget.
CoverReport build_cover(int depth, const FPolicy& f, CoverMode mode,
                        std::optional<std::uint64_t> budget = std::nullopt);

struct CoverVerdict {
  bool ok = false;
  std::uint64_t checked = 0;
  std::optional<FnsNumber> counterexample;
  std::string reason;
};

// Exhaustive: every string of depth N lies in a listed slalom and moves into
// C0 under that slalom's translate. Sampled: the same for `samples` random
// strings; slaloms are recovered from the block table when not listed.
CoverVerdict verify_cover(const CoverReport& report, CoverMode mode, std::size_t samples = 0,
                          std::uint64_t seed = 0,
                          std::optional<std::uint64_t> budget = std::nullopt);

}  // namespace factoradic
