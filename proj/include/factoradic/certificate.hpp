#pragma once

// Translation certificates: digits y together with per-position evidence
// that adding y to every digit string drawn from the recorded supports
// lands in C0. Shared by the perfect-set embedding and the slalom translation.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "factoradic/fns.hpp"
#include "factoradic/rational.hpp"

namespace factoradic {

// First position at which translation digits may be nonzero. Positions
// below it carry zero digits in both summands.
inline constexpr int kFirstFreePosition = 6;

struct PositionProof {
  int position = 0;
  int y = 0;
  // {n-2-v, n-1-v : v in support} within [0, n-2]; empty below position 6.
  std::vector<int> forbidden;
};

struct SampleCheck {
  FnsNumber q;
  FnsNumber sum;
  std::vector<int> carries;  // e_2, ..., e_{N+1}
};

struct TranslationCertificate {
  int depth = 0;
  // Translation applied to the input set before y (P + shift, or the slalom
  // prefix cancellation). The full translate is x = -(shift + y).
  Rational shift;
  FnsNumber y = FnsNumber::zero(2);
  // supports[n - 2] is the set V_n of possible n-th digits, sorted.
  std::vector<std::vector<int>> supports;
  std::vector<PositionProof> proofs;
  std::vector<SampleCheck> samples;
  // Tree levels l_0..l_K when the certificate comes from a perfect set.
  std::vector<int> levels;

  const std::vector<int>& support(int position) const;

  // -(shift + value(y)).
  Rational translate() const;
};

std::vector<int> forbidden_digits(int position, std::span<const int> support);

// Least y in {0, ..., n-2} outside forbidden_digits. Throws
// Error(kInfeasible) when every digit is forbidden.
int least_translation_digit(int position, std::span<const int> support);

// Chooses y digit by digit from the supports (zeros below position 6) and
// records the per-position proofs. supports.size() + 1 is the depth.
TranslationCertificate certify_supports(std::vector<std::vector<int>> supports, Rational shift);

enum class FindingStage { kStructure, kSymbolic, kNumeric };

const char* to_string(FindingStage stage) noexcept;

struct Finding {
  FindingStage stage;
  int position = 0;  // 0 when not tied to a position
  std::string message;
};

struct VerificationReport {
  std::vector<std::string> facts;
  std::vector<Finding> failures;
  std::uint64_t symbolic_positions = 0;
  std::uint64_t numeric_samples = 0;

  bool ok() const { return failures.empty(); }
  bool stage_ok(FindingStage stage) const;
  void merge(VerificationReport other);
};

// Per-position check: for n >= 6 every v in V_n has v + y_n outside
// {n-2, n-1} and y_n <= n-2; below 6, V_n = {0} and y_n = 0.
VerificationReport check_symbolic(const TranslationCertificate& cert);

// Adds y to one point q (already shifted) along two routes: digit-wise
// carries and exact rational addition followed by re-expansion. Checks that
// they agree, that the carry identity and no-chain property hold, and that
// the sum lies in C0. Returns the trace and the first failure, if any.
struct SampleOutcome {
  std::optional<SampleCheck> check;
  std::optional<Finding> failure;
};
SampleOutcome check_sample(const FnsNumber& q, const FnsNumber& y);

// Re-derives every stored sample and compares it with the recorded sum
// and carries.
VerificationReport check_stored_samples(const TranslationCertificate& cert);

}  // namespace factoradic
