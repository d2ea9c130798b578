#pragma once

// Embedding a translated perfect subset of P into C0: pick a dyadic tree of
// basic intervals whose levels grow fast enough that, at every digit
// position, the few digits the tree allows leave room for a translation
// digit avoiding the two values that would break C0 membership.

#include <array>
#include <cstdint>
#include <vector>

#include "factoradic/c0.hpp"
#include "factoradic/certificate.hpp"
#include "factoradic/oracle.hpp"

namespace factoradic {

inline constexpr int kRootLevel = 5;

struct NormalizedInput {
  OraclePtr oracle;  // P + shift
  Rational shift;
};

// Shift that moves `anchor` into the open interval (0, 1/5!), away from the
// level-5 endpoints: -floor(120 a)/120, or 1/240 - a when 120 a is an
// integer.
Rational normalization_shift(const Rational& anchor);

NormalizedInput normalize_input(OraclePtr oracle, int max_attempts = 4);

struct BuildOptions {
  int max_level = 1024;   // separation depth budget; also the oracle depth hint
  int max_attempts = 4;   // oracle retries per interval
};

struct IntervalTree {
  std::vector<int> levels;                         // l_0 < l_1 < ... < l_K
  std::vector<std::vector<BasicInterval>> families;  // families[k]: 2^k intervals at l_k, left to right
  std::vector<std::vector<Rational>> witnesses;      // a point of P inside each interval
  // successors[k][i]: indices in families[k + 1] of the two intervals inside families[k][i].
  std::vector<std::vector<std::array<std::size_t, 2>>> successors;

  int height() const { return static_cast<int>(levels.size()) - 1; }
  int depth() const { return levels.back(); }
  const std::vector<BasicInterval>& leaves() const { return families.back(); }
};

// `oracle` must already be normalized. Throws Error(kOracle) when the
// oracle keeps breaking its contract and Error(kBudget) when separation
// needs a level beyond options.max_level.
IntervalTree build_tree(const PerfectSetOracle& oracle, int height, const BuildOptions& options = {});

// Minimum level allowed at step k: 2^{k+2} + 1.
int level_floor(int k);

struct AuditReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Checks the three tree conditions directly on the intervals: two successors
// per interval, a witness inside every interval, and l_k >= 2^{k+2} + 1.
AuditReport audit_tree(const IntervalTree& tree);

// Sorted set of n-th digits over the leaves (2 <= n <= depth()).
std::vector<int> digit_support(const IntervalTree& tree, int position);

TranslationCertificate select_translation(const IntervalTree& tree);

// Leaf digit strings, left to right, at depth l_K.
std::vector<FnsNumber> leaf_points(const IntervalTree& tree);

// Records up to `count` leaf sample checks in the certificate: always the
// leftmost and rightmost leaves, then evenly spaced ones.
void attach_samples(TranslationCertificate& cert, const IntervalTree& tree, std::size_t count);

// Symbolic check against the tree's own supports, plus numeric checks on up
// to `samples` leaves (all of them when samples >= 2^K) and every stored
// sample.
VerificationReport verify_certificate(const IntervalTree& tree, const TranslationCertificate& cert,
                                      std::size_t samples);

// File-only re-verification: level floors, support sizes, the symbolic
// check, stored samples, and `extra_samples` random strings drawn from the
// supports.
VerificationReport verify_certificate_standalone(const TranslationCertificate& cert,
                                                 std::size_t extra_samples, std::uint64_t seed);

struct EmbedOptions {
  BuildOptions build;
  std::size_t samples = 64;
};

struct EmbedResult {
  Rational shift;
  IntervalTree tree;
  TranslationCertificate certificate;
  VerificationReport report;
};

// normalize -> build_tree -> select_translation -> verify_certificate.
EmbedResult embed(OraclePtr oracle, int height, const EmbedOptions& options = {});

}  // namespace factoradic
