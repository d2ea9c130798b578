#include "factoradic/certificate.hpp"

#include <algorithm>
#include <utility>

#include "factoradic/c0.hpp"
#include "factoradic/error.hpp"

namespace factoradic {

const std::vector<int>& TranslationCertificate::support(int position) const {
  if (position < 2 || position > depth) {
    throw Error(ErrorKind::kDomain, "support position " + std::to_string(position) + " out of range");
  }
  return supports[static_cast<std::size_t>(position - 2)];
}

Rational TranslationCertificate::translate() const {
  Rational x = -(shift + fns_to_rational(y));
  x.canonicalize();
  return x;
}

std::vector<int> forbidden_digits(int position, std::span<const int> support) {
  std::vector<int> out;
  for (int v : support) {
    for (int bad : {position - 2 - v, position - 1 - v}) {
      if (bad >= 0 && bad <= position - 2) out.push_back(bad);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int least_translation_digit(int position, std::span<const int> support) {
  const std::vector<int> forbidden = forbidden_digits(position, support);
  for (int y = 0; y <= position - 2; ++y) {
    if (!std::binary_search(forbidden.begin(), forbidden.end(), y)) return y;
  }
  throw Error(ErrorKind::kInfeasible,
              "no admissible translation digit at position " + std::to_string(position) + " (" +
                  std::to_string(support.size()) + " possible digits)");
}

TranslationCertificate certify_supports(std::vector<std::vector<int>> supports, Rational shift) {
  if (supports.empty()) {
    throw Error(ErrorKind::kDomain, "certificate needs depth >= 2");
  }
  TranslationCertificate cert;
  cert.depth = static_cast<int>(supports.size()) + 1;
  cert.shift = std::move(shift);
  std::vector<int> y(supports.size(), 0);
  for (int n = 2; n <= cert.depth; ++n) {
    auto& support = supports[static_cast<std::size_t>(n - 2)];
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    PositionProof proof;
    proof.position = n;
    if (n >= kFirstFreePosition) {
      proof.forbidden = forbidden_digits(n, support);
      proof.y = least_translation_digit(n, support);
    }
    y[static_cast<std::size_t>(n - 2)] = proof.y;
    cert.proofs.push_back(std::move(proof));
  }
  cert.y = FnsNumber(std::move(y));
  cert.supports = std::move(supports);
  return cert;
}

const char* to_string(FindingStage stage) noexcept {
  switch (stage) {
    case FindingStage::kStructure:
      return "structure";
    case FindingStage::kSymbolic:
      return "symbolic";
    case FindingStage::kNumeric:
      return "numeric";
  }
  return "unknown";
}

bool VerificationReport::stage_ok(FindingStage stage) const {
  return std::none_of(failures.begin(), failures.end(),
                      [stage](const Finding& f) { return f.stage == stage; });
}

void VerificationReport::merge(VerificationReport other) {
  facts.insert(facts.end(), std::make_move_iterator(other.facts.begin()),
               std::make_move_iterator(other.facts.end()));
  failures.insert(failures.end(), std::make_move_iterator(other.failures.begin()),
                  std::make_move_iterator(other.failures.end()));
  symbolic_positions += other.symbolic_positions;
  numeric_samples += other.numeric_samples;
}

VerificationReport check_symbolic(const TranslationCertificate& cert) {
  VerificationReport report;
  auto fail = [&report](FindingStage stage, int position, std::string message) {
    report.failures.push_back({stage, position, std::move(message)});
  };
  if (cert.depth < 2 || cert.y.depth() != cert.depth ||
      cert.supports.size() != static_cast<std::size_t>(cert.depth - 1)) {
    fail(FindingStage::kStructure, 0, "depth, y and supports disagree");
    return report;
  }
  for (int n = 2; n <= cert.depth; ++n) {
    const auto& support = cert.support(n);
    const int y = cert.y.digit(n);
    ++report.symbolic_positions;
    const bool well_formed =
        !support.empty() && std::is_sorted(support.begin(), support.end()) &&
        std::adjacent_find(support.begin(), support.end()) == support.end() &&
        support.front() >= 0 && support.back() <= n - 1;
    if (!well_formed) {
      fail(FindingStage::kStructure, n, "support at position " + std::to_string(n) + " is malformed");
      continue;
    }
    if (n < kFirstFreePosition) {
      if (support != std::vector<int>{0} || y != 0) {
        fail(FindingStage::kSymbolic, n,
             "position " + std::to_string(n) + " must have support {0} and y = 0");
      }
      continue;
    }
    if (y > n - 2) {
      fail(FindingStage::kSymbolic, n,
           "y_" + std::to_string(n) + " = " + std::to_string(y) + " exceeds n - 2");
      continue;
    }
    for (int v : support) {
      if (v + y == n - 2 || v + y == n - 1) {
        fail(FindingStage::kSymbolic, n,
             "position " + std::to_string(n) + ": " + std::to_string(v) + " + " +
                 std::to_string(y) + " = " + std::to_string(v + y) + " is in {n-2, n-1}");
        break;
      }
    }
  }
  for (const PositionProof& proof : cert.proofs) {
    if (proof.position < 2 || proof.position > cert.depth) {
      fail(FindingStage::kStructure, proof.position, "proof for a position outside the depth");
      continue;
    }
    const int n = proof.position;
    const std::vector<int> expected =
        n >= kFirstFreePosition ? forbidden_digits(n, cert.support(n)) : std::vector<int>{};
    if (proof.y != cert.y.digit(n) || proof.forbidden != expected) {
      fail(FindingStage::kSymbolic, n,
           "recorded proof at position " + std::to_string(n) + " does not match y and support");
    }
  }
  if (report.failures.empty()) {
    report.facts.push_back("symbolic: " + std::to_string(report.symbolic_positions) +
                           " positions keep v + y_n out of {n-2, n-1}");
  }
  return report;
}

SampleOutcome check_sample(const FnsNumber& q, const FnsNumber& y) {
  SampleOutcome outcome;
  auto fail = [&outcome](int position, std::string message) {
    outcome.failure = Finding{FindingStage::kNumeric, position, std::move(message)};
    return outcome;
  };
  if (q.depth() != y.depth()) return fail(0, "sample depth differs from y");
  const int depth = q.depth();

  std::optional<SumWithCarries> added;
  try {
    added = fns_add(q, y);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kOverflow) throw;
    return fail(2, "q + y overflows past 1");
  }
  const CarryTrace& trace = added->trace;

  Rational exact = fns_to_rational(q) + fns_to_rational(y);
  exact.canonicalize();
  if (exact >= 1) return fail(2, "exact sum is >= 1");
  const Expansion re = expand(exact, depth);
  if (re.residual != 0 || re.digits != added->sum) {
    return fail(0, "digit-wise sum disagrees with exact rational sum");
  }

  for (int n = 2; n <= depth; ++n) {
    const int qy = q.digit(n) + y.digit(n);
    const int numerator = qy - n * trace.carry(n) + trace.carry(n + 1);
    const int result = added->sum.digit(n);
    if (numerator != result) {
      return fail(n, "carry identity fails at position " + std::to_string(n));
    }
    if (trace.carry(n) != (qy >= n ? 1 : 0)) {
      return fail(n, "chained carry at position " + std::to_string(n));
    }
    if (result < 0 || result > n - 2) {
      return fail(n, "sum digit " + std::to_string(result) + " at position " + std::to_string(n) +
                         " is outside C0");
    }
  }
  if (!in_c0(added->sum)) return fail(0, "sum is not in C0");
  outcome.check = SampleCheck{q, added->sum, trace.carries};
  return outcome;
}

VerificationReport check_stored_samples(const TranslationCertificate& cert) {
  VerificationReport report;
  for (const SampleCheck& stored : cert.samples) {
    ++report.numeric_samples;
    if (stored.q.depth() != cert.depth) {
      report.failures.push_back({FindingStage::kNumeric, 0, "stored sample has the wrong depth"});
      continue;
    }
    SampleOutcome outcome = check_sample(stored.q, cert.y);
    if (outcome.failure) {
      report.failures.push_back(*outcome.failure);
      continue;
    }
    if (outcome.check->sum != stored.sum || outcome.check->carries != stored.carries) {
      report.failures.push_back(
          {FindingStage::kNumeric, 0, "stored sample sum or carries do not match recomputation"});
    }
  }
  if (report.failures.empty() && !cert.samples.empty()) {
    report.facts.push_back("numeric: " + std::to_string(cert.samples.size()) +
                           " stored samples recomputed and land in C0");
  }
  return report;
}

}  // namespace factoradic
