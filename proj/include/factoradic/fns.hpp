#pragma once

// Exact arithmetic in the factorial number system. A number of depth N is
// the finite digit string (d_2, ..., d_N) with 0 <= d_n <= n - 1, denoting
// sum d_n / n!, a value in [0, 1 - 1/N!].

#include <compare>
#include <vector>

#include "factoradic/rational.hpp"

namespace factoradic {

class FnsNumber {
 public:
  // digits[i] is the digit at position i + 2, so depth() == digits.size() + 1.
  // Throws Error(kDomain) unless the string is canonical and nonempty.
  explicit FnsNumber(std::vector<int> digits);

  static FnsNumber zero(int depth);

  int depth() const noexcept { return static_cast<int>(digits_.size()) + 1; }

  // 2 <= position <= depth().
  int digit(int position) const;

  const std::vector<int>& digits() const noexcept { return digits_; }

  // First digits up to `depth` (2 <= depth <= this->depth()).
  FnsNumber truncated(int depth) const;

  // Lexicographic order; agrees with numeric order at equal depth.
  friend bool operator==(const FnsNumber&, const FnsNumber&) = default;
  friend auto operator<=>(const FnsNumber&, const FnsNumber&) = default;

 private:
  std::vector<int> digits_;
};

struct Expansion {
  FnsNumber digits;
  Rational residual;  // x - value(digits), in [0, 1/N!)
};

// Greedy (lower) expansion of x in [0, 1). Throws Error(kDomain) otherwise.
Expansion expand(const Rational& x, int depth);

FnsNumber fns_from_rational(const Rational& x, int depth);

Rational fns_to_rational(const FnsNumber& x);

// Carry bits of a digit-wise addition. carries[i] holds the carry into
// position i + 1 produced at position i + 2, i.e. carries = (e_2, ..., e_{N+1})
// with e_{N+1} = 0 always.
struct CarryTrace {
  int depth = 0;
  std::vector<int> carries;
  std::vector<int> result_digits;

  // e_n for 2 <= n <= depth + 1.
  int carry(int position) const;
};

struct SumWithCarries {
  FnsNumber sum;
  CarryTrace trace;
};

// Digit-wise sum with right-to-left carries. Throws Error(kOverflow) when
// the sum is >= 1 (a carry out of position 2) and Error(kDomain) when the
// depths differ.
SumWithCarries fns_add(const FnsNumber& q, const FnsNumber& y);

enum class EndpointClass { kInterior, kLowerEndpoint, kUpperEndpoint };

const char* to_string(EndpointClass c) noexcept;

// x in [0, 1). Lower endpoint iff x * level! is an integer.
EndpointClass classify_endpoint(const Rational& x, int level);

// For a finite string of depth M >= level, read as an infinite expansion:
// a zero tail past `level` is a lower endpoint, an all-maximal tail
// (d_n = n - 1) approaches the upper endpoint of the prefix interval.
EndpointClass classify_endpoint(const FnsNumber& x, int level);

// Incremental greedy expansion of a rational in [0, 1), one digit at a time.
class DigitStream {
 public:
  explicit DigitStream(const Rational& x);

  // Digit at position position() + 1; advances.
  int next();

  // Last position produced (1 before the first call to next()).
  int position() const noexcept { return position_; }

  // True once the expansion has terminated, i.e. x is an endpoint of a
  // basic interval at level position().
  bool terminated() const { return remainder_ == 0; }

 private:
  BigInt remainder_;
  BigInt denominator_;
  int position_ = 1;
};

}  // namespace factoradic
