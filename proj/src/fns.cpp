#include "factoradic/fns.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "factoradic/error.hpp"

namespace factoradic {

FnsNumber::FnsNumber(std::vector<int> digits) : digits_(std::move(digits)) {
  if (digits_.empty()) {
    throw Error(ErrorKind::kDomain, "a factorial-base number needs depth >= 2");
  }
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    const int position = static_cast<int>(i) + 2;
    if (digits_[i] < 0 || digits_[i] > position - 1) {
      throw Error(ErrorKind::kDomain,
                  "digit " + std::to_string(digits_[i]) + " out of range at position " +
                      std::to_string(position));
    }
  }
}

FnsNumber FnsNumber::zero(int depth) {
  if (depth < 2) {
    throw Error(ErrorKind::kDomain, "depth must be >= 2");
  }
  return FnsNumber(std::vector<int>(static_cast<std::size_t>(depth - 1), 0));
}

int FnsNumber::digit(int position) const {
  if (position < 2 || position > depth()) {
    throw Error(ErrorKind::kDomain, "position " + std::to_string(position) + " out of range");
  }
  return digits_[static_cast<std::size_t>(position - 2)];
}

FnsNumber FnsNumber::truncated(int depth) const {
  if (depth < 2 || depth > this->depth()) {
    throw Error(ErrorKind::kDomain, "cannot truncate to depth " + std::to_string(depth));
  }
  return FnsNumber(std::vector<int>(digits_.begin(), digits_.begin() + (depth - 1)));
}

Expansion expand(const Rational& x, int depth) {
  if (depth < 2) {
    throw Error(ErrorKind::kDomain, "depth must be >= 2");
  }
  if (x < 0 || x >= 1) {
    throw Error(ErrorKind::kDomain, "expansion needs 0 <= x < 1, got " + format_rational(x));
  }
  DigitStream stream(x);
  std::vector<int> digits;
  digits.reserve(static_cast<std::size_t>(depth - 1));
  for (int n = 2; n <= depth; ++n) {
    digits.push_back(stream.next());
  }
  FnsNumber fns(std::move(digits));
  Rational residual = x - fns_to_rational(fns);
  residual.canonicalize();
  return {std::move(fns), std::move(residual)};
}

FnsNumber fns_from_rational(const Rational& x, int depth) {
  return expand(x, depth).digits;
}

Rational fns_to_rational(const FnsNumber& x) {
  // Horner: sum d_n N!/n! accumulated left to right, then divided by N!.
  BigInt numerator = 0;
  for (int n = 2; n <= x.depth(); ++n) {
    numerator *= n;
    numerator += x.digit(n);
  }
  Rational r(numerator, factorial(static_cast<unsigned long>(x.depth())));
  r.canonicalize();
  return r;
}

int CarryTrace::carry(int position) const {
  if (position < 2 || position > depth + 1) {
    throw Error(ErrorKind::kDomain, "carry position " + std::to_string(position) + " out of range");
  }
  return carries[static_cast<std::size_t>(position - 2)];
}

SumWithCarries fns_add(const FnsNumber& q, const FnsNumber& y) {
  if (q.depth() != y.depth()) {
    throw Error(ErrorKind::kDomain, "fns_add needs equal depths");
  }
  const int depth = q.depth();
  CarryTrace trace;
  trace.depth = depth;
  trace.carries.assign(static_cast<std::size_t>(depth), 0);
  trace.result_digits.assign(static_cast<std::size_t>(depth - 1), 0);
  int incoming = 0;  // e_{N+1}
  for (int n = depth; n >= 2; --n) {
    const int total = q.digit(n) + y.digit(n) + incoming;
    const int out = total >= n ? 1 : 0;
    trace.carries[static_cast<std::size_t>(n - 2)] = out;
    trace.result_digits[static_cast<std::size_t>(n - 2)] = total - n * out;
    incoming = out;
  }
  if (trace.carry(2) != 0) {
    throw Error(ErrorKind::kOverflow, "sum is >= 1 (carry out of position 2)");
  }
  FnsNumber sum(trace.result_digits);
  return {std::move(sum), std::move(trace)};
}

const char* to_string(EndpointClass c) noexcept {
  switch (c) {
    case EndpointClass::kInterior:
      return "interior";
    case EndpointClass::kLowerEndpoint:
      return "lower-endpoint";
    case EndpointClass::kUpperEndpoint:
      return "upper-endpoint";
  }
  return "unknown";
}

EndpointClass classify_endpoint(const Rational& x, int level) {
  if (x < 0 || x >= 1) {
    throw Error(ErrorKind::kDomain, "endpoint classification needs 0 <= x < 1");
  }
  if (level < 0) {
    throw Error(ErrorKind::kDomain, "negative level");
  }
  const BigInt scale = factorial(static_cast<unsigned long>(level));
  return mpz_divisible_p(scale.get_mpz_t(), x.get_den_mpz_t()) != 0
             ? EndpointClass::kLowerEndpoint
             : EndpointClass::kInterior;
}

EndpointClass classify_endpoint(const FnsNumber& x, int level) {
  if (level < 0 || level > x.depth()) {
    throw Error(ErrorKind::kDomain, "level exceeds depth");
  }
  bool all_zero = true;
  bool all_max = true;
  for (int n = std::max(level + 1, 2); n <= x.depth(); ++n) {
    all_zero = all_zero && x.digit(n) == 0;
    all_max = all_max && x.digit(n) == n - 1;
  }
  if (all_zero) return EndpointClass::kLowerEndpoint;
  if (all_max) return EndpointClass::kUpperEndpoint;
  return EndpointClass::kInterior;
}

DigitStream::DigitStream(const Rational& x)
    : remainder_(x.get_num()), denominator_(x.get_den()) {
  if (x < 0 || x >= 1) {
    throw Error(ErrorKind::kDomain, "digit stream needs 0 <= x < 1");
  }
}

int DigitStream::next() {
  ++position_;
  remainder_ *= position_;
  BigInt digit;
  mpz_fdiv_qr(digit.get_mpz_t(), remainder_.get_mpz_t(), remainder_.get_mpz_t(),
              denominator_.get_mpz_t());
  return static_cast<int>(digit.get_si());
}

}  // namespace factoradic
