#include "factoradic/c0.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "factoradic/error.hpp"

namespace factoradic {

BasicInterval::BasicInterval(int level, std::vector<int> prefix)
    : level_(level), prefix_(std::move(prefix)) {
  if (level < 0) {
    throw Error(ErrorKind::kDomain, "negative level");
  }
  const std::size_t expected = level <= 1 ? 0 : static_cast<std::size_t>(level - 1);
  if (prefix_.size() != expected) {
    throw Error(ErrorKind::kDomain, "level-" + std::to_string(level) + " interval needs " +
                                        std::to_string(expected) + " prefix digits");
  }
  for (std::size_t i = 0; i < prefix_.size(); ++i) {
    const int position = static_cast<int>(i) + 2;
    if (prefix_[i] < 0 || prefix_[i] > position - 1) {
      throw Error(ErrorKind::kDomain,
                  "prefix digit out of range at position " + std::to_string(position));
    }
  }
}

Rational BasicInterval::lower() const {
  if (prefix_.empty()) return Rational(0);
  return fns_to_rational(FnsNumber(prefix_));
}

Rational BasicInterval::length() const {
  return inverse_factorial(static_cast<unsigned long>(level_));
}

Rational BasicInterval::upper() const {
  Rational u = lower() + length();
  u.canonicalize();
  return u;
}

bool BasicInterval::contains(const Rational& x) const {
  return lower() <= x && x <= upper();
}

bool BasicInterval::contains_in_interior(const Rational& x) const {
  return lower() < x && x < upper();
}

bool BasicInterval::contains(const BasicInterval& other) const {
  if (other.prefix_.size() < prefix_.size()) return false;
  return std::equal(prefix_.begin(), prefix_.end(), other.prefix_.begin());
}

BasicInterval interval_of(const FnsNumber& x, int level) {
  if (level < 0 || level > x.depth()) {
    throw Error(ErrorKind::kDomain, "level " + std::to_string(level) + " exceeds depth " +
                                        std::to_string(x.depth()));
  }
  if (level <= 1) return BasicInterval(level, {});
  return BasicInterval(level, x.truncated(level).digits());
}

std::vector<BasicInterval> children(const BasicInterval& interval) {
  const int level = interval.level();
  if (level == 0) return {BasicInterval(1, {})};
  std::vector<BasicInterval> out;
  out.reserve(static_cast<std::size_t>(level + 1));
  for (int d = 0; d <= level; ++d) {
    std::vector<int> prefix = interval.prefix();
    prefix.push_back(d);
    out.emplace_back(level + 1, std::move(prefix));
  }
  return out;
}

bool in_c0(const FnsNumber& x) {
  for (int n = 2; n <= x.depth(); ++n) {
    if (x.digit(n) > n - 2) return false;
  }
  return true;
}

Rational c0_measure_bound(int depth) {
  if (depth < 2) {
    throw Error(ErrorKind::kDomain, "depth must be >= 2");
  }
  Rational product(1);
  for (int n = 2; n <= depth; ++n) {
    product *= ratio(n - 1, n);
  }
  product.canonicalize();
  return product;
}

}  // namespace factoradic
