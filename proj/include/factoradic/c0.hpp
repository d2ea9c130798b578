#pragma once

// The compact nullset C0 = { sum d_n / n! : 0 <= d_n <= n - 2 } and the
// tree of basic intervals.

#include <compare>
#include <vector>

#include "factoradic/fns.hpp"
#include "factoradic/rational.hpp"

namespace factoradic {

// Closed interval of reals whose first digits are `prefix`. A level-n
// interval has n - 1 prefix digits (positions 2..n) and length 1/n!;
// levels 0 and 1 both denote [0, 1].
class BasicInterval {
 public:
  BasicInterval() = default;
  BasicInterval(int level, std::vector<int> prefix);

  int level() const noexcept { return level_; }
  const std::vector<int>& prefix() const noexcept { return prefix_; }

  Rational lower() const;
  Rational upper() const;
  Rational length() const;

  bool contains(const Rational& x) const;
  bool contains_in_interior(const Rational& x) const;
  bool contains(const BasicInterval& other) const;

  friend bool operator==(const BasicInterval&, const BasicInterval&) = default;
  friend auto operator<=>(const BasicInterval&, const BasicInterval&) = default;

 private:
  int level_ = 0;
  std::vector<int> prefix_;
};

BasicInterval interval_of(const FnsNumber& x, int level);

// The level + 1 subintervals of I, left to right.
std::vector<BasicInterval> children(const BasicInterval& interval);

bool in_c0(const FnsNumber& x);

// Total length of the level-N basic intervals that meet C0.
Rational c0_measure_bound(int depth);

}  // namespace factoradic
