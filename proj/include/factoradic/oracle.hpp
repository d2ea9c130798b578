#pragma once

// Perfect sets are supplied through an oracle: a source of exact points of
// P. Points are rationals; an oracle promises that the points it returns
// avoid every basic-interval endpoint up to the depth hint it was given.
// Callers check that promise (see build_tree) and retry or fail.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "factoradic/c0.hpp"
#include "factoradic/rational.hpp"

namespace factoradic {

struct Window {
  Rational lo;
  Rational hi;

  static Window of(const BasicInterval& interval);

  bool strictly_contains(const Rational& x) const { return lo < x && x < hi; }
  Window shifted(const Rational& t) const;
};

using PointPair = std::pair<Rational, Rational>;

class PerfectSetOracle {
 public:
  virtual ~PerfectSetOracle() = default;

  virtual std::string name() const = 0;

  // Some point of P. Different attempts may return different points.
  virtual Rational anchor(int attempt) const = 0;

  // Two distinct points of P strictly inside `window`, which is known to
  // meet P in its interior. Points avoid basic-interval endpoints at every
  // level <= depth_hint. `attempt` asks for an alternative pair after the
  // caller rejected an earlier one. Throws Error(kOracle) on failure.
  virtual PointPair two_points(const Window& window, int depth_hint, int attempt) const = 0;

  PointPair two_points(const BasicInterval& interval, int depth_hint, int attempt = 0) const {
    return two_points(Window::of(interval), depth_hint, attempt);
  }
};

using OraclePtr = std::shared_ptr<const PerfectSetOracle>;

// P + shift.
class TranslatedOracle final : public PerfectSetOracle {
 public:
  TranslatedOracle(OraclePtr inner, Rational shift);

  std::string name() const override;
  Rational anchor(int attempt) const override;
  PointPair two_points(const Window& window, int depth_hint, int attempt) const override;
  using PerfectSetOracle::two_points;

  const Rational& shift() const noexcept { return shift_; }

 private:
  OraclePtr inner_;
  Rational shift_;
};

// offset + scale * K, K the middle-thirds Cantor set.
class CantorOracle final : public PerfectSetOracle {
 public:
  CantorOracle(Rational offset, Rational scale);

  std::string name() const override;
  Rational anchor(int attempt) const override;
  PointPair two_points(const Window& window, int depth_hint, int attempt) const override;
  using PerfectSetOracle::two_points;

 private:
  Rational offset_;
  Rational scale_;
};

// { sum d_n / n! : d_n in D(n) for all n }. Every D(n) must contain 0 and
// D(n) must have at least two members infinitely often.
class DigitRestrictionOracle final : public PerfectSetOracle {
 public:
  using DigitSets = std::function<std::vector<int>(int position)>;

  DigitRestrictionOracle(std::string name, DigitSets allowed);

  std::string name() const override;
  Rational anchor(int attempt) const override;
  PointPair two_points(const Window& window, int depth_hint, int attempt) const override;
  using PerfectSetOracle::two_points;

  std::vector<int> allowed(int position) const;

 private:
  std::string name_;
  DigitSets allowed_;
};

// A finite refinable tree read from a file: nodes are basic intervals, each
// carrying witness points. two_points answers from the witnesses of nodes
// whose interval lies inside the query window.
class FileTreeOracle final : public PerfectSetOracle {
 public:
  struct Node {
    BasicInterval interval;
    std::vector<Rational> points;
    std::vector<Node> children;
  };

  FileTreeOracle(std::string name, Node root, std::optional<Rational> anchor);

  // Parses the JSON tree format. Throws Error(kParse) on malformed input.
  static FileTreeOracle parse(const std::string& json_text, const std::string& name);
  static FileTreeOracle load(const std::string& path);

  std::string name() const override;
  Rational anchor(int attempt) const override;
  PointPair two_points(const Window& window, int depth_hint, int attempt) const override;
  using PerfectSetOracle::two_points;

 private:
  std::string name_;
  Node root_;
  std::optional<Rational> anchor_;
};

// Catalog names: "cantor-scaled", "restrict-binary", "restrict-mod3",
// "restrict-sparse". A spec of the form "file:<path>" loads a tree file.
std::vector<std::string> catalog_names();
OraclePtr make_oracle(const std::string& spec);

}  // namespace factoradic
