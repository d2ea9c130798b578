#include <gtest/gtest.h>

#include <algorithm>

#include "factoradic/error.hpp"
#include "factoradic/oracle.hpp"
#include "reference.hpp"

namespace factoradic {
namespace {

// Ternary digits of (x - 1/3) / (1/2) avoid 1, except a final 1 with
// nothing after it.
bool in_scaled_cantor(const Rational& x) {
  mpq_class r = (x - ratio(1, 3)) * 2;
  r.canonicalize();
  if (r < 0 || r > 1) return false;
  for (int k = 0; k < 80 && r != 0; ++k) {
    r *= 3;
    const mpz_class d = reference::floor_q(r);
    r -= d;
    r.canonicalize();
    if (d == 1 && r != 0) return false;
  }
  return true;
}

bool digits_allowed(const Rational& x, const DigitRestrictionOracle& oracle, int depth) {
  const auto d = reference::expand(x, depth);
  for (int n = 2; n <= depth; ++n) {
    const auto allowed = oracle.allowed(n);
    if (std::find(allowed.begin(), allowed.end(), d[static_cast<std::size_t>(n - 2)]) == allowed.end()) {
      return false;
    }
  }
  return true;
}

void expect_pair_inside(const PointPair& pair, const BasicInterval& interval) {
  EXPECT_NE(pair.first, pair.second);
  EXPECT_TRUE(interval.contains_in_interior(pair.first));
  EXPECT_TRUE(interval.contains_in_interior(pair.second));
}

TEST(Catalog, NamesAndErrors) {
  const auto names = catalog_names();
  EXPECT_EQ(names.size(), 4u);
  for (const auto& n : names) EXPECT_EQ(make_oracle(n)->name().rfind(n, 0), 0u) << n;
  try {
    make_oracle("no-such-oracle");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidArgument);
  }
}

TEST(CantorOracle, PointsBelongToTheSet) {
  const CantorOracle oracle(ratio(1, 3), ratio(1, 2));
  for (int attempt = 0; attempt < 3; ++attempt) EXPECT_TRUE(in_scaled_cantor(oracle.anchor(attempt)));
  // Level-4 intervals meeting the scaled set around 1/3 + 1/8.
  const BasicInterval window(6, reference::expand(ratio(1, 3) + ratio(1, 8) + ratio(1, 100000), 6));
  for (int attempt = 0; attempt < 3; ++attempt) {
    const PointPair p = oracle.two_points(window, 64, attempt);
    expect_pair_inside(p, window);
    EXPECT_TRUE(in_scaled_cantor(p.first));
    EXPECT_TRUE(in_scaled_cantor(p.second));
  }
}

TEST(CantorOracle, WindowMissingTheSetFails) {
  const CantorOracle oracle(ratio(1, 3), ratio(1, 2));
  try {
    oracle.two_points(Window{ratio(1, 100), ratio(1, 50)}, 64, 0);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kOracle);
  }
}

TEST(DigitRestrictionOracle, PointsUseAllowedDigits) {
  for (const std::string name : {"restrict-binary", "restrict-mod3", "restrict-sparse"}) {
    const auto oracle = std::dynamic_pointer_cast<const DigitRestrictionOracle>(make_oracle(name));
    ASSERT_NE(oracle, nullptr);
    for (int attempt = 0; attempt < 3; ++attempt) {
      EXPECT_TRUE(digits_allowed(oracle->anchor(attempt), *oracle, 60)) << name;
    }
    const BasicInterval root(5, {0, 0, 0, 0});
    for (int attempt = 0; attempt < 3; ++attempt) {
      const PointPair p = oracle->two_points(root, 40, attempt);
      expect_pair_inside(p, root);
      EXPECT_TRUE(digits_allowed(p.first, *oracle, 60)) << name;
      EXPECT_TRUE(digits_allowed(p.second, *oracle, 60)) << name;
      for (int level = 2; level <= 40; ++level) {
        EXPECT_EQ(classify_endpoint(p.first, level), EndpointClass::kInterior);
        EXPECT_EQ(classify_endpoint(p.second, level), EndpointClass::kInterior);
      }
    }
  }
}

TEST(DigitRestrictionOracle, RejectsSetsWithoutZero) {
  const DigitRestrictionOracle oracle("bad", [](int) { return std::vector<int>{1}; });
  EXPECT_THROW(oracle.allowed(3), Error);
}

TEST(TranslatedOracle, ShiftsPointsAndWindows) {
  const auto inner = make_oracle("restrict-binary");
  const TranslatedOracle moved(inner, ratio(1, 7));
  EXPECT_EQ(moved.anchor(0), inner->anchor(0) + ratio(1, 7));
  const Window w{ratio(1, 7), ratio(1, 7) + ratio(1, 120)};
  const PointPair p = moved.two_points(w, 40, 0);
  const PointPair q = inner->two_points(w.shifted(-ratio(1, 7)), 40, 0);
  EXPECT_EQ(p.first, q.first + ratio(1, 7));
  EXPECT_EQ(p.second, q.second + ratio(1, 7));
  EXPECT_TRUE(w.strictly_contains(p.first));
}

TEST(FileTreeOracle, AnswersFromContainedNodes) {
  const std::string text = R"({
    "root": {"prefix": [0, 0, 0, 0], "points": ["1/1013", "1/1009"],
             "children": [{"prefix": [0, 0, 0, 0, 0, 0], "points": ["1/6007", "1/6011"]}]}
  })";
  const FileTreeOracle oracle = FileTreeOracle::parse(text, "inline");
  EXPECT_EQ(oracle.anchor(0), ratio(1, 1013));
  const PointPair root = oracle.two_points(BasicInterval(5, {0, 0, 0, 0}), 10, 0);
  EXPECT_EQ(root.first, ratio(1, 1013));
  EXPECT_EQ(root.second, ratio(1, 1009));
  const PointPair child = oracle.two_points(BasicInterval(6, {0, 0, 0, 0, 0}), 10, 0);
  EXPECT_EQ(child.first, ratio(1, 6007));
  EXPECT_EQ(child.second, ratio(1, 6011));
  EXPECT_THROW(oracle.two_points(BasicInterval(6, {0, 0, 0, 0, 1}), 10, 0), Error);
}

TEST(FileTreeOracle, RejectsMalformedTrees) {
  const std::vector<std::string> bad = {
      "{",
      R"({"root": {"points": ["1/2"]}})",
      R"({"root": {"prefix": [0, 0], "points": ["1/2"]}})",
      R"({"root": {"prefix": [0, 0], "points": [0.1]}})",
      R"({"root": {"prefix": [0, 0], "children": [{"prefix": [1, 0, 0]}]}})",
      R"({"root": {"prefix": [0, 3]}})",
  };
  for (const auto& text : bad) {
    try {
      FileTreeOracle::parse(text, "bad");
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kParse) << text;
    }
  }
}

}  // namespace
}  // namespace factoradic
