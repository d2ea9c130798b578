#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "factoradic/c0.hpp"
#include "factoradic/error.hpp"
#include "reference.hpp"

namespace factoradic {
namespace {

FnsNumber num(std::vector<int> digits) { return FnsNumber(std::move(digits)); }

TEST(BasicInterval, Examples) {
  const BasicInterval a = interval_of(num({0, 0, 0}), 2);
  EXPECT_EQ(a.prefix(), std::vector<int>{0});
  EXPECT_EQ(a.lower(), 0);
  EXPECT_EQ(a.upper(), ratio(1, 2));

  const BasicInterval b = interval_of(num({0, 2, 3}), 3);
  EXPECT_EQ(b.prefix(), (std::vector<int>{0, 2}));
  EXPECT_EQ(b.lower(), ratio(1, 3));
  EXPECT_EQ(b.upper(), ratio(1, 2));

  const BasicInterval root = interval_of(num({1, 0}), 0);
  EXPECT_TRUE(root.prefix().empty());
  EXPECT_EQ(root.lower(), 0);
  EXPECT_EQ(root.upper(), 1);
}

TEST(BasicInterval, RejectsBadPrefix) {
  EXPECT_THROW(BasicInterval(3, {0}), Error);
  EXPECT_THROW(BasicInterval(2, {2}), Error);
  EXPECT_THROW(BasicInterval(-1, {}), Error);
}

TEST(BasicInterval, Children) {
  const auto top = children(BasicInterval(1, {}));
  ASSERT_EQ(top.size(), 2u);
  EXPECT_EQ(top[0].upper(), ratio(1, 2));
  EXPECT_EQ(top[1].lower(), ratio(1, 2));
  EXPECT_EQ(top[1].upper(), 1);

  const auto kids = children(BasicInterval(2, {0}));
  ASSERT_EQ(kids.size(), 3u);
  for (int d = 0; d < 3; ++d) EXPECT_EQ(kids[static_cast<std::size_t>(d)].prefix(), (std::vector<int>{0, d}));
}

TEST(BasicInterval, ChildrenTileParent) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const int level = std::uniform_int_distribution<int>(2, 20)(rng);
    const BasicInterval parent(level, reference::random_string(rng, level));
    const auto kids = children(parent);
    ASSERT_EQ(kids.size(), static_cast<std::size_t>(level + 1));
    EXPECT_EQ(kids.front().lower(), parent.lower());
    EXPECT_EQ(kids.back().upper(), parent.upper());
    for (std::size_t j = 0; j + 1 < kids.size(); ++j) EXPECT_EQ(kids[j].upper(), kids[j + 1].lower());
    for (const auto& k : kids) EXPECT_TRUE(parent.contains(k));
  }
}

// The n! level-n intervals tile [0, 1] with disjoint interiors.
TEST(BasicInterval, LevelPartitionUpToSeven) {
  for (int level = 2; level <= 7; ++level) {
    const auto prefixes = reference::all_strings(level);
    ASSERT_EQ(prefixes.size(), static_cast<std::size_t>(reference::fact(level).get_si()));
    std::vector<BasicInterval> family;
    for (const auto& p : prefixes) family.emplace_back(level, p);
    std::sort(family.begin(), family.end(),
              [](const BasicInterval& a, const BasicInterval& b) { return a.lower() < b.lower(); });
    EXPECT_EQ(family.front().lower(), 0);
    EXPECT_EQ(family.back().upper(), 1);
    for (std::size_t j = 0; j + 1 < family.size(); ++j) {
      ASSERT_EQ(family[j].upper(), family[j + 1].lower());
      ASSERT_EQ(family[j].length(), inverse_factorial(static_cast<unsigned long>(level)));
    }
  }
}

TEST(BasicInterval, NestingAndMembership) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 300; ++i) {
    const int depth = std::uniform_int_distribution<int>(3, 25)(rng);
    const FnsNumber x = num(reference::random_string(rng, depth));
    const Rational v = fns_to_rational(x);
    for (int n = 0; n < depth; ++n) {
      const BasicInterval outer = interval_of(x, n);
      const BasicInterval inner = interval_of(x, n + 1);
      EXPECT_TRUE(outer.contains(inner));
      EXPECT_TRUE(outer.contains(v));
    }
  }
  const BasicInterval half(2, {1});
  EXPECT_TRUE(half.contains(ratio(1, 2)));
  EXPECT_FALSE(half.contains_in_interior(ratio(1, 2)));
  EXPECT_TRUE(half.contains_in_interior(ratio(2, 3)));
}

TEST(C0, MembershipExamples) {
  EXPECT_TRUE(in_c0(num({0, 0, 0, 0})));
  EXPECT_TRUE(in_c0(num({0, 1, 2, 3})));
  EXPECT_FALSE(in_c0(num({1, 0, 0, 0})));
}

TEST(C0, MembershipMatchesReference) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 2000; ++i) {
    auto d = reference::random_string(rng, std::uniform_int_distribution<int>(2, 15)(rng));
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = std::min(d[j], static_cast<int>(j) + 1);
    EXPECT_EQ(in_c0(num(d)), reference::in_c0(d));
  }
}

// Failing at depth N keeps failing at every extension.
TEST(C0, Hereditary) {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 500; ++i) {
    const int depth = std::uniform_int_distribution<int>(2, 15)(rng);
    const auto d = reference::random_string(rng, depth + 10);
    const FnsNumber x = num(d);
    for (int n = 2; n < x.depth(); ++n) {
      if (!in_c0(x.truncated(n))) EXPECT_FALSE(in_c0(x.truncated(n + 1)));
    }
  }
}

TEST(C0, MeasureBound) {
  EXPECT_EQ(c0_measure_bound(2), ratio(1, 2));
  EXPECT_EQ(c0_measure_bound(5), ratio(1, 5));
  EXPECT_EQ(c0_measure_bound(120), ratio(1, 120));
  EXPECT_THROW(c0_measure_bound(1), Error);
  for (int depth = 2; depth <= 7; ++depth) {
    std::size_t allowed = 0;
    for (const auto& p : reference::all_strings(depth)) allowed += reference::in_c0(p) ? 1 : 0;
    mpq_class share(allowed, reference::fact(depth).get_ui());
    share.canonicalize();
    EXPECT_EQ(c0_measure_bound(depth), share);
  }
}

}  // namespace
}  // namespace factoradic
