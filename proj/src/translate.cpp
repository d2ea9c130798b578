#include "factoradic/translate.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

#include "factoradic/error.hpp"
#include "factoradic/random.hpp"

namespace factoradic {

namespace {

const Rational& root_width() {
  static const Rational width = inverse_factorial(kRootLevel);
  return width;
}

bool usable_anchor(const Rational& a) {
  return a > 0 && a < root_width() &&
         classify_endpoint(a, kRootLevel) == EndpointClass::kInterior;
}

std::string describe(const BasicInterval& interval) {
  std::string s = "level-" + std::to_string(interval.level()) + " interval [";
  for (std::size_t i = 0; i < interval.prefix().size(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(interval.prefix()[i]);
  }
  return s + "]";
}

}  // namespace

Rational normalization_shift(const Rational& anchor) {
  const Rational scaled = anchor / root_width();
  Rational t;
  if (scaled.get_den() == 1) {
    t = ratio(1, 240) - anchor;
  } else {
    t = -Rational(floor_of(scaled)) * root_width();
  }
  t.canonicalize();
  return t;
}

NormalizedInput normalize_input(OraclePtr oracle, int max_attempts) {
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Rational anchor;
    try {
      anchor = oracle->anchor(attempt);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kOracle) throw;
      continue;
    }
    Rational shift = normalization_shift(anchor);
    Rational moved = anchor + shift;
    moved.canonicalize();
    if (usable_anchor(moved)) {
      return {std::make_shared<TranslatedOracle>(std::move(oracle), shift), shift};
    }
  }
  throw Error(ErrorKind::kOracle,
              oracle->name() + ": no usable anchor after " + std::to_string(max_attempts) + " attempts");
}

int level_floor(int k) {
  if (k < 0 || k > 28) {
    throw Error(ErrorKind::kBudget, "tree height " + std::to_string(k) + " is out of range");
  }
  return (1 << (k + 2)) + 1;
}

namespace {

// Where the points of one recursion step first sit in pairwise distinct
// level-n intervals, or which point broke the endpoint contract.
struct Separation {
  int next_level = 0;
  std::optional<std::size_t> bad_point;
};

Separation separate(const std::vector<Rational>& points, int from_level, int level_floor_next,
                    int max_level) {
  std::vector<DigitStream> streams;
  streams.reserve(points.size());
  for (const Rational& p : points) {
    streams.emplace_back(p);
    for (int n = 2; n <= from_level; ++n) streams.back().next();
  }
  std::vector<bool> diverged(points.size() / 2, false);
  std::vector<int> digits(points.size(), 0);
  bool separated = false;
  for (int n = from_level + 1;; ++n) {
    if (n > max_level) {
      throw Error(ErrorKind::kBudget,
                  "separating the points needs a level beyond " + std::to_string(max_level));
    }
    for (std::size_t i = 0; i < streams.size(); ++i) {
      digits[i] = streams[i].next();
      if (streams[i].terminated()) return {0, i};
    }
    for (std::size_t pair = 0; pair < diverged.size(); ++pair) {
      if (digits[2 * pair] != digits[2 * pair + 1]) diverged[pair] = true;
    }
    separated = separated || std::all_of(diverged.begin(), diverged.end(), [](bool b) { return b; });
    if (separated && n >= level_floor_next) return {n, std::nullopt};
  }
}

}  // namespace

IntervalTree build_tree(const PerfectSetOracle& oracle, int height, const BuildOptions& options) {
  if (height < 0) {
    throw Error(ErrorKind::kInvalidArgument, "tree height must be >= 0");
  }
  if (level_floor(height) > options.max_level) {
    throw Error(ErrorKind::kBudget, "height " + std::to_string(height) + " needs levels beyond " +
                                        std::to_string(options.max_level));
  }

  std::optional<Rational> anchor;
  for (int attempt = 0; attempt < options.max_attempts && !anchor; ++attempt) {
    Rational a = oracle.anchor(attempt);
    if (usable_anchor(a)) anchor = std::move(a);
  }
  if (!anchor) {
    throw Error(ErrorKind::kOracle, oracle.name() + ": anchor is not inside (0, 1/120); normalize first");
  }

  IntervalTree tree;
  tree.levels.push_back(kRootLevel);
  tree.families.push_back({interval_of(fns_from_rational(*anchor, kRootLevel), kRootLevel)});
  tree.witnesses.push_back({*anchor});

  for (int k = 0; k < height; ++k) {
    const auto& family = tree.families[static_cast<std::size_t>(k)];
    const int level = tree.levels[static_cast<std::size_t>(k)];
    std::vector<int> attempts(family.size(), 0);
    std::vector<Rational> points(2 * family.size());

    auto request = [&](std::size_t i) {
      const BasicInterval& interval = family[i];
      for (; attempts[i] < options.max_attempts; ++attempts[i]) {
        auto [p, q] = oracle.two_points(interval, options.max_level, attempts[i]);
        if (p == q || !interval.contains_in_interior(p) || !interval.contains_in_interior(q)) {
          continue;
        }
        if (q < p) std::swap(p, q);
        points[2 * i] = std::move(p);
        points[2 * i + 1] = std::move(q);
        return;
      }
      throw Error(ErrorKind::kOracle, oracle.name() + ": no valid pair of distinct interior points in " +
                                          describe(interval));
    };
    for (std::size_t i = 0; i < family.size(); ++i) request(i);

    Separation sep;
    for (;;) {
      sep = separate(points, level, level_floor(k + 1), options.max_level);
      if (!sep.bad_point) break;
      const std::size_t owner = *sep.bad_point / 2;
      ++attempts[owner];
      try {
        request(owner);
      } catch (const Error& e) {
        throw Error(ErrorKind::kOracle, oracle.name() + ": point " +
                                            format_rational(points[*sep.bad_point]) +
                                            " is a basic-interval endpoint; " + e.what());
      }
    }

    std::vector<BasicInterval> next;
    std::vector<Rational> next_witnesses;
    std::vector<std::array<std::size_t, 2>> succ;
    for (std::size_t i = 0; i < family.size(); ++i) {
      for (std::size_t j : {2 * i, 2 * i + 1}) {
        next.push_back(interval_of(fns_from_rational(points[j], sep.next_level), sep.next_level));
        next_witnesses.push_back(points[j]);
      }
      succ.push_back({2 * i, 2 * i + 1});
    }
    tree.levels.push_back(sep.next_level);
    tree.families.push_back(std::move(next));
    tree.witnesses.push_back(std::move(next_witnesses));
    tree.successors.push_back(std::move(succ));
  }
  return tree;
}

AuditReport audit_tree(const IntervalTree& tree) {
  AuditReport report;
  auto violation = [&report](std::string message) { report.violations.push_back(std::move(message)); };
  const std::size_t height = tree.levels.size();
  if (height == 0) {
    violation("tree has no levels");
    return report;
  }
  if (tree.families.size() != height || tree.witnesses.size() != height ||
      tree.successors.size() + 1 != height) {
    violation("levels, families, witnesses and successors have inconsistent sizes");
    return report;
  }
  if (tree.levels[0] != kRootLevel) violation("l_0 must be 5");
  if (tree.families[0].size() != 1 ||
      tree.families[0][0] != BasicInterval(kRootLevel, std::vector<int>(kRootLevel - 1, 0))) {
    violation("root family must be the single interval [0, 1/5!]");
  }

  for (std::size_t k = 0; k < height; ++k) {
    const int level = tree.levels[k];
    const auto& family = tree.families[k];
    const std::string tag = "k=" + std::to_string(k) + ": ";
    if (k > 0 && level <= tree.levels[k - 1]) violation(tag + "levels must increase");
    if (level < level_floor(static_cast<int>(k))) {
      violation(tag + "condition 3 fails, l_k = " + std::to_string(level) + " < 2^(k+2)+1 = " +
                std::to_string(level_floor(static_cast<int>(k))));
    }
    if (family.size() != (std::size_t{1} << k)) {
      violation(tag + "family has " + std::to_string(family.size()) + " intervals, expected 2^k");
    }
    if (tree.witnesses[k].size() != family.size()) {
      violation(tag + "every interval needs exactly one witness");
      continue;
    }
    for (std::size_t i = 0; i < family.size(); ++i) {
      if (family[i].level() != level) violation(tag + "interval " + std::to_string(i) + " has the wrong level");
      if (i > 0 && !(family[i - 1] < family[i])) violation(tag + "intervals must be distinct and ordered");
      if (!family[i].contains_in_interior(tree.witnesses[k][i])) {
        violation(tag + "condition 2 fails, witness outside interval " + std::to_string(i));
      }
    }
    if (k + 1 == height) continue;
    const auto& next = tree.families[k + 1];
    const auto& succ = tree.successors[k];
    if (succ.size() != family.size()) {
      violation(tag + "successor map has the wrong size");
      continue;
    }
    std::vector<int> claimed(next.size(), 0);
    for (std::size_t i = 0; i < family.size(); ++i) {
      const auto inside = std::count_if(next.begin(), next.end(),
                                        [&](const BasicInterval& j) { return family[i].contains(j); });
      if (inside != 2) {
        violation(tag + "condition 1 fails, interval " + std::to_string(i) + " contains " +
                  std::to_string(inside) + " successors");
      }
      if (succ[i][0] == succ[i][1]) violation(tag + "successor map entry " + std::to_string(i) + " repeats a child");
      for (std::size_t j : succ[i]) {
        if (j >= next.size() || !family[i].contains(next[j])) {
          violation(tag + "successor map entry " + std::to_string(i) + " is wrong");
        } else {
          ++claimed[j];
        }
      }
    }
    if (std::any_of(claimed.begin(), claimed.end(), [](int c) { return c != 1; })) {
      violation(tag + "successor map does not claim every next-level interval exactly once");
    }
  }
  return report;
}

std::vector<int> digit_support(const IntervalTree& tree, int position) {
  if (position < 2 || position > tree.depth()) {
    throw Error(ErrorKind::kDomain, "position " + std::to_string(position) + " outside 2.." +
                                        std::to_string(tree.depth()));
  }
  std::set<int> digits;
  for (const BasicInterval& leaf : tree.leaves()) {
    digits.insert(leaf.prefix()[static_cast<std::size_t>(position - 2)]);
  }
  return {digits.begin(), digits.end()};
}

TranslationCertificate select_translation(const IntervalTree& tree) {
  std::vector<std::vector<int>> supports;
  for (int n = 2; n <= tree.depth(); ++n) supports.push_back(digit_support(tree, n));
  TranslationCertificate cert = certify_supports(std::move(supports), Rational(0));
  cert.levels = tree.levels;
  return cert;
}

std::vector<FnsNumber> leaf_points(const IntervalTree& tree) {
  std::vector<FnsNumber> out;
  out.reserve(tree.leaves().size());
  for (const BasicInterval& leaf : tree.leaves()) out.emplace_back(leaf.prefix());
  return out;
}

namespace {

std::vector<std::size_t> sample_indices(std::size_t leaves, std::size_t count) {
  std::vector<std::size_t> out;
  if (leaves == 0 || count == 0) return out;
  if (count >= leaves) {
    for (std::size_t i = 0; i < leaves; ++i) out.push_back(i);
    return out;
  }
  out.push_back(0);
  out.push_back(leaves - 1);
  for (std::size_t i = 1; i + 1 < count; ++i) out.push_back(i * (leaves - 1) / (count - 1));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

void attach_samples(TranslationCertificate& cert, const IntervalTree& tree, std::size_t count) {
  const std::vector<FnsNumber> leaves = leaf_points(tree);
  cert.samples.clear();
  for (std::size_t i : sample_indices(leaves.size(), count)) {
    try {
      SumWithCarries added = fns_add(leaves[i], cert.y);
      cert.samples.push_back({leaves[i], std::move(added.sum), std::move(added.trace.carries)});
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kOverflow) throw;
    }
  }
}

VerificationReport verify_certificate(const IntervalTree& tree, const TranslationCertificate& cert,
                                      std::size_t samples) {
  VerificationReport report;
  auto structure = [&report](int position, std::string message) {
    report.failures.push_back({FindingStage::kStructure, position, std::move(message)});
  };

  const AuditReport audit = audit_tree(tree);
  for (const std::string& v : audit.violations) structure(0, "tree: " + v);
  if (audit.ok()) report.facts.push_back("tree: conditions 1-3 hold at every level");

  if (cert.depth != tree.depth() || cert.levels != tree.levels) {
    structure(0, "certificate depth or levels do not match the tree");
    return report;
  }
  for (int n = 2; n <= tree.depth(); ++n) {
    if (cert.support(n) != digit_support(tree, n)) {
      structure(n, "recorded support at position " + std::to_string(n) + " differs from the tree");
    }
  }

  report.merge(check_symbolic(cert));

  const std::vector<FnsNumber> leaves = leaf_points(tree);
  std::size_t checked = 0;
  for (std::size_t i : sample_indices(leaves.size(), samples)) {
    ++checked;
    SampleOutcome outcome = check_sample(leaves[i], cert.y);
    if (outcome.failure) report.failures.push_back(*outcome.failure);
  }
  report.numeric_samples += checked;
  if (report.stage_ok(FindingStage::kNumeric)) {
    report.facts.push_back("numeric: " + std::to_string(checked) + " of " +
                           std::to_string(leaves.size()) + " leaves satisfy q + y in C0");
  }

  for (const SampleCheck& s : cert.samples) {
    if (std::find(leaves.begin(), leaves.end(), s.q) == leaves.end()) {
      structure(0, "stored sample is not a leaf of the tree");
    }
  }
  report.merge(check_stored_samples(cert));
  return report;
}

VerificationReport verify_certificate_standalone(const TranslationCertificate& cert,
                                                 std::size_t extra_samples, std::uint64_t seed) {
  VerificationReport report;
  auto structure = [&report](int position, std::string message) {
    report.failures.push_back({FindingStage::kStructure, position, std::move(message)});
  };

  const auto& levels = cert.levels;
  if (!levels.empty()) {
    if (levels.front() != kRootLevel) structure(0, "l_0 must be 5");
    if (levels.back() != cert.depth) structure(0, "depth must equal the last level");
    for (std::size_t k = 0; k < levels.size(); ++k) {
      if (k > 0 && levels[k] <= levels[k - 1]) structure(0, "levels must increase");
      if (levels[k] < level_floor(static_cast<int>(k))) {
        structure(0, "condition 3 fails at k=" + std::to_string(k));
      }
    }
    if (report.failures.empty()) {
      // |V_n| <= 2^{k+1} for l_k < n <= l_{k+1}; a single digit up to l_0.
      std::size_t k = 0;
      for (int n = 2; n <= cert.depth; ++n) {
        while (k + 1 < levels.size() && n > levels[k + 1]) ++k;
        const std::size_t bound = n <= levels[0] ? 1 : (std::size_t{2} << k);
        if (cert.support(n).size() > bound) {
          structure(n, "support at position " + std::to_string(n) + " exceeds the tree bound");
        }
      }
      report.facts.push_back("levels: l_0 = 5 and l_k >= 2^(k+2)+1 for all k");
    }
  }

  report.merge(check_symbolic(cert));
  if (!report.stage_ok(FindingStage::kStructure)) return report;

  for (const SampleCheck& s : cert.samples) {
    for (int n = 2; n <= std::min(cert.depth, s.q.depth()); ++n) {
      const auto& support = cert.support(n);
      if (!std::binary_search(support.begin(), support.end(), s.q.digit(n))) {
        structure(n, "stored sample digit lies outside the support");
        break;
      }
    }
  }
  report.merge(check_stored_samples(cert));

  std::mt19937_64 rng(seed);
  std::size_t drawn = 0;
  for (; drawn < extra_samples; ++drawn) {
    std::vector<int> digits;
    for (int n = 2; n <= cert.depth; ++n) {
      const auto& support = cert.support(n);
      digits.push_back(support[uniform_below(rng, support.size())]);
    }
    SampleOutcome outcome = check_sample(FnsNumber(std::move(digits)), cert.y);
    if (outcome.failure) {
      report.failures.push_back(*outcome.failure);
      ++drawn;
      break;
    }
  }
  report.numeric_samples += drawn;
  if (drawn > 0 && report.stage_ok(FindingStage::kNumeric)) {
    report.facts.push_back("numeric: " + std::to_string(drawn) +
                           " random strings from the supports land in C0");
  }
  return report;
}

EmbedResult embed(OraclePtr oracle, int height, const EmbedOptions& options) {
  NormalizedInput input = normalize_input(std::move(oracle), options.build.max_attempts);
  IntervalTree tree = build_tree(*input.oracle, height, options.build);
  TranslationCertificate cert = select_translation(tree);
  cert.shift = input.shift;
  attach_samples(cert, tree, options.samples);
  VerificationReport report = verify_certificate(tree, cert, options.samples);
  return {std::move(input.shift), std::move(tree), std::move(cert), std::move(report)};
}

}  // namespace factoradic
