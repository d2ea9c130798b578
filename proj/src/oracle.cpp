#include "factoradic/oracle.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "factoradic/error.hpp"
#include "json.hpp"

namespace factoradic {

namespace {

// Gives up on windows that would need absurdly deep searches.
constexpr int kSearchLevelLimit = 20000;
constexpr std::size_t kFrontierLimit = 1u << 16;

Rational power_of_three(unsigned long exponent) {
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 3, exponent);
  return Rational(p);
}

[[noreturn]] void oracle_failure(const std::string& oracle, const std::string& what) {
  throw Error(ErrorKind::kOracle, oracle + ": " + what);
}

}  // namespace

Window Window::of(const BasicInterval& interval) {
  return {interval.lower(), interval.upper()};
}

Window Window::shifted(const Rational& t) const {
  Rational a = lo + t;
  Rational b = hi + t;
  a.canonicalize();
  b.canonicalize();
  return {std::move(a), std::move(b)};
}

// --- TranslatedOracle -------------------------------------------------------

TranslatedOracle::TranslatedOracle(OraclePtr inner, Rational shift)
    : inner_(std::move(inner)), shift_(std::move(shift)) {}

std::string TranslatedOracle::name() const {
  return inner_->name() + "+" + format_rational(shift_);
}

Rational TranslatedOracle::anchor(int attempt) const {
  Rational a = inner_->anchor(attempt) + shift_;
  a.canonicalize();
  return a;
}

PointPair TranslatedOracle::two_points(const Window& window, int depth_hint, int attempt) const {
  const Rational back = -shift_;
  auto [p, q] = inner_->two_points(window.shifted(back), depth_hint, attempt);
  Rational a = p + shift_;
  Rational b = q + shift_;
  a.canonicalize();
  b.canonicalize();
  return {std::move(a), std::move(b)};
}

// --- CantorOracle -----------------------------------------------------------

CantorOracle::CantorOracle(Rational offset, Rational scale)
    : offset_(std::move(offset)), scale_(std::move(scale)) {
  if (scale_ <= 0) {
    throw Error(ErrorKind::kInvalidArgument, "Cantor scale must be positive");
  }
}

std::string CantorOracle::name() const {
  return "cantor-scaled(" + format_rational(offset_) + "," + format_rational(scale_) + ")";
}

Rational CantorOracle::anchor(int attempt) const {
  // 1/4 = 0.0202..., 3/4 = 0.2020... in base 3.
  Rational k = attempt % 2 == 0 ? ratio(1, 4) : ratio(3, 4);
  Rational a = offset_ + scale_ * k;
  a.canonicalize();
  return a;
}

PointPair CantorOracle::two_points(const Window& window, int depth_hint, int attempt) const {
  Rational klo = (window.lo - offset_) / scale_;
  Rational khi = (window.hi - offset_) / scale_;
  klo.canonicalize();
  khi.canonicalize();

  // Cylinders are [a, a + len] for ternary prefixes over {0, 2}.
  std::vector<Rational> frontier{Rational(0)};
  Rational len(1);
  std::optional<Rational> found;
  for (int level = 0; !found; ++level) {
    if (level > kSearchLevelLimit) oracle_failure(name(), "window too narrow");
    for (const Rational& a : frontier) {
      if (klo < a && a + len < khi) {
        found = a;
        break;
      }
    }
    if (found) break;
    Rational child_len = len / 3;
    child_len.canonicalize();
    std::vector<Rational> next;
    for (const Rational& a : frontier) {
      for (int digit : {0, 2}) {
        Rational c = a + digit * child_len;
        c.canonicalize();
        if (c < khi && c + child_len > klo) next.push_back(std::move(c));
      }
    }
    if (next.empty()) oracle_failure(name(), "window does not meet the set");
    if (next.size() > kFrontierLimit) oracle_failure(name(), "window too wide");
    frontier = std::move(next);
    len = std::move(child_len);
  }
  Rational a = *found;
  for (int i = 0; i < attempt; ++i) {
    len /= 3;  // left sub-cylinder
  }
  len.canonicalize();

  // tail = 0.(2 0^{m-1})* in base 3 = 2 * 3^{m-1} / (3^m - 1). Its reduced
  // denominator has a prime factor > m, so no point built from it is an
  // endpoint of a basic interval at any level <= m - 1.
  const unsigned long m = static_cast<unsigned long>(std::max(depth_hint + 1, 3));
  Rational tail = 2 * power_of_three(m - 1) / (power_of_three(m) - 1);
  tail.canonicalize();
  Rational third = len / 3;
  Rational left = a + third * tail;
  Rational right = a + 2 * third + third * tail;
  Rational p = offset_ + scale_ * left;
  Rational q = offset_ + scale_ * right;
  p.canonicalize();
  q.canonicalize();
  return {std::move(p), std::move(q)};
}

// --- DigitRestrictionOracle -------------------------------------------------

DigitRestrictionOracle::DigitRestrictionOracle(std::string name, DigitSets allowed)
    : name_(std::move(name)), allowed_(std::move(allowed)) {}

std::string DigitRestrictionOracle::name() const { return name_; }

std::vector<int> DigitRestrictionOracle::allowed(int position) const {
  std::vector<int> digits = allowed_(position);
  std::sort(digits.begin(), digits.end());
  digits.erase(std::unique(digits.begin(), digits.end()), digits.end());
  if (digits.empty() || digits.front() != 0 || digits.back() > position - 1) {
    oracle_failure(name_, "digit set at position " + std::to_string(position) +
                              " must contain 0 and stay within the digit range");
  }
  return digits;
}

namespace {

int first_position_with_nonzero(const DigitRestrictionOracle& oracle, int from) {
  for (int n = from; n < from + kSearchLevelLimit; ++n) {
    if (oracle.allowed(n).size() >= 2) return n;
  }
  throw Error(ErrorKind::kOracle, oracle.name() + ": digit sets stop branching");
}

}  // namespace

Rational DigitRestrictionOracle::anchor(int attempt) const {
  Rational a(0);
  for (int n = 2; n <= 5; ++n) {
    a += Rational(allowed(n).back()) * inverse_factorial(static_cast<unsigned long>(n));
  }
  const int last = first_position_with_nonzero(*this, 6 + attempt);
  a += Rational(allowed(last).back()) * inverse_factorial(static_cast<unsigned long>(last));
  a.canonicalize();
  return a;
}

PointPair DigitRestrictionOracle::two_points(const Window& window, int depth_hint,
                                             int attempt) const {
  struct Node {
    Rational lower;
    int level;
  };
  std::vector<Node> frontier{{Rational(0), 1}};
  std::optional<Node> found;
  while (!found) {
    for (const Node& node : frontier) {
      Rational upper = node.lower + inverse_factorial(static_cast<unsigned long>(node.level));
      if (window.lo < node.lower && upper < window.hi) {
        found = node;
        break;
      }
    }
    if (found) break;
    const int level = frontier.front().level + 1;
    if (level > kSearchLevelLimit) oracle_failure(name_, "window too narrow");
    const Rational width = inverse_factorial(static_cast<unsigned long>(level));
    const std::vector<int> digits = allowed(level);
    std::vector<Node> next;
    for (const Node& node : frontier) {
      for (int d : digits) {
        Rational lower = node.lower + d * width;
        lower.canonicalize();
        if (lower < window.hi && lower + width > window.lo) {
          next.push_back({std::move(lower), level});
        }
      }
    }
    if (next.empty()) oracle_failure(name_, "window does not meet the set");
    if (next.size() > kFrontierLimit) oracle_failure(name_, "window too wide");
    frontier = std::move(next);
  }

  // Two members of the node's subtree that differ at the first branching
  // position and end with a nonzero digit beyond the depth hint.
  const int branch = first_position_with_nonzero(*this, found->level + 1);
  const int last =
      first_position_with_nonzero(*this, std::max(depth_hint, branch) + 1 + attempt);
  const Rational tail =
      Rational(allowed(last)[1]) * inverse_factorial(static_cast<unsigned long>(last));
  Rational p = found->lower + tail;
  Rational q = found->lower +
               Rational(allowed(branch)[1]) * inverse_factorial(static_cast<unsigned long>(branch)) +
               tail;
  p.canonicalize();
  q.canonicalize();
  return {std::move(p), std::move(q)};
}

// --- FileTreeOracle ---------------------------------------------------------

FileTreeOracle::FileTreeOracle(std::string name, Node root, std::optional<Rational> anchor)
    : name_(std::move(name)), root_(std::move(root)), anchor_(std::move(anchor)) {}

namespace {

using nlohmann::json;

FileTreeOracle::Node parse_node(const json& j, const BasicInterval* parent) {
  if (!j.is_object() || !j.contains("prefix") || !j.at("prefix").is_array()) {
    throw Error(ErrorKind::kParse, "tree node needs a 'prefix' array");
  }
  std::vector<int> prefix;
  for (const json& d : j.at("prefix")) {
    if (!d.is_number_integer()) throw Error(ErrorKind::kParse, "prefix digits must be integers");
    prefix.push_back(d.get<int>());
  }
  FileTreeOracle::Node node;
  try {
    const int level = static_cast<int>(prefix.size()) + 1;
    node.interval = BasicInterval(level, std::move(prefix));
  } catch (const Error& e) {
    throw Error(ErrorKind::kParse, std::string("bad tree node prefix: ") + e.what());
  }
  if (parent != nullptr &&
      (!parent->contains(node.interval) || node.interval.level() <= parent->level())) {
    throw Error(ErrorKind::kParse, "child interval must refine its parent");
  }
  if (j.contains("points")) {
    for (const json& p : j.at("points")) {
      if (!p.is_string()) throw Error(ErrorKind::kParse, "points must be rational strings");
      Rational x = parse_rational(p.get<std::string>());
      if (x < 0 || x >= 1 || !node.interval.contains(x)) {
        throw Error(ErrorKind::kParse,
                    "witness " + format_rational(x) + " lies outside its node interval");
      }
      node.points.push_back(std::move(x));
    }
  }
  if (j.contains("children")) {
    for (const json& c : j.at("children")) {
      node.children.push_back(parse_node(c, &node.interval));
    }
  }
  return node;
}

void collect(const FileTreeOracle::Node& node, const Window& window, std::vector<Rational>& out) {
  const bool inside = window.lo <= node.interval.lower() && node.interval.upper() <= window.hi;
  if (inside) {
    for (const Rational& p : node.points) {
      if (window.strictly_contains(p) && std::find(out.begin(), out.end(), p) == out.end()) {
        out.push_back(p);
      }
    }
  }
  for (const auto& child : node.children) collect(child, window, out);
}

void all_points(const FileTreeOracle::Node& node, std::vector<Rational>& out) {
  for (const Rational& p : node.points) out.push_back(p);
  for (const auto& child : node.children) all_points(child, out);
}

}  // namespace

FileTreeOracle FileTreeOracle::parse(const std::string& json_text, const std::string& name) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("tree file is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("root")) {
    throw Error(ErrorKind::kParse, "tree file needs a 'root' node");
  }
  std::optional<Rational> anchor;
  if (j.contains("anchor")) {
    if (!j.at("anchor").is_string()) throw Error(ErrorKind::kParse, "anchor must be a string");
    anchor = parse_rational(j.at("anchor").get<std::string>());
  }
  std::string label = name;
  if (j.contains("name") && j.at("name").is_string()) label = j.at("name").get<std::string>();
  return FileTreeOracle(std::move(label), parse_node(j.at("root"), nullptr), std::move(anchor));
}

FileTreeOracle FileTreeOracle::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kParse, "cannot open tree file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), "file:" + path);
}

std::string FileTreeOracle::name() const { return name_; }

Rational FileTreeOracle::anchor(int attempt) const {
  std::vector<Rational> points;
  if (anchor_) points.push_back(*anchor_);
  all_points(root_, points);
  if (attempt < 0 || static_cast<std::size_t>(attempt) >= points.size()) {
    oracle_failure(name_, "no anchor available");
  }
  return points[static_cast<std::size_t>(attempt)];
}

PointPair FileTreeOracle::two_points(const Window& window, int /*depth_hint*/, int attempt) const {
  std::vector<Rational> candidates;
  collect(root_, window, candidates);
  int index = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      if (index++ == attempt) return {candidates[i], candidates[j]};
    }
  }
  oracle_failure(name_, "fewer than two usable witnesses inside [" + format_rational(window.lo) +
                            ", " + format_rational(window.hi) + "]");
}

// --- catalog ----------------------------------------------------------------

std::vector<std::string> catalog_names() {
  return {"cantor-scaled", "restrict-binary", "restrict-mod3", "restrict-sparse"};
}

OraclePtr make_oracle(const std::string& spec) {
  if (spec == "cantor-scaled") {
    return std::make_shared<CantorOracle>(ratio(1, 3), ratio(1, 2));
  }
  if (spec == "restrict-binary") {
    return std::make_shared<DigitRestrictionOracle>(
        spec, [](int) { return std::vector<int>{0, 1}; });
  }
  if (spec == "restrict-mod3") {
    return std::make_shared<DigitRestrictionOracle>(spec, [](int n) {
      std::vector<int> digits;
      for (int d = 0; d < n; d += 3) digits.push_back(d);
      return digits;
    });
  }
  if (spec == "restrict-sparse") {
    return std::make_shared<DigitRestrictionOracle>(spec, [](int n) {
      return n % 2 == 0 ? std::vector<int>{0, n - 1} : std::vector<int>{0};
    });
  }
  if (spec.rfind("file:", 0) == 0) {
    return std::make_shared<FileTreeOracle>(FileTreeOracle::load(spec.substr(5)));
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown oracle '" + spec + "'");
}

}  // namespace factoradic
