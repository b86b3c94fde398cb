#ifndef MEADOW_TRIVALENT_HPP
#define MEADOW_TRIVALENT_HPP

// The three-valued short-circuit (McCarthy) algebra {T, F, U} and equational
// laws over it, checked by exhaustive interpretation.

#include <array>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "meadow/errors.hpp"
#include "json.hpp"

namespace meadow {

/// Canonical iteration order is tt < ff < uu; the order carries no meaning.
enum class TriValue : std::uint8_t { tt, ff, uu };

inline constexpr std::array<TriValue, 3> all_tri_values{TriValue::tt, TriValue::ff,
                                                        TriValue::uu};

inline constexpr TriValue tri_not(TriValue a) noexcept {
  switch (a) {
    case TriValue::tt:
      return TriValue::ff;
    case TriValue::ff:
      return TriValue::tt;
    default:
      return TriValue::uu;
  }
}

/// Left-sequential disjunction: the right operand is consulted only after a
/// false left operand.
inline constexpr TriValue tri_or(TriValue a, TriValue b) noexcept {
  switch (a) {
    case TriValue::tt:
      return TriValue::tt;
    case TriValue::ff:
      return b;
    default:
      return TriValue::uu;
  }
}

inline constexpr TriValue tri_and(TriValue a, TriValue b) noexcept {
  switch (a) {
    case TriValue::ff:
      return TriValue::ff;
    case TriValue::tt:
      return b;
    default:
      return TriValue::uu;
  }
}

inline constexpr TriValue tri_imp(TriValue a, TriValue b) noexcept {
  return tri_or(tri_not(a), b);
}

inline constexpr const char* tri_name(TriValue a) noexcept {
  switch (a) {
    case TriValue::tt:
      return "T";
    case TriValue::ff:
      return "F";
    default:
      return "U";
  }
}

// ---------------------------------------------------------------------------
// Connective expressions over metavariables

enum class LawOp : std::uint8_t { constant, meta, negation, conj, disj, imp };

class LawExpr {
 public:
  static LawExpr constant(TriValue v) {
    auto n = std::make_shared<Node>();
    n->op = LawOp::constant;
    n->value = v;
    return LawExpr(std::move(n));
  }
  static LawExpr meta(std::string name) {
    auto n = std::make_shared<Node>();
    n->op = LawOp::meta;
    n->name = std::move(name);
    return LawExpr(std::move(n));
  }
  static LawExpr negation(LawExpr a) {
    auto n = std::make_shared<Node>();
    n->op = LawOp::negation;
    n->args = {std::move(a)};
    return LawExpr(std::move(n));
  }
  static LawExpr binary(LawOp op, LawExpr a, LawExpr b) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->args = {std::move(a), std::move(b)};
    return LawExpr(std::move(n));
  }

  LawOp op() const noexcept { return node_->op; }
  TriValue value() const noexcept { return node_->value; }
  const std::string& name() const noexcept { return node_->name; }
  const LawExpr& arg(std::size_t i) const noexcept { return node_->args[i]; }

  /// Metavariables in order of first occurrence, appended to `out`.
  void collect_metas(std::vector<std::string>& out) const {
    if (op() == LawOp::meta) {
      for (const auto& m : out)
        if (m == name()) return;
      out.push_back(name());
      return;
    }
    for (const auto& a : node_->args) a.collect_metas(out);
  }

  TriValue eval(const std::vector<std::string>& metas,
                const std::vector<TriValue>& assignment) const {
    switch (op()) {
      case LawOp::constant:
        return value();
      case LawOp::meta:
        for (std::size_t i = 0; i < metas.size(); ++i)
          if (metas[i] == name()) return assignment[i];
        throw Error("unassigned metavariable '" + name() + "'");
      case LawOp::negation:
        return tri_not(arg(0).eval(metas, assignment));
      case LawOp::conj:
        return tri_and(arg(0).eval(metas, assignment), arg(1).eval(metas, assignment));
      case LawOp::disj:
        return tri_or(arg(0).eval(metas, assignment), arg(1).eval(metas, assignment));
      case LawOp::imp:
        return tri_imp(arg(0).eval(metas, assignment), arg(1).eval(metas, assignment));
    }
    return TriValue::uu;
  }

 private:
  struct Node {
    LawOp op = LawOp::constant;
    TriValue value = TriValue::tt;
    std::string name;
    std::vector<LawExpr> args;
  };
  explicit LawExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// An equation between two connective expressions.
struct Law {
  std::string name;
  LawExpr lhs;
  LawExpr rhs;
};

namespace detail {

// Law syntax: `lhs = rhs` with identifiers as metavariables, T F U constants,
// `!`, `&&`, `||`, `->` (right-assoc) and parentheses. Precedence as for
// formulae.
class LawParser {
 public:
  explicit LawParser(std::string_view s) : s_(s) {}

  std::pair<LawExpr, LawExpr> equation() {
    auto l = imp();
    expect("=");
    auto r = imp();
    skip();
    if (i_ != s_.size()) fail("end of input");
    return {std::move(l), std::move(r)};
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(i_, tok.size()) != tok) return false;
    // A lone '=' must not swallow the first character of '=='.
    if (tok == "=" && s_.substr(i_, 2) == "==") return false;
    i_ += tok.size();
    return true;
  }
  void expect(std::string_view tok) {
    if (!eat(tok)) fail("'" + std::string(tok) + "'");
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(1, i_ + 1, {what},
                     i_ < s_.size() ? "'" + std::string(1, s_[i_]) + "'" : "end of input");
  }

  LawExpr imp() {
    auto l = disj();
    if (eat("->")) return LawExpr::binary(LawOp::imp, std::move(l), imp());
    return l;
  }
  LawExpr disj() {
    auto l = conj();
    while (eat("||")) l = LawExpr::binary(LawOp::disj, std::move(l), conj());
    return l;
  }
  LawExpr conj() {
    auto l = unary();
    while (eat("&&")) l = LawExpr::binary(LawOp::conj, std::move(l), unary());
    return l;
  }
  LawExpr unary() {
    if (eat("!")) return LawExpr::negation(unary());
    if (eat("(")) {
      auto e = imp();
      expect(")");
      return e;
    }
    skip();
    std::size_t j = i_;
    while (j < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_'))
      ++j;
    if (j == i_) fail("metavariable, constant or '('");
    std::string word(s_.substr(i_, j - i_));
    i_ = j;
    if (word == "T") return LawExpr::constant(TriValue::tt);
    if (word == "F") return LawExpr::constant(TriValue::ff);
    if (word == "U") return LawExpr::constant(TriValue::uu);
    return LawExpr::meta(std::move(word));
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace detail

inline Law parse_law(std::string name, std::string_view text) {
  auto [l, r] = detail::LawParser(text).equation();
  return Law{std::move(name), std::move(l), std::move(r)};
}

using TriAssignment = std::vector<std::pair<std::string, TriValue>>;

struct LawResult {
  std::string law;
  bool passed = true;
  std::size_t assignments = 0;
  /// First failing assignment in enumeration order.
  std::optional<TriAssignment> counterexample;
};

/// Checks a law under every assignment of its metavariables. Metavariables
/// are ordered by first occurrence (lhs before rhs); the first one varies
/// fastest.
inline LawResult check_law(const Law& law) {
  std::vector<std::string> metas;
  law.lhs.collect_metas(metas);
  law.rhs.collect_metas(metas);
  LawResult out{law.name, true, 0, std::nullopt};
  std::vector<TriValue> a(metas.size(), TriValue::tt);
  std::vector<std::size_t> digits(metas.size(), 0);
  while (true) {
    ++out.assignments;
    if (law.lhs.eval(metas, a) != law.rhs.eval(metas, a)) {
      out.passed = false;
      TriAssignment cex;
      for (std::size_t i = 0; i < metas.size(); ++i) cex.emplace_back(metas[i], a[i]);
      out.counterexample = std::move(cex);
      return out;
    }
    std::size_t k = 0;
    while (k < digits.size() && digits[k] == 2) {
      digits[k] = 0;
      a[k] = all_tri_values[0];
      ++k;
    }
    if (k == digits.size()) break;
    a[k] = all_tri_values[++digits[k]];
  }
  return out;
}

struct TriSuiteReport {
  std::vector<LawResult> entries;

  bool all_passed() const {
    for (const auto& e : entries)
      if (!e.passed) return false;
    return true;
  }
};

inline nlohmann::json to_json(const LawResult& r) {
  nlohmann::json j{{"law", r.law}, {"status", r.passed ? "pass" : "fail"}};
  if (r.counterexample) {
    nlohmann::json cex = nlohmann::json::object();
    for (const auto& [m, v] : *r.counterexample) cex[m] = tri_name(v);
    j["counterexample"] = std::move(cex);
  }
  return j;
}

inline nlohmann::json to_json(const TriSuiteReport& r) {
  auto arr = nlohmann::json::array();
  for (const auto& e : r.entries) arr.push_back(to_json(e));
  return arr;
}

/// Axioms e1-e7, double negation elimination, consequences (I)-(VI) and the
/// duals (I)'-(V)'.
inline std::vector<Law> eqcl_laws() {
  static const std::pair<const char*, const char*> table[] = {
      {"e1", "F = !T"},
      {"e2", "x || y = !(!x && !y)"},
      {"e3", "T && x = x"},
      {"e4", "x && (x || y) = x"},
      {"e5", "(x || y) && z = (!x && (y && z)) || (x && z)"},
      {"e6", "(x && y) || (y && x) = (y && x) || (x && y)"},
      {"e7", "x -> y = !x || y"},
      {"DNE", "!!x = x"},
      {"I.a", "x && T = x"},
      {"I.b", "T || x = T"},
      {"II", "(x && y) && z = x && (y && z)"},
      {"III", "x && (y && x) = x && y"},
      {"IV", "x && (y || z) = (x && y) || (x && z)"},
      {"V", "x && !x = !x && x"},
      {"VI", "(x && y) -> z = x -> (y -> z)"},
      {"I'.a", "x || F = x"},
      {"I'.b", "F && x = F"},
      {"II'", "(x || y) || z = x || (y || z)"},
      {"III'", "x || (y || x) = x || y"},
      {"IV'", "x || (y && z) = (x || y) && (x || z)"},
      {"V'", "x || !x = !x || x"},
  };
  std::vector<Law> out;
  for (const auto& [name, text] : table) out.push_back(parse_law(name, text));
  return out;
}

inline TriSuiteReport check_eqcl_suite() {
  TriSuiteReport report;
  for (const auto& law : eqcl_laws()) report.entries.push_back(check_law(law));
  return report;
}

}  // namespace meadow

#endif  // MEADOW_TRIVALENT_HPP
