#ifndef MEADOW_SEMANTICS_HPP
#define MEADOW_SEMANTICS_HPP

// Three-valued Tarski satisfaction for sequential formulae over partial
// meadows, identity checking, validity by enumeration or sampling, and the
// axiom suites for partial meadows.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "meadow/errors.hpp"
#include "meadow/structures.hpp"
#include "meadow/syntax.hpp"
#include "meadow/trivalent.hpp"

namespace meadow {

enum class TriStatus : std::uint8_t { holds, denial_holds, undefined };

inline constexpr const char* status_name(TriStatus s) noexcept {
  switch (s) {
    case TriStatus::holds:
      return "holds";
    case TriStatus::denial_holds:
      return "denial";
    default:
      return "undefined";
  }
}

inline constexpr TriValue to_tri(TriStatus s) noexcept {
  switch (s) {
    case TriStatus::holds:
      return TriValue::tt;
    case TriStatus::denial_holds:
      return TriValue::ff;
    default:
      return TriValue::uu;
  }
}

inline constexpr TriStatus from_tri(TriValue v) noexcept {
  switch (v) {
    case TriValue::tt:
      return TriStatus::holds;
    case TriValue::ff:
      return TriStatus::denial_holds;
    default:
      return TriStatus::undefined;
  }
}

namespace detail {

inline TriStatus satisfy(const Structure& s, const Valuation& sigma, const Formula& f);

// forall_p over the whole carrier: one undefined instance makes the
// quantification undefined, otherwise any denial instance makes it denied.
inline TriStatus satisfy_forall(const Structure& s, const Valuation& sigma,
                                const std::string& var, const Formula& body, bool negate_body) {
  if (!s.is_finite())
    throw InfiniteCarrier("quantifier over the infinite carrier of " + s.spec());
  bool denied = false;
  for (const auto& v : s.carrier()) {
    auto st = satisfy(s, sigma.with(var, v), body);
    if (negate_body) st = from_tri(tri_not(to_tri(st)));
    if (st == TriStatus::undefined) return st;
    if (st == TriStatus::denial_holds) denied = true;
  }
  return denied ? TriStatus::denial_holds : TriStatus::holds;
}

inline TriStatus satisfy(const Structure& s, const Valuation& sigma, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::truth:
      return TriStatus::holds;
    case FormulaKind::falsity:
      return TriStatus::denial_holds;
    case FormulaKind::eq: {
      auto a = eval_term(s, sigma, f.left_term());
      if (!a) return TriStatus::undefined;
      auto b = eval_term(s, sigma, f.right_term());
      if (!b) return TriStatus::undefined;
      return *a == *b ? TriStatus::holds : TriStatus::denial_holds;
    }
    case FormulaKind::negation:
      return from_tri(tri_not(to_tri(satisfy(s, sigma, f.lhs()))));
    case FormulaKind::sand:
      return from_tri(tri_and(to_tri(satisfy(s, sigma, f.lhs())),
                              to_tri(satisfy(s, sigma, f.rhs()))));
    case FormulaKind::sor:
      return from_tri(tri_or(to_tri(satisfy(s, sigma, f.lhs())),
                             to_tri(satisfy(s, sigma, f.rhs()))));
    case FormulaKind::simp:
      return from_tri(tri_imp(to_tri(satisfy(s, sigma, f.lhs())),
                              to_tri(satisfy(s, sigma, f.rhs()))));
    case FormulaKind::forall_p:
      return satisfy_forall(s, sigma, f.variable(), f.body(), false);
    case FormulaKind::exists_p:
      // exists x. phi  =  !forall x. !phi
      return from_tri(
          tri_not(to_tri(satisfy_forall(s, sigma, f.variable(), f.body(), true))));
  }
  return TriStatus::undefined;
}

}  // namespace detail

inline TriStatus satisfy(const Structure& s, const Valuation& sigma, const Formula& f) {
  if (s.is_enlarged())
    throw EnlargedStructure("three-valued satisfaction needs a structure without bot, got " +
                            s.spec());
  return detail::satisfy(s, sigma, f);
}

inline bool eq_identity(const Structure& s, const Valuation& sigma, const EqIdentity& id) {
  return satisfy(s, sigma, id.lhs) == satisfy(s, sigma, id.rhs);
}

struct Sampling {
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
};

struct Verdict {
  enum class Kind : std::uint8_t { valid, refuted, sampled_clean };
  Kind kind = Kind::valid;
  /// Refuted only.
  Valuation witness;
  TriStatus status = TriStatus::holds;
  /// Valuations examined.
  std::size_t checked = 0;
  std::optional<Sampling> sampling;

  bool ok() const noexcept { return kind != Kind::refuted; }
};

inline const char* verdict_name(Verdict::Kind k) noexcept {
  switch (k) {
    case Verdict::Kind::valid:
      return "valid";
    case Verdict::Kind::refuted:
      return "refuted";
    default:
      return "sampled_clean";
  }
}

namespace detail {

// Runs `status` over every valuation (or a sample, for infinite carriers) and
// stops at the first one that is not `holds`.
template <class StatusFn>
Verdict check_over(const Structure& s, const std::vector<std::string>& vars,
                   const std::optional<Sampling>& sampling, StatusFn status) {
  Verdict out;
  auto visit = [&](const Valuation& v) {
    ++out.checked;
    auto st = status(v);
    if (st == TriStatus::holds) return true;
    out.kind = Verdict::Kind::refuted;
    out.witness = v;
    out.status = st;
    return false;
  };
  if (vars.empty()) {
    visit(Valuation{});
    return out;
  }
  if (s.is_finite()) {
    ValuationStream stream(s, vars);
    Valuation v;
    while (stream.next(v))
      if (!visit(v)) return out;
    return out;
  }
  if (!sampling)
    throw InfiniteCarrier("validity over the infinite carrier of " + s.spec() +
                          " needs sampling parameters");
  ValueSampler sampler(s, sampling->seed);
  for (std::size_t i = 0; i < sampling->samples; ++i) {
    Valuation v;
    for (const auto& name : vars) v.bind(name, sampler.draw());
    if (!visit(v)) return out;
  }
  out.kind = Verdict::Kind::sampled_clean;
  out.sampling = sampling;
  return out;
}

}  // namespace detail

/// Valid iff every valuation of the free variables makes `f` hold; the first
/// failing valuation in enumeration order is the witness.
inline Verdict check_valid(const Structure& s, const Formula& f,
                           std::optional<Sampling> sampling = std::nullopt) {
  return detail::check_over(s, free_variables(f), sampling,
                            [&](const Valuation& v) { return satisfy(s, v, f); });
}

/// Valid iff both sides get the same status under every valuation. A
/// refutation reports the status of the left-hand side.
inline Verdict check_identity(const Structure& s, const EqIdentity& id,
                              std::optional<Sampling> sampling = std::nullopt) {
  return detail::check_over(s, free_variables(id), sampling, [&](const Valuation& v) {
    auto l = satisfy(s, v, id.lhs);
    return l == satisfy(s, v, id.rhs) ? TriStatus::holds : l;
  });
}

// ---------------------------------------------------------------------------
// Reports

using Witness = std::vector<std::pair<std::string, std::string>>;

inline Witness witness_of(const Valuation& v) {
  Witness w;
  for (const auto& [k, val] : v.bindings()) w.emplace_back(k, val.to_string());
  return w;
}

struct SuiteEntry {
  std::string name;
  /// "valid", "refuted" or "sampled_clean".
  std::string verdict;
  std::optional<Witness> witness;
  std::optional<std::string> status;
  /// Valuations or instances examined.
  std::optional<std::size_t> samples;
  std::optional<std::string> note;

  bool ok() const noexcept { return verdict != "refuted"; }
};

inline SuiteEntry entry_of(std::string name, const Verdict& v) {
  SuiteEntry e{std::move(name), verdict_name(v.kind), std::nullopt, std::nullopt, std::nullopt,
               std::nullopt};
  if (v.kind == Verdict::Kind::refuted) {
    e.witness = witness_of(v.witness);
    e.status = status_name(v.status);
  }
  if (v.kind == Verdict::Kind::sampled_clean) e.samples = v.checked;
  return e;
}

struct SuiteReport {
  std::string suite;
  std::string structure;
  std::vector<SuiteEntry> entries;

  bool all_passed() const {
    for (const auto& e : entries)
      if (!e.ok()) return false;
    return true;
  }
  const SuiteEntry* find(std::string_view name) const {
    for (const auto& e : entries)
      if (e.name == name) return &e;
    return nullptr;
  }
};

inline nlohmann::ordered_json witness_json(const Witness& w) {
  auto j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : w) j[k] = v;
  return j;
}

inline nlohmann::ordered_json to_json(const SuiteEntry& e) {
  nlohmann::ordered_json j;
  j["name"] = e.name;
  j["verdict"] = e.verdict;
  if (e.witness) j["witness"] = witness_json(*e.witness);
  if (e.status) j["status"] = *e.status;
  if (e.samples) j["samples"] = *e.samples;
  if (e.note) j["note"] = *e.note;
  return j;
}

inline nlohmann::ordered_json to_json(const SuiteReport& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["structure"] = r.structure;
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : r.entries) j["entries"].push_back(to_json(e));
  return j;
}

inline std::string describe(const SuiteEntry& e) {
  std::string out = e.name + ": " + e.verdict;
  if (e.status) out += " (" + *e.status + ")";
  if (e.witness) {
    out += " at ";
    bool first = true;
    for (const auto& [k, v] : *e.witness) {
      out += (first ? "" : ", ") + k + "=" + v;
      first = false;
    }
    if (e.witness->empty()) out += "{}";
  }
  if (e.samples) out += " [" + std::to_string(*e.samples) + "]";
  if (e.note) out += " " + *e.note;
  return out;
}

// ---------------------------------------------------------------------------
// Axiom tables

struct NamedText {
  const char* name;
  const char* text;
};

/// Axioms for partial meadows.
inline const std::vector<NamedText>& ftcpm_axioms() {
  static const std::vector<NamedText> table = {
      {"pm1", "(x+y)+z == x+(y+z)"},
      {"pm2", "x+0 == x"},
      {"pm3", "x+(-x) == 0"},
      {"pm4", "x*(y*z) == (x*y)*z"},
      {"pm5", "x*y == y*x"},
      {"pm6", "1*x == x"},
      {"pm7", "x*(y+z) == (x*y)+(x*z)"},
      {"pm8", "y != 0 -> x/y == x*(1/y)"},
      {"pm9", "x != 0 -> x/x == 1"},
      {"pm10", "0 != 1"},
      {"pm11", "x != 0 && y != 0 -> x*y != 0"},
  };
  return table;
}

/// The same axioms with every quantifier explicit.
inline const std::vector<NamedText>& ftcpm_closed_axioms() {
  static const std::vector<NamedText> table = {
      {"pm1b", "forall x. forall y. forall z. (x+y)+z == x+(y+z)"},
      {"pm2b", "forall x. x+0 == x"},
      {"pm3b", "forall x. x+(-x) == 0"},
      {"pm4b", "forall x. forall y. forall z. x*(y*z) == (x*y)*z"},
      {"pm5b", "forall x. forall y. x*y == y*x"},
      {"pm6b", "forall x. 1*x == x"},
      {"pm7b", "forall x. forall y. forall z. x*(y+z) == (x*y)+(x*z)"},
      {"pm8b", "forall x. forall y. (y != 0 -> x/y == x*(1/y))"},
      {"pm9b", "forall x. (x != 0 -> x/x == 1)"},
      {"pm10b", "0 != 1"},
      {"pm11b", "forall x. forall y. (x != 0 && y != 0 -> x*y != 0)"},
  };
  return table;
}

/// Consequences of the partial meadow axioms, including two existential ones.
inline const std::vector<NamedText>& assertion_axioms() {
  static const std::vector<NamedText> table = {
      {"A1", "x+y == y+x"},
      {"A2", "0*x == 0"},
      {"A3", "x != 0 -> -x != 0"},
      {"A4", "y != 0 -> -(x/y) == (-x)/y"},
      {"A5", "y != 0 && v != 0 -> (x/y)*(u/v) == (x*u)/(y*v)"},
      {"A6", "y != 0 && u != 0 && v != 0 -> (x/y)/(u/v) == (x*v)/(y*u)"},
      {"A7", "y != 0 && v != 0 -> x/y + u/v == ((x*v)+(y*u))/(y*v)"},
      {"d4", "x*y != 0 -> x != 0"},
      {"inv", "x != 0 -> exists y. x*y == 1"},
      {"inv-frac", "x != 0 -> exists y. y != 0 && x == 1/y"},
  };
  return table;
}

/// Sum of four squares plus one is never zero: holds in the rationals, fails
/// in GF(2).
inline constexpr const char* four_squares_axiom = "1 + ((x*x + y*y) + (z*z + u*u)) != 0";

namespace detail {

inline SuiteReport formula_suite(std::string name, const Structure& s,
                                 const std::vector<NamedText>& table,
                                 std::optional<Sampling> sampling) {
  SuiteReport r{std::move(name), s.spec(), {}};
  for (const auto& [n, text] : table)
    r.entries.push_back(entry_of(n, check_valid(s, parse_formula(text), sampling)));
  return r;
}

}  // namespace detail

inline SuiteReport run_eqcl_suite() {
  SuiteReport r{"eqcl", "tri", {}};
  for (const auto& res : check_eqcl_suite().entries) {
    SuiteEntry e{res.law, res.passed ? "valid" : "refuted", std::nullopt, std::nullopt,
                 res.assignments, std::nullopt};
    if (res.counterexample) {
      Witness w;
      for (const auto& [m, v] : *res.counterexample) w.emplace_back(m, tri_name(v));
      e.witness = std::move(w);
    }
    r.entries.push_back(std::move(e));
  }
  return r;
}

inline SuiteReport run_ftcpm_suite(const Structure& s, std::optional<Sampling> sampling = {}) {
  return detail::formula_suite("ftcpm", s, ftcpm_axioms(), sampling);
}

inline SuiteReport run_assertions_suite(const Structure& s,
                                        std::optional<Sampling> sampling = {}) {
  return detail::formula_suite("assertions", s, assertion_axioms(), sampling);
}

/// Four squares plus the imported field axioms; sampled over the rationals.
inline SuiteReport run_rationals_suite(const Structure& s, Sampling sampling = {}) {
  std::vector<NamedText> table{{"4sq", four_squares_axiom}};
  for (const auto& a : ftcpm_axioms()) table.push_back(a);
  return detail::formula_suite("rationals", s, table, sampling);
}

// ---------------------------------------------------------------------------
// Totalisation

struct TotalisationResult {
  bool preserved = true;
  std::size_t checked = 0;
  /// Valuations where the formula is undefined in the partial structure but
  /// defined after totalising.
  std::size_t gains = 0;
  std::optional<Valuation> witness;
  TriStatus partial_status = TriStatus::holds;
  TriStatus total_status = TriStatus::holds;
};

/// Per valuation: holds stays holds and denial stays denial in Tot0(S).
inline TotalisationResult check_totalisation(const Structure& s, const Formula& f,
                                             Sampling sampling = {}) {
  if (s.is_total() || s.is_enlarged())
    throw AlreadyTotal(s.spec() + " is not a structure with partial division");
  const Structure t = tot0(s);
  TotalisationResult out;
  auto visit = [&](const Valuation& v) {
    ++out.checked;
    auto a = satisfy(s, v, f);
    auto b = satisfy(t, v, f);
    if (a == TriStatus::undefined) {
      if (b != TriStatus::undefined) ++out.gains;
      return true;
    }
    if (a == b) return true;
    out.preserved = false;
    out.witness = v;
    out.partial_status = a;
    out.total_status = b;
    return false;
  };
  auto vars = free_variables(f);
  if (s.is_finite()) {
    ValuationStream stream(s, vars);
    Valuation v;
    while (stream.next(v))
      if (!visit(v)) break;
  } else {
    for (const auto& v : sample_valuations(s, vars, sampling.samples, sampling.seed))
      if (!visit(v)) break;
  }
  return out;
}

inline SuiteReport check_totalisation_invariance(const Structure& s, const Formula& f,
                                                 Sampling sampling = {}) {
  auto res = check_totalisation(s, f, sampling);
  SuiteEntry e{print_formula(f), res.preserved ? "valid" : "refuted", std::nullopt,
               std::nullopt, res.checked, std::nullopt};
  if (res.witness) {
    e.witness = witness_of(*res.witness);
    e.status = std::string(status_name(res.partial_status)) + " -> " +
               status_name(res.total_status);
  }
  if (res.gains) e.note = "strict gain under " + std::to_string(res.gains) + " valuation(s)";
  return SuiteReport{"totalisation", s.spec(), {std::move(e)}};
}

}  // namespace meadow

#endif  // MEADOW_SEMANTICS_HPP
