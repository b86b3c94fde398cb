#ifndef MEADOW_BOTWORLD_HPP
#define MEADOW_BOTWORLD_HPP

// Classical two-valued first-order logic over the signature with bot, the
// translation of sequential formulae into it, and the common meadow suite.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "meadow/errors.hpp"
#include "meadow/flatten.hpp"
#include "meadow/generate.hpp"
#include "meadow/semantics.hpp"
#include "meadow/structures.hpp"
#include "meadow/syntax.hpp"

namespace meadow {

enum class FolKind : std::uint8_t {
  truth,
  falsity,
  eq,
  neq,
  negation,
  conj,
  disj,
  imp,
  forall,
  exists
};

class FolFormula {
  struct Node {
    FolKind kind = FolKind::truth;
    std::string var;
    std::vector<Term> terms;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
    std::size_t size = 1;
  };

 public:
  static FolFormula truth() { return FolFormula(make(FolKind::truth)); }
  static FolFormula falsity() { return FolFormula(make(FolKind::falsity)); }
  static FolFormula eq(Term l, Term r) { return atom(FolKind::eq, std::move(l), std::move(r)); }
  static FolFormula neq(Term l, Term r) { return atom(FolKind::neq, std::move(l), std::move(r)); }
  static FolFormula negation(FolFormula f) {
    auto n = make(FolKind::negation);
    n->size = 1 + f.size();
    n->lhs = std::move(f.node_);
    return FolFormula(std::move(n));
  }
  static FolFormula conj(FolFormula l, FolFormula r) {
    return binary(FolKind::conj, std::move(l), std::move(r));
  }
  static FolFormula disj(FolFormula l, FolFormula r) {
    return binary(FolKind::disj, std::move(l), std::move(r));
  }
  static FolFormula imp(FolFormula l, FolFormula r) {
    return binary(FolKind::imp, std::move(l), std::move(r));
  }
  static FolFormula forall(std::string v, FolFormula body) {
    return quantifier(FolKind::forall, std::move(v), std::move(body));
  }
  static FolFormula exists(std::string v, FolFormula body) {
    return quantifier(FolKind::exists, std::move(v), std::move(body));
  }

  FolKind kind() const noexcept { return node_->kind; }
  const Term& left_term() const noexcept { return node_->terms[0]; }
  const Term& right_term() const noexcept { return node_->terms[1]; }
  FolFormula lhs() const noexcept { return FolFormula(node_->lhs); }
  FolFormula rhs() const noexcept { return FolFormula(node_->rhs); }
  FolFormula body() const noexcept { return lhs(); }
  const std::string& variable() const noexcept { return node_->var; }
  std::size_t size() const noexcept { return node_->size; }

  friend bool operator==(const FolFormula& a, const FolFormula& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind() || a.size() != b.size()) return false;
    switch (a.kind()) {
      case FolKind::truth:
      case FolKind::falsity:
        return true;
      case FolKind::eq:
      case FolKind::neq:
        return a.left_term() == b.left_term() && a.right_term() == b.right_term();
      case FolKind::negation:
        return a.lhs() == b.lhs();
      case FolKind::forall:
      case FolKind::exists:
        return a.variable() == b.variable() && a.body() == b.body();
      default:
        return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
  }

 private:
  explicit FolFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static std::shared_ptr<Node> make(FolKind k) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    return n;
  }
  static FolFormula atom(FolKind k, Term l, Term r) {
    auto n = make(k);
    n->size = 1 + l.size() + r.size();
    n->terms = {std::move(l), std::move(r)};
    return FolFormula(std::move(n));
  }
  static FolFormula binary(FolKind k, FolFormula l, FolFormula r) {
    auto n = make(k);
    n->size = 1 + l.size() + r.size();
    n->lhs = std::move(l.node_);
    n->rhs = std::move(r.node_);
    return FolFormula(std::move(n));
  }
  static FolFormula quantifier(FolKind k, std::string v, FolFormula body) {
    auto n = make(k);
    n->size = 1 + body.size();
    n->var = std::move(v);
    n->lhs = std::move(body.node_);
    return FolFormula(std::move(n));
  }

  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Translation

enum class PsiMode : std::uint8_t { truth, falsity };

namespace detail {

inline FolFormula psi_true(const Formula& f);
inline FolFormula psi_false(const Formula& f);

inline FolFormula defined_pair(const Term& t, const Term& r) {
  return FolFormula::conj(FolFormula::neq(t, Term::bot()), FolFormula::neq(r, Term::bot()));
}

inline FolFormula proper(const std::string& x) {
  return FolFormula::neq(Term::var(x), Term::bot());
}

// forall x. (x != bot -> psi_true(phi || !phi)): phi is defined for every
// proper value of x.
inline FolFormula everywhere_defined(const std::string& x, const Formula& phi) {
  return FolFormula::forall(
      x, FolFormula::imp(proper(x), psi_true(Formula::sor(phi, Formula::negation(phi)))));
}

inline FolFormula psi_true(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::truth:
      return FolFormula::truth();
    case FormulaKind::falsity:
      return FolFormula::falsity();
    case FormulaKind::eq:
      return FolFormula::conj(defined_pair(f.left_term(), f.right_term()),
                              FolFormula::eq(f.left_term(), f.right_term()));
    case FormulaKind::negation:
      return psi_false(f.lhs());
    case FormulaKind::sor:
      return FolFormula::disj(psi_true(f.lhs()),
                              FolFormula::conj(psi_false(f.lhs()), psi_true(f.rhs())));
    case FormulaKind::sand:
      return FolFormula::conj(psi_true(f.lhs()), psi_true(f.rhs()));
    case FormulaKind::simp:
      // a -> b is !a || b
      return FolFormula::disj(psi_false(f.lhs()),
                              FolFormula::conj(psi_true(f.lhs()), psi_true(f.rhs())));
    case FormulaKind::forall_p:
      return FolFormula::forall(f.variable(),
                                FolFormula::imp(proper(f.variable()), psi_true(f.body())));
    case FormulaKind::exists_p:
      return FolFormula::conj(
          FolFormula::exists(f.variable(),
                             FolFormula::conj(proper(f.variable()), psi_true(f.body()))),
          everywhere_defined(f.variable(), f.body()));
  }
  return FolFormula::falsity();
}

inline FolFormula psi_false(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::truth:
      return FolFormula::falsity();
    case FormulaKind::falsity:
      return FolFormula::truth();
    case FormulaKind::eq:
      // Both sides defined and different.
      return FolFormula::conj(defined_pair(f.left_term(), f.right_term()),
                              FolFormula::neq(f.left_term(), f.right_term()));
    case FormulaKind::negation:
      return psi_true(f.lhs());
    case FormulaKind::sor:
      return FolFormula::conj(psi_false(f.lhs()), psi_false(f.rhs()));
    case FormulaKind::sand:
      return FolFormula::disj(psi_false(f.lhs()),
                              FolFormula::conj(psi_true(f.lhs()), psi_false(f.rhs())));
    case FormulaKind::simp:
      return FolFormula::conj(psi_true(f.lhs()), psi_false(f.rhs()));
    case FormulaKind::forall_p:
      return FolFormula::conj(
          FolFormula::exists(f.variable(),
                             FolFormula::conj(proper(f.variable()), psi_false(f.body()))),
          everywhere_defined(f.variable(), f.body()));
    case FormulaKind::exists_p:
      return FolFormula::forall(f.variable(),
                                FolFormula::imp(proper(f.variable()), psi_false(f.body())));
  }
  return FolFormula::falsity();
}

}  // namespace detail

inline FolFormula psi(PsiMode mode, const Formula& f) {
  if (f.mentions_bot())
    throw SignatureMismatch("translation expects a formula without 'bot'");
  return mode == PsiMode::truth ? detail::psi_true(f) : detail::psi_false(f);
}

inline FolFormula psi_true(const Formula& f) { return psi(PsiMode::truth, f); }
inline FolFormula psi_false(const Formula& f) { return psi(PsiMode::falsity, f); }

// ---------------------------------------------------------------------------
// Printing

namespace detail {

enum FolLevel : int { fol_quant = 0, fol_imp = 1, fol_or = 2, fol_and = 3, fol_unary = 4 };

inline int fol_level(const FolFormula& f) {
  switch (f.kind()) {
    case FolKind::forall:
    case FolKind::exists:
      return fol_quant;
    case FolKind::imp:
      return fol_imp;
    case FolKind::disj:
      return fol_or;
    case FolKind::conj:
      return fol_and;
    default:
      return fol_unary;
  }
}

inline std::string print_fol(const FolFormula& f, int context) {
  std::string out;
  switch (f.kind()) {
    case FolKind::truth:
      return "T";
    case FolKind::falsity:
      return "F";
    case FolKind::eq:
      return meadow::print_term(f.left_term()) + " = " + meadow::print_term(f.right_term());
    case FolKind::neq:
      return meadow::print_term(f.left_term()) + " != " + meadow::print_term(f.right_term());
    case FolKind::negation:
      return "~" + print_fol(f.lhs(), fol_unary);
    case FolKind::conj:
      out = print_fol(f.lhs(), fol_and) + " & " + print_fol(f.rhs(), fol_unary);
      break;
    case FolKind::disj:
      out = print_fol(f.lhs(), fol_or) + " | " + print_fol(f.rhs(), fol_and);
      break;
    case FolKind::imp:
      out = print_fol(f.lhs(), fol_or) + " -> " + print_fol(f.rhs(), fol_imp);
      break;
    case FolKind::forall:
    case FolKind::exists:
      out = std::string(f.kind() == FolKind::forall ? "forall " : "exists ") + f.variable() +
            ". (" + print_fol(f.body(), fol_quant) + ")";
      break;
  }
  // An atom as the operand of ~ stays bare; everything else is bracketed.
  if (f.kind() == FolKind::eq || f.kind() == FolKind::neq) return out;
  if (fol_level(f) < context) return "(" + out + ")";
  return out;
}

}  // namespace detail

inline std::string print_fol(const FolFormula& f) { return detail::print_fol(f, detail::fol_quant); }

inline nlohmann::ordered_json to_json(const FolFormula& f) {
  nlohmann::ordered_json j;
  switch (f.kind()) {
    case FolKind::truth:
      j["kind"] = "true";
      break;
    case FolKind::falsity:
      j["kind"] = "false";
      break;
    case FolKind::eq:
    case FolKind::neq:
      j["kind"] = f.kind() == FolKind::eq ? "eq" : "neq";
      j["lhs"] = print_term(f.left_term());
      j["rhs"] = print_term(f.right_term());
      break;
    case FolKind::negation:
      j["kind"] = "not";
      j["body"] = to_json(f.lhs());
      break;
    case FolKind::conj:
    case FolKind::disj:
    case FolKind::imp:
      j["kind"] = f.kind() == FolKind::conj ? "and" : f.kind() == FolKind::disj ? "or" : "imp";
      j["lhs"] = to_json(f.lhs());
      j["rhs"] = to_json(f.rhs());
      break;
    case FolKind::forall:
    case FolKind::exists:
      j["kind"] = f.kind() == FolKind::forall ? "forall" : "exists";
      j["var"] = f.variable();
      j["body"] = to_json(f.body());
      break;
  }
  return j;
}

inline std::vector<std::string> free_variables(const FolFormula& f) {
  std::vector<std::string> out;
  std::vector<std::string> bound;
  auto walk = [&](auto&& self, const FolFormula& g) -> void {
    switch (g.kind()) {
      case FolKind::truth:
      case FolKind::falsity:
        return;
      case FolKind::eq:
      case FolKind::neq:
        for (const auto* t : {&g.left_term(), &g.right_term()})
          for (const auto& v : variables(*t)) {
            bool is_bound = false;
            for (const auto& b : bound) is_bound = is_bound || b == v;
            if (!is_bound) detail::push_unique(out, v);
          }
        return;
      case FolKind::negation:
        self(self, g.lhs());
        return;
      case FolKind::forall:
      case FolKind::exists:
        bound.push_back(g.variable());
        self(self, g.body());
        bound.pop_back();
        return;
      default:
        self(self, g.lhs());
        self(self, g.rhs());
    }
  };
  walk(walk, f);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace detail {

inline bool eval_fol(const Structure& s, const Valuation& sigma, const FolFormula& f) {
  switch (f.kind()) {
    case FolKind::truth:
      return true;
    case FolKind::falsity:
      return false;
    case FolKind::eq:
    case FolKind::neq: {
      bool same = *eval_term(s, sigma, f.left_term()) == *eval_term(s, sigma, f.right_term());
      return f.kind() == FolKind::eq ? same : !same;
    }
    case FolKind::negation:
      return !eval_fol(s, sigma, f.lhs());
    case FolKind::conj:
      return eval_fol(s, sigma, f.lhs()) && eval_fol(s, sigma, f.rhs());
    case FolKind::disj:
      return eval_fol(s, sigma, f.lhs()) || eval_fol(s, sigma, f.rhs());
    case FolKind::imp:
      return !eval_fol(s, sigma, f.lhs()) || eval_fol(s, sigma, f.rhs());
    case FolKind::forall:
    case FolKind::exists: {
      if (!s.is_finite())
        throw InfiniteCarrier("quantifier over the infinite carrier of " + s.spec());
      bool universal = f.kind() == FolKind::forall;
      for (const auto& v : s.carrier())
        if (eval_fol(s, sigma.with(f.variable(), v), f.body()) != universal) return !universal;
      return universal;
    }
  }
  return false;
}

}  // namespace detail

/// Classical evaluation; quantifiers range over the whole carrier, bot
/// included.
inline bool eval_fol(const Structure& s, const Valuation& sigma, const FolFormula& f) {
  if (!s.is_total())
    throw NotTotalStructure("classical evaluation needs total operations, got " + s.spec());
  return detail::eval_fol(s, sigma, f);
}

/// True when the formula holds under every valuation of its free variables
/// over the full carrier.
inline bool fol_valid(const Structure& s, const FolFormula& f) {
  ValuationStream stream(s, free_variables(f));
  Valuation v;
  while (stream.next(v))
    if (!eval_fol(s, v, f)) return false;
  return true;
}

/// The three-valued status of `f` in `s` agrees with the classical truth of
/// its two translations in the enlargement of `s`.
inline bool check_correspondence(const Structure& s, const Formula& f, const Valuation& sigma) {
  const Structure e = enl(s);
  auto st = satisfy(s, sigma, f);
  bool t = eval_fol(e, sigma, psi_true(f));
  bool d = eval_fol(e, sigma, psi_false(f));
  return (st == TriStatus::holds) == t && (st == TriStatus::denial_holds) == d &&
         (st == TriStatus::undefined) == (!t && !d);
}

// ---------------------------------------------------------------------------
// Common meadows

struct NamedIdentity {
  const char* name;
  const char* lhs;
  const char* rhs;
};

/// Commutative unital rings enlarged with bot.
inline const std::vector<NamedIdentity>& bot_ring_axioms() {
  static const std::vector<NamedIdentity> table = {
      {"c1", "(x+y)+z", "x+(y+z)"}, {"c2", "x+y", "y+x"},
      {"c3", "x+0", "x"},           {"c4", "x+(-x)", "0*x"},
      {"c5", "(x*y)*z", "x*(y*z)"}, {"c6", "x*y", "y*x"},
      {"c7", "1*x", "x"},           {"c8", "x*(y+z)", "(x*y)+(x*z)"},
      {"c9", "-(-x)", "x"},         {"c10", "x+bot", "bot"},
      {"c11", "0*(x*x)", "0*x"},
  };
  return table;
}

/// Division in common meadows.
inline const std::vector<NamedIdentity>& common_meadow_axioms() {
  static const std::vector<NamedIdentity> table = {
      {"cm1", "x/y", "x*(1/y)"},
      {"cm2", "x/x", "1+(0/x)"},
      {"cm3", "1/(x*y)", "(1/x)*(1/y)"},
      {"cm4", "1/(1+(0*x))", "1+(0*x)"},
      {"cm5", "bot", "1/0"},
  };
  return table;
}

inline const std::vector<NamedIdentity>& common_meadow_consequences() {
  static const std::vector<NamedIdentity> table = {
      {"div-one", "x/1", "x"},
      {"neg-num", "-(x/y)", "(-x)/y"},
      {"neg-den", "(-x)/y", "x/(-y)"},
      {"frac-mul", "(x/y)*(u/v)", "(x*u)/(y*v)"},
      {"frac-add", "x/y + u/v", "((x*v)+(y*u))/(y*v)"},
      {"zero-sum", "0*(x+y)", "0*(x*y)"},
      {"neg-bot", "-bot", "bot"},
      {"add-bot-r", "x+bot", "bot"},
      {"add-bot-l", "bot+x", "bot"},
      {"mul-bot-r", "x*bot", "bot"},
      {"mul-bot-l", "bot*x", "bot"},
      {"div-bot-r", "x/bot", "bot"},
      {"div-bot-l", "bot/x", "bot"},
      {"div-zero", "x/0", "bot"},
  };
  return table;
}

/// Classical facts about bot in a common meadow.
inline std::vector<std::pair<std::string, FolFormula>> common_meadow_bot_facts() {
  auto b = Term::bot();
  auto x = Term::var("x");
  auto y = Term::var("y");
  auto is_bot = [&](const Term& t) { return FolFormula::eq(t, b); };
  return {
      {"zero-proper", FolFormula::neq(Term::zero(), b)},
      {"one-proper", FolFormula::neq(Term::one(), b)},
      {"neg-reflects", FolFormula::imp(is_bot(Term::neg(x)), is_bot(x))},
      {"add-reflects",
       FolFormula::imp(is_bot(Term::add(x, y)), FolFormula::disj(is_bot(x), is_bot(y)))},
      {"mul-reflects",
       FolFormula::imp(is_bot(Term::mul(x, y)), FolFormula::disj(is_bot(x), is_bot(y)))},
      {"proper-exists", FolFormula::exists("x", FolFormula::neq(x, b))},
  };
}

/// Both sides equal under every valuation over the enlarged carrier.
inline Verdict check_term_identity(const Structure& s, const Term& l, const Term& r) {
  std::vector<std::string> vars = variables(l);
  for (const auto& v : variables(r)) detail::push_unique(vars, v);
  Verdict out;
  ValuationStream stream(s, vars);
  Valuation v;
  while (stream.next(v)) {
    ++out.checked;
    if (*eval_term(s, v, l) != *eval_term(s, v, r)) {
      out.kind = Verdict::Kind::refuted;
      out.witness = v;
      out.status = TriStatus::denial_holds;
      return out;
    }
  }
  return out;
}

struct CmOptions {
  std::size_t flatten_checks = 200;
  std::uint64_t seed = 0;
};

inline SuiteReport run_cm_suite(const Structure& s, CmOptions opt = {}) {
  if (!s.is_enlarged()) throw NotEnlarged("the common meadow suite needs an enlarged structure");
  SuiteReport r{"cm", s.spec(), {}};
  auto identity = [&](const NamedIdentity& id) {
    auto l = parse_term(id.lhs, Signature::enlarged);
    auto rt = parse_term(id.rhs, Signature::enlarged);
    auto e = entry_of(id.name, check_term_identity(s, l, rt));
    if (e.status) e.status = "unequal";
    r.entries.push_back(std::move(e));
  };
  for (const auto& id : bot_ring_axioms()) identity(id);
  for (const auto& id : common_meadow_axioms()) identity(id);
  for (const auto& id : common_meadow_consequences()) identity(id);
  for (const auto& [name, f] : common_meadow_bot_facts())
    r.entries.push_back(SuiteEntry{name, fol_valid(s, f) ? "valid" : "refuted", std::nullopt,
                                   std::nullopt, std::nullopt, std::nullopt});
  for (const auto& [name, text] : ftcpm_closed_axioms()) {
    bool ok = fol_valid(s, psi_true(parse_formula(text)));
    r.entries.push_back(SuiteEntry{std::string("psi(") + name + ")", ok ? "valid" : "refuted",
                                   std::nullopt, std::nullopt, std::nullopt, std::nullopt});
  }

  // Every term equals its flat form (p*s)/(q*s) identically, bot included.
  Rng rng(opt.seed);
  TermShape shape{4, {"x", "y"}, true, false};
  SuiteEntry flat{"flat-form", "valid", std::nullopt, std::nullopt, opt.flatten_checks,
                  std::nullopt};
  for (std::size_t i = 0; i < opt.flatten_checks; ++i) {
    auto t = random_term(rng, shape);
    auto v = check_term_identity(s, t, flat_form(t));
    if (!v.ok()) {
      flat.verdict = "refuted";
      flat.witness = witness_of(v.witness);
      flat.note = print_term(t);
      break;
    }
  }
  r.entries.push_back(std::move(flat));
  return r;
}

}  // namespace meadow

#endif  // MEADOW_BOTWORLD_HPP
