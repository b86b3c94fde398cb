#ifndef MEADOW_SOUNDNESS_HPP
#define MEADOW_SOUNDNESS_HPP

// Semantic soundness of the deductive apparatus for sequential logic over a
// fixed finite partial meadow: random instances of the equality axioms and
// quantifier axioms must be valid, and every inference rule must carry valid
// premises to a valid conclusion.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "meadow/generate.hpp"
#include "meadow/semantics.hpp"
#include "meadow/structures.hpp"
#include "meadow/syntax.hpp"

namespace meadow {

struct SoundnessOptions {
  std::size_t instances = 500;
  int term_depth = 4;
  std::uint64_t seed = 0;
};

namespace detail {

inline Formula defined(const Term& t) { return Formula::eq(t, t); }

/// phi_1 && (phi_2 && (... && phi_k))
inline Formula conjunction(const std::vector<Formula>& fs) {
  Formula out = fs.back();
  for (auto i = fs.size() - 1; i-- > 0;) out = Formula::sand(fs[i], out);
  return out;
}

enum class Op : std::uint8_t { neg, add, mul, frac };

inline std::size_t arity(Op f) { return f == Op::neg ? 1 : 2; }

inline Term apply_op(Op f, const std::vector<Term>& a) {
  switch (f) {
    case Op::neg:
      return Term::neg(a[0]);
    case Op::add:
      return Term::add(a[0], a[1]);
    case Op::mul:
      return Term::mul(a[0], a[1]);
    default:
      return Term::frac(a[0], a[1]);
  }
}

// A term provably equal to r wherever r is defined.
inline Term ring_variant(Rng& rng, const Term& r) {
  switch (rng.below(6)) {
    case 0:
      return Term::add(r, Term::zero());
    case 1:
      return Term::add(Term::zero(), r);
    case 2:
      return Term::mul(Term::one(), r);
    case 3:
      return Term::mul(r, Term::one());
    case 4:
      return Term::neg(Term::neg(r));
    default:
      return r;
  }
}

// A formula with the same status as phi under every valuation.
inline Formula logic_variant(Rng& rng, const Formula& phi) {
  switch (rng.below(6)) {
    case 0:
      return Formula::negation(Formula::negation(phi));
    case 1:
      return Formula::sand(Formula::truth(), phi);
    case 2:
      return Formula::sand(phi, Formula::truth());
    case 3:
      return Formula::sand(phi, phi);
    case 4:
      return Formula::sor(Formula::falsity(), phi);
    default:
      return Formula::sor(phi, Formula::falsity());
  }
}

inline const std::vector<Formula>& valid_pool() {
  static const std::vector<Formula> pool = [] {
    std::vector<Formula> out;
    for (const char* text :
         {"T", "x == x", "x+0 == x", "0 != 1", "x != 0 -> x/x == 1", "x == 0 || x != 0",
          "forall x. x == 0 || x != 0", "y*1 == y", "x*y == y*x", "-(-x) == x", "x/1 == x",
          "y != 0 -> (x/y)*y == x", "x == 1 || x != 1", "exists y. y == x"})
      out.push_back(parse_formula(text));
    return out;
  }();
  return pool;
}

// Formula with a single occurrence of the placeholder atom.
inline const std::string hole_name = "#hole";

inline Formula hole() { return Formula::eq(Term::var(hole_name), Term::var(hole_name)); }

inline bool is_hole(const Formula& f) {
  return f.kind() == FormulaKind::eq && f.left_term().kind() == TermKind::var &&
         f.left_term().name() == hole_name;
}

inline Formula plug(const Formula& c, const Formula& filler) {
  if (is_hole(c)) return filler;
  switch (c.kind()) {
    case FormulaKind::negation:
      return Formula::negation(plug(c.lhs(), filler));
    case FormulaKind::sand:
      return Formula::sand(plug(c.lhs(), filler), plug(c.rhs(), filler));
    case FormulaKind::sor:
      return Formula::sor(plug(c.lhs(), filler), plug(c.rhs(), filler));
    case FormulaKind::simp:
      return Formula::simp(plug(c.lhs(), filler), plug(c.rhs(), filler));
    case FormulaKind::forall_p:
      return Formula::forall_p(c.variable(), plug(c.body(), filler));
    case FormulaKind::exists_p:
      return Formula::exists_p(c.variable(), plug(c.body(), filler));
    default:
      return c;
  }
}

// Contexts C[.] with one hole; the first few keep a valid filler valid.
inline Formula random_context(Rng& rng, int depth) {
  FormulaShape side{2, 0, 1, {"x", "y"}, false};
  if (depth <= 0) return hole();
  auto inner = random_context(rng, depth - 1);
  switch (rng.below(9)) {
    case 0:
      return Formula::sand(inner, rng.pick(valid_pool()));
    case 1:
      return Formula::sand(rng.pick(valid_pool()), inner);
    case 2:
      return Formula::sor(inner, random_formula(rng, side));
    case 3:
      return Formula::simp(random_formula(rng, side), inner);
    case 4:
      return Formula::negation(Formula::negation(inner));
    case 5:
      return Formula::forall_p("z", inner);
    case 6: {
      auto chi = random_formula(rng, side);
      return Formula::sor(Formula::sor(chi, Formula::negation(chi)), inner);
    }
    case 7:
      return Formula::sor(random_formula(rng, side), inner);
    default:
      return inner;
  }
}

inline bool mentions_division(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::truth:
    case FormulaKind::falsity:
      return false;
    case FormulaKind::eq:
      return !is_division_free(f.left_term()) || !is_division_free(f.right_term());
    case FormulaKind::negation:
    case FormulaKind::forall_p:
    case FormulaKind::exists_p:
      return mentions_division(f.lhs());
    default:
      return mentions_division(f.lhs()) || mentions_division(f.rhs());
  }
}

struct Tally {
  std::size_t drawn = 0;
  std::size_t checked = 0;
  std::optional<std::string> failure;
};

inline SuiteEntry axiom_entry(const std::string& name, const Tally& t) {
  SuiteEntry e{name, t.failure ? "refuted" : "valid", std::nullopt, std::nullopt, t.checked,
               std::nullopt};
  if (t.failure) e.note = *t.failure;
  return e;
}

inline SuiteEntry rule_entry(const std::string& name, const Tally& t) {
  SuiteEntry e{name, t.failure ? "refuted" : "valid", std::nullopt, std::nullopt, t.checked,
               std::to_string(t.checked) + " of " + std::to_string(t.drawn) +
                   " instances with valid premises"};
  if (t.failure) e.note = *t.failure;
  return e;
}

}  // namespace detail

inline SuiteReport run_soundness_suite(const Structure& s, SoundnessOptions opt = {}) {
  using namespace detail;
  if (!s.is_finite()) throw InfiniteCarrier("the soundness suite enumerates valuations");
  SuiteReport report{"soundness", s.spec(), {}};
  Rng rng(opt.seed);
  TermShape ts{opt.term_depth, {"x", "y", "z"}, true, false};
  TermShape total_terms{opt.term_depth, {"x", "y", "z"}, false, false};
  auto term = [&] { return random_term(rng, rng.one_in(2) ? ts : total_terms); };
  auto valid = [&](const Formula& f) { return check_valid(s, f).kind == Verdict::Kind::valid; };

  // Without division every instance must hold outright. With division an
  // undefined term makes an antecedent undefined and the instance with it, so
  // there the instance must never be denied and must hold wherever its
  // antecedent holds.
  auto sound_instance = [&](const Formula& f) {
    if (!mentions_division(f)) return valid(f);
    ValuationStream stream(s, free_variables(f));
    Valuation v;
    while (stream.next(v)) {
      auto st = meadow::satisfy(s, v, f);
      if (st == TriStatus::holds) continue;
      if (st == TriStatus::denial_holds || f.kind() != FormulaKind::simp) return false;
      if (meadow::satisfy(s, v, f.lhs()) != TriStatus::undefined) return false;
    }
    return true;
  };

  auto schema = [&](const std::string& name, const std::function<Formula()>& make) {
    Tally t;
    std::size_t total = 0;
    for (std::size_t i = 0; i < opt.instances; ++i) {
      auto f = make();
      ++t.drawn;
      ++t.checked;
      if (!mentions_division(f)) ++total;
      if (!sound_instance(f)) {
        t.failure = print_formula(f);
        break;
      }
    }
    auto e = axiom_entry(name, t);
    if (!e.note) e.note = std::to_string(total) + " division-free";
    report.entries.push_back(std::move(e));
  };

  schema("p1", [&] {
    auto c = rng.one_in(2) ? Term::zero() : Term::one();
    return defined(c);
  });
  schema("p2", [&] { return defined(Term::var(rng.pick(ts.vars))); });
  schema("p3", [&] {
    auto t1 = term();
    auto t2 = term();
    return Formula::simp(conjunction({defined(t1), defined(t2)}),
                         Formula::simp(Formula::eq(t1, t2), Formula::eq(t2, t1)));
  });
  schema("p4", [&] {
    auto t1 = term();
    auto t2 = rng.one_in(2) ? ring_variant(rng, t1) : term();
    auto t3 = rng.one_in(2) ? ring_variant(rng, t2) : term();
    return Formula::simp(
        conjunction({defined(t1), defined(t2), defined(t3)}),
        Formula::simp(Formula::sand(Formula::eq(t1, t2), Formula::eq(t2, t3)),
                      Formula::eq(t1, t3)));
  });
  const std::vector<Op> total_ops{Op::neg, Op::add, Op::mul};
  const std::vector<Op> all_ops{Op::neg, Op::add, Op::mul, Op::frac};
  auto args = [&](Op f) {
    std::vector<Term> a;
    for (std::size_t i = 0; i < arity(f); ++i) a.push_back(term());
    return a;
  };
  auto all_defined = [&](const std::vector<Term>& a) {
    std::vector<Formula> fs;
    for (const auto& t : a) fs.push_back(defined(t));
    return conjunction(fs);
  };
  schema("p5", [&] {
    auto f = rng.pick(total_ops);
    auto a = args(f);
    return Formula::simp(all_defined(a), defined(apply_op(f, a)));
  });
  schema("p6", [&] {
    auto f = rng.pick(all_ops);
    auto a = args(f);
    return Formula::simp(defined(apply_op(f, a)), all_defined(a));
  });
  schema("p7", [&] {
    auto f = rng.pick(all_ops);
    auto a = args(f);
    std::vector<Term> b;
    std::vector<Formula> eqs;
    for (const auto& t : a) {
      b.push_back(rng.one_in(3) ? term() : ring_variant(rng, t));
      eqs.push_back(Formula::eq(t, b.back()));
    }
    return Formula::simp(Formula::sand(defined(apply_op(f, a)), conjunction(eqs)),
                         Formula::eq(apply_op(f, a), apply_op(f, b)));
  });
  schema("a1", [&] {
    // phi binds only x and w; t mentions only y and z, so nothing in t is
    // captured by the substitution.
    bool fracs = rng.one_in(2);
    FormulaShape fs{3, 1, 2, {"x", "w"}, fracs};
    auto phi = random_formula(rng, fs);
    auto t = random_term(rng, TermShape{3, {"y", "z"}, fracs, false});
    return Formula::simp(Formula::sand(defined(t), Formula::forall_p("x", phi)),
                         substitute(phi, "x", t));
  });
  schema("a2", [&] {
    auto c = rng.one_in(2) ? Term::zero() : Term::one();
    const auto& x = rng.pick(ts.vars);
    return Formula::forall_p(
        x, Formula::sor(Formula::eq(Term::var(x), c), Formula::neq(Term::var(x), c)));
  });

  auto rule = [&](const std::string& name,
                  const std::function<std::pair<std::vector<Formula>, Formula>()>& make) {
    Tally t;
    for (std::size_t i = 0; i < opt.instances; ++i) {
      auto [premises, conclusion] = make();
      ++t.drawn;
      bool premises_valid = true;
      for (const auto& p : premises) premises_valid = premises_valid && valid(p);
      if (!premises_valid) continue;
      ++t.checked;
      if (!valid(conclusion)) {
        t.failure = print_formula(conclusion);
        break;
      }
    }
    report.entries.push_back(rule_entry(name, t));
  };

  FormulaShape defined_shape{2, 1, 2, {"x", "y"}, false};
  FormulaShape any_shape{2, 1, 2, {"x", "y"}, true};

  rule("i1", [&] {
    auto c = random_context(rng, static_cast<int>(rng.below(3)));
    auto r = random_term(rng, total_terms);
    auto t = rng.one_in(4) ? term() : ring_variant(rng, r);
    auto s2 = rng.one_in(4) ? term() : ring_variant(rng, r);
    return std::pair{std::vector<Formula>{plug(c, Formula::eq(t, r)), Formula::eq(r, s2)},
                     plug(c, Formula::eq(t, s2))};
  });
  rule("i2", [&] {
    auto c = random_context(rng, static_cast<int>(rng.below(3)));
    auto phi = rng.one_in(2) ? rng.pick(valid_pool()) : random_formula(rng, any_shape);
    auto psi = logic_variant(rng, phi);
    // The premise phi = psi is an identity; it is checked separately below.
    bool same = check_identity(s, EqIdentity{phi, psi}).kind == Verdict::Kind::valid;
    std::vector<Formula> premises{plug(c, phi)};
    if (!same) premises.push_back(Formula::falsity());
    return std::pair{premises, plug(c, psi)};
  });
  rule("i3", [&] {
    auto phi = rng.one_in(2) ? rng.pick(valid_pool()) : random_formula(rng, any_shape);
    Formula psi = Formula::truth();
    switch (rng.below(4)) {
      case 0:
        psi = rng.pick(valid_pool());
        break;
      case 1:
        psi = logic_variant(rng, phi);
        break;
      case 2:
        psi = Formula::sor(phi, random_formula(rng, any_shape));
        break;
      default:
        psi = random_formula(rng, any_shape);
    }
    return std::pair{std::vector<Formula>{phi, Formula::simp(phi, psi)}, psi};
  });
  rule("i4", [&] {
    auto phi = rng.one_in(3) ? random_formula(rng, any_shape) : rng.pick(valid_pool());
    auto psi = rng.one_in(3) ? random_formula(rng, any_shape) : rng.pick(valid_pool());
    return std::pair{std::vector<Formula>{phi, psi}, Formula::sand(phi, psi)};
  });
  rule("i5", [&] {
    auto psi = random_formula(rng, defined_shape);
    auto xi = random_formula(rng, rng.one_in(4) ? any_shape : defined_shape);
    Formula phi = psi;
    switch (rng.below(3)) {
      case 0:
        phi = Formula::sand(random_formula(rng, defined_shape), psi);
        break;
      case 1:
        phi = random_formula(rng, any_shape);
        break;
      default:
        break;
    }
    auto excluded = [](const Formula& f) { return Formula::sor(f, Formula::negation(f)); };
    return std::pair{
        std::vector<Formula>{Formula::simp(phi, psi), excluded(psi), excluded(xi)},
        Formula::simp(Formula::sor(phi, xi), Formula::sor(psi, xi))};
  });

  // Provable equality between defined terms is preserved by every total
  // operation.
  Tally cong;
  for (std::size_t i = 0; i < opt.instances; ++i) {
    auto r = random_term(rng, total_terms);
    auto t = ring_variant(rng, r);
    auto u = random_term(rng, total_terms);
    ++cong.drawn;
    if (!valid(Formula::sand(Formula::sand(defined(t), defined(r)), Formula::eq(t, r)))) continue;
    ++cong.checked;
    for (const auto& f : {Formula::eq(Term::neg(t), Term::neg(r)),
                          Formula::eq(Term::add(t, u), Term::add(r, u)),
                          Formula::eq(Term::mul(u, t), Term::mul(u, r))})
      if (!valid(f)) {
        cong.failure = print_formula(f);
        break;
      }
    if (cong.failure) break;
  }
  report.entries.push_back(rule_entry("congruence", cong));
  return report;
}

}  // namespace meadow

#endif  // MEADOW_SOUNDNESS_HPP
