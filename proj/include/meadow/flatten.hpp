#ifndef MEADOW_FLATTEN_HPP
#define MEADOW_FLATTEN_HPP

// Conditional fracterm flattening: every term t gets a division-free guard s
// and a flat fracterm p/q with t = p/q whenever s != 0, and t undefined when
// s = 0. Built by structural induction with no simplification.

#include "meadow/errors.hpp"
#include "meadow/syntax.hpp"

namespace meadow {

struct FlatteningResult {
  Term guard;
  Term numerator;
  Term denominator;

  Term fracterm() const { return Term::frac(numerator, denominator); }
};

namespace detail {

inline FlatteningResult flatten(const Term& t) {
  switch (t.kind()) {
    case TermKind::zero:
    case TermKind::one:
    case TermKind::var:
      return {Term::one(), t, Term::one()};
    case TermKind::bot:
      throw SignatureMismatch("cannot flatten a term containing 'bot'");
    case TermKind::neg: {
      auto u = flatten(t.operand());
      return {u.guard, Term::neg(u.numerator), u.denominator};
    }
    default:
      break;
  }
  auto u = flatten(t.lhs());
  auto v = flatten(t.rhs());
  switch (t.kind()) {
    case TermKind::add:
      return {Term::mul(u.guard, v.guard),
              Term::add(Term::mul(u.numerator, v.denominator),
                        Term::mul(u.denominator, v.numerator)),
              Term::mul(u.denominator, v.denominator)};
    case TermKind::mul:
      return {Term::mul(u.guard, v.guard), Term::mul(u.numerator, v.numerator),
              Term::mul(u.denominator, v.denominator)};
    default:
      return {Term::mul(Term::mul(u.guard, v.guard), v.numerator),
              Term::mul(u.numerator, v.denominator), Term::mul(u.denominator, v.numerator)};
  }
}

}  // namespace detail

inline FlatteningResult flatten(const Term& t) {
  if (t.mentions_bot()) throw SignatureMismatch("cannot flatten a term containing 'bot'");
  return detail::flatten(t);
}

/// (p*s)/(q*s) for the flattening (s, p/q) of t; equals t wherever t is
/// defined and is undefined exactly where t is.
inline Term flat_form(const Term& t) {
  auto r = flatten(t);
  return Term::frac(Term::mul(r.numerator, r.guard), Term::mul(r.denominator, r.guard));
}

/// Display-only cleanup: drops unit factors 1*t and t*1. Not used by any
/// semantic check.
inline Term simplify_units(const Term& t) {
  switch (t.kind()) {
    case TermKind::neg:
      return Term::neg(simplify_units(t.operand()));
    case TermKind::add:
      return Term::add(simplify_units(t.lhs()), simplify_units(t.rhs()));
    case TermKind::frac:
      return Term::frac(simplify_units(t.lhs()), simplify_units(t.rhs()));
    case TermKind::mul: {
      auto l = simplify_units(t.lhs());
      auto r = simplify_units(t.rhs());
      if (l.kind() == TermKind::one) return r;
      if (r.kind() == TermKind::one) return l;
      return Term::mul(std::move(l), std::move(r));
    }
    default:
      return t;
  }
}

}  // namespace meadow

#endif  // MEADOW_FLATTEN_HPP
