#ifndef MEADOW_TESTS_ORACLE_HPP
#define MEADOW_TESTS_ORACLE_HPP

// Reference implementations used only by tests. They follow the defining
// clauses directly and share no code with the library's evaluator beyond
// term evaluation.

#include <cstdint>

#include "meadow/meadow.hpp"

namespace oracle {

using namespace meadow;

inline bool sat(const Structure& s, const Valuation& v, const Formula& f);
inline bool denied(const Structure& s, const Valuation& v, const Formula& f);

// Satisfaction, one clause per connective.
inline bool sat(const Structure& s, const Valuation& v, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::truth:
      return true;
    case FormulaKind::falsity:
      return false;
    case FormulaKind::eq: {
      auto a = eval_term(s, v, f.left_term());
      auto b = eval_term(s, v, f.right_term());
      return a && b && *a == *b;
    }
    case FormulaKind::negation:
      return denied(s, v, f.lhs());
    case FormulaKind::sor:
      return sat(s, v, f.lhs()) || (denied(s, v, f.lhs()) && sat(s, v, f.rhs()));
    case FormulaKind::sand:
      return sat(s, v, f.lhs()) && sat(s, v, f.rhs());
    case FormulaKind::simp:
      return denied(s, v, f.lhs()) || (sat(s, v, f.lhs()) && sat(s, v, f.rhs()));
    case FormulaKind::forall_p:
      for (const auto& a : s.carrier())
        if (!sat(s, v.with(f.variable(), a), f.body())) return false;
      return true;
    case FormulaKind::exists_p: {
      bool some = false;
      for (const auto& a : s.carrier()) {
        auto w = v.with(f.variable(), a);
        if (!sat(s, w, f.body()) && !denied(s, w, f.body())) return false;
        some = some || sat(s, w, f.body());
      }
      return some;
    }
  }
  return false;
}

// Denial satisfaction.
inline bool denied(const Structure& s, const Valuation& v, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::truth:
      return false;
    case FormulaKind::falsity:
      return true;
    case FormulaKind::eq: {
      auto a = eval_term(s, v, f.left_term());
      auto b = eval_term(s, v, f.right_term());
      return a && b && !(*a == *b);
    }
    case FormulaKind::negation:
      return sat(s, v, f.lhs());
    case FormulaKind::sor:
      return denied(s, v, f.lhs()) && denied(s, v, f.rhs());
    case FormulaKind::sand:
      return denied(s, v, f.lhs()) || (sat(s, v, f.lhs()) && denied(s, v, f.rhs()));
    case FormulaKind::simp:
      return sat(s, v, f.lhs()) && denied(s, v, f.rhs());
    case FormulaKind::forall_p: {
      bool some = false;
      for (const auto& a : s.carrier()) {
        auto w = v.with(f.variable(), a);
        if (!sat(s, w, f.body()) && !denied(s, w, f.body())) return false;
        some = some || denied(s, w, f.body());
      }
      return some;
    }
    case FormulaKind::exists_p:
      for (const auto& a : s.carrier())
        if (!denied(s, v.with(f.variable(), a), f.body())) return false;
      return true;
  }
  return false;
}

// Undefinedness, by its own clauses.
inline bool undefined(const Structure& s, const Valuation& v, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::truth:
    case FormulaKind::falsity:
      return false;
    case FormulaKind::eq:
      return !eval_term(s, v, f.left_term()) || !eval_term(s, v, f.right_term());
    case FormulaKind::negation:
      return undefined(s, v, f.lhs());
    case FormulaKind::sor:
      return undefined(s, v, f.lhs()) || (denied(s, v, f.lhs()) && undefined(s, v, f.rhs()));
    case FormulaKind::sand:
      return undefined(s, v, f.lhs()) || (sat(s, v, f.lhs()) && undefined(s, v, f.rhs()));
    case FormulaKind::simp:
      return undefined(s, v, f.lhs()) || (sat(s, v, f.lhs()) && undefined(s, v, f.rhs()));
    case FormulaKind::forall_p:
    case FormulaKind::exists_p:
      for (const auto& a : s.carrier())
        if (undefined(s, v.with(f.variable(), a), f.body())) return true;
      return false;
  }
  return false;
}

// Multiplicative inverse by search.
inline std::uint64_t inverse_by_search(std::uint64_t a, std::uint64_t p) {
  for (std::uint64_t b = 1; b < p; ++b)
    if (a * b % p == 1) return b;
  return 0;
}

}  // namespace oracle

#endif  // MEADOW_TESTS_ORACLE_HPP
