#ifndef MEADOW_GENERATE_HPP
#define MEADOW_GENERATE_HPP

// Seeded random terms and formulae for property tests and the soundness
// suite. All draws reduce raw mt19937_64 output modulo the range, so a seed
// gives the same stream everywhere.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "meadow/syntax.hpp"

namespace meadow {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  bool one_in(std::uint64_t n) { return below(n) == 0; }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }
  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

struct TermShape {
  int max_depth = 4;
  std::vector<std::string> vars{"x", "y", "z"};
  bool allow_frac = true;
  bool allow_bot = false;
};

inline Term random_term(Rng& rng, const TermShape& shape, int depth) {
  if (depth <= 0 || rng.one_in(3)) {
    auto leaves = shape.vars.size() + 2 + (shape.allow_bot ? 1 : 0);
    auto k = rng.below(leaves);
    if (k == 0) return Term::zero();
    if (k == 1) return Term::one();
    if (k - 2 < shape.vars.size()) return Term::var(shape.vars[k - 2]);
    return Term::bot();
  }
  switch (rng.below(shape.allow_frac ? 4 : 3)) {
    case 0:
      return Term::neg(random_term(rng, shape, depth - 1));
    case 1: {
      auto l = random_term(rng, shape, depth - 1);
      return Term::add(std::move(l), random_term(rng, shape, depth - 1));
    }
    case 2: {
      auto l = random_term(rng, shape, depth - 1);
      return Term::mul(std::move(l), random_term(rng, shape, depth - 1));
    }
    default: {
      auto l = random_term(rng, shape, depth - 1);
      return Term::frac(std::move(l), random_term(rng, shape, depth - 1));
    }
  }
}

inline Term random_term(Rng& rng, const TermShape& shape) {
  return random_term(rng, shape, shape.max_depth);
}

struct FormulaShape {
  int max_depth = 4;
  int max_quantifier_depth = 2;
  int term_depth = 2;
  /// Variables that may occur free and may be bound.
  std::vector<std::string> vars{"x", "y"};
  /// Without division every atom is defined.
  bool fracs = true;
};

inline Formula random_formula(Rng& rng, const FormulaShape& shape, int depth, int qdepth) {
  TermShape ts{shape.term_depth, shape.vars, shape.fracs, false};
  if (depth <= 0 || rng.one_in(4)) {
    switch (rng.below(8)) {
      case 0:
        return Formula::truth();
      case 1:
        return Formula::falsity();
      case 2:
      case 3:
      case 4: {
        auto l = random_term(rng, ts);
        return Formula::eq(std::move(l), random_term(rng, ts));
      }
      default: {
        auto l = random_term(rng, ts);
        return Formula::neq(std::move(l), random_term(rng, ts));
      }
    }
  }
  auto choices = qdepth > 0 ? 7u : 4u;
  switch (rng.below(choices)) {
    case 0:
      return Formula::negation(random_formula(rng, shape, depth - 1, qdepth));
    case 1: {
      auto l = random_formula(rng, shape, depth - 1, qdepth);
      return Formula::sand(std::move(l), random_formula(rng, shape, depth - 1, qdepth));
    }
    case 2: {
      auto l = random_formula(rng, shape, depth - 1, qdepth);
      return Formula::sor(std::move(l), random_formula(rng, shape, depth - 1, qdepth));
    }
    case 3: {
      auto l = random_formula(rng, shape, depth - 1, qdepth);
      return Formula::simp(std::move(l), random_formula(rng, shape, depth - 1, qdepth));
    }
    case 4:
    case 5: {
      const auto& v = rng.pick(shape.vars);
      return Formula::forall_p(v, random_formula(rng, shape, depth - 1, qdepth - 1));
    }
    default: {
      const auto& v = rng.pick(shape.vars);
      return Formula::exists_p(v, random_formula(rng, shape, depth - 1, qdepth - 1));
    }
  }
}

inline Formula random_formula(Rng& rng, const FormulaShape& shape) {
  return random_formula(rng, shape, shape.max_depth, shape.max_quantifier_depth);
}

}  // namespace meadow

#endif  // MEADOW_GENERATE_HPP
