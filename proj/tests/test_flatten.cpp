#include <gtest/gtest.h>

#include "meadow/meadow.hpp"

using namespace meadow;

namespace {

Term T(const char* s) { return parse_term(s); }

// Checks both guarantees of a flattening at one valuation:
// guard != 0 gives t defined and equal to p/q with q != 0,
// guard == 0 gives t undefined.
void check_at(const Structure& s, const Valuation& v, const Term& t) {
  auto r = flatten(t);
  ASSERT_TRUE(is_division_free(r.guard));
  ASSERT_TRUE(is_division_free(r.numerator));
  ASSERT_TRUE(is_division_free(r.denominator));
  auto g = eval_term(s, v, r.guard);
  auto p = eval_term(s, v, r.numerator);
  auto q = eval_term(s, v, r.denominator);
  ASSERT_TRUE(g && p && q);
  auto tv = eval_term(s, v, t);
  if (!g->is_zero()) {
    ASSERT_TRUE(tv) << print_term(t) << " at " << v.to_string();
    ASSERT_FALSE(q->is_zero());
    ASSERT_EQ(*tv, *s.divide(*p, *q)) << print_term(t) << " at " << v.to_string();
  } else {
    ASSERT_FALSE(tv) << print_term(t) << " at " << v.to_string();
  }
}

}  // namespace

TEST(Flatten, Leaves) {
  auto r = flatten(T("x"));
  EXPECT_EQ(r.guard, Term::one());
  EXPECT_EQ(r.numerator, T("x"));
  EXPECT_EQ(r.denominator, Term::one());
  EXPECT_EQ(print_term(r.fracterm()), "x/1");
}

TEST(Flatten, Shapes) {
  auto r = flatten(T("1/x"));
  EXPECT_EQ(print_term(r.guard), "(1*1)*x");
  EXPECT_EQ(print_term(r.fracterm()), "(1*1)/(1*x)");
  auto s = flatten(T("x+y"));
  EXPECT_EQ(print_term(s.guard), "1*1");
  EXPECT_EQ(print_term(s.fracterm()), "((x*1)+(1*y))/(1*1)");
  auto n = flatten(T("-(x/y)"));
  EXPECT_EQ(print_term(n.numerator), "-(x*1)");
  EXPECT_EQ(print_term(simplify_units(n.guard)), "y");
}

TEST(Flatten, FlatFormShape) {
  EXPECT_EQ(print_term(flat_form(T("1/x"))), "((1*1)*((1*1)*x))/((1*x)*((1*1)*x))");
}

TEST(Flatten, RejectsBot) {
  EXPECT_THROW(flatten(parse_term("x+bot", Signature::enlarged)), SignatureMismatch);
}

TEST(Flatten, SimplifyUnitsIsDisplayOnly) {
  EXPECT_EQ(print_term(simplify_units(T("(1*x)*(y*1)"))), "x*y");
  EXPECT_EQ(print_term(simplify_units(T("1*1"))), "1");
}

TEST(Flatten, GuaranteesOnRandomTerms) {
  Rng rng(11);
  TermShape shape{5, {"x", "y", "z"}, true, false};
  for (std::uint64_t p : {5, 7}) {
    auto s = Structure::prime_field(p);
    for (int i = 0; i < 300; ++i) {
      auto t = random_term(rng, shape);
      for (const auto& v : enumerate_valuations(s, variables(t))) check_at(s, v, t);
    }
  }
}

TEST(Flatten, FlatFormAgreesEverywhere) {
  Rng rng(12);
  TermShape shape{4, {"x", "y"}, true, false};
  auto s = Structure::prime_field(5);
  for (int i = 0; i < 300; ++i) {
    auto t = random_term(rng, shape);
    auto f = flat_form(t);
    for (const auto& v : enumerate_valuations(s, variables(t)))
      ASSERT_EQ(eval_term(s, v, t), eval_term(s, v, f)) << print_term(t);
  }
}

TEST(Flatten, GuardsOnRationals) {
  Rng rng(13);
  TermShape shape{4, {"x", "y"}, true, false};
  auto q = Structure::rationals();
  for (int i = 0; i < 200; ++i) {
    auto t = random_term(rng, shape);
    for (const auto& v : sample_valuations(q, variables(t), 20, i)) check_at(q, v, t);
  }
}
