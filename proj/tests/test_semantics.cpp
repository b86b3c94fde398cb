#include <gtest/gtest.h>

#include "meadow/meadow.hpp"
#include "oracle.hpp"

using namespace meadow;

namespace {

TriStatus st(const Structure& s, const std::string& text, const Valuation& v = {}) {
  return satisfy(s, v, parse_formula(text));
}

TriStatus oracle_status(const Structure& s, const Valuation& v, const Formula& f) {
  bool a = oracle::sat(s, v, f);
  bool b = oracle::denied(s, v, f);
  bool c = oracle::undefined(s, v, f);
  EXPECT_EQ(int(a) + int(b) + int(c), 1) << print_formula(f) << " at " << v.to_string();
  if (a) return TriStatus::holds;
  if (b) return TriStatus::denial_holds;
  return TriStatus::undefined;
}

const Structure gf2 = Structure::prime_field(2);
const Structure gf3 = Structure::prime_field(3);
const Structure gf5 = Structure::prime_field(5);

}  // namespace

TEST(Satisfy, Atoms) {
  EXPECT_EQ(st(gf5, "1/0 == 1/0"), TriStatus::undefined);
  EXPECT_EQ(st(gf5, "1 == 1+0"), TriStatus::holds);
  EXPECT_EQ(st(gf5, "1 == 0"), TriStatus::denial_holds);
  EXPECT_EQ(st(gf5, "1/0 != 1"), TriStatus::undefined);
  EXPECT_EQ(st(gf5, "T"), TriStatus::holds);
  EXPECT_EQ(st(gf5, "F"), TriStatus::denial_holds);
}

TEST(Satisfy, LeftSequentialShortCircuit) {
  EXPECT_EQ(st(gf5, "F && 1/0 == 1"), TriStatus::denial_holds);
  EXPECT_EQ(st(gf5, "1/0 == 1 && F"), TriStatus::undefined);
  EXPECT_EQ(st(gf5, "T || 1/0 == 1"), TriStatus::holds);
  EXPECT_EQ(st(gf5, "1/0 == 1 || T"), TriStatus::undefined);
  EXPECT_EQ(st(gf5, "0 == 1 -> 1/0 == 1"), TriStatus::holds);
}

TEST(Satisfy, GuardedDivision) {
  for (const auto& a : gf5.carrier()) {
    Valuation v{{"x", a}};
    EXPECT_EQ(st(gf5, "x != 0 -> x/x == 1", v), TriStatus::holds);
    EXPECT_EQ(st(gf5, "x/x == 1", v), a.is_zero() ? TriStatus::undefined : TriStatus::holds);
  }
  EXPECT_EQ(check_valid(gf5, parse_formula("x != 0 -> x/x == 1")).kind, Verdict::Kind::valid);
}

TEST(Satisfy, Quantifiers) {
  EXPECT_EQ(st(gf3, "forall x. x == x"), TriStatus::holds);
  EXPECT_EQ(st(gf3, "forall x. x == 0"), TriStatus::denial_holds);
  EXPECT_EQ(st(gf3, "exists x. x == 0"), TriStatus::holds);
  EXPECT_EQ(st(gf3, "exists x. x+1 == x"), TriStatus::denial_holds);
  // A single undefined instance spoils the quantifier, even next to a denial.
  EXPECT_EQ(st(gf3, "forall x. x/x == 1"), TriStatus::undefined);
  EXPECT_EQ(st(gf3, "forall x. 1/x == 0"), TriStatus::undefined);
  EXPECT_EQ(st(gf3, "exists x. 1/x == 1"), TriStatus::undefined);
  EXPECT_EQ(st(gf3, "forall x. (x != 0 -> x/x == 1)"), TriStatus::holds);
  EXPECT_THROW(st(Structure::rationals(), "forall x. x == x"), InfiniteCarrier);
  EXPECT_THROW(st(enl(gf3), "1 == 1"), EnlargedStructure);
}

TEST(Satisfy, ConnectivesMatchTables) {
  const char* atoms[] = {"1 == 1", "1 == 0", "1/0 == 0"};
  for (const char* a : atoms)
    for (const char* b : atoms) {
      auto ta = to_tri(st(gf5, a));
      auto tb = to_tri(st(gf5, b));
      std::string pa = std::string("(") + a + ")";
      std::string pb = std::string("(") + b + ")";
      EXPECT_EQ(to_tri(st(gf5, pa + " && " + pb)), tri_and(ta, tb));
      EXPECT_EQ(to_tri(st(gf5, pa + " || " + pb)), tri_or(ta, tb));
      EXPECT_EQ(to_tri(st(gf5, pa + " -> " + pb)), tri_imp(ta, tb));
      EXPECT_EQ(to_tri(st(gf5, "!" + pa)), tri_not(ta));
    }
}

TEST(Satisfy, ExistsIsDualOfForall) {
  Rng rng(9);
  FormulaShape shape{4, 2, 2, {"x", "y"}, true};
  for (int i = 0; i < 500; ++i) {
    auto body = random_formula(rng, shape);
    for (const auto& a : gf3.carrier()) {
      Valuation v{{"x", a}, {"y", a}};
      auto e = satisfy(gf3, v, Formula::exists_p("y", body));
      auto d = satisfy(gf3, v, Formula::negation(Formula::forall_p("y", Formula::negation(body))));
      ASSERT_EQ(e, d) << print_formula(body);
    }
  }
}

// Each formula gets exactly one status and it agrees with the clause-by-clause
// oracle.
TEST(Trichotomy, AgainstOracle) {
  Rng rng(2718);
  FormulaShape shape{5, 2, 2, {"x", "y"}, true};
  const Structure* fields[] = {&gf2, &gf3, &gf5};
  for (int i = 0; i < 10000; ++i) {
    auto f = random_formula(rng, shape);
    const auto& s = *fields[i % 3];
    Valuation v{{"x", Value::residue(rng.below(s.modulus()), s.modulus())},
                {"y", Value::residue(rng.below(s.modulus()), s.modulus())}};
    ASSERT_EQ(satisfy(s, v, f), oracle_status(s, v, f)) << print_formula(f) << " at " << v.to_string();
  }
}

TEST(Validity, WitnessIsFirstInEnumerationOrder) {
  auto v = check_valid(gf5, parse_formula("x == y"));
  ASSERT_EQ(v.kind, Verdict::Kind::refuted);
  EXPECT_EQ(v.witness.to_string(), "x=1, y=0");
  EXPECT_EQ(v.status, TriStatus::denial_holds);
  auto u = check_valid(gf5, parse_formula("x/y == x/y"));
  ASSERT_EQ(u.kind, Verdict::Kind::refuted);
  EXPECT_EQ(u.witness.to_string(), "x=0, y=0");
  EXPECT_EQ(u.status, TriStatus::undefined);
  EXPECT_EQ(check_valid(gf5, parse_formula("0 != 1")).checked, 1u);
  EXPECT_THROW(check_valid(Structure::rationals(), parse_formula("x == x")), InfiniteCarrier);
}

TEST(Validity, SampledOverRationals) {
  auto v = check_valid(Structure::rationals(), parse_formula("x*y == y*x"), Sampling{500, 1});
  EXPECT_EQ(v.kind, Verdict::Kind::sampled_clean);
  EXPECT_EQ(v.checked, 500u);
  auto r = check_valid(Structure::rationals(), parse_formula("x != 0 -> x/x == 1"), Sampling{500, 1});
  EXPECT_EQ(r.kind, Verdict::Kind::sampled_clean);
  auto bad = check_valid(Structure::rationals(), parse_formula("x/x == 1"), Sampling{500, 1});
  EXPECT_EQ(bad.kind, Verdict::Kind::refuted);
  EXPECT_TRUE(bad.witness.lookup("x")->is_zero());
}

TEST(Identity, FalsityIsNotRightAbsorbing) {
  auto id = parse_identity("(1/0 == 1 && F) = (F)");
  auto v = check_identity(gf5, id);
  EXPECT_EQ(v.kind, Verdict::Kind::refuted);
  EXPECT_EQ(v.status, TriStatus::undefined);
  EXPECT_TRUE(eq_identity(gf5, {}, parse_identity("(F && 1/0 == 1) = (F)")));
  EXPECT_TRUE(check_identity(gf5, parse_identity("(!(x == y)) = (x != y)")).ok());
  EXPECT_FALSE(check_identity(gf5, parse_identity("(x/y == 1 && y == 1) = (y == 1 && x/y == 1)")).ok());
}

TEST(Suites, PartialMeadowAxiomsOnFields) {
  for (std::uint64_t p : {2, 3, 5, 7, 11}) {
    auto r = run_ftcpm_suite(Structure::prime_field(p));
    EXPECT_EQ(r.entries.size(), 11u);
    EXPECT_TRUE(r.all_passed()) << p;
    auto a = run_assertions_suite(Structure::prime_field(p));
    EXPECT_TRUE(a.all_passed()) << p;
  }
}

TEST(Suites, ClosedAxiomsHold) {
  for (const auto& [name, text] : ftcpm_closed_axioms())
    EXPECT_EQ(st(gf3, text), TriStatus::holds) << name;
}

TEST(Suites, FourSquares) {
  auto r = run_rationals_suite(Structure::rationals(), Sampling{2000, 7});
  EXPECT_TRUE(r.all_passed());
  EXPECT_EQ(r.find("4sq")->verdict, "sampled_clean");
  auto neg = check_valid(gf2, parse_formula(four_squares_axiom));
  ASSERT_EQ(neg.kind, Verdict::Kind::refuted);
  EXPECT_EQ(neg.witness.to_string(), "x=1, y=0, z=0, u=0");
  EXPECT_EQ(neg.status, TriStatus::denial_holds);
}

TEST(Suites, JsonShape) {
  auto r = run_ftcpm_suite(gf5);
  auto j = to_json(r);
  EXPECT_EQ(j["suite"], "ftcpm");
  EXPECT_EQ(j["structure"], "gf:5");
  EXPECT_EQ(j["entries"].size(), 11u);
  EXPECT_EQ(j["entries"][0]["name"], "pm1");
  EXPECT_EQ(j["entries"][0]["verdict"], "valid");
  EXPECT_FALSE(j["entries"][0].contains("witness"));
  auto e = entry_of("x", check_valid(gf5, parse_formula("x == 1")));
  auto je = to_json(e);
  EXPECT_EQ(je["witness"]["x"], "0");
  EXPECT_EQ(je["status"], "denial");
  EXPECT_EQ(describe(e), "x: refuted (denial) at x=0");
}

TEST(Totalisation, PreservesDefinedStatuses) {
  Rng rng(31);
  FormulaShape shape{4, 1, 2, {"x", "y"}, true};
  std::size_t gains = 0;
  for (int i = 0; i < 300; ++i) {
    auto f = random_formula(rng, shape);
    auto r = check_totalisation(gf3, f);
    ASSERT_TRUE(r.preserved) << print_formula(f);
    gains += r.gains;
  }
  EXPECT_GT(gains, 0u);
}

TEST(Totalisation, Examples) {
  auto r = check_totalisation(gf5, parse_formula("x/x == 1"));
  EXPECT_TRUE(r.preserved);
  EXPECT_EQ(r.gains, 1u);
  EXPECT_EQ(r.checked, 5u);
  auto rep = check_totalisation_invariance(gf5, parse_formula("x/x == 1"));
  EXPECT_EQ(rep.entries[0].note, "strict gain under 1 valuation(s)");
  auto q = check_totalisation(Structure::rationals(), parse_formula("x != 0 -> x/x == 1"), Sampling{300, 5});
  EXPECT_TRUE(q.preserved);
  EXPECT_THROW(check_totalisation(tot0(gf5), parse_formula("T")), AlreadyTotal);
}
