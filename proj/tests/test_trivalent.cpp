#include <gtest/gtest.h>

#include "meadow/meadow.hpp"

using namespace meadow;

namespace {

constexpr auto T = TriValue::tt;
constexpr auto F = TriValue::ff;
constexpr auto U = TriValue::uu;

}  // namespace

// Truth tables written out cell by cell, rows indexed by the left argument.
TEST(Tables, Negation) {
  EXPECT_EQ(tri_not(T), F);
  EXPECT_EQ(tri_not(F), T);
  EXPECT_EQ(tri_not(U), U);
}

TEST(Tables, LeftSequentialConjunction) {
  const TriValue expect[3][3] = {{T, F, U}, {F, F, F}, {U, U, U}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      EXPECT_EQ(tri_and(all_tri_values[i], all_tri_values[j]), expect[i][j]) << i << j;
}

TEST(Tables, LeftSequentialDisjunction) {
  const TriValue expect[3][3] = {{T, T, T}, {T, F, U}, {U, U, U}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      EXPECT_EQ(tri_or(all_tri_values[i], all_tri_values[j]), expect[i][j]) << i << j;
}

TEST(Tables, ImplicationIsNotOr) {
  for (auto a : all_tri_values)
    for (auto b : all_tri_values) EXPECT_EQ(tri_imp(a, b), tri_or(tri_not(a), b));
  EXPECT_EQ(tri_imp(F, U), T);
  EXPECT_EQ(tri_imp(U, T), U);
}

TEST(Laws, EveryEqclLawHolds) {
  auto report = check_eqcl_suite();
  EXPECT_EQ(report.entries.size(), 21u);
  for (const auto& e : report.entries) {
    EXPECT_TRUE(e.passed) << e.law;
    EXPECT_GT(e.assignments, 0u);
  }
  EXPECT_TRUE(report.all_passed());
}

TEST(Laws, AssignmentCountIsThreeToTheMetas) {
  EXPECT_EQ(check_law(parse_law("c", "(x && y) && z = x && (y && z)")).assignments, 27u);
  EXPECT_EQ(check_law(parse_law("c", "T = !F")).assignments, 1u);
}

TEST(Laws, DisjunctionDoesNotCommute) {
  auto r = check_law(parse_law("comm", "x || y = y || x"));
  ASSERT_FALSE(r.passed);
  ASSERT_TRUE(r.counterexample);
  TriAssignment expect{{"x", U}, {"y", T}};
  EXPECT_EQ(*r.counterexample, expect);
  auto j = to_json(r);
  EXPECT_EQ(j["status"], "fail");
  EXPECT_EQ(j["counterexample"]["x"], "U");
  EXPECT_EQ(j["counterexample"]["y"], "T");
}

TEST(Laws, FalseIsNotRightAbsorbing) {
  auto r = check_law(parse_law("rabs", "x && F = F"));
  ASSERT_FALSE(r.passed);
  EXPECT_EQ((*r.counterexample)[0].second, U);
}

TEST(Laws, ConjunctionDoesNotCommute) {
  auto r = check_law(parse_law("comm", "x && y = y && x"));
  ASSERT_FALSE(r.passed);
  TriAssignment expect{{"x", U}, {"y", F}};
  EXPECT_EQ(*r.counterexample, expect);
}

TEST(Laws, NoExcludedMiddle) {
  EXPECT_FALSE(check_law(parse_law("lem", "x || !x = T")).passed);
}

TEST(Laws, IndependentRecomputation) {
  // Brute force over all assignments with the tables above.
  for (const auto& law : eqcl_laws()) {
    std::vector<std::string> metas;
    law.lhs.collect_metas(metas);
    law.rhs.collect_metas(metas);
    std::size_t n = 1;
    for (std::size_t i = 0; i < metas.size(); ++i) n *= 3;
    for (std::size_t code = 0; code < n; ++code) {
      std::vector<TriValue> a;
      for (std::size_t c = code, i = 0; i < metas.size(); ++i, c /= 3) a.push_back(all_tri_values[c % 3]);
      ASSERT_EQ(law.lhs.eval(metas, a), law.rhs.eval(metas, a)) << law.name;
    }
  }
}

TEST(LawParser, Errors) {
  EXPECT_THROW(parse_law("bad", "x &&"), ParseError);
  EXPECT_THROW(parse_law("bad", "x = "), ParseError);
  EXPECT_THROW(parse_law("bad", "x && y"), ParseError);
}
