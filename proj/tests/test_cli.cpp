#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

struct Run {
  int code;
  std::string out;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

// Stdout only; stderr is discarded unless `with_err`.
Run meadow(const std::vector<std::string>& args, bool with_err = false) {
  std::string cmd = quote(MEADOW_CLI_PATH);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += with_err ? " 2>&1" : " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST(Cli, EvalUndefined) {
  auto r = meadow({"eval", "--structure", "q", "1/0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "undefined\n");
}

TEST(Cli, EvalValuesAndStatuses) {
  EXPECT_EQ(meadow({"eval", "-s", "tot0:gf:5", "2/3"}).out, "4\n");
  EXPECT_EQ(meadow({"eval", "-s", "enl:gf:3", "1/0"}).out, "bot\n");
  EXPECT_EQ(meadow({"eval", "-s", "q", "-b", "x=3/4", "x/(1+1)"}).out, "3/8\n");
  EXPECT_EQ(meadow({"eval", "-s", "q", "1/0 == 1 || 0 != 1"}).out, "undefined\n");
  EXPECT_EQ(meadow({"eval", "-s", "q", "0 != 1 || 1/0 == 1"}).out, "holds\n");
  EXPECT_EQ(meadow({"eval", "-s", "gf:5", "-b", "x=0", "x == 1"}).out, "denial\n");
  auto j = nlohmann::json::parse(meadow({"eval", "-s", "q", "1/0", "--json"}).out);
  EXPECT_EQ(j["kind"], "term");
  EXPECT_TRUE(j["value"].is_null());
}

TEST(Cli, CheckValid) {
  auto r = meadow({"check", "--structure", "gf:5", "x != 0 -> x/x == 1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "valid\n");
}

TEST(Cli, CheckRefutedAndSampled) {
  auto r = meadow({"check", "-s", "gf:2", "1 + ((x*x + y*y) + (z*z + u*u)) != 0"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "refuted at x=1, y=0, z=0, u=0 (denial)\n");
  auto s = meadow({"check", "-s", "q", "--samples", "300", "--seed", "4", "x*y == y*x"});
  EXPECT_EQ(s.code, 0);
  EXPECT_EQ(s.out, "sampled_clean (300 samples, seed 4)\n");
  auto j = nlohmann::json::parse(meadow({"check", "-s", "gf:3", "x/x == 1", "--json"}).out);
  EXPECT_EQ(j["verdict"], "refuted");
  EXPECT_EQ(j["witness"]["x"], "0");
  EXPECT_EQ(j["status"], "undefined");
}

TEST(Cli, AxiomsJson) {
  auto r = meadow({"axioms", "--suite", "ftcpm", "--structure", "gf:7", "--json"});
  EXPECT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["suite"], "ftcpm");
  EXPECT_EQ(j["structure"], "gf:7");
  ASSERT_EQ(j["entries"].size(), 11u);
  for (const auto& e : j["entries"]) EXPECT_EQ(e["verdict"], "valid");
}

TEST(Cli, AxiomsText) {
  auto r = meadow({"axioms", "--suite", "cm"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("suite cm on enl:gf:5\n", 0), 0u);
  EXPECT_NE(r.out.find("  cm5: valid\n"), std::string::npos);
  auto e = meadow({"axioms", "--suite", "eqcl"});
  EXPECT_EQ(e.code, 0);
  EXPECT_NE(e.out.find("21/21 passed"), std::string::npos);
}

TEST(Cli, EqIdentity) {
  auto r = meadow({"eq", "-s", "q", "(1/0 == 1) = (1/0 == 0)"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "valid\n");
  auto two = meadow({"eq", "-s", "gf:3", "x/x == 1 && F", "F"});
  EXPECT_EQ(two.code, 1);
  EXPECT_EQ(two.out, "refuted at x=0 (undefined)\n");
  auto b = meadow({"eq", "-s", "gf:3", "-b", "x=1", "x/x == 1 && F", "F"});
  EXPECT_EQ(b.out, "true\n");
}

TEST(Cli, Flatten) {
  auto r = meadow({"flatten", "1/x"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "guard: (1*1)*x\nfracterm: (1*1)/(1*x)\n");
  auto s = meadow({"flatten", "--simplify", "1/x"});
  EXPECT_EQ(s.out, "guard: x\nfracterm: 1/x\n");
  auto j = nlohmann::json::parse(meadow({"flatten", "x+y", "--json"}).out);
  EXPECT_EQ(j["guard"], "1*1");
  EXPECT_EQ(j["numerator"], "(x*1)+(1*y)");
  EXPECT_EQ(j["denominator"], "1*1");
}

TEST(Cli, Translate) {
  EXPECT_EQ(meadow({"translate", "x == y"}).out, "x != bot & y != bot & x = y\n");
  EXPECT_EQ(meadow({"translate", "--mode", "false", "x == y"}).out,
            "x != bot & y != bot & x != y\n");
  auto j = nlohmann::json::parse(meadow({"translate", "forall x. x == 0", "--json"}).out);
  EXPECT_EQ(j["kind"], "forall");
}

TEST(Cli, Parse) {
  EXPECT_EQ(meadow({"parse", "3"}).out, "(1+1)+1\n");
  EXPECT_EQ(meadow({"parse", "x != 0 -> x/x == 1"}).out, "x != 0 -> x/x == 1\n");
  auto j = nlohmann::json::parse(meadow({"parse", "--formula", "T", "--json"}).out);
  EXPECT_EQ(j["kind"], "formula");
  EXPECT_EQ(j["text"], "T");
}

TEST(Cli, UsageAndParseErrorsExitTwo) {
  auto r = meadow({"eval", "x +"}, true);
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.out.rfind("error: ", 0), 0u);
  EXPECT_EQ(r.out.find('\n'), r.out.size() - 1);
  EXPECT_EQ(meadow({"eval", "-s", "gf:4", "1"}).code, 2);
  EXPECT_EQ(meadow({"frobnicate"}).code, 2);
  EXPECT_EQ(meadow({}).code, 2);
  EXPECT_EQ(meadow({"axioms", "--suite", "nope"}).code, 2);
  EXPECT_EQ(meadow({"check", "-s", "q", "forall x. x == x"}).code, 2);
  EXPECT_EQ(meadow({"eval", "-b", "x", "x"}).code, 2);
  EXPECT_EQ(meadow({"--help"}).code, 0);
}

TEST(Cli, Deterministic) {
  std::vector<std::string> args{"axioms", "--suite", "soundness", "-s", "gf:3", "--seed", "5", "--json"};
  auto a = meadow(args);
  auto b = meadow(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  std::vector<std::string> q{"axioms", "--suite", "rationals", "--samples", "500", "--seed", "3"};
  EXPECT_EQ(meadow(q).out, meadow(q).out);
}

TEST(Cli, SeedFromEnvironment) {
  std::string cmd = "MEADOW_SEED=11 " + quote(MEADOW_CLI_PATH) +
                    " check -s q --samples 10 'x == x'";
  FILE* p = popen(cmd.c_str(), "r");
  ASSERT_NE(p, nullptr);
  char buf[256] = {};
  std::string out(buf, fread(buf, 1, sizeof buf - 1, p));
  pclose(p);
  EXPECT_EQ(out, "sampled_clean (10 samples, seed 11)\n");
}
