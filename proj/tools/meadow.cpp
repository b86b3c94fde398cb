// meadow: command-line front end for the partial meadow engine.
//
// Exit codes: 0 success, 1 refuted or failed suite entry, 2 usage or parse
// error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "meadow/meadow.hpp"

namespace {

using meadow::Formula;
using meadow::Structure;
using meadow::Term;
using json = nlohmann::ordered_json;

constexpr int exit_ok = 0;
constexpr int exit_refuted = 1;
constexpr int exit_usage = 2;

struct Common {
  std::string structure = "gf:5";
  std::vector<std::string> binds;
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  bool json = false;
};

meadow::Signature signature_for(const Structure& s) {
  return s.is_enlarged() ? meadow::Signature::enlarged : meadow::Signature::plain;
}

meadow::Valuation parse_bindings(const Structure& s, const std::vector<std::string>& binds) {
  meadow::Valuation v;
  for (const auto& b : binds) {
    auto eq = b.find('=');
    if (eq == std::string::npos || eq == 0)
      throw meadow::Error("binding '" + b + "' is not of the form name=value");
    v.bind(b.substr(0, eq), meadow::parse_value(s, b.substr(eq + 1)));
  }
  return v;
}

std::string verdict_line(const meadow::Verdict& v) {
  switch (v.kind) {
    case meadow::Verdict::Kind::valid:
      return "valid";
    case meadow::Verdict::Kind::sampled_clean:
      return "sampled_clean (" + std::to_string(v.checked) + " samples, seed " +
             std::to_string(v.sampling->seed) + ")";
    default:
      return std::string("refuted at ") + v.witness.to_string() + " (" +
             meadow::status_name(v.status) + ")";
  }
}

json verdict_json(const meadow::Verdict& v) {
  json j;
  j["verdict"] = meadow::verdict_name(v.kind);
  if (v.kind == meadow::Verdict::Kind::refuted) {
    j["witness"] = meadow::witness_json(meadow::witness_of(v.witness));
    j["status"] = meadow::status_name(v.status);
  }
  if (v.kind == meadow::Verdict::Kind::sampled_clean) {
    j["samples"] = v.checked;
    j["seed"] = v.sampling->seed;
  }
  return j;
}

int emit_verdict(const Common& c, const meadow::Verdict& v) {
  if (c.json)
    std::cout << verdict_json(v).dump(2) << "\n";
  else
    std::cout << verdict_line(v) << "\n";
  return v.ok() ? exit_ok : exit_refuted;
}

std::string lowercase(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

std::optional<meadow::Sampling> sampling_of(const Common& c) {
  return meadow::Sampling{c.samples, c.seed};
}

int cmd_parse(const std::string& text, const std::string& kind, const std::string& sig_name,
              bool as_json) {
  auto sig = sig_name == "enlarged" ? meadow::Signature::enlarged : meadow::Signature::plain;
  std::string what;
  std::string printed;
  auto as_term = [&] {
    printed = meadow::print_term(meadow::parse_term(text, sig));
    what = "term";
  };
  auto as_formula = [&] {
    printed = meadow::print_formula(meadow::parse_formula(text, sig));
    what = "formula";
  };
  auto as_identity = [&] {
    printed = meadow::print_identity(meadow::parse_identity(text, sig));
    what = "identity";
  };
  if (kind == "term") {
    as_term();
  } else if (kind == "formula") {
    as_formula();
  } else if (kind == "identity") {
    as_identity();
  } else {
    try {
      as_term();
    } catch (const meadow::ParseError&) {
      try {
        as_formula();
      } catch (const meadow::ParseError& formula_error) {
        try {
          as_identity();
        } catch (const meadow::ParseError&) {
          throw formula_error;
        }
      }
    }
  }
  if (as_json)
    std::cout << json{{"kind", what}, {"text", printed}}.dump(2) << "\n";
  else
    std::cout << printed << "\n";
  return exit_ok;
}

int cmd_eval(const Common& c, const std::string& text, const std::string& kind) {
  auto s = Structure::parse(c.structure);
  auto sigma = parse_bindings(s, c.binds);
  auto sig = signature_for(s);
  std::optional<Term> term;
  std::optional<Formula> formula;
  if (kind == "term") {
    term = meadow::parse_term(text, sig);
  } else if (kind == "formula") {
    formula = meadow::parse_formula(text, sig);
  } else {
    try {
      term = meadow::parse_term(text, sig);
    } catch (const meadow::ParseError&) {
      formula = meadow::parse_formula(text, sig);
    }
  }
  if (term) {
    auto r = meadow::eval_term(s, sigma, *term);
    if (c.json) {
      json j{{"kind", "term"}};
      j["value"] = r ? json(r->to_string()) : json(nullptr);
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << (r ? r->to_string() : "undefined") << "\n";
    }
    return exit_ok;
  }
  auto st = meadow::satisfy(s, sigma, *formula);
  if (c.json)
    std::cout << json{{"kind", "formula"}, {"status", meadow::status_name(st)}}.dump(2) << "\n";
  else
    std::cout << meadow::status_name(st) << "\n";
  return exit_ok;
}

int cmd_check(const Common& c, const std::string& text) {
  auto s = Structure::parse(c.structure);
  auto f = meadow::parse_formula(text, signature_for(s));
  return emit_verdict(c, meadow::check_valid(s, f, sampling_of(c)));
}

int cmd_eq(const Common& c, const std::vector<std::string>& args) {
  auto s = Structure::parse(c.structure);
  auto sig = signature_for(s);
  auto id = args.size() == 1 ? meadow::parse_identity(args[0], sig)
                             : meadow::EqIdentity{meadow::parse_formula(args[0], sig),
                                                  meadow::parse_formula(args[1], sig)};
  if (!c.binds.empty()) {
    auto sigma = parse_bindings(s, c.binds);
    bool same = meadow::eq_identity(s, sigma, id);
    if (c.json)
      std::cout << json{{"holds", same}}.dump(2) << "\n";
    else
      std::cout << (same ? "true" : "false") << "\n";
    return same ? exit_ok : exit_refuted;
  }
  return emit_verdict(c, meadow::check_identity(s, id, sampling_of(c)));
}

int cmd_flatten(const std::string& text, bool as_json, bool simplify) {
  auto t = meadow::parse_term(text);
  auto r = meadow::flatten(t);
  auto show = [&](const Term& x) {
    return meadow::print_term(simplify ? meadow::simplify_units(x) : x);
  };
  if (as_json) {
    json j;
    j["guard"] = show(r.guard);
    j["numerator"] = show(r.numerator);
    j["denominator"] = show(r.denominator);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "guard: " << show(r.guard) << "\n";
    std::cout << "fracterm: " << show(r.fracterm()) << "\n";
  }
  return exit_ok;
}

int cmd_translate(const std::string& text, const std::string& mode, bool as_json) {
  auto f = meadow::parse_formula(text);
  auto out = meadow::psi(mode == "false" ? meadow::PsiMode::falsity : meadow::PsiMode::truth, f);
  if (as_json)
    std::cout << meadow::to_json(out).dump(2) << "\n";
  else
    std::cout << meadow::print_fol(out) << "\n";
  return exit_ok;
}

int cmd_axioms(const Common& c, const std::string& suite, bool structure_given) {
  std::string spec = c.structure;
  if (!structure_given) {
    if (suite == "cm") spec = "enl:gf:5";
    if (suite == "rationals") spec = "q";
  }
  auto s = Structure::parse(spec);
  auto report = meadow::run_axiom_suite(suite, s, meadow::SuiteOptions{c.samples, c.seed});
  if (c.json) {
    std::cout << meadow::to_json(report).dump(2) << "\n";
  } else {
    std::cout << "suite " << report.suite << " on " << report.structure << "\n";
    std::size_t passed = 0;
    for (const auto& e : report.entries) {
      std::cout << "  " << meadow::describe(e) << "\n";
      passed += e.ok() ? 1 : 0;
    }
    std::cout << passed << "/" << report.entries.size() << " passed\n";
  }
  return report.all_passed() ? exit_ok : exit_refuted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbolic engine for partial meadows, common meadows and their logics"};
  app.require_subcommand(1);

  Common common;
  auto add_structure = [&](CLI::App* sub) {
    return sub->add_option("-s,--structure", common.structure,
                           "q, gf:<p>, tot0:<spec> or enl:<spec>");
  };
  auto add_binds = [&](CLI::App* sub) {
    sub->add_option("-b,--bind", common.binds, "name=value (a/b over q, integers mod p, bot)")
        ->expected(1)
        ->allow_extra_args(false)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  };
  auto add_sampling = [&](CLI::App* sub) {
    sub->add_option("--samples", common.samples, "valuations drawn for infinite carriers")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", common.seed, "seed for every random choice")->envname("MEADOW_SEED");
  };
  auto add_json = [&](CLI::App* sub, bool& flag) {
    sub->add_flag("--json", flag, "machine-readable output");
  };

  std::string text;
  std::vector<std::string> eq_args;
  bool force_term = false;
  bool force_formula = false;
  bool force_identity = false;
  std::string sig_name = "plain";
  bool simplify = false;
  std::string mode = "true";
  std::string suite;

  auto* parse = app.add_subcommand("parse", "parse and print in canonical form");
  parse->add_option("text", text)->required();
  auto* pt = parse->add_flag("--term", force_term);
  auto* pf = parse->add_flag("--formula", force_formula)->excludes(pt);
  parse->add_flag("--identity", force_identity)->excludes(pt)->excludes(pf);
  parse->add_option("--signature", sig_name)->check(CLI::IsMember({"plain", "enlarged"}));
  add_json(parse, common.json);

  auto* eval = app.add_subcommand("eval", "evaluate a term or the status of a formula");
  eval->add_option("text", text)->required();
  add_structure(eval);
  add_binds(eval);
  auto* et = eval->add_flag("--term", force_term);
  eval->add_flag("--formula", force_formula)->excludes(et);
  add_json(eval, common.json);

  auto* check = app.add_subcommand("check", "check validity of a formula");
  check->add_option("formula", text)->required();
  add_structure(check);
  add_sampling(check);
  add_json(check, common.json);

  auto* eq = app.add_subcommand("eq", "check an identity between two formulae");
  eq->add_option("identity", eq_args, "'(A) = (B)' or two formulae")->required()->expected(1, 2);
  add_structure(eq);
  add_binds(eq);
  add_sampling(eq);
  add_json(eq, common.json);

  auto* flat = app.add_subcommand("flatten", "conditional fracterm flattening");
  flat->add_option("term", text)->required();
  flat->add_flag("--simplify", simplify, "drop unit factors for display");
  add_json(flat, common.json);

  auto* translate = app.add_subcommand("translate", "translate into classical logic with bot");
  translate->add_option("formula", text)->required();
  translate->add_option("--mode", mode)->check(CLI::IsMember({"true", "false"}));
  add_json(translate, common.json);

  auto* axioms = app.add_subcommand("axioms", "run an axiom suite");
  std::vector<std::string> names(std::begin(meadow::suite_names), std::end(meadow::suite_names));
  axioms->add_option("--suite", suite)->required()->check(CLI::IsMember(names));
  auto* axioms_structure = add_structure(axioms);
  add_sampling(axioms);
  add_json(axioms, common.json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*parse) {
      std::string kind = force_term       ? "term"
                         : force_formula  ? "formula"
                         : force_identity ? "identity"
                                          : "";
      return cmd_parse(text, kind, sig_name, common.json);
    }
    if (*eval) return cmd_eval(common, text, force_term ? "term" : force_formula ? "formula" : "");
    if (*check) return cmd_check(common, text);
    if (*eq) return cmd_eq(common, eq_args);
    if (*flat) return cmd_flatten(text, common.json, simplify);
    if (*translate) return cmd_translate(text, lowercase(mode), common.json);
    if (*axioms) return cmd_axioms(common, suite, axioms_structure->count() > 0);
  } catch (const meadow::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}
