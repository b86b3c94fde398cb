#ifndef MEADOW_SYNTAX_HPP
#define MEADOW_SYNTAX_HPP

// Terms over the partial-meadow signature {0, 1, -, +, *, /} (optionally
// enlarged with the absorptive constant bot) and sequential first-order
// formulae over them, with a text parser and a canonical printer.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "meadow/errors.hpp"

namespace meadow {

enum class Signature : std::uint8_t { plain, enlarged };

enum class TermKind : std::uint8_t { zero, one, bot, var, neg, add, mul, frac };

/// Immutable term AST. Copies share structure.
class Term {
  struct Node {
    TermKind kind = TermKind::zero;
    bool has_bot = false;
    std::size_t size = 1;
    std::string name;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };

 public:
  static Term zero() { return Term(make(TermKind::zero)); }
  static Term one() { return Term(make(TermKind::one)); }
  static Term bot() { return Term(make(TermKind::bot)); }
  static Term var(std::string name) {
    auto n = make(TermKind::var);
    n->name = std::move(name);
    return Term(std::move(n));
  }
  static Term neg(Term t) {
    auto n = make(TermKind::neg);
    n->has_bot = t.mentions_bot();
    n->size = 1 + t.size();
    n->lhs = std::move(t.node_);
    return Term(std::move(n));
  }
  static Term add(Term l, Term r) { return binary(TermKind::add, std::move(l), std::move(r)); }
  static Term mul(Term l, Term r) { return binary(TermKind::mul, std::move(l), std::move(r)); }
  static Term frac(Term num, Term den) {
    return binary(TermKind::frac, std::move(num), std::move(den));
  }

  TermKind kind() const noexcept { return node_->kind; }
  bool is_binary() const noexcept {
    return kind() == TermKind::add || kind() == TermKind::mul || kind() == TermKind::frac;
  }
  bool is_leaf() const noexcept { return kind() <= TermKind::var; }
  const std::string& name() const noexcept { return node_->name; }
  /// Operand of a negation, left operand of a binary node, numerator of a fracterm.
  Term lhs() const noexcept { return Term(node_->lhs); }
  Term rhs() const noexcept { return Term(node_->rhs); }
  Term operand() const noexcept { return lhs(); }
  Term numerator() const noexcept { return lhs(); }
  Term denominator() const noexcept { return rhs(); }

  bool mentions_bot() const noexcept { return node_->has_bot; }
  Signature signature() const noexcept {
    return mentions_bot() ? Signature::enlarged : Signature::plain;
  }
  std::size_t size() const noexcept { return node_->size; }

  friend bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind() || a.size() != b.size()) return false;
    switch (a.kind()) {
      case TermKind::zero:
      case TermKind::one:
      case TermKind::bot:
        return true;
      case TermKind::var:
        return a.name() == b.name();
      case TermKind::neg:
        return a.lhs() == b.lhs();
      default:
        return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
  }

 private:
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  Term() = default;

  static std::shared_ptr<Node> make(TermKind k) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->has_bot = k == TermKind::bot;
    return n;
  }
  static Term binary(TermKind k, Term l, Term r) {
    auto n = make(k);
    n->has_bot = l.mentions_bot() || r.mentions_bot();
    n->size = 1 + l.size() + r.size();
    n->lhs = std::move(l.node_);
    n->rhs = std::move(r.node_);
    return Term(std::move(n));
  }

  std::shared_ptr<const Node> node_;
};


enum class FormulaKind : std::uint8_t {
  truth,
  falsity,
  eq,
  negation,
  sand,
  sor,
  simp,
  forall_p,
  exists_p
};

/// Immutable sequential first-order formula. `t != r` is Not(Eq(t, r)).
class Formula {
  struct Node {
    FormulaKind kind = FormulaKind::truth;
    bool has_bot = false;
    std::size_t size = 1;
    std::string name;
    std::vector<Term> terms;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };

 public:
  static Formula truth() { return Formula(make(FormulaKind::truth)); }
  static Formula falsity() { return Formula(make(FormulaKind::falsity)); }
  static Formula eq(Term l, Term r) {
    auto n = make(FormulaKind::eq);
    n->has_bot = l.mentions_bot() || r.mentions_bot();
    n->size = 1 + l.size() + r.size();
    n->terms.emplace_back(std::move(l));
    n->terms.emplace_back(std::move(r));
    return Formula(std::move(n));
  }
  static Formula neq(Term l, Term r) { return negation(eq(std::move(l), std::move(r))); }
  static Formula negation(Formula f) {
    auto n = make(FormulaKind::negation);
    n->has_bot = f.mentions_bot();
    n->size = 1 + f.size();
    n->lhs = std::move(f.node_);
    return Formula(std::move(n));
  }
  static Formula sand(Formula l, Formula r) {
    return binary(FormulaKind::sand, std::move(l), std::move(r));
  }
  static Formula sor(Formula l, Formula r) {
    return binary(FormulaKind::sor, std::move(l), std::move(r));
  }
  static Formula simp(Formula l, Formula r) {
    return binary(FormulaKind::simp, std::move(l), std::move(r));
  }
  static Formula forall_p(std::string v, Formula body) {
    return quantifier(FormulaKind::forall_p, std::move(v), std::move(body));
  }
  static Formula exists_p(std::string v, Formula body) {
    return quantifier(FormulaKind::exists_p, std::move(v), std::move(body));
  }

  FormulaKind kind() const noexcept { return node_->kind; }
  bool is_quantifier() const noexcept {
    return kind() == FormulaKind::forall_p || kind() == FormulaKind::exists_p;
  }
  bool is_connective() const noexcept {
    return kind() == FormulaKind::sand || kind() == FormulaKind::sor ||
           kind() == FormulaKind::simp;
  }
  /// Denial inequality `t != r`.
  bool is_denial() const noexcept {
    return kind() == FormulaKind::negation && body().kind() == FormulaKind::eq;
  }
  const Term& left_term() const noexcept { return node_->terms[0]; }
  const Term& right_term() const noexcept { return node_->terms[1]; }
  /// Operand of a negation, left operand of a connective, body of a quantifier.
  Formula lhs() const noexcept { return Formula(node_->lhs); }
  Formula rhs() const noexcept { return Formula(node_->rhs); }
  Formula body() const noexcept { return lhs(); }
  const std::string& variable() const noexcept { return node_->name; }

  bool mentions_bot() const noexcept { return node_->has_bot; }
  Signature signature() const noexcept {
    return mentions_bot() ? Signature::enlarged : Signature::plain;
  }
  std::size_t size() const noexcept { return node_->size; }

  friend bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind() || a.size() != b.size()) return false;
    switch (a.kind()) {
      case FormulaKind::truth:
      case FormulaKind::falsity:
        return true;
      case FormulaKind::eq:
        return a.left_term() == b.left_term() && a.right_term() == b.right_term();
      case FormulaKind::negation:
        return a.lhs() == b.lhs();
      case FormulaKind::forall_p:
      case FormulaKind::exists_p:
        return a.variable() == b.variable() && a.body() == b.body();
      default:
        return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
  }

 private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  Formula() = default;

  static std::shared_ptr<Node> make(FormulaKind k) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    return n;
  }
  static Formula binary(FormulaKind k, Formula l, Formula r) {
    auto n = make(k);
    n->has_bot = l.mentions_bot() || r.mentions_bot();
    n->size = 1 + l.size() + r.size();
    n->lhs = std::move(l.node_);
    n->rhs = std::move(r.node_);
    return Formula(std::move(n));
  }
  static Formula quantifier(FormulaKind k, std::string v, Formula body) {
    auto n = make(k);
    n->has_bot = body.mentions_bot();
    n->size = 1 + body.size();
    n->name = std::move(v);
    n->lhs = std::move(body.node_);
    return Formula(std::move(n));
  }

  std::shared_ptr<const Node> node_;
};


/// An identity `lhs = rhs` between two formulae.
struct EqIdentity {
  Formula lhs;
  Formula rhs;

  Signature signature() const noexcept {
    return lhs.mentions_bot() || rhs.mentions_bot() ? Signature::enlarged : Signature::plain;
  }
  friend bool operator==(const EqIdentity&, const EqIdentity&) = default;
};

// ---------------------------------------------------------------------------
// Variables and substitution

namespace detail {

inline void push_unique(std::vector<std::string>& out, const std::string& name) {
  if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
}

inline void collect_vars(const Term& t, std::vector<std::string>& out) {
  switch (t.kind()) {
    case TermKind::var:
      push_unique(out, t.name());
      break;
    case TermKind::neg:
      collect_vars(t.operand(), out);
      break;
    case TermKind::add:
    case TermKind::mul:
    case TermKind::frac:
      collect_vars(t.lhs(), out);
      collect_vars(t.rhs(), out);
      break;
    default:
      break;
  }
}

inline void collect_free(const Formula& f, std::vector<std::string>& bound,
                         std::vector<std::string>& out) {
  switch (f.kind()) {
    case FormulaKind::truth:
    case FormulaKind::falsity:
      break;
    case FormulaKind::eq: {
      std::vector<std::string> vs;
      collect_vars(f.left_term(), vs);
      collect_vars(f.right_term(), vs);
      for (const auto& v : vs)
        if (std::find(bound.begin(), bound.end(), v) == bound.end()) push_unique(out, v);
      break;
    }
    case FormulaKind::negation:
      collect_free(f.lhs(), bound, out);
      break;
    case FormulaKind::forall_p:
    case FormulaKind::exists_p:
      bound.push_back(f.variable());
      collect_free(f.body(), bound, out);
      bound.pop_back();
      break;
    default:
      collect_free(f.lhs(), bound, out);
      collect_free(f.rhs(), bound, out);
      break;
  }
}

}  // namespace detail

/// Variables of `t` in order of first occurrence.
inline std::vector<std::string> variables(const Term& t) {
  std::vector<std::string> out;
  detail::collect_vars(t, out);
  return out;
}

/// Free variables of `f` in order of first occurrence.
inline std::vector<std::string> free_variables(const Formula& f) {
  std::vector<std::string> bound;
  std::vector<std::string> out;
  detail::collect_free(f, bound, out);
  return out;
}

inline std::vector<std::string> free_variables(const EqIdentity& id) {
  auto out = free_variables(id.lhs);
  for (const auto& v : free_variables(id.rhs)) detail::push_unique(out, v);
  return out;
}

inline bool is_division_free(const Term& t) {
  switch (t.kind()) {
    case TermKind::frac:
      return false;
    case TermKind::neg:
      return is_division_free(t.operand());
    case TermKind::add:
    case TermKind::mul:
      return is_division_free(t.lhs()) && is_division_free(t.rhs());
    default:
      return true;
  }
}

inline std::size_t count_fracs(const Term& t) {
  switch (t.kind()) {
    case TermKind::neg:
      return count_fracs(t.operand());
    case TermKind::add:
    case TermKind::mul:
      return count_fracs(t.lhs()) + count_fracs(t.rhs());
    case TermKind::frac:
      return 1 + count_fracs(t.lhs()) + count_fracs(t.rhs());
    default:
      return 0;
  }
}

inline bool is_quantifier_free(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::forall_p:
    case FormulaKind::exists_p:
      return false;
    case FormulaKind::negation:
      return is_quantifier_free(f.lhs());
    case FormulaKind::sand:
    case FormulaKind::sor:
    case FormulaKind::simp:
      return is_quantifier_free(f.lhs()) && is_quantifier_free(f.rhs());
    default:
      return true;
  }
}

inline Term substitute(const Term& t, const std::string& var, const Term& replacement) {
  switch (t.kind()) {
    case TermKind::var:
      return t.name() == var ? replacement : t;
    case TermKind::neg:
      return Term::neg(substitute(t.operand(), var, replacement));
    case TermKind::add:
      return Term::add(substitute(t.lhs(), var, replacement),
                       substitute(t.rhs(), var, replacement));
    case TermKind::mul:
      return Term::mul(substitute(t.lhs(), var, replacement),
                       substitute(t.rhs(), var, replacement));
    case TermKind::frac:
      return Term::frac(substitute(t.lhs(), var, replacement),
                        substitute(t.rhs(), var, replacement));
    default:
      return t;
  }
}

/// phi[t/x]: replaces free occurrences of `var`. Binders of `var` stop the
/// substitution. Capture is not checked; callers keep the variables of
/// `replacement` out of binder position.
inline Formula substitute(const Formula& f, const std::string& var, const Term& replacement) {
  switch (f.kind()) {
    case FormulaKind::truth:
    case FormulaKind::falsity:
      return f;
    case FormulaKind::eq:
      return Formula::eq(substitute(f.left_term(), var, replacement),
                         substitute(f.right_term(), var, replacement));
    case FormulaKind::negation:
      return Formula::negation(substitute(f.lhs(), var, replacement));
    case FormulaKind::sand:
      return Formula::sand(substitute(f.lhs(), var, replacement),
                           substitute(f.rhs(), var, replacement));
    case FormulaKind::sor:
      return Formula::sor(substitute(f.lhs(), var, replacement),
                          substitute(f.rhs(), var, replacement));
    case FormulaKind::simp:
      return Formula::simp(substitute(f.lhs(), var, replacement),
                           substitute(f.rhs(), var, replacement));
    case FormulaKind::forall_p:
    case FormulaKind::exists_p: {
      if (f.variable() == var) return f;
      auto body = substitute(f.body(), var, replacement);
      return f.kind() == FormulaKind::forall_p ? Formula::forall_p(f.variable(), std::move(body))
                                               : Formula::exists_p(f.variable(), std::move(body));
    }
  }
  return f;
}

/// Universal closure: prefixes forall_p binders for every free variable, the
/// first free variable outermost.
inline Formula universal_closure(const Formula& f) {
  auto vars = free_variables(f);
  Formula out = f;
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) out = Formula::forall_p(*it, out);
  return out;
}

// ---------------------------------------------------------------------------
// Printing

namespace detail {

inline std::string print_term_operand(const Term& t);

inline std::string print_term(const Term& t) {
  switch (t.kind()) {
    case TermKind::zero:
      return "0";
    case TermKind::one:
      return "1";
    case TermKind::bot:
      return "bot";
    case TermKind::var:
      return t.name();
    case TermKind::neg:
      return "-" + print_term_operand(t.operand());
    case TermKind::add:
      return print_term_operand(t.lhs()) + "+" + print_term_operand(t.rhs());
    case TermKind::mul:
      return print_term_operand(t.lhs()) + "*" + print_term_operand(t.rhs());
    case TermKind::frac:
      return print_term_operand(t.lhs()) + "/" + print_term_operand(t.rhs());
  }
  return {};
}

// Compound binary operands are always bracketed: (1+1)+1, (x*1)/(1*1).
inline std::string print_term_operand(const Term& t) {
  if (t.is_binary()) return "(" + print_term(t) + ")";
  return print_term(t);
}

// Binding strength of formula syntax, loosest first.
enum Level : int { quant_level = 0, imp_level = 1, or_level = 2, and_level = 3, lit_level = 4 };

inline int level_of(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::forall_p:
    case FormulaKind::exists_p:
      return quant_level;
    case FormulaKind::simp:
      return imp_level;
    case FormulaKind::sor:
      return or_level;
    case FormulaKind::sand:
      return and_level;
    default:
      return lit_level;
  }
}

inline std::string print_formula(const Formula& f, int context) {
  std::string out;
  switch (f.kind()) {
    case FormulaKind::truth:
      return "T";
    case FormulaKind::falsity:
      return "F";
    case FormulaKind::eq:
      return print_term(f.left_term()) + " == " + print_term(f.right_term());
    case FormulaKind::negation:
      if (f.is_denial())
        return print_term(f.body().left_term()) + " != " + print_term(f.body().right_term());
      if (f.lhs().is_denial()) return "!(" + print_formula(f.lhs(), quant_level) + ")";
      return "!" + print_formula(f.lhs(), lit_level);
    case FormulaKind::sand:
      out = print_formula(f.lhs(), and_level) + " && " + print_formula(f.rhs(), lit_level);
      break;
    case FormulaKind::sor:
      out = print_formula(f.lhs(), or_level) + " || " + print_formula(f.rhs(), and_level);
      break;
    case FormulaKind::simp:
      out = print_formula(f.lhs(), or_level) + " -> " + print_formula(f.rhs(), imp_level);
      break;
    case FormulaKind::forall_p:
      out = "forall " + f.variable() + ". " + print_formula(f.body(), quant_level);
      break;
    case FormulaKind::exists_p:
      out = "exists " + f.variable() + ". " + print_formula(f.body(), quant_level);
      break;
  }
  if (level_of(f) < context) return "(" + out + ")";
  return out;
}

}  // namespace detail

inline std::string print_term(const Term& t) { return detail::print_term(t); }

inline std::string print_formula(const Formula& f) {
  return detail::print_formula(f, detail::quant_level);
}

inline std::string print_identity(const EqIdentity& id) {
  return "(" + print_formula(id.lhs) + ") = (" + print_formula(id.rhs) + ")";
}

// ---------------------------------------------------------------------------
// Lexing and parsing

enum class TokenKind : std::uint8_t {
  ident,
  integer,
  kw_forall,
  kw_exists,
  kw_true,
  kw_false,
  kw_bot,
  lparen,
  rparen,
  plus,
  minus,
  star,
  slash,
  eqeq,
  neq,
  bang,
  andand,
  oror,
  arrow,
  dot,
  equals,
  end
};

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

inline bool is_reserved_word(std::string_view s) {
  return s == "T" || s == "F" || s == "forall" || s == "exists" || s == "bot";
}

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = static_cast<unsigned char>(s.front());
  if (!(std::isalpha(head) || head == '_')) return false;
  for (char c : s) {
    auto u = static_cast<unsigned char>(c);
    if (!(std::isalnum(u) || u == '_')) return false;
  }
  return !is_reserved_word(s);
}

namespace detail {

inline std::string describe(const Token& t) {
  if (t.kind == TokenKind::end) return "end of input";
  return "'" + t.text + "'";
}

inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    auto c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    Token tok{TokenKind::end, {}, line, col};
    auto two = text.substr(i, 2);
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      tok.text = std::string(text.substr(i, j - i));
      if (tok.text == "forall") tok.kind = TokenKind::kw_forall;
      else if (tok.text == "exists") tok.kind = TokenKind::kw_exists;
      else if (tok.text == "T") tok.kind = TokenKind::kw_true;
      else if (tok.text == "F") tok.kind = TokenKind::kw_false;
      else if (tok.text == "bot") tok.kind = TokenKind::kw_bot;
      else tok.kind = TokenKind::ident;
      out.push_back(tok);
      advance(j - i);
      continue;
    }
    if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      tok.kind = TokenKind::integer;
      tok.text = std::string(text.substr(i, j - i));
      out.push_back(tok);
      advance(j - i);
      continue;
    }
    std::size_t len = 2;
    if (two == "==") tok.kind = TokenKind::eqeq;
    else if (two == "!=") tok.kind = TokenKind::neq;
    else if (two == "&&") tok.kind = TokenKind::andand;
    else if (two == "||") tok.kind = TokenKind::oror;
    else if (two == "->") tok.kind = TokenKind::arrow;
    else {
      len = 1;
      switch (c) {
        case '(': tok.kind = TokenKind::lparen; break;
        case ')': tok.kind = TokenKind::rparen; break;
        case '+': tok.kind = TokenKind::plus; break;
        case '-': tok.kind = TokenKind::minus; break;
        case '*': tok.kind = TokenKind::star; break;
        case '/': tok.kind = TokenKind::slash; break;
        case '!': tok.kind = TokenKind::bang; break;
        case '.': tok.kind = TokenKind::dot; break;
        case '=': tok.kind = TokenKind::equals; break;
        default: {
          // Consume the whole UTF-8 sequence for the diagnostic.
          std::size_t j = i + 1;
          while (j < text.size() && (static_cast<unsigned char>(text[j]) & 0xC0) == 0x80) ++j;
          throw ParseError(line, col, {"a term or formula token"},
                           "'" + std::string(text.substr(i, j - i)) + "'");
        }
      }
    }
    tok.text = std::string(text.substr(i, len));
    out.push_back(tok);
    advance(len);
  }
  out.push_back(Token{TokenKind::end, {}, line, col});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, Signature sig) : tokens_(tokenize(text)), sig_(sig) {}

  Term whole_term() {
    auto t = term();
    expect_end();
    return t;
  }
  Formula whole_formula() {
    auto f = formula();
    expect_end();
    return f;
  }
  EqIdentity whole_identity() {
    auto l = formula();
    expect(TokenKind::equals, "'='");
    auto r = formula();
    expect_end();
    return {std::move(l), std::move(r)};
  }

 private:
  // Literals above this bound are rejected; desugaring is linear in the value.
  static constexpr unsigned long max_literal = 4096;

  const Token& peek() const { return tokens_[pos_]; }
  bool at(TokenKind k) const { return peek().kind == k; }
  Token take() { return tokens_[pos_++]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw ParseError(peek().line, peek().column, std::move(expected), describe(peek()));
  }
  void expect(TokenKind k, const char* what) {
    if (!at(k)) fail({what});
    ++pos_;
  }
  void expect_end() {
    if (!at(TokenKind::end)) fail({"end of input"});
  }

  Formula formula() {
    if (at(TokenKind::kw_forall) || at(TokenKind::kw_exists)) {
      bool universal = take().kind == TokenKind::kw_forall;
      if (!at(TokenKind::ident)) fail({"identifier"});
      std::string v = take().text;
      expect(TokenKind::dot, "'.'");
      auto body = formula();
      return universal ? Formula::forall_p(std::move(v), std::move(body))
                       : Formula::exists_p(std::move(v), std::move(body));
    }
    return implication();
  }

  Formula implication() {
    auto lhs = disjunction();
    if (at(TokenKind::arrow)) {
      ++pos_;
      return Formula::simp(std::move(lhs), implication_or_quantifier());
    }
    return lhs;
  }

  // Quantifiers on the right of an operator extend maximally right.
  Formula implication_or_quantifier() {
    if (at(TokenKind::kw_forall) || at(TokenKind::kw_exists)) return formula();
    return implication();
  }

  Formula disjunction() {
    auto lhs = conjunction();
    while (at(TokenKind::oror)) {
      ++pos_;
      lhs = Formula::sor(std::move(lhs), conjunction());
    }
    return lhs;
  }

  Formula conjunction() {
    auto lhs = literal();
    while (at(TokenKind::andand)) {
      ++pos_;
      lhs = Formula::sand(std::move(lhs), literal());
    }
    return lhs;
  }

  Formula literal() {
    switch (peek().kind) {
      case TokenKind::bang:
        ++pos_;
        return Formula::negation(literal());
      case TokenKind::kw_true:
        ++pos_;
        return Formula::truth();
      case TokenKind::kw_false:
        ++pos_;
        return Formula::falsity();
      case TokenKind::kw_forall:
      case TokenKind::kw_exists:
        return formula();
      case TokenKind::lparen: {
        // Either a bracketed formula or an atom whose left term starts with '('.
        std::size_t save = pos_;
        try {
          return atom();
        } catch (const ParseError& as_atom) {
          std::size_t atom_reach = error_reach(as_atom);
          pos_ = save;
          try {
            ++pos_;
            auto f = formula();
            expect(TokenKind::rparen, "')'");
            return f;
          } catch (const ParseError& as_group) {
            if (error_reach(as_group) >= atom_reach) throw;
            throw as_atom;
          }
        }
      }
      default:
        return atom();
    }
  }

  std::size_t error_reach(const ParseError& e) const {
    for (std::size_t k = 0; k < tokens_.size(); ++k)
      if (tokens_[k].line == e.line() && tokens_[k].column == e.column()) return k;
    return tokens_.size();
  }

  Formula atom() {
    auto l = term();
    if (at(TokenKind::eqeq)) {
      ++pos_;
      return Formula::eq(std::move(l), term());
    }
    if (at(TokenKind::neq)) {
      ++pos_;
      return Formula::neq(std::move(l), term());
    }
    fail({"'=='", "'!='", "'+'", "'-'", "'*'", "'/'"});
  }

  Term term() {
    auto lhs = product();
    while (at(TokenKind::plus) || at(TokenKind::minus)) {
      bool minus = take().kind == TokenKind::minus;
      auto rhs = product();
      lhs = Term::add(std::move(lhs), minus ? Term::neg(std::move(rhs)) : std::move(rhs));
    }
    return lhs;
  }

  Term product() {
    auto lhs = unary();
    while (at(TokenKind::star) || at(TokenKind::slash)) {
      bool div = take().kind == TokenKind::slash;
      auto rhs = unary();
      lhs = div ? Term::frac(std::move(lhs), std::move(rhs))
                : Term::mul(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Term unary() {
    if (at(TokenKind::minus)) {
      ++pos_;
      return Term::neg(unary());
    }
    return primary();
  }

  Term primary() {
    const Token& tok = peek();
    switch (tok.kind) {
      case TokenKind::integer:
        return literal_term(take());
      case TokenKind::ident:
        return Term::var(take().text);
      case TokenKind::kw_bot:
        if (sig_ != Signature::enlarged)
          throw SignatureError(std::to_string(tok.line) + ":" + std::to_string(tok.column) +
                               ": 'bot' is only allowed in the enlarged signature");
        ++pos_;
        return Term::bot();
      case TokenKind::lparen: {
        ++pos_;
        auto t = term();
        expect(TokenKind::rparen, "')'");
        return t;
      }
      default:
        fail({"integer", "identifier", "'('", "'-'"});
    }
  }

  Term literal_term(const Token& tok) {
    std::string digits = tok.text;
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
    if (digits.size() > 4 || std::stoul(digits) > max_literal)
      throw ParseError(tok.line, tok.column, {"integer literal <= 4096"}, "'" + tok.text + "'");
    unsigned long n = std::stoul(digits);
    if (n == 0) return Term::zero();
    Term out = Term::one();
    for (unsigned long k = 1; k < n; ++k) out = Term::add(std::move(out), Term::one());
    return out;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  Signature sig_;
};

}  // namespace detail

inline Term parse_term(std::string_view text, Signature sig = Signature::plain) {
  return detail::Parser(text, sig).whole_term();
}

inline Formula parse_formula(std::string_view text, Signature sig = Signature::plain) {
  return detail::Parser(text, sig).whole_formula();
}

/// Parses `phi = psi` where `=` is a single equals sign.
inline EqIdentity parse_identity(std::string_view text, Signature sig = Signature::plain) {
  return detail::Parser(text, sig).whole_identity();
}

}  // namespace meadow

#endif  // MEADOW_SYNTAX_HPP
