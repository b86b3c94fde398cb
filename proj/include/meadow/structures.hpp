#ifndef MEADOW_STRUCTURES_HPP
#define MEADOW_STRUCTURES_HPP

// Concrete partial meadows: the rationals and the prime fields with partial
// division, their Suppes-Ono totalisations (x/0 = 0) and their
// bot-enlargements (common meadows).

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "meadow/errors.hpp"
#include "meadow/syntax.hpp"

namespace meadow {

/// Exact rationals, always in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Residue modulo a prime.
struct Residue {
  std::uint64_t value = 0;
  std::uint64_t modulus = 2;
  friend bool operator==(const Residue&, const Residue&) = default;
};

/// The absorptive element of an enlarged carrier.
struct Bottom {
  friend bool operator==(const Bottom&, const Bottom&) = default;
};

class Value {
 public:
  static Value rational(Rational q) { return Value(Repr(std::move(q))); }
  static Value rational(long long num, long long den = 1) {
    return Value(Repr(Rational(BigInt(num), BigInt(den))));
  }
  static Value residue(std::uint64_t v, std::uint64_t p) { return Value(Repr(Residue{v % p, p})); }
  static Value bottom() { return Value(Repr(Bottom{})); }

  bool is_rational() const noexcept { return std::holds_alternative<Rational>(repr_); }
  bool is_residue() const noexcept { return std::holds_alternative<Residue>(repr_); }
  bool is_bottom() const noexcept { return std::holds_alternative<Bottom>(repr_); }
  const Rational& as_rational() const { return std::get<Rational>(repr_); }
  const Residue& as_residue() const { return std::get<Residue>(repr_); }

  bool is_zero() const noexcept {
    if (auto r = std::get_if<Residue>(&repr_)) return r->value == 0;
    if (auto q = std::get_if<Rational>(&repr_)) return q->is_zero();
    return false;
  }

  std::string to_string() const {
    if (is_bottom()) return "bot";
    if (auto r = std::get_if<Residue>(&repr_)) return std::to_string(r->value);
    const auto& q = as_rational();
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
  }

  friend bool operator==(const Value&, const Value&) = default;

 private:
  using Repr = std::variant<Residue, Rational, Bottom>;
  explicit Value(Repr r) : repr_(std::move(r)) {}
  Repr repr_;
};

/// Defined(v) or Undefined (nullopt).
using EvalResult = std::optional<Value>;

/// Variable bindings, kept in binding order. Small; lookups are linear.
class Valuation {
 public:
  Valuation() = default;
  Valuation(std::initializer_list<std::pair<std::string, Value>> init) {
    for (const auto& [k, v] : init) bind(k, v);
  }

  void bind(const std::string& name, Value v) {
    for (auto& [k, old] : bindings_)
      if (k == name) {
        old = std::move(v);
        return;
      }
    bindings_.emplace_back(name, std::move(v));
  }
  /// sigma[v/name]
  Valuation with(const std::string& name, Value v) const {
    Valuation out = *this;
    out.bind(name, std::move(v));
    return out;
  }
  const Value* lookup(std::string_view name) const noexcept {
    for (const auto& [k, v] : bindings_)
      if (k == name) return &v;
    return nullptr;
  }
  const std::vector<std::pair<std::string, Value>>& bindings() const noexcept {
    return bindings_;
  }
  bool empty() const noexcept { return bindings_.empty(); }
  std::size_t size() const noexcept { return bindings_.size(); }

  std::string to_string() const {
    std::string out;
    for (const auto& [k, v] : bindings_) {
      if (!out.empty()) out += ", ";
      out += k + "=" + v.to_string();
    }
    return out.empty() ? "{}" : out;
  }

  friend bool operator==(const Valuation&, const Valuation&) = default;

 private:
  std::vector<std::pair<std::string, Value>> bindings_;
};

/// Largest supported field characteristic; residues and their products stay
/// within 64 bits.
inline constexpr std::uint64_t max_prime = std::uint64_t{1} << 31;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// A concrete partial meadow, optionally totalised (x/0 = 0) and/or
/// bot-enlarged. Immutable.
class Structure {
 public:
  enum class Base : std::uint8_t { rationals, prime_field };

  static Structure rationals() { return Structure(Base::rationals, 0); }
  static Structure prime_field(std::uint64_t p) {
    if (p >= max_prime) throw InvalidStructure("modulus " + std::to_string(p) + " exceeds 2^31");
    if (!is_prime(p)) throw InvalidStructure(std::to_string(p) + " is not prime");
    return Structure(Base::prime_field, p);
  }

  /// Parses `q`, `gf:<p>`, `tot0:<spec>`, `enl:<spec>`.
  static Structure parse(std::string_view spec);

  Base base() const noexcept { return base_; }
  std::uint64_t modulus() const noexcept { return p_; }
  bool is_total0() const noexcept { return total0_; }
  bool is_enlarged() const noexcept { return enlarged_; }
  bool is_finite() const noexcept { return base_ == Base::prime_field; }
  /// Division is total (Tot0 or enlarged).
  bool is_total() const noexcept { return total0_ || enlarged_; }

  std::string spec() const {
    std::string s = base_ == Base::rationals ? "q" : "gf:" + std::to_string(p_);
    if (total0_) s = "tot0:" + s;
    if (enlarged_) s = "enl:" + s;
    return s;
  }

  std::size_t carrier_size() const {
    if (!is_finite()) throw InfiniteCarrier("carrier of " + spec() + " is infinite");
    return static_cast<std::size_t>(p_) + (enlarged_ ? 1 : 0);
  }

  /// Elements 0..p-1, then bot when enlarged.
  std::vector<Value> carrier() const {
    std::vector<Value> out;
    out.reserve(carrier_size());
    for (std::uint64_t i = 0; i < p_; ++i) out.push_back(Value::residue(i, p_));
    if (enlarged_) out.push_back(Value::bottom());
    return out;
  }

  bool contains(const Value& v) const noexcept {
    if (v.is_bottom()) return enlarged_;
    if (base_ == Base::rationals) return v.is_rational();
    return v.is_residue() && v.as_residue().modulus == p_;
  }

  Value zero() const {
    return base_ == Base::rationals ? Value::rational(0) : Value::residue(0, p_);
  }
  Value one() const { return base_ == Base::rationals ? Value::rational(1) : Value::residue(1, p_); }

  Value negate(const Value& a) const {
    if (a.is_bottom()) return a;
    if (base_ == Base::rationals) return Value::rational(-a.as_rational());
    auto r = a.as_residue().value;
    return Value::residue(r == 0 ? 0 : p_ - r, p_);
  }
  Value add(const Value& a, const Value& b) const {
    if (a.is_bottom() || b.is_bottom()) return Value::bottom();
    if (base_ == Base::rationals) return Value::rational(a.as_rational() + b.as_rational());
    return Value::residue((a.as_residue().value + b.as_residue().value) % p_, p_);
  }
  Value mul(const Value& a, const Value& b) const {
    if (a.is_bottom() || b.is_bottom()) return Value::bottom();
    if (base_ == Base::rationals) return Value::rational(a.as_rational() * b.as_rational());
    return Value::residue((a.as_residue().value * b.as_residue().value) % p_, p_);
  }
  /// Undefined exactly for a zero denominator in a partial structure.
  EvalResult divide(const Value& a, const Value& b) const {
    if (a.is_bottom() || b.is_bottom()) return Value::bottom();
    if (b.is_zero()) {
      if (total0_) return zero();
      if (enlarged_) return Value::bottom();
      return std::nullopt;
    }
    if (base_ == Base::rationals) return Value::rational(a.as_rational() / b.as_rational());
    return Value::residue((a.as_residue().value * power(b.as_residue().value, p_ - 2)) % p_, p_);
  }

  friend bool operator==(const Structure&, const Structure&) = default;

 private:
  Structure(Base b, std::uint64_t p) : base_(b), p_(p) {}

  std::uint64_t power(std::uint64_t b, std::uint64_t e) const {
    std::uint64_t result = 1 % p_;
    b %= p_;
    while (e) {
      if (e & 1) result = result * b % p_;
      b = b * b % p_;
      e >>= 1;
    }
    return result;
  }

  friend Structure tot0(const Structure&);
  friend Structure enl(const Structure&);
  friend Structure pdt(const Structure&);

  Base base_;
  std::uint64_t p_;
  bool total0_ = false;
  bool enlarged_ = false;
};

/// Suppes-Ono totalisation: division with x/0 = 0.
inline Structure tot0(const Structure& s) {
  if (s.is_total()) throw AlreadyTotal(s.spec() + " already has total division");
  Structure out = s;
  out.total0_ = true;
  return out;
}

/// bot-enlargement: adds bot to the carrier and totalises every operation
/// with bot as the default output.
inline Structure enl(const Structure& s) {
  if (s.is_enlarged()) throw AlreadyEnlarged(s.spec() + " is already enlarged");
  Structure out = s;
  out.enlarged_ = true;
  return out;
}

/// Removes bot from an enlarged structure; operations that produced bot
/// become undefined there.
inline Structure pdt(const Structure& s) {
  if (!s.is_enlarged()) throw NotEnlarged(s.spec() + " is not enlarged");
  if (s.is_finite() && s.carrier_size() <= 1)
    throw CarrierTooSmall("Pdt needs a carrier with more than one element");
  Structure out = s;
  out.enlarged_ = false;
  return out;
}

inline Structure Structure::parse(std::string_view spec) {
  auto fail = [&] { return InvalidStructure("bad structure spec '" + std::string(spec) + "'"); };
  if (spec == "q") return rationals();
  if (spec.starts_with("gf:")) {
    auto digits = spec.substr(3);
    if (digits.empty() || digits.size() > 12) throw fail();
    std::uint64_t p = 0;
    for (char c : digits) {
      if (c < '0' || c > '9') throw fail();
      p = p * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return prime_field(p);
  }
  if (spec.starts_with("tot0:")) return tot0(parse(spec.substr(5)));
  if (spec.starts_with("enl:")) return enl(parse(spec.substr(4)));
  throw fail();
}

/// Strict bottom-up evaluation; any undefined subterm makes the term undefined.
inline EvalResult eval_term(const Structure& s, const Valuation& sigma, const Term& t) {
  switch (t.kind()) {
    case TermKind::zero:
      return s.zero();
    case TermKind::one:
      return s.one();
    case TermKind::bot:
      if (!s.is_enlarged())
        throw SignatureMismatch("'bot' cannot be interpreted in " + s.spec());
      return Value::bottom();
    case TermKind::var: {
      const Value* v = sigma.lookup(t.name());
      if (!v) throw UnboundVariable(t.name());
      if (!s.contains(*v))
        throw SignatureMismatch("value " + v->to_string() + " of '" + t.name() +
                                "' is not in the carrier of " + s.spec());
      return *v;
    }
    case TermKind::neg: {
      auto a = eval_term(s, sigma, t.operand());
      if (!a) return std::nullopt;
      return s.negate(*a);
    }
    default:
      break;
  }
  auto a = eval_term(s, sigma, t.lhs());
  if (!a) return std::nullopt;
  auto b = eval_term(s, sigma, t.rhs());
  if (!b) return std::nullopt;
  switch (t.kind()) {
    case TermKind::add:
      return s.add(*a, *b);
    case TermKind::mul:
      return s.mul(*a, *b);
    default:
      return s.divide(*a, *b);
  }
}

/// Odometer over carrier^vars; the first variable varies fastest.
class ValuationStream {
 public:
  ValuationStream(const Structure& s, std::vector<std::string> vars, Valuation base = {})
      : vars_(std::move(vars)), carrier_(s.carrier()), digits_(vars_.size(), 0), current_(std::move(base)) {
    for (const auto& v : vars_) current_.bind(v, carrier_.front());
  }

  /// Writes the next valuation into `out`; false when exhausted.
  bool next(Valuation& out) {
    if (done_) return false;
    out = current_;
    std::size_t k = 0;
    while (k < digits_.size() && digits_[k] + 1 == carrier_.size()) {
      digits_[k] = 0;
      current_.bind(vars_[k], carrier_.front());
      ++k;
    }
    if (k == digits_.size()) {
      done_ = true;
    } else {
      ++digits_[k];
      current_.bind(vars_[k], carrier_[digits_[k]]);
    }
    return true;
  }

 private:
  std::vector<std::string> vars_;
  std::vector<Value> carrier_;
  std::vector<std::size_t> digits_;
  Valuation current_;
  bool done_ = false;
};

inline std::vector<Valuation> enumerate_valuations(const Structure& s,
                                                   const std::vector<std::string>& vars) {
  ValuationStream stream(s, vars);
  std::vector<Valuation> out;
  Valuation v;
  while (stream.next(v)) out.push_back(v);
  return out;
}

/// Bound on numerator and denominator magnitudes of sampled rationals.
inline constexpr std::int64_t rational_sample_bound = 1'000'000;

/// Seeded sampler of carrier elements. Draws come straight from the raw
/// mt19937_64 output, so streams are identical on every platform.
class ValueSampler {
 public:
  ValueSampler(const Structure& s, std::uint64_t seed) : s_(s), rng_(seed) {}

  Value draw() {
    if (s_.is_enlarged() && below(16) == 0) return Value::bottom();
    if (s_.base() == Structure::Base::prime_field) return Value::residue(below(s_.modulus()), s_.modulus());
    if (below(8) == 0) return Value::rational(0);
    auto num = static_cast<std::int64_t>(below(2 * rational_sample_bound + 1)) - rational_sample_bound;
    auto den = static_cast<std::int64_t>(below(rational_sample_bound)) + 1;
    return Value::rational(num, den);
  }

 private:
  std::uint64_t below(std::uint64_t n) { return rng_() % n; }

  Structure s_;
  std::mt19937_64 rng_;
};

inline std::vector<Valuation> sample_valuations(const Structure& s,
                                                const std::vector<std::string>& vars,
                                                std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error("sample count must be at least 1");
  ValueSampler sampler(s, seed);
  std::vector<Valuation> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Valuation v;
    for (const auto& name : vars) v.bind(name, sampler.draw());
    out.push_back(std::move(v));
  }
  return out;
}

/// Parses a binding value for `s`: `a/b` or an integer for the rationals, an
/// integer (reduced mod p) for prime fields, `bot` for enlarged structures.
inline Value parse_value(const Structure& s, std::string_view text) {
  auto bad = [&] {
    return Error("bad value '" + std::string(text) + "' for structure " + s.spec());
  };
  if (text == "bot") {
    if (!s.is_enlarged()) throw bad();
    return Value::bottom();
  }
  auto parse_int = [&](std::string_view d) {
    if (d.empty()) throw bad();
    bool neg = d.front() == '-';
    if (neg) d.remove_prefix(1);
    if (d.empty()) throw bad();
    for (char c : d)
      if (c < '0' || c > '9') throw bad();
    BigInt n{std::string(d)};
    if (neg) n = -n;
    return n;
  };
  auto slash = text.find('/');
  if (s.base() == Structure::Base::rationals) {
    BigInt num = parse_int(text.substr(0, slash));
    BigInt den = slash == std::string_view::npos ? BigInt(1) : parse_int(text.substr(slash + 1));
    if (den == 0) throw bad();
    return Value::rational(Rational(num, den));
  }
  if (slash != std::string_view::npos) throw bad();
  BigInt n = parse_int(text);
  BigInt p(s.modulus());
  BigInt r = ((n % p) + p) % p;
  return Value::residue(r.convert_to<std::uint64_t>(), s.modulus());
}

}  // namespace meadow

#endif  // MEADOW_STRUCTURES_HPP
