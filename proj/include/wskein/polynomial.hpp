#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wskein/errors.hpp"
#include "wskein/variables.hpp"

namespace wskein {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;
using Exponents = std::vector<std::uint32_t>;

/// Exact multivariate polynomial over a VariableSet.
///
/// Terms are kept in a map ordered by descending lexicographic exponent
/// vector, zero coefficients are never stored, and involutive exponents are
/// reduced mod 2 on insertion. Two polynomials over the same variables are
/// mathematically equal iff their term maps are equal.
template <class Coeff>
class BasicPolynomial {
 public:
  using coeff_type = Coeff;
  using TermMap = std::map<Exponents, Coeff, std::greater<>>;

  BasicPolynomial() : vars_(VariableSet::standard()) {}
  explicit BasicPolynomial(VariableSetPtr vars) : vars_(std::move(vars)) {}

  static BasicPolynomial constant(const Coeff& c, VariableSetPtr vars = VariableSet::standard()) {
    BasicPolynomial p(std::move(vars));
    p.add_term(Exponents(p.vars_->size(), 0), c);
    return p;
  }

  static BasicPolynomial variable(std::string_view name, VariableSetPtr vars = VariableSet::standard()) {
    BasicPolynomial p(std::move(vars));
    Exponents e(p.vars_->size(), 0);
    e[p.vars_->require(name)] = 1;
    p.add_term(std::move(e), Coeff(1));
    return p;
  }

  const VariableSetPtr& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  bool is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() != 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](auto v) { return v == 0; });
  }

  /// Constant term (zero if absent).
  Coeff constant_term() const {
    auto it = terms_.find(Exponents(vars_->size(), 0));
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  void add_term(Exponents e, const Coeff& c) {
    if (c == 0) return;
    for (std::size_t i = vars_->ordinary_count(); i < e.size(); ++i) e[i] &= 1u;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::uint32_t degree_in(std::size_t var) const {
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
  }

  std::uint32_t total_degree() const {
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_) {
      std::uint32_t s = 0;
      for (std::size_t i = 0; i < vars_->ordinary_count(); ++i) s += e[i];
      d = std::max(d, s);
    }
    return d;
  }

  BasicPolynomial& operator+=(const BasicPolynomial& q) {
    check_vars(q);
    for (const auto& [e, c] : q.terms_) add_term(e, c);
    return *this;
  }

  BasicPolynomial& operator-=(const BasicPolynomial& q) {
    check_vars(q);
    for (const auto& [e, c] : q.terms_) add_term(e, -c);
    return *this;
  }

  BasicPolynomial& operator*=(const Coeff& k) {
    if (k == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= k;
    return *this;
  }

  friend BasicPolynomial operator+(BasicPolynomial p, const BasicPolynomial& q) { return p += q; }
  friend BasicPolynomial operator-(BasicPolynomial p, const BasicPolynomial& q) { return p -= q; }
  friend BasicPolynomial operator-(BasicPolynomial p) { return p *= Coeff(-1); }
  friend BasicPolynomial operator*(BasicPolynomial p, const Coeff& k) { return p *= k; }
  friend BasicPolynomial operator*(const Coeff& k, BasicPolynomial p) { return p *= k; }

  friend BasicPolynomial operator*(const BasicPolynomial& p, const BasicPolynomial& q) {
    p.check_vars(q);
    BasicPolynomial out(p.vars_);
    Exponents e(p.vars_->size());
    for (const auto& [ep, cp] : p.terms_) {
      for (const auto& [eq, cq] : q.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ep[i] + eq[i];
        out.add_term(e, cp * cq);
      }
    }
    return out;
  }

  BasicPolynomial& operator*=(const BasicPolynomial& q) { return *this = *this * q; }

  friend bool operator==(const BasicPolynomial& p, const BasicPolynomial& q) {
    return same_variables(p.vars_, q.vars_) && p.terms_ == q.terms_;
  }

  /// Substitutes +1 or -1 for the involutive variable at `var`.
  BasicPolynomial specialize_sign(std::size_t var, int sign) const {
    BasicPolynomial out(vars_);
    for (const auto& [key, coeff] : terms_) {
      Exponents e = key;
      Coeff c = (e[var] != 0 && sign < 0) ? Coeff(-coeff) : coeff;
      e[var] = 0;
      out.add_term(std::move(e), c);
    }
    return out;
  }

 private:
  void check_vars(const BasicPolynomial& q) const {
    if (!same_variables(vars_, q.vars_)) throw VariableMismatch();
  }

  VariableSetPtr vars_;
  TermMap terms_;
};

using Polynomial = BasicPolynomial<BigInt>;
using RationalPolynomial = BasicPolynomial<BigRational>;

template <class Coeff>
BasicPolynomial<Coeff> pow(const BasicPolynomial<Coeff>& p, unsigned n) {
  auto result = BasicPolynomial<Coeff>::constant(Coeff(1), p.vars());
  auto base = p;
  while (n) {
    if (n & 1u) result *= base;
    n >>= 1u;
    if (n) base *= base;
  }
  return result;
}

/// δ = b^2 - a^2 over `vars`.
inline Polynomial delta(const VariableSetPtr& vars = VariableSet::standard()) {
  return Polynomial::variable("b", vars) * Polynomial::variable("b", vars) -
         Polynomial::variable("a", vars) * Polynomial::variable("a", vars);
}

namespace detail {

inline std::string coeff_str(const BigInt& c) { return c.str(); }
inline std::string coeff_str(const BigRational& c) {
  auto n = boost::multiprecision::numerator(c);
  auto d = boost::multiprecision::denominator(c);
  return d == 1 ? n.str() : n.str() + "/" + d.str();
}

}  // namespace detail

/// Canonical text: terms in descending lex order, `*` between factors,
/// `^` for exponents above one, unit coefficients omitted.
template <class Coeff>
std::string to_string(const BasicPolynomial<Coeff>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    bool neg = c < 0;
    Coeff mag = neg ? Coeff(-c) : c;
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;

    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += p.vars()->name(i);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty())
      out += detail::coeff_str(mag);
    else if (mag == 1)
      out += mono;
    else
      out += detail::coeff_str(mag) + "*" + mono;
  }
  return out;
}

template <class Coeff>
std::ostream& operator<<(std::ostream& os, const BasicPolynomial<Coeff>& p) {
  return os << to_string(p);
}

namespace detail {

/// Recursive-descent reader for `+ - * ^ ( )`, integers and variable names.
/// Stops without error at any other character so callers can continue
/// (the fraction reader handles `/`).
class ExpressionReader {
 public:
  ExpressionReader(std::string_view text, VariableSetPtr vars, std::size_t line = 1)
      : text_(text), vars_(std::move(vars)), line_(line) {}

  Polynomial expression() {
    skip_ws();
    bool neg = false;
    if (peek() == '+' || peek() == '-') {
      neg = get() == '-';
    }
    Polynomial acc = term();
    if (neg) acc = -acc;
    for (;;) {
      skip_ws();
      char c = peek();
      if (c != '+' && c != '-') break;
      get();
      Polynomial rhs = term();
      if (c == '+')
        acc += rhs;
      else
        acc -= rhs;
    }
    return acc;
  }

  /// Optional `^n` suffix on an already-read factor.
  unsigned exponent() {
    skip_ws();
    if (peek() != '^') return 1;
    get();
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
    unsigned n = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) n = n * 10 + static_cast<unsigned>(get() - '0');
    return n;
  }

  Polynomial factor() {
    skip_ws();
    Polynomial base = primary();
    return pow(base, exponent());
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char get() { return text_[pos_++]; }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  std::size_t pos() const { return pos_; }

  [[noreturn]] void fail(const std::string& why) const { throw ParseError(line_, pos_ + 1, why); }

 private:
  Polynomial term() {
    Polynomial acc = factor();
    for (;;) {
      skip_ws();
      if (peek() != '*') break;
      get();
      acc *= factor();
    }
    return acc;
  }

  Polynomial primary() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      get();
      Polynomial inner = expression();
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      get();
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (std::isdigit(static_cast<unsigned char>(peek()))) digits += get();
      return Polynomial::constant(BigInt(digits), vars_);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      std::string name;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') name += get();
      if (!vars_->index_of(name)) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return Polynomial::variable(name, vars_);
    }
    fail(c == '\0' ? "unexpected end of input" : std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  VariableSetPtr vars_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Reads the format produced by to_string (and any expression in
/// `+ - * ^ ( )` over the variable names).
inline Polynomial parse_polynomial(std::string_view text, VariableSetPtr vars = VariableSet::standard()) {
  detail::ExpressionReader reader(text, std::move(vars));
  Polynomial p = reader.expression();
  if (!reader.at_end()) reader.fail("trailing input");
  return p;
}

}  // namespace wskein
