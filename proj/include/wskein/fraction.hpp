#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "wskein/polynomial.hpp"

namespace wskein {

/// Returns q with q * (b^2 - a^2) == p, or nullopt when δ does not divide p.
///
/// δ is monic of degree 2 in b, so p is reduced as a polynomial in b with
/// coefficients in the remaining variables.
inline std::optional<Polynomial> divide_by_delta(const Polynomial& p) {
  const auto& vars = p.vars();
  const std::size_t ia = vars->require("a");
  const std::size_t ib = vars->require("b");
  Polynomial rem = p;
  Polynomial quot(vars);
  for (;;) {
    std::uint32_t d = rem.degree_in(ib);
    if (d < 2) break;
    std::vector<std::pair<Exponents, BigInt>> top;
    for (const auto& [e, c] : rem.terms())
      if (e[ib] == d) top.emplace_back(e, c);
    for (auto& [e, c] : top) {
      rem.add_term(e, -c);
      e[ib] -= 2;
      quot.add_term(e, c);
      e[ia] += 2;
      rem.add_term(e, c);
    }
  }
  if (!rem.is_zero()) return std::nullopt;
  return quot;
}

namespace detail {

inline RationalPolynomial to_rational(const Polynomial& p) {
  RationalPolynomial out(p.vars());
  for (const auto& [e, c] : p.terms()) out.add_term(e, BigRational(c));
  return out;
}

inline bool divides_monomial(const Exponents& d, const Exponents& e) {
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] > e[i]) return false;
  return true;
}

/// Exact division in the polynomial ring over Q (no involutive exponents
/// present). Lex division by a single divisor leaves remainder zero exactly
/// when the divisor divides.
inline std::optional<RationalPolynomial> divide_in_domain(RationalPolynomial rem, const RationalPolynomial& d) {
  RationalPolynomial quot(d.vars());
  const auto& [lead_e, lead_c] = *d.terms().begin();
  while (!rem.is_zero()) {
    const auto [e, c] = *rem.terms().begin();
    if (!divides_monomial(lead_e, e)) return std::nullopt;
    Exponents shift(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) shift[i] = e[i] - lead_e[i];
    BigRational k = c / lead_c;
    quot.add_term(shift, k);
    RationalPolynomial step(d.vars());
    step.add_term(shift, k);
    rem -= step * d;
  }
  return quot;
}

}  // namespace detail

/// Exact quotient p / d, or nullopt when d does not divide p.
///
/// Involutive variables make the ring a product of domains: each ±1
/// specialization is divided separately and the results are recombined via
/// v -> (1 + v)/2, (1 - v)/2 idempotents.
inline std::optional<Polynomial> exact_divide(const Polynomial& p, const Polynomial& d) {
  if (!same_variables(p.vars(), d.vars())) throw VariableMismatch();
  if (d.is_zero()) throw std::domain_error("division by zero polynomial");
  const auto& vars = p.vars();

  std::vector<std::size_t> invol;
  for (std::size_t i = vars->ordinary_count(); i < vars->size(); ++i)
    if (p.degree_in(i) > 0 || d.degree_in(i) > 0) invol.push_back(i);

  RationalPolynomial total(vars);
  const std::size_t combos = std::size_t{1} << invol.size();
  for (std::size_t mask = 0; mask < combos; ++mask) {
    Polynomial ps = p, ds = d;
    RationalPolynomial idem = RationalPolynomial::constant(BigRational(1), vars);
    for (std::size_t j = 0; j < invol.size(); ++j) {
      int sign = (mask >> j) & 1u ? -1 : 1;
      ps = ps.specialize_sign(invol[j], sign);
      ds = ds.specialize_sign(invol[j], sign);
      // (1 + sign*v)/2
      RationalPolynomial f = RationalPolynomial::constant(BigRational(1, 2), vars);
      Exponents e(vars->size(), 0);
      e[invol[j]] = 1;
      f.add_term(e, BigRational(sign, 2));
      idem *= f;
    }
    if (ds.is_zero()) {
      if (!ps.is_zero()) return std::nullopt;
      continue;
    }
    auto q = detail::divide_in_domain(detail::to_rational(ps), detail::to_rational(ds));
    if (!q) return std::nullopt;
    total += *q * idem;
  }

  Polynomial out(vars);
  for (const auto& [e, c] : total.terms()) {
    if (boost::multiprecision::denominator(c) != 1) return std::nullopt;
    out.add_term(e, boost::multiprecision::numerator(c));
  }
  if (!(out * d == p)) return std::nullopt;
  return out;
}

/// numerator / δ^delta_power, kept in lowest terms: δ does not divide the
/// numerator unless delta_power is zero.
class Fraction {
 public:
  Fraction() = default;
  explicit Fraction(Polynomial numerator, unsigned delta_power = 0)
      : num_(std::move(numerator)), delta_power_(delta_power) {
    canonicalize();
  }

  static Fraction integer(long long n, VariableSetPtr vars = VariableSet::standard()) {
    return Fraction(Polynomial::constant(BigInt(n), std::move(vars)));
  }
  static Fraction variable(std::string_view name, VariableSetPtr vars = VariableSet::standard()) {
    return Fraction(Polynomial::variable(name, std::move(vars)));
  }
  /// 1 / δ^k.
  static Fraction inverse_delta(unsigned k, VariableSetPtr vars = VariableSet::standard()) {
    return Fraction(Polynomial::constant(BigInt(1), std::move(vars)), k);
  }

  const Polynomial& numerator() const { return num_; }
  unsigned delta_power() const { return delta_power_; }
  const VariableSetPtr& vars() const { return num_.vars(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return delta_power_ == 0; }

  /// True for the constants +1 and -1.
  bool is_sign() const {
    return delta_power_ == 0 && num_.is_constant() && (num_.constant_term() == 1 || num_.constant_term() == -1);
  }

  Fraction& operator+=(const Fraction& o) {
    if (o.delta_power_ == delta_power_) {
      num_ += o.num_;
    } else if (o.delta_power_ > delta_power_) {
      num_ = num_ * pow(delta(vars()), o.delta_power_ - delta_power_) + o.num_;
      delta_power_ = o.delta_power_;
    } else {
      num_ += o.num_ * pow(delta(vars()), delta_power_ - o.delta_power_);
    }
    canonicalize();
    return *this;
  }
  Fraction& operator-=(const Fraction& o) { return *this += -o; }
  Fraction& operator*=(const Fraction& o) {
    num_ *= o.num_;
    delta_power_ += o.delta_power_;
    canonicalize();
    return *this;
  }

  friend Fraction operator+(Fraction u, const Fraction& v) { return u += v; }
  friend Fraction operator-(Fraction u, const Fraction& v) { return u -= v; }
  friend Fraction operator*(Fraction u, const Fraction& v) { return u *= v; }
  friend Fraction operator-(Fraction u) {
    u.num_ *= BigInt(-1);
    return u;
  }

  /// Cross-multiplied comparison.
  friend bool operator==(const Fraction& u, const Fraction& v) {
    if (!same_variables(u.vars(), v.vars())) return false;
    if (u.delta_power_ == v.delta_power_) return u.num_ == v.num_;
    const auto& d = delta(u.vars());
    if (u.delta_power_ < v.delta_power_) return u.num_ * pow(d, v.delta_power_ - u.delta_power_) == v.num_;
    return v.num_ * pow(d, u.delta_power_ - v.delta_power_) == u.num_;
  }

 private:
  void canonicalize() {
    if (num_.is_zero()) {
      delta_power_ = 0;
      return;
    }
    while (delta_power_ > 0) {
      auto q = divide_by_delta(num_);
      if (!q) break;
      num_ = std::move(*q);
      --delta_power_;
    }
  }

  Polynomial num_;
  unsigned delta_power_ = 0;
};

inline Fraction pow(const Fraction& f, unsigned n) {
  Fraction result = Fraction::integer(1, f.vars());
  Fraction base = f;
  while (n) {
    if (n & 1u) result *= base;
    n >>= 1u;
    if (n) base *= base;
  }
  return result;
}

/// Expresses num/den as a δ-power fraction, or throws std::domain_error when
/// den has a factor other than δ that does not cancel.
inline Fraction reduce_to_fraction(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw std::domain_error("zero denominator");
  const unsigned max_k = den.total_degree() / 2;
  const Polynomial d = delta(num.vars());
  Polynomial scaled = num;
  for (unsigned k = 0; k <= max_k; ++k) {
    if (auto q = exact_divide(scaled, den)) return Fraction(std::move(*q), k);
    scaled *= d;
  }
  throw std::domain_error("not expressible over a power of (b^2 - a^2)");
}

/// Values assigned to symbols. Involutive symbols accept only +1 or -1.
using Assignment = std::map<std::string, Fraction, std::less<>>;

namespace detail {

inline Fraction substitute_polynomial(const Polynomial& p, const Assignment& asg) {
  const auto& vars = p.vars();
  std::vector<std::optional<Fraction>> value(vars->size());
  for (std::size_t i = 0; i < vars->size(); ++i) {
    auto it = asg.find(vars->name(i));
    value[i] = it != asg.end() ? it->second : Fraction::variable(vars->name(i), vars);
  }
  std::map<std::pair<std::size_t, std::uint32_t>, Fraction> power_cache;
  auto power = [&](std::size_t i, std::uint32_t e) -> const Fraction& {
    auto key = std::make_pair(i, e);
    auto it = power_cache.find(key);
    if (it == power_cache.end()) it = power_cache.emplace(key, pow(*value[i], e)).first;
    return it->second;
  };
  Fraction out = Fraction::integer(0, vars);
  for (const auto& [e, c] : p.terms()) {
    Fraction term(Polynomial::constant(c, vars));
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) term *= power(i, e[i]);
    out += term;
  }
  return out;
}

}  // namespace detail

/// Replaces symbols by the assigned values and returns the result in
/// canonical form. Throws std::invalid_argument for an unknown symbol or a
/// non-sign value on an involutive symbol, std::domain_error if the
/// substituted denominator vanishes or stops being a power of δ.
inline Fraction substitute(const Fraction& f, const Assignment& asg) {
  const auto& vars = f.vars();
  for (const auto& [name, v] : asg) {
    auto idx = vars->index_of(name);
    if (!idx) throw std::invalid_argument("cannot assign unknown symbol " + name);
    if (!same_variables(v.vars(), vars)) throw VariableMismatch();
    if (vars->is_involutive(*idx) && !v.is_sign())
      throw std::invalid_argument("involutive symbol " + name + " may only be assigned +1 or -1");
  }
  Fraction num = detail::substitute_polynomial(f.numerator(), asg);
  if (f.delta_power() == 0) return num;
  const Polynomial d = delta(vars);
  Fraction den = detail::substitute_polynomial(d, asg);
  if (den == Fraction(d)) return num * Fraction::inverse_delta(f.delta_power(), vars);
  if (den.is_zero()) throw std::domain_error("substitution makes (b^2 - a^2) vanish");
  Fraction den_k = pow(den, f.delta_power());
  const Polynomial top = num.numerator() * pow(d, den_k.delta_power());
  const Polynomial bottom = den_k.numerator() * pow(d, num.delta_power());
  return reduce_to_fraction(top, bottom);
}

/// Substitutes into num/den where den is an arbitrary polynomial, then
/// reduces to δ-power form (the generic coefficients x, y, z have such
/// denominators before specialization).
inline Fraction substitute_quotient(const Polynomial& num, const Polynomial& den, const Assignment& asg) {
  Fraction n = substitute(Fraction(num), asg);
  Fraction d = substitute(Fraction(den), asg);
  if (d.is_zero()) throw std::domain_error("substituted denominator vanishes");
  const Polynomial dl = delta(num.vars());
  return reduce_to_fraction(n.numerator() * pow(dl, d.delta_power()), d.numerator() * pow(dl, n.delta_power()));
}

/// Numerator over an explicit "(b^2 - a^2)^k".
inline std::string to_string(const Fraction& f) {
  if (f.delta_power() == 0) return to_string(f.numerator());
  std::string out = "(" + to_string(f.numerator()) + ")/(b^2 - a^2)";
  if (f.delta_power() > 1) out += "^" + std::to_string(f.delta_power());
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Fraction& f) { return os << to_string(f); }

/// Reads `expr` or `expr / factor`, where the divisor must reduce to a power
/// of δ against the numerator.
inline Fraction parse_fraction(std::string_view text, VariableSetPtr vars = VariableSet::standard()) {
  detail::ExpressionReader reader(text, vars);
  Polynomial num = reader.expression();
  reader.skip_ws();
  if (reader.peek() == '/') {
    reader.get();
    Polynomial den = reader.factor();
    if (!reader.at_end()) reader.fail("trailing input");
    try {
      return reduce_to_fraction(num, den);
    } catch (const std::domain_error& e) {
      reader.fail(e.what());
    }
  }
  if (!reader.at_end()) reader.fail("trailing input");
  return Fraction(std::move(num));
}

}  // namespace wskein
