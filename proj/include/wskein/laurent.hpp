#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wskein/fraction.hpp"

namespace wskein {

/// Laurent polynomial with dyadic-rational coefficients.
///
/// `graded` variables take any integer exponent; `involutive` ones take 0/1.
class LaurentPoly {
 public:
  using SignedExponents = std::vector<std::int32_t>;
  using TermMap = std::map<SignedExponents, BigRational, std::greater<>>;

  LaurentPoly(std::vector<std::string> graded, std::vector<std::string> involutive)
      : graded_(std::move(graded)), involutive_(std::move(involutive)) {}

  const std::vector<std::string>& graded() const { return graded_; }
  const std::vector<std::string>& involutive() const { return involutive_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t width() const { return graded_.size() + involutive_.size(); }

  void add_term(SignedExponents e, const BigRational& c) {
    if (c == 0) return;
    for (std::size_t i = graded_.size(); i < e.size(); ++i) e[i] &= 1;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly p, const LaurentPoly& q) { return p += q; }
  friend LaurentPoly operator-(LaurentPoly p, const LaurentPoly& q) {
    p.check(q);
    for (const auto& [e, c] : q.terms_) p.add_term(e, -c);
    return p;
  }
  friend LaurentPoly operator*(const LaurentPoly& p, const LaurentPoly& q) {
    p.check(q);
    LaurentPoly out(p.graded_, p.involutive_);
    SignedExponents e(p.width());
    for (const auto& [ep, cp] : p.terms_)
      for (const auto& [eq, cq] : q.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ep[i] + eq[i];
        out.add_term(e, cp * cq);
      }
    return out;
  }
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  /// Common total degree in the graded variables, or nullopt if the terms
  /// disagree. Zero is homogeneous of degree 0.
  std::optional<int> homogeneous_degree() const {
    std::optional<int> deg;
    for (const auto& [e, c] : terms_) {
      int d = 0;
      for (std::size_t i = 0; i < graded_.size(); ++i) d += e[i];
      if (deg && *deg != d) return std::nullopt;
      deg = d;
    }
    return deg.value_or(0);
  }

 private:
  void check(const LaurentPoly& o) const {
    if (graded_ != o.graded_ || involutive_ != o.involutive_)
      throw std::invalid_argument("Laurent polynomials over different variables");
  }

  std::vector<std::string> graded_;
  std::vector<std::string> involutive_;
  TermMap terms_;
};

inline std::string to_string(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    bool neg = c < 0;
    BigRational mag = neg ? BigRational(-c) : c;
    out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += i < p.graded().size() ? p.graded()[i] : p.involutive()[i - p.graded().size()];
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    std::string coeff = detail::coeff_str(mag);
    if (mono.empty())
      out += coeff;
    else if (mag == 1)
      out += mono;
    else
      out += coeff + "*" + mono;
  }
  return out;
}

/// Rewrites f in α = b + a, β = b - a, i.e. a = (α - β)/2, b = (α + β)/2.
/// δ becomes αβ, so δ^k in the denominator turns into the exponent shift
/// (-k, -k). ν must already be specialized; only a and b may occur among
/// the ordinary variables.
inline LaurentPoly to_alpha_beta(const Fraction& f) {
  const auto& vars = f.vars();
  const std::size_t ia = vars->require("a");
  const std::size_t ib = vars->require("b");
  std::vector<std::size_t> kept;
  std::vector<std::string> invol_names;
  for (std::size_t i = vars->ordinary_count(); i < vars->size(); ++i) {
    if (vars->name(i) == "nu") {
      if (f.numerator().degree_in(i) > 0) throw std::invalid_argument("nu must be specialized before the alpha/beta map");
      continue;
    }
    kept.push_back(i);
    invol_names.push_back(vars->name(i));
  }
  for (std::size_t i = 0; i < vars->ordinary_count(); ++i)
    if (i != ia && i != ib && f.numerator().degree_in(i) > 0)
      throw std::invalid_argument("alpha/beta map needs a polynomial in a and b only; found " + vars->name(i));

  // binomial rows on demand
  std::vector<std::vector<BigInt>> binom{{1}};
  auto row = [&](std::uint32_t n) -> const std::vector<BigInt>& {
    while (binom.size() <= n) {
      const auto& prev = binom.back();
      std::vector<BigInt> next(prev.size() + 1, 0);
      next[0] = next.back() = 1;
      for (std::size_t k = 1; k < prev.size(); ++k) next[k] = prev[k - 1] + prev[k];
      binom.push_back(std::move(next));
    }
    return binom[n];
  };

  const int shift = -static_cast<int>(f.delta_power());
  LaurentPoly out({"alpha", "beta"}, invol_names);
  for (const auto& [e, c] : f.numerator().terms()) {
    const std::uint32_t i = e[ia], j = e[ib];
    BigRational scale(c, BigInt(1) << (i + j));
    row(std::max(i, j));  // grow first so the references below stay valid
    const auto& ri = row(i);
    const auto& rj = row(j);
    // (α - β)^i (α + β)^j
    for (std::uint32_t k = 0; k <= i; ++k) {
      BigInt ck = (k % 2 ? -ri[k] : ri[k]);
      for (std::uint32_t l = 0; l <= j; ++l) {
        LaurentPoly::SignedExponents se(out.width(), 0);
        se[0] = static_cast<std::int32_t>((i - k) + (j - l)) + shift;
        se[1] = static_cast<std::int32_t>(k + l) + shift;
        for (std::size_t m = 0; m < kept.size(); ++m) se[2 + m] = static_cast<std::int32_t>(e[kept[m]]);
        out.add_term(std::move(se), scale * BigRational(ck * rj[l]));
      }
    }
  }
  return out;
}

/// Sets β = 1 in a degree-0 homogeneous Laurent polynomial in (α, β), giving
/// a Laurent polynomial in λ = α/β. Throws std::domain_error otherwise.
inline LaurentPoly dehomogenize(const LaurentPoly& p) {
  if (p.graded().size() != 2) throw std::invalid_argument("dehomogenize expects two graded variables");
  auto deg = p.homogeneous_degree();
  if (!deg) throw std::domain_error("not homogeneous");
  if (*deg != 0) throw std::domain_error("homogeneous of degree " + std::to_string(*deg) + ", expected 0");
  LaurentPoly out({"lambda"}, p.involutive());
  for (const auto& [e, c] : p.terms()) {
    LaurentPoly::SignedExponents se;
    se.push_back(e[0]);
    se.insert(se.end(), e.begin() + 2, e.end());
    out.add_term(std::move(se), c);
  }
  return out;
}

}  // namespace wskein
