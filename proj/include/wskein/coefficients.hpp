#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

#include "wskein/fraction.hpp"

namespace wskein {

/// The three smoothings of a classical crossing.
///  V: virtualize (strands pass through as a virtual crossing)
///  I: parallel, over_in -> under_out and under_in -> over_out
///  C: cup-cap, over_in with under_in, over_out with under_out
enum class Smoothing : std::uint8_t { V = 0, I = 1, C = 2 };

enum class Mode { Generic, Welded, Extended };

/// Skein coefficients for both crossing signs plus the loop, virtual-kink
/// and wen factors.
struct CoefficientSystem {
  Mode mode = Mode::Extended;
  std::optional<int> nu;  // Welded: +1, -1 or symbolic (nullopt); Extended: 1
  std::array<Fraction, 3> positive;  // indexed by Smoothing
  std::array<Fraction, 3> negative;
  Fraction t, r, s;

  /// Free symbols: positive (a, b, c), negative (x, y, z), loop t.
  static CoefficientSystem generic() {
    CoefficientSystem cs;
    cs.mode = Mode::Generic;
    cs.positive = {F("a"), F("b"), F("c")};
    cs.negative = {F("x"), F("y"), F("z")};
    cs.t = F("t");
    cs.r = F("r");
    cs.s = F("s");
    return cs;
  }

  /// positive (a, b, νb), negative (-a, b, νb)/δ, t = -2ν.
  static CoefficientSystem welded(std::optional<int> nu) {
    if (nu && *nu != 1 && *nu != -1) throw std::invalid_argument("nu must be +1 or -1");
    CoefficientSystem cs;
    cs.mode = Mode::Welded;
    cs.nu = nu;
    Fraction n = nu ? Fraction::integer(*nu) : F("nu");
    Fraction b = F("b");
    Fraction inv = Fraction::inverse_delta(1);
    cs.positive = {F("a"), b, n * b};
    cs.negative = {F("-a") * inv, b * inv, n * b * inv};
    cs.t = Fraction::integer(-2) * n;
    cs.r = F("r");
    cs.s = F("s");
    return cs;
  }

  /// The welded family at ν = 1; the only one compatible with wens.
  static CoefficientSystem extended() {
    CoefficientSystem cs = welded(1);
    cs.mode = Mode::Extended;
    return cs;
  }

  const Fraction& coefficient(bool positive_sign, Smoothing sm) const {
    return (positive_sign ? positive : negative)[static_cast<int>(sm)];
  }

  bool solved() const { return mode != Mode::Generic; }

  /// ω = ar - νb, the factor a positive kink contributes.
  Fraction omega() const {
    require_solved();
    return F("a") * r - nu_value() * F("b");
  }

  /// ω^{-1} = (-ra - νb)/δ.
  Fraction omega_inverse() const {
    require_solved();
    return (F("-a") * r - nu_value() * F("b")) * Fraction::inverse_delta(1);
  }

  Fraction nu_value() const { return nu ? Fraction::integer(*nu) : F("nu"); }

  /// Wens are evaluated only where T4 holds, i.e. ν = 1.
  bool supports_wens() const { return mode == Mode::Generic || (nu && *nu == 1); }

  std::string describe() const {
    switch (mode) {
      case Mode::Generic:
        return "generic";
      case Mode::Extended:
        return "extended (nu = 1)";
      case Mode::Welded:
      default:
        return nu ? "welded (nu = " + std::to_string(*nu) + ")" : "welded (nu symbolic)";
    }
  }

 private:
  static Fraction F(std::string_view s) { return parse_fraction(s); }
  void require_solved() const {
    if (!solved()) throw std::logic_error("omega is defined only for a solved coefficient family");
  }
};

}  // namespace wskein
