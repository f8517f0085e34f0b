#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wskein {

/// Ordered set of symbols a polynomial ranges over.
///
/// Ordinary variables carry natural-number exponents. Involutive variables
/// satisfy v^2 = 1, so their exponent in any monomial is 0 or 1. The index
/// of a variable is its position in `ordinary` followed by `involutive`,
/// and that order drives the lexicographic monomial order.
class VariableSet {
 public:
  static constexpr std::array<std::string_view, 7> kOrdinaryNames = {"a", "b", "c", "x", "y", "z", "t"};
  static constexpr std::array<std::string_view, 3> kInvolutiveNames = {"r", "nu", "s"};

  VariableSet(std::vector<std::string> ordinary, std::vector<std::string> involutive)
      : ordinary_(std::move(ordinary)), involutive_(std::move(involutive)) {
    std::vector<std::string> seen;
    for (const auto& n : ordinary_) {
      if (std::find(kOrdinaryNames.begin(), kOrdinaryNames.end(), n) == kOrdinaryNames.end())
        throw std::invalid_argument("not an ordinary symbol: " + n);
      seen.push_back(n);
    }
    for (const auto& n : involutive_) {
      if (std::find(kInvolutiveNames.begin(), kInvolutiveNames.end(), n) == kInvolutiveNames.end())
        throw std::invalid_argument("not an involutive symbol: " + n);
      seen.push_back(n);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
      throw std::invalid_argument("duplicate variable name");
  }

  /// All ten symbols: a b c x y z t | r nu s.
  static const std::shared_ptr<const VariableSet>& standard() {
    static const auto vs = std::make_shared<const VariableSet>(
        std::vector<std::string>{"a", "b", "c", "x", "y", "z", "t"}, std::vector<std::string>{"r", "nu", "s"});
    return vs;
  }

  std::size_t size() const { return ordinary_.size() + involutive_.size(); }
  std::size_t ordinary_count() const { return ordinary_.size(); }
  bool is_involutive(std::size_t i) const { return i >= ordinary_.size(); }

  const std::string& name(std::size_t i) const {
    return i < ordinary_.size() ? ordinary_[i] : involutive_[i - ordinary_.size()];
  }

  std::optional<std::size_t> index_of(std::string_view n) const {
    for (std::size_t i = 0; i < size(); ++i)
      if (name(i) == n) return i;
    return std::nullopt;
  }

  std::size_t require(std::string_view n) const {
    auto i = index_of(n);
    if (!i) throw std::invalid_argument("variable not in set: " + std::string(n));
    return *i;
  }

  const std::vector<std::string>& ordinary() const { return ordinary_; }
  const std::vector<std::string>& involutive() const { return involutive_; }

  friend bool operator==(const VariableSet&, const VariableSet&) = default;

 private:
  std::vector<std::string> ordinary_;
  std::vector<std::string> involutive_;
};

using VariableSetPtr = std::shared_ptr<const VariableSet>;

inline bool same_variables(const VariableSetPtr& p, const VariableSetPtr& q) {
  return p == q || *p == *q;
}

struct VariableMismatch : std::invalid_argument {
  VariableMismatch() : std::invalid_argument("operands use different variable sets") {}
};

}  // namespace wskein
