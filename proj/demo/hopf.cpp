// Evaluate the positive Hopf link in each coefficient family.

#include <iostream>

#include "wskein/wskein.hpp"

using namespace wskein;

int main() {
  const Diagram hopf = parse_diagram(
      "# positive Hopf link\n"
      "X+ 1 2 3 4\n"
      "X+ 4 3 2 1\n");

  std::cout << "writhe " << writhe(hopf) << ", components " << components(hopf) << "\n";

  const auto ext = CoefficientSystem::extended();
  std::cout << ext.describe() << ": " << to_string(y_invariant(hopf, ext)) << "\n";
  std::cout << "  alpha/beta: " << to_string(to_alpha_beta(y_invariant(hopf, ext))) << "\n";

  for (std::optional<int> nu : {std::optional<int>(-1), std::optional<int>()}) {
    const auto cs = CoefficientSystem::welded(nu);
    std::cout << cs.describe() << ": " << to_string(y_invariant(hopf, cs)) << "\n";
  }

  // the unnormalized bracket, for comparison
  std::cout << "bracket (nu symbolic): " << to_string(bracket(hopf, CoefficientSystem::welded(std::nullopt))) << "\n";
}
