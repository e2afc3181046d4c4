// Prints chi(Sq^n) and the relation families for small n.

#include <cstdlib>
#include <iostream>

#include "secform/steenrod.hpp"

int main(int argc, char** argv) {
  using namespace secform::steenrod;
  const int top = argc > 1 ? std::atoi(argv[1]) : 12;

  std::cout << "antipode\n";
  for (int n = 1; n <= top; ++n) std::cout << "  chi(Sq" << n << ") = " << to_string(chi(Element::sq(n))) << "\n";

  std::cout << "relation families\n";
  for (int n = 1; n <= top; ++n) {
    if (n % 4 == 3) continue;
    const auto psi = psi_relation(n);
    std::cout << "  n=" << n << "  phi: " << to_string(phi_relation(n)) << "  psi raw: " << to_string(psi.raw)
              << "  psi reduced: " << to_string(psi.reduced) << "\n";
  }
}
