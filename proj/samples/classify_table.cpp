// Class counts for a handful of small groups across the four residues of n.

#include <iomanip>
#include <iostream>

#include "secform/classify.hpp"
#include "secform/homotopy.hpp"

int main() {
  using namespace secform;
  const char* groups[] = {"0", "Z2", "Z", "Z4", "Z2^2", "Z + Z2", "Z4 + Z2", "Z8 + Z2"};

  std::cout << std::left << std::setw(10) << "group" << std::setw(28) << "pi_{2n}^s K(H, n-1), n=10";
  for (int n : {8, 9, 10, 11}) std::cout << "n=" << std::setw(4) << n;
  std::cout << "\n";

  for (const char* text : groups) {
    const AbelianGroup h = parse_group(text);
    std::cout << std::setw(10) << render(h) << std::setw(28) << render(homotopy::stable_homotopy_em(10, h));
    for (int n : {8, 9, 10, 11}) std::cout << std::setw(6) << classify::enumerate_classes(h, n, 0).count();
    std::cout << "\n";
  }
}
