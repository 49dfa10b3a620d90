// Prints the d = 1 cocycle of sl2 with the Killing form on Laurent modes
// next to the affine cocycle m delta_{m+n,0} kappa(x, y).
//
//   affine_modes [max_mode]

#include "hkm/current/extension.hpp"
#include "hkm/current/invariant.hpp"
#include "hkm/current/loop.hpp"

#include <cstdlib>
#include <iostream>

using namespace hkm;

int main(int argc, char** argv) {
  const int top = argc > 1 ? std::atoi(argv[1]) : 3;
  auto g = sl2();
  auto kappa = killing_form(g);
  ResidueOracle res(1);
  auto mode = [](std::size_t i, int m) { return SphereElement::pure(1, 3, i, laurent_mode(m)); };
  std::cout << "x  m   y  n   cocycle   affine\n";
  for (std::size_t x = 0; x < g.dim(); ++x)
    for (std::size_t y = 0; y < g.dim(); ++y)
      for (int m = -top; m <= top; ++m) {
        const int n = -m;
        Scalar v = fhk_cocycle(kappa, {mode(x, m), mode(y, n)}, res);
        Scalar a = affine_cocycle(kappa, x, m, y, n);
        if (v.is_zero() && a.is_zero()) continue;
        std::cout << g.name(x) << "  " << m << "   " << g.name(y) << "  " << n << "   " << v.str() << "   " << a.str()
                  << "\n";
      }
}
