// Wheel integral for shrinking eps, with the exact box value and the
// Richardson step.
//
//   wheel [d]

#include "hkm/anomaly/quadrature.hpp"

#include <cstdio>
#include <cstdlib>

using namespace hkm;

int main(int argc, char** argv) {
  const int d = argc > 1 ? std::atoi(argv[1]) : 2;
  QuadratureConfig cfg;
  cfg.d = d;
  cfg.tolerance = 1e-9;
  double fact = 1;
  for (int j = 2; j <= d + 1; ++j) fact *= j;
  std::printf("d = %d, 1/(d+1)! = %.12f\n", d, 1 / fact);
  std::printf("%-10s %-18s %-12s %-18s %-18s\n", "eps", "quadrature", "error", "exact", "extrapolated");
  for (long den : {10L, 100L, 1000L, 10000L}) {
    cfg.eps = rational(1, den);
    try {
      auto q = wheel_integral(cfg);
      auto ex = wheel_integral_extrapolated(cfg);
      std::printf("1/%-8ld %-18.12f %-12.3g %-18.12f %-18.12f\n", den, q.value, q.error,
                  wheel_integral_exact(d, cfg.eps, cfg.L).get_d(), ex.value);
    } catch (const quadrature_error& e) {
      std::printf("1/%-8ld %s\n", den, e.what());
    }
  }
}
