#pragma once

#include "hkm/anomaly/quadrature.hpp"
#include "hkm/current/invariant.hpp"
#include "hkm/current/lie.hpp"

#include <stdexcept>

namespace hkm {

/// Theta_V = prefactor * j(ch): the character polynomial and the tau power in front.
struct AnomalyCoefficient {
  InvariantPolynomial ch;
  Scalar prefactor;
  /// 1/(d+1)!, already inside ch; certified numerically by wheel_integral
  rational analytic_factor;
};

inline AnomalyCoefficient anomaly_coefficient(const Representation& rho, int d) {
  if (d < 1) throw std::invalid_argument("anomaly_coefficient: d >= 1");
  rational f = 1;
  for (int j = 2; j <= d + 1; ++j) f *= j;
  return AnomalyCoefficient{chern_character(rho, d), Scalar::tau(-d), rational(1) / f};
}

}  // namespace hkm
