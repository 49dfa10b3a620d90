#include "catch_amalgamated.hpp"

#include "hkm/current/loop.hpp"
#include "hkm/homological/cyclic.hpp"

using namespace hkm;

TEST_CASE("Theta_d is a cyclic cocycle") {
  for (int d : {1, 2}) {
    auto r = check_cyclic_cocycle(theta_infinity(d), 40, 3);
    INFO("d = " << d << ": " << r.failure);
    CHECK(r.passed);
    CHECK(r.tuples >= 80);
    CHECK(r.nonzero_values > 0);
  }
}

TEST_CASE("the zero cochain passes") {
  auto r = check_cyclic_cocycle(CyclicCochain::zero(1, 2), 10, 1);
  CHECK(r.passed);
  CHECK(r.nonzero_values == 0);
}

TEST_CASE("a symmetric pairing misses the cyclic sign") {
  // Theta'(a, b) = Res(a b z^{-1} dz) is symmetric, the rotation wants a sign
  auto res = std::make_shared<const ResidueOracle>(1);
  const auto form = laurent_mode(-1) * ADElement::dz(1, 0);
  CyclicCochain sym(1, 2, [res, form](const std::vector<ADElement>& a) { return (*res)(a[0] * a[1] * form); });
  std::vector<ADElement> t{laurent_mode(-1), laurent_mode(1)};
  const Scalar v = sym(t);
  REQUIRE_FALSE(v.is_zero());
  CHECK(sym({t[1], t[0]}) == v);
  CHECK(cyclic_defect(sym, t) == Scalar(-2) * v);
  CHECK_FALSE(check_cyclic_cocycle(sym, 20, 5).passed);
}

TEST_CASE("Theta_1 on Laurent modes") {
  auto th = theta_infinity(1);
  ResidueOracle res(1);
  const Scalar unit = res(laurent_mode(-1) * ADElement::dz(1, 0));
  REQUIRE_FALSE(unit.is_zero());
  // Res(z^m d z^n) = n delta_{m+n,0} Res(z^{-1} dz)
  for (int m = -2; m <= 2; ++m)
    for (int n = -2; n <= 2; ++n)
      CHECK(th({laurent_mode(m), laurent_mode(n)}) == (m + n == 0 ? Scalar(n) * unit : Scalar()));
}
