#include "catch_amalgamated.hpp"

#include "hkm/core/scalar.hpp"

#include <random>
#include <vector>

using hkm::rational;
using hkm::Scalar;

namespace {

Scalar random_scalar(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-4, 4), deg(0, 2), val(-2, 2);
  auto poly = [&] {
    Scalar p;
    for (int i = 0; i <= deg(rng); ++i) p += Scalar(c(rng)) * Scalar::tau(i);
    return p;
  };
  Scalar num = poly(), den = poly();
  if (den.is_zero()) den = Scalar(1);
  return Scalar::tau(val(rng)) * num / den;
}

}  // namespace

TEST_CASE("rational arithmetic stays rational") {
  Scalar a = Scalar::fraction(3, 4), b = Scalar::fraction(-5, 6);
  CHECK((a + b) == Scalar::fraction(-1, 12));
  CHECK((a * b) == Scalar::fraction(-5, 8));
  CHECK((a / b) == Scalar::fraction(-9, 10));
  CHECK((a + b).is_rational());
  CHECK(Scalar(6) / Scalar(4) == Scalar::fraction(3, 2));
}

TEST_CASE("tau monomials") {
  Scalar t = Scalar::tau();
  CHECK((t * Scalar::tau(-1)) == Scalar(1));
  CHECK(t.pow(3) == Scalar::tau(3));
  CHECK(t.pow(-2) == Scalar::tau(-2));
  CHECK((Scalar(2) * Scalar::tau(2)).is_monomial());
  CHECK((Scalar(2) * Scalar::tau(2)).tau_exponent() == 2);
  CHECK(!(Scalar(1) + t).is_monomial());
  CHECK((t - t).is_zero());
}

TEST_CASE("printing and parsing") {
  CHECK((Scalar::fraction(3, 2) * Scalar::tau(-2)).str() == "3/2*tau^-2");
  CHECK(Scalar().str() == "0");
  CHECK((Scalar(1) / (Scalar(1) + Scalar::tau())).str() == "(1)/(1+tau)");
  for (const char* s : {"0", "-7/3", "tau", "-tau^-3", "3/2*tau^-2+1", "(1)/(1+tau)", "(2*tau^2-1)/(1+tau)"}) {
    Scalar x = Scalar::parse(s);
    CHECK(Scalar::parse(x.str()) == x);
  }
  CHECK_THROWS(Scalar::parse("1/0"));
  CHECK_THROWS(Scalar::parse("tau^"));
}

TEST_CASE("field axioms on random rational functions") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    Scalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
    CHECK((a + b) * c == a * c + b * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a - a == Scalar());
    if (!a.is_zero()) CHECK(a / a == Scalar(1));
    CHECK(Scalar::parse(a.str()) == a);
  }
}

TEST_CASE("evaluation is a ring homomorphism") {
  // independent check: compare with arithmetic on the values at sample points
  std::mt19937_64 rng(17);
  const std::vector<rational> pts{rational(5, 3), rational(-2), rational(7, 11)};
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    Scalar a = random_scalar(rng), b = random_scalar(rng);
    for (const auto& t : pts) {
      try {
        rational va = a.at(t), vb = b.at(t);
        CHECK((a + b).at(t) == va + vb);
        CHECK((a * b).at(t) == va * vb);
        if (!hkm::is_zero(vb)) CHECK((a / b).at(t) == va / vb);
        ++checked;
      } catch (const std::domain_error&) {
      }
    }
  }
  CHECK(checked > 400);
}
