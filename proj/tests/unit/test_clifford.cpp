#include "catch_amalgamated.hpp"

#include "hkm/current/clifford.hpp"

using namespace hkm;

TEST_CASE("Clifford relations") {
  auto A = clifford_algebra(2);
  auto v1 = CanonicalAlgebra::gen(0), w1 = CanonicalAlgebra::gen(2), w2 = CanonicalAlgebra::gen(3);
  auto ac = A.supercommutator(v1, w1);
  CHECK(ac == CanonicalAlgebra::unit());
  CHECK(A.supercommutator(v1, w2).empty());
  CHECK(A.mul(v1, v1).empty());
  CHECK(clifford_basis(2).size() == 16);
}

TEST_CASE("HH_0 of Clifford algebras is one-dimensional") {
  for (int n = 1; n <= 3; ++n) {
    auto h = clifford_hh0(n);
    CHECK(h.algebra_dim == (1u << (2 * n)));
    CHECK(h.dim == 1);
    REQUIRE(h.berezin_of_representatives.size() == 1);
    CHECK(h.berezin_of_representatives[0] == Scalar(1));
    CHECK(h.berezin_kills_commutators);
  }
  CHECK(clifford_hh0(0).dim == 1);
  CHECK_THROWS(clifford_hh0(4));
}

TEST_CASE("Berezin functional") {
  CHECK(berezin(CanonicalAlgebra::unit(), 1).is_zero());
  CHECK(berezin(CanonicalAlgebra::element{{{0, 1}, Scalar(1)}}, 1) == Scalar(1));
  // v* v = 1 - v v* has Berezin -1
  auto A = clifford_algebra(1);
  CHECK(berezin(A.mul(CanonicalAlgebra::gen(1), CanonicalAlgebra::gen(0)), 1) == Scalar(-1));
}
