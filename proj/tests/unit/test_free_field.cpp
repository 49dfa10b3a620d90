#include "catch_amalgamated.hpp"

#include "hkm/current/free_field.hpp"
#include "hkm/current/invariant.hpp"

using namespace hkm;

namespace {

/// Double-contraction oracle: -m d_{m+n,0} Tr(rho(x) rho(y)) for bosons, + for fermions.
Scalar wick_oracle(const Representation& r, int m, int n, std::size_t x, std::size_t y, Statistics st) {
  if (m + n != 0) return Scalar();
  Scalar tr = trace(mat_mul(r.rho[x], r.rho[y]));
  Scalar s = st == Statistics::bosonic ? Scalar(-1) : Scalar(1);
  return s * Scalar(static_cast<long>(m)) * tr;
}

}  // namespace

TEST_CASE("mode algebra normal ordering") {
  FreeFieldModes F(1, 2);
  const auto& A = F.algebra();
  // c_1 b_-1 = b_-1 c_1 + 1
  auto p = A.mul(CanonicalAlgebra::gen(F.c(0, 1)), CanonicalAlgebra::gen(F.b(0, -1)));
  CHECK(p.size() == 2);
  CHECK(p.at({}) == Scalar(1));
  auto q = A.mul(CanonicalAlgebra::gen(F.b(0, -1)), CanonicalAlgebra::gen(F.c(0, 1)));
  CHECK(q.size() == 1);
  CHECK_THROWS_AS(F.b(0, 3), cutoff_exceeded);
}

TEST_CASE("central term matches the double contraction") {
  auto ab = abelian_weight({Scalar(3)});
  auto sl = fundamental_sl2();
  for (auto st : {Statistics::bosonic, Statistics::fermionic})
    for (int m = -3; m <= 3; ++m)
      for (int n = -3; n <= 3; ++n) {
        CHECK(free_field_level_d1(ab, m, n, 0, 0, 6, st) == wick_oracle(ab, m, n, 0, 0, st));
        for (std::size_t x = 0; x < 3; ++x)
          for (std::size_t y = 0; y < 3; ++y) {
            auto r = free_field_commutator(sl, m, n, x, y, 6, st);
            CHECK(r.central == wick_oracle(sl, m, n, x, y, st));
            CHECK(r.noncentral_matches);
          }
      }
}

TEST_CASE("zero modes carry no central term") {
  CHECK(free_field_level_d1(fundamental_sl2(), 0, 0, 2, 2, 4).is_zero());
  CHECK(free_field_level_d1(abelian_weight({Scalar(5)}), 0, 0, 0, 0, 4).is_zero());
}

TEST_CASE("fermionic level is the trace form") {
  auto sl = fundamental_sl2();
  CHECK(free_field_level_d1(sl, 1, -1, 0, 1, 6, Statistics::fermionic) == Scalar(1));
  CHECK(free_field_level_d1(abelian_weight({Scalar(2)}), 1, -1, 0, 0, 6, Statistics::fermionic) == Scalar(4));
  // the Weyl realization has the opposite sign
  CHECK(free_field_level_d1(sl, 1, -1, 0, 1, 6, Statistics::bosonic) == Scalar(-1));
}

TEST_CASE("cutoff guard") {
  CHECK_THROWS_AS(free_field_level_d1(fundamental_sl2(), 4, 0, 0, 1, 3), cutoff_exceeded);
}
