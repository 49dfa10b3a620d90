#include "catch_amalgamated.hpp"

#include "hkm/homological/ce.hpp"
#include "hkm/homological/hopf.hpp"

using namespace hkm;

TEST_CASE("CE chains of an abelian algebra have zero differential") {
  auto L = linf_from_lie(abelian(2));
  auto cx = ce_complex(L, 2);
  CHECK(cx.differential().is_zero_matrix());
  auto h = cohomology_window(cx);
  // Lambda(x, y): 1, 2, 1 in chain degrees 0, 1, 2
  CHECK(h.dim(0) == 1);
  CHECK(h.dim(-1) == 2);
  CHECK(h.dim(-2) == 1);
}

TEST_CASE("CE homology of sl2") {
  auto cx = ce_complex(linf_from_lie(sl2()), 3);
  CHECK(cx.squares_to_zero());
  auto h = cohomology_window(cx);
  CHECK(h.dim(0) == 1);
  // H_1 = sl2 / [sl2, sl2] = 0
  CHECK(h.dim(-1) == 0);
  CHECK(h.dim(-2) == 0);
  CHECK(h.dim(-3) == 1);
}

TEST_CASE("normalize sorts with Koszul signs") {
  CeComplex ce(linf_from_lie(sl2()), CeOptions{3, false});
  // generators of L[1] are odd: swapping two costs a sign, repeating kills
  auto [m, s] = ce.normalize({1, 0});
  CHECK(m == std::vector<std::size_t>{0, 1});
  CHECK(s == -1);
  CHECK(ce.normalize({2, 2}).second == 0);
  CHECK(ce.normalize({2, 0, 1}).second == 1);
}

TEST_CASE("K-twisted differentials square to zero") {
  SECTION("trace character of gl2 into a degree-1 K") {
    auto g = gl(2);
    GradedSpaceWindow b;
    for (std::size_t i = 0; i < g.dim(); ++i) b.add(g.name(i), 0);
    b.add("K", 1);
    LInfinityAlgebra L(b);
    L.set_central(4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i; j < 4; ++j) {
        std::map<std::size_t, Scalar> v;
        for (const auto& [k, c] : g.bracket_terms(i, j)) v[k] += c;
        if (!v.empty()) L.set_l2(i, j, make_sparse(v));
      }
    L.set_l1(0, {{4, Scalar(1)}});
    L.set_l1(3, {{4, Scalar(1)}});
    auto cx = ce_complex(L, 3);
    CHECK(cx.squares_to_zero());
    REQUIRE(cx.d.coeff.size() == 2);
    CHECK_FALSE(cx.d.coeff[1].is_zero_matrix());
  }
  SECTION("Heisenberg bracket into an odd K") {
    GradedSpaceWindow b;
    b.add("x", 0);
    b.add("y", 0);
    b.add("K", 0);
    LInfinityAlgebra L(b);
    L.set_central(2);
    L.set_l2(0, 1, {{2, Scalar(1)}});
    auto cx = ce_complex(L, 2);
    CHECK(cx.k_odd());
    CHECK(cx.squares_to_zero());
    // d(x y) = K
    REQUIRE(cx.d.coeff.size() == 2);
    CeComplex ce(L, CeOptions{2, false});
    auto col = cx.d.coeff[1].column(ce.index({0, 1}));
    REQUIRE(col.size() == 1);
    CHECK(col[0].first == ce.index({}));
  }
  SECTION("a bracket that breaks Jacobi is rejected") {
    GradedSpaceWindow b;
    b.add("a", 0);
    b.add("b", 0);
    b.add("c", 0);
    LInfinityAlgebra L(b);
    L.set_l2(0, 1, {{0, Scalar(1)}});
    L.set_l2(1, 2, {{0, Scalar(1)}});
    L.set_l2(0, 2, {{1, Scalar(1)}});
    CHECK_THROWS(ce_complex(L, 3));
  }
}

TEST_CASE("Hopf small model against coinvariants and CE with coefficients") {
  SECTION("abelian of dim 1: all ones") {
    auto r = hopf_small_model(abelian(1), 3);
    for (int s = 0; s <= 3; ++s) {
      CHECK(r.dims.at({0, s}) == 1);
      CHECK(r.dims.at({1, s}) == 1);
    }
    CHECK(r.consistent());
  }
  SECTION("abelian of dim 2") {
    auto r = hopf_small_model(abelian(2), 3);
    CHECK(r.degree_zero() == std::vector<std::size_t>{1, 2, 3, 4});
    CHECK(r.consistent());
  }
  SECTION("sl2: Casimir line") {
    auto r = hopf_small_model(sl2(), 4, killing_form(sl2()));
    CHECK(r.degree_zero() == std::vector<std::size_t>{1, 0, 1, 0, 1});
    CHECK(r.coinvariants == std::vector<std::size_t>{1, 0, 1, 0, 1});
    CHECK(r.twist_vanishes);
    CHECK(r.consistent());
  }
  SECTION("K twist with theta = 0 changes nothing") {
    auto r = hopf_small_model(gl(2), 3);
    CHECK(r.dims == r.twisted_dims);
    CHECK(r.consistent());
  }
  CHECK_THROWS(hopf_small_model(sl2(), -1));
}
