#include "catch_amalgamated.hpp"

#include "hkm/jouanolou/ad_element.hpp"
#include "hkm/jouanolou/residue.hpp"

#include <random>

using namespace hkm;

namespace {

/// Random single term z^a z*^b dz_S dz*_T / (zz*)^k.
ADElement random_term(std::mt19937_64& rng, int d) {
  std::uniform_int_distribution<int> e(0, 2), k(0, 3), c(-3, 3), mask(0, (1 << d) - 1);
  std::vector<int> a(d), b(d);
  for (int i = 0; i < d; ++i) {
    a[i] = e(rng);
    b[i] = e(rng);
  }
  int cc = 0;
  while (cc == 0) cc = c(rng);
  return ADElement::term(d, a, b, static_cast<std::uint8_t>(mask(rng)), static_cast<std::uint8_t>(mask(rng)), k(rng),
                         Scalar(cc));
}

ADElement random_sum(std::mt19937_64& rng, int d) {
  ADElement x(d);
  for (int i = 0; i < 3; ++i) x += random_term(rng, d);
  return x;
}

int q_of(const ADElement& a) { return a.bidegree().second; }
int p_of(const ADElement& a) { return a.bidegree().first; }

}  // namespace

TEST_CASE("dbar of the inverse radius") {
  // dbar (zz*)^{-1} = -sum z_i dz*_i / (zz*)^2
  for (int d = 1; d <= 3; ++d) {
    ADElement expect(d);
    for (int i = 0; i < d; ++i) expect -= ADElement::z(d, i) * ADElement::dzs(d, i) * ADElement::inv_zzs(d, 2);
    CHECK(ADElement::inv_zzs(d, 1).dbar() == expect);
    ADElement expect_del(d);
    for (int i = 0; i < d; ++i) expect_del -= ADElement::zs(d, i) * ADElement::dz(d, i) * ADElement::inv_zzs(d, 2);
    CHECK(ADElement::inv_zzs(d, 1).del() == expect_del);
  }
}

TEST_CASE("normalization cancels zz*") {
  for (int d = 1; d <= 4; ++d) {
    CHECK(ADElement::zzs(d) * ADElement::inv_zzs(d, 1) == ADElement::constant(d, Scalar(1)));
    CHECK((ADElement::zzs(d) * ADElement::inv_zzs(d, 3)).k() == 2);
  }
}

TEST_CASE("differentials square to zero and commute") {
  std::mt19937_64 rng(11);
  for (int d = 1; d <= 3; ++d)
    for (int t = 0; t < 40; ++t) {
      auto x = random_sum(rng, d);
      CHECK(x.dbar().dbar().is_zero());
      CHECK(x.del().del().is_zero());
      CHECK(x.dbar().del() == x.del().dbar());
    }
}

TEST_CASE("Leibniz rules and graded commutativity") {
  std::mt19937_64 rng(12);
  for (int d = 1; d <= 3; ++d)
    for (int t = 0; t < 40; ++t) {
      auto a = random_term(rng, d), b = random_term(rng, d);
      Scalar sq = (q_of(a) % 2) ? Scalar(-1) : Scalar(1);
      Scalar sp = (p_of(a) % 2) ? Scalar(-1) : Scalar(1);
      CHECK((a * b).dbar() == a.dbar() * b + sq * (a * b.dbar()));
      CHECK((a * b).del() == a.del() * b + sp * (a * b.del()));
      int e = p_of(a) * p_of(b) + q_of(a) * q_of(b);
      CHECK(a * b == ((e % 2) ? Scalar(-1) : Scalar(1)) * (b * a));
      auto c = random_term(rng, d);
      CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("text round trip") {
  std::mt19937_64 rng(13);
  for (int d = 1; d <= 3; ++d)
    for (int t = 0; t < 30; ++t) {
      auto x = random_sum(rng, d);
      CHECK(ADElement::parse(d, x.str()) == x);
    }
  CHECK(ADElement::parse(2, bm_kernel(2).str()) == bm_kernel(2));
  CHECK_THROWS(ADElement::parse(2, "(z3) / (zzs)^0"));
}

TEST_CASE("membership") {
  for (int d = 1; d <= 3; ++d) {
    CHECK(check_membership(bm_kernel(d), 0, d - 1));
    CHECK(bm_kernel(d).dbar().is_zero());
    CHECK(check_membership(ADElement::z(d, 0), 0, 0));
    CHECK(check_membership(top_holomorphic(d), d, 0));
  }
  // a bare dz* is not annihilated by the Euler contraction
  CHECK(!check_membership(ADElement::dzs(2, 0), 0, 1));
  // z* alone has the wrong homogeneity
  CHECK(!check_membership(ADElement::zs(2, 0), 0, 0));
  CHECK(check_membership(ADElement::zs(2, 0) * ADElement::inv_zzs(2, 1), 0, 0));
}
