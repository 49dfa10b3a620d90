#include "catch_amalgamated.hpp"

#include "hkm/homological/hpl.hpp"

using namespace hkm;

namespace {

ChainComplexWindow complex_from(const std::vector<std::pair<std::string, int>>& basis, const QMatrix& d) {
  ChainComplexWindow c;
  for (const auto& [n, g] : basis) c.space.add(n, g);
  c.d = KPoly{{d}};
  c.closed_below = c.closed_above = true;
  return c;
}

bool same_homology(const PerturbationResult& r, const Scalar& k) {
  auto hs = cohomology_window(r.small_complex(), k);
  auto hb = cohomology_window(r.big_complex(), k);
  for (int g = -2; g <= 6; ++g)
    if (hs.dim(g) != hb.dim(g)) return false;
  return true;
}

// x (0), y (1) homology; e (0) -> f (1) acyclic
Retraction toy() {
  QMatrix d(4, 4), eta(4, 4), iota(4, 2), pi(2, 4);
  d.set(3, 2, Scalar(1));
  eta.set(2, 3, Scalar(-1));
  iota.set(0, 0, Scalar(1));
  iota.set(1, 1, Scalar(1));
  pi.set(0, 0, Scalar(1));
  pi.set(1, 1, Scalar(1));
  return Retraction(complex_from({{"x", 0}, {"y", 1}, {"e", 0}, {"f", 1}}, d),
                    complex_from({{"x", 0}, {"y", 1}}, QMatrix(2, 2)), iota, pi, eta);
}

}  // namespace

TEST_CASE("delta = 0 leaves the data unchanged") {
  auto r = toy();
  auto p = perturb_retraction(r, QMatrix(4, 4));
  CHECK(p.series_terms == 0);
  CHECK(p.iota.at(Scalar(5)) == r.iota);
  CHECK(p.pi.at(Scalar(5)) == r.pi);
  CHECK(p.eta.at(Scalar(5)) == r.eta);
  CHECK(p.small_d.at(Scalar(5)).is_zero_matrix());
  CHECK(p.check().all());
}

TEST_CASE("rank-one perturbations of a 4-dim toy complex") {
  auto r = toy();
  SECTION("x -> y kills the homology") {
    QMatrix delta(4, 4);
    delta.set(1, 0, Scalar(1));
    auto p = perturb_retraction(r, delta);
    CHECK(p.check().all());
    // small differential K x -> y
    CHECK(p.small_d.at(Scalar(2)).get(1, 0) == Scalar(2));
    auto h = cohomology_window(p.big_complex(), Scalar(1));
    CHECK(h.dim(0) == 0);
    CHECK(h.dim(1) == 0);
    CHECK(same_homology(p, Scalar(1)));
    CHECK(same_homology(p, Scalar(0)));
  }
  SECTION("x -> f is absorbed by the homotopy") {
    QMatrix delta(4, 4);
    delta.set(3, 0, Scalar(1));
    auto p = perturb_retraction(r, delta);
    CHECK(p.check().all());
    CHECK(p.small_d.at(Scalar(1)).is_zero_matrix());
    // iota' x = x - K e
    CHECK(p.iota.at(Scalar(3)).get(2, 0) == Scalar(-3));
    CHECK(cohomology_window(p.big_complex(), Scalar(1)).dim(0) == 1);
    CHECK(same_homology(p, Scalar(1)));
  }
  SECTION("a degree-0 perturbation is rejected") {
    QMatrix delta(4, 4);
    delta.set(2, 0, Scalar(1));
    CHECK_THROWS(perturb_retraction(r, delta));
  }
}

TEST_CASE("a perturbation breaking (d + K delta)^2 = 0 is rejected") {
  // u -> v acyclic, w homology; delta v = w gives delta d u != 0
  QMatrix d(3, 3), eta(3, 3), iota(3, 1), pi(1, 3), delta(3, 3);
  d.set(1, 0, Scalar(1));
  eta.set(0, 1, Scalar(-1));
  iota.set(2, 0, Scalar(1));
  pi.set(0, 2, Scalar(1));
  delta.set(2, 1, Scalar(1));
  Retraction r(complex_from({{"u", 0}, {"v", 1}, {"w", 2}}, d), complex_from({{"w", 2}}, QMatrix(1, 1)), iota, pi, eta);
  CHECK_THROWS_WITH(perturb_retraction(r, delta), Catch::Matchers::ContainsSubstring("^2"));
}

TEST_CASE("side conditions are imposed at construction") {
  QMatrix d(4, 4), eta(4, 4), iota(4, 2), pi(2, 4);
  d.set(3, 2, Scalar(1));
  eta.set(2, 3, Scalar(-1));
  // spoil with iota s pi, s: y -> x
  eta.set(0, 1, Scalar(7));
  iota.set(0, 0, Scalar(1));
  iota.set(1, 1, Scalar(1));
  pi.set(0, 0, Scalar(1));
  pi.set(1, 1, Scalar(1));
  Retraction r(complex_from({{"x", 0}, {"y", 1}, {"e", 0}, {"f", 1}}, d),
               complex_from({{"x", 0}, {"y", 1}}, QMatrix(2, 2)), iota, pi, eta);
  CHECK(r.side_conditions_enforced);
  CHECK(r.satisfies_side_conditions());
  CHECK(r.eta.get(0, 1).is_zero());
  CHECK_FALSE(toy().side_conditions_enforced);

  QMatrix bad = r.eta;
  bad.set(2, 3, Scalar(1));
  CHECK_THROWS(Retraction(r.big, r.small, r.iota, r.pi, bad));
}

TEST_CASE("random retractions: identities and homology") {
  std::size_t second_order = 0, enforced = 0;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto rr = random_retraction(seed);
    auto p = perturb_retraction(rr.retraction, rr.delta);
    auto id = p.check();
    INFO("seed " << seed << " (" << rr.kind << ")");
    CHECK(id.small_d_squared);
    CHECK(id.pi_iota);
    CHECK(id.homotopy);
    CHECK(id.iota_chain);
    CHECK(id.pi_chain);
    CHECK(id.eta_iota);
    CHECK(id.pi_eta);
    CHECK(id.eta_eta);
    for (int k : {0, 1, 2}) CHECK(same_homology(p, Scalar(k)));
    if (p.series_terms >= 2) ++second_order;
    if (p.side_conditions_enforced) ++enforced;
  }
  CHECK(second_order > 0);
  CHECK(enforced > 0);
}
