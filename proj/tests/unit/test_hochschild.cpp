#include "catch_amalgamated.hpp"

#include "hkm/core/koszul.hpp"
#include "hkm/homological/hochschild.hpp"

#include <map>

using namespace hkm;

namespace {

// ungraded bar differential written out by hand, arity 2 and 3
std::map<std::vector<std::size_t>, Scalar> bar_oracle(const FiniteAlgebra& A, const std::vector<std::size_t>& t) {
  std::map<std::vector<std::size_t>, Scalar> out;
  auto add = [&](std::vector<std::size_t> u, const Scalar& c) {
    out[u] += c;
    if (out[u].is_zero()) out.erase(u);
  };
  if (t.size() == 2) {
    for (const auto& [k, c] : A.mul(t[0], t[1])) add({k}, c);
    for (const auto& [k, c] : A.mul(t[1], t[0])) add({k}, -c);
  } else if (t.size() == 3) {
    for (const auto& [k, c] : A.mul(t[0], t[1])) add({k, t[2]}, c);
    for (const auto& [k, c] : A.mul(t[1], t[2])) add({t[0], k}, -c);
    for (const auto& [k, c] : A.mul(t[2], t[0])) add({k, t[1]}, c);
  }
  return out;
}

std::map<std::vector<std::size_t>, Scalar> cyclic_class(const FiniteAlgebra& A,
                                                        const std::map<std::vector<std::size_t>, Scalar>& v) {
  std::map<std::vector<std::size_t>, Scalar> out;
  for (const auto& [t, c] : v) {
    auto [rep, s] = cyclic_representative(A, t);
    if (s == 0) continue;
    out[rep] += Scalar(s) * c;
    if (out[rep].is_zero()) out.erase(rep);
  }
  return out;
}

std::map<std::vector<std::size_t>, Scalar> b_of(const FiniteAlgebra& A, const std::vector<std::size_t>& t) {
  std::map<std::vector<std::size_t>, Scalar> out;
  bool ovf = false;
  hochschild_b(A, t, ovf, [&](const std::vector<std::size_t>& u, const Scalar& c) { out[u] += c; });
  return out;
}

}  // namespace

TEST_CASE("b matches the hand-written bar differential on C[x]/(x^3)") {
  auto A = FiniteAlgebra::truncated_polynomial(3);
  auto w = hochschild_window(A, 3);
  const auto& D = w.complex.differential();
  std::map<std::vector<std::size_t>, std::size_t> idx;
  for (std::size_t i = 0; i < w.tuples.size(); ++i) idx[w.tuples[i]] = i;
  std::size_t checked = 0;
  for (std::size_t c = 0; c < w.tuples.size(); ++c) {
    const auto& t = w.tuples[c];
    if (t.size() < 2) continue;
    std::map<std::vector<std::size_t>, Scalar> got;
    for (const auto& [r, x] : D.column(c)) got[w.tuples[r]] = x;
    CHECK(got == bar_oracle(A, t));
    ++checked;
  }
  CHECK(checked == 9 + 27);
}

TEST_CASE("Hochschild and cyclic homology windows") {
  SECTION("ground field") {
    auto k = FiniteAlgebra::ground_field();
    auto hh = cohomology_window(hochschild_window(k, 3).complex);
    CHECK(hh.dim(0) == 1);
    CHECK(hh.dim(-1) == 0);
    auto hc = cohomology_window(cyclic_quotient(k, 3).complex);
    CHECK(hc.dim(0) == 1);
    CHECK(hc.dim(-1) == 0);
    CHECK(hc.dim(-2) == 1);
    // reduced complex of the ground field is empty
    CHECK(hochschild_window(k, 3, {true, true}).tuples.empty());
  }
  SECTION("C[x]/(x^3)") {
    auto A = FiniteAlgebra::truncated_polynomial(3);
    auto hh = cohomology_window(hochschild_window(A, 4).complex);
    CHECK(hh.dim(0) == 3);
    CHECK(hh.dim(-1) == 2);
    auto hn = cohomology_window(hochschild_window(A, 4, {true, false}).complex);
    CHECK(hn.dim(0) == 3);
    CHECK(hn.dim(-1) == 2);
    auto hc = cohomology_window(cyclic_quotient(A, 4).complex);
    CHECK(hc.dim(0) == 3);
    CHECK(hc.dim(-1) == 0);
  }
  SECTION("matrices are Morita trivial") {
    auto hh = cohomology_window(hochschild_window(FiniteAlgebra::matrices(2), 3).complex);
    CHECK(hh.dim(0) == 1);
    CHECK(hh.dim(-1) == 0);
  }
  SECTION("window overflow is flagged") {
    CHECK(hochschild_window(FiniteAlgebra::polynomial_window(2), 2).overflow);
    CHECK_FALSE(hochschild_window(FiniteAlgebra::truncated_polynomial(3), 2).overflow);
  }
  CHECK_THROWS(hochschild_window(FiniteAlgebra::ground_field(), 0));
}

TEST_CASE("d^2 = 0 with odd generators") {
  for (const auto& A : {FiniteAlgebra::exterior1(), FiniteAlgebra::truncated_with_odd(2)}) {
    CHECK(A.check_associative());
    CHECK(hochschild_window(A, 4).complex.squares_to_zero());
    CHECK(cyclic_quotient(A, 4).complex.squares_to_zero());
  }
}

TEST_CASE("rotation of a 2-tuple is the Koszul-signed transpose") {
  for (const auto& A : {FiniteAlgebra::exterior1(), FiniteAlgebra::truncated_with_odd(2)})
    for (std::size_t i = 0; i < A.dim(); ++i)
      for (std::size_t j = 0; j < A.dim(); ++j)
        CHECK(rotation_sign(A, {i, j}) == koszul_sign({1, 0}, {A.degree(i) + 1, A.degree(j) + 1}));
}

TEST_CASE("cyclic quotient is well defined: b preserves the rotation relation") {
  for (const auto& A : {FiniteAlgebra::truncated_polynomial(3), FiniteAlgebra::exterior1(),
                        FiniteAlgebra::truncated_with_odd(2), FiniteAlgebra::matrices(2)}) {
    for (int a = 1; a <= 3; ++a)
      detail::for_each_tuple(A.dim(), a, [&](const std::vector<std::size_t>& t) {
        // [t] = rotation_sign(t) [rot t], so b must respect the same relation
        std::vector<std::size_t> r{t.back()};
        r.insert(r.end(), t.begin(), t.end() - 1);
        auto lhs = cyclic_class(A, b_of(A, t));
        auto rhs = cyclic_class(A, b_of(A, r));
        for (auto& [k, c] : rhs) c *= Scalar(rotation_sign(A, t));
        CHECK(lhs == rhs);
      });
  }
}
