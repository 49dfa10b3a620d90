#pragma once

#include "hkm/core/koszul.hpp"
#include "hkm/current/extension.hpp"
#include "hkm/current/invariant.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace hkm {

/// Laurent polynomial in z_1..z_d: exponent vector -> coefficient.
using Laurent = std::map<std::vector<int>, Scalar>;

inline Laurent laurent_monomial(const std::vector<int>& e, const Scalar& c = Scalar(1)) { return Laurent{{e, c}}; }

inline Laurent laurent_mul(const Laurent& a, const Laurent& b) {
  Laurent out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      auto e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      auto& t = out[e];
      t += ca * cb;
      if (t.is_zero()) out.erase(e);
    }
  return out;
}

inline Laurent laurent_partial(const Laurent& a, std::size_t i) {
  Laurent out;
  for (const auto& [e, c] : a) {
    if (e[i] == 0) continue;
    auto f = e;
    --f[i];
    out[f] += Scalar(static_cast<long>(e[i])) * c;
  }
  return out;
}

/// Elements of C[z^{+-1}] (x) g: Lie basis index -> Laurent coefficient.
using LoopElement = std::map<std::size_t, Laurent>;

/**
 * theta(x_0..x_d) times the coefficient of (z_1...z_d)^{-1} dz_1...dz_d in
 * f_0 df_1 ... df_d, times tau^d.
 */
inline Scalar iterated_loop_cocycle(const InvariantPolynomial& theta, const std::vector<LoopElement>& xs) {
  const int d = theta.degree() - 1;
  if (static_cast<int>(xs.size()) != d + 1) throw std::invalid_argument("iterated_loop_cocycle: arity");
  std::vector<int> target(static_cast<std::size_t>(d), -1);
  Scalar total;
  theta.for_each_ordered([&](const std::vector<std::size_t>& idx, const Scalar& c) {
    std::vector<const Laurent*> f;
    for (int j = 0; j <= d; ++j) {
      auto it = xs[static_cast<std::size_t>(j)].find(idx[static_cast<std::size_t>(j)]);
      if (it == xs[static_cast<std::size_t>(j)].end()) return;
      f.push_back(&it->second);
    }
    // df_1 ^ ... ^ df_d = det(d_i f_j) dz_1 ... dz_d
    Laurent det;
    for_each_permutation(d, [&](const std::vector<int>& p) {
      Laurent t = laurent_monomial(std::vector<int>(static_cast<std::size_t>(d), 0),
                                   Scalar(permutation_sign(p)));
      for (int j = 0; j < d && !t.empty(); ++j) t = laurent_mul(t, laurent_partial(*f[static_cast<std::size_t>(j + 1)], static_cast<std::size_t>(p[j])));
      for (const auto& [e, x] : t) {
        auto& s = det[e];
        s += x;
        if (s.is_zero()) det.erase(e);
      }
    });
    auto prod = laurent_mul(*f[0], det);
    auto it = prod.find(target);
    if (it != prod.end()) total += c * it->second;
  });
  return total * Scalar::tau(d);
}

/// z^m in A_1: z^m for m >= 0, (z*)^{-m} / (zz*)^{-m} otherwise.
inline ADElement laurent_mode(int m) {
  return m >= 0 ? ADElement::term(1, {m}, {0}, 0, 0, 0) : ADElement::term(1, {0}, {-m}, 0, 0, -m);
}

/// Laurent polynomial in one variable as an element of A_1.
inline ADElement laurent_to_a1(const Laurent& f) {
  ADElement out(1);
  for (const auto& [e, c] : f) {
    if (e.size() != 1) throw std::invalid_argument("laurent_to_a1: one variable expected");
    out += c * laurent_mode(e[0]);
  }
  return out;
}

/// The same element viewed in the sphere algebra of g at d = 1.
inline SphereElement loop_to_sphere(const LoopElement& x, std::size_t dim_g) {
  SphereElement s(1, dim_g);
  for (const auto& [i, f] : x) s.comps.at(i) += laurent_to_a1(f);
  return s;
}

/// m d_{m+n,0} kappa(x, y): the affine 2-cocycle on modes.
inline Scalar affine_cocycle(const InvariantPolynomial& kappa, std::size_t x, int m, std::size_t y, int n) {
  if (m + n != 0) return Scalar();
  return Scalar(static_cast<long>(m)) * kappa.at({x, y});
}

}  // namespace hkm
