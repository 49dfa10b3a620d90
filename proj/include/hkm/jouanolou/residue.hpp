#pragma once

#include "hkm/core/linalg.hpp"
#include "hkm/jouanolou/ad_element.hpp"
#include "hkm/jouanolou/window.hpp"

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace hkm {

inline Scalar factorial(int n) {
  rational f(1);
  for (int i = 2; i <= n; ++i) f *= i;
  return Scalar(f);
}

inline std::uint8_t full_mask(int d) { return static_cast<std::uint8_t>((1u << d) - 1u); }

/// (d-1)! tau^{-d} (zz*)^{-d} sum_i (-1)^{i-1} z*_i dz*_1 ... (omit i) ... dz*_d
inline ADElement bm_kernel(int d) {
  ADElement::term_map t;
  for (int i = 0; i < d; ++i) {
    ADMonomial m;
    m.e[d + i] = 1;
    m.T = static_cast<std::uint8_t>(full_mask(d) & ~(1u << i));
    t[m] = Scalar((i % 2) ? -1 : 1);
  }
  return (factorial(d - 1) * Scalar::tau(-d)) * ADElement::from_raw(d, d, std::move(t));
}

/// dz_1 ... dz_d
inline ADElement top_holomorphic(int d) {
  ADMonomial m;
  m.S = full_mask(d);
  ADElement::term_map t;
  t[m] = Scalar(1);
  return ADElement::from_raw(d, 0, std::move(t));
}

/**
 * Linear functional on the weight-zero part of A^{d,d-1} with denominators up
 * to (zz*)^K: the quotient by the dbar-image of A^{d,d-2}, normalized so the
 * class of bm_kernel(d) * dz_1..dz_d has value 1.  Immutable once built.
 */
class ResidueMap {
 public:
  ResidueMap(int d, int K) : d_(d), K_(std::max(K, d)), coords_(std::max(K, d)) {
    if (d < 1 || d > max_ad_dim) throw std::invalid_argument("ResidueMap: dimension out of range");
    std::vector<int> zero(static_cast<std::size_t>(d), 0);
    int deg_cap = 2 * K_ + 2 * d;
    if (d >= 2) {
      for (const auto& b : window_members(d, d, d - 2, zero, K_ - 1, deg_cap)) {
        auto v = coords_.coords(b.dbar());
        image_.insert(v);
      }
    }
    // tau^d * omega_BM * dz has rational coefficients
    ADElement w0 = Scalar::tau(d) * (bm_kernel(d) * top_holomorphic(d));
    r0_ = image_.reduce(coords_.coords(w0));
    if (r0_.empty()) throw window_too_small("residue: the normalizing class is exact inside the window");
    // the quotient must be spanned by the normalizing class
    for (const auto& v : window_members(d, d, d - 1, zero, K_, deg_cap)) {
      auto red = image_.reduce(coords_.coords(v));
      if (!proportional(red)) throw window_too_small("residue: weight-zero quotient is not one-dimensional");
    }
  }

  int dim() const { return d_; }
  int level() const { return K_; }

  /// Residue of a member of A^{d,d-1}.
  Scalar operator()(const ADElement& omega) const {
    if (omega.is_zero()) return Scalar();
    if (omega.dim() != d_) throw std::invalid_argument("residue: dimension mismatch");
    if (!check_membership(omega, d_, d_ - 1)) throw std::invalid_argument("residue: input is not in A^{d,d-1}");
    return evaluate_member(omega);
  }

  /// Residue of the (d, d-1) component of an arbitrary member element.
  Scalar of_component(const ADElement& x) const {
    auto c = x.component(d_, d_ - 1);
    if (c.is_zero()) return Scalar();
    return evaluate_member(c);
  }

 private:
  int d_;
  int K_;
  CoordinateSpace coords_;
  Echelon<Scalar> image_;
  sparse_vec<Scalar> r0_;

  bool proportional(const sparse_vec<Scalar>& red) const {
    if (red.empty()) return true;
    return coefficient(red).has_value();
  }

  std::optional<Scalar> coefficient(const sparse_vec<Scalar>& red) const {
    if (red.empty()) return Scalar();
    if (red.front().first != r0_.front().first) return std::nullopt;
    Scalar c = red.front().second / r0_.front().second;
    if (!axpy(red, -c, r0_).empty()) return std::nullopt;
    return c;
  }

  Scalar evaluate_member(const ADElement& omega) const {
    std::vector<int> zero(static_cast<std::size_t>(d_), 0);
    auto w = omega.weight_component(zero);
    if (w.is_zero()) return Scalar();
    if (w.k() > K_)
      throw window_too_small("residue: denominator exponent " + std::to_string(w.k()) + " above level " +
                             std::to_string(K_));
    auto v = coords_.coords_if_known(w);
    if (!v) throw window_too_small("residue: element leaves the window span");
    auto c = coefficient(image_.reduce(*v));
    if (!c) throw window_too_small("residue: element leaves the window span");
    return *c * Scalar::tau(d_);
  }
};

/// Residue recomputed one level up; a mismatch is reported, never returned.
inline Scalar residue(const ADElement& omega, const WeightWindow& window) {
  ResidueMap a(window.d, window.k_max);
  ResidueMap b(window.d, window.k_max + 1);
  Scalar x = a(omega), y = b(omega);
  if (!(x == y)) throw window_too_small("residue: unstable between K_max and K_max+1");
  return x;
}

}  // namespace hkm
