#pragma once

#include "hkm/core/linalg.hpp"
#include "hkm/jouanolou/ad_element.hpp"

#include <cstdint>
#include <functional>
#include <bit>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hkm {

/// Torus-weight box [-radius, radius]^d with numerator degree and denominator bounds.
struct WeightWindow {
  int d = 1;
  int radius = 3;
  int deg_max = 8;
  int k_max = 5;

  void validate() const {
    if (d < 1 || d > max_ad_dim || radius < 0 || deg_max < 0 || k_max < 0)
      throw std::invalid_argument("WeightWindow: bounds out of range");
  }

  WeightWindow enlarged() const {
    WeightWindow w = *this;
    ++w.k_max;
    ++w.deg_max;
    return w;
  }

  std::vector<std::vector<int>> weights() const {
    std::vector<std::vector<int>> out;
    std::vector<int> w(static_cast<std::size_t>(d), -radius);
    while (true) {
      out.push_back(w);
      int i = d - 1;
      while (i >= 0 && w[i] == radius) w[i--] = -radius;
      if (i < 0) break;
      ++w[i];
    }
    return out;
  }
};

struct window_too_small : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void for_each_composition(int d, int total, const std::function<void(const std::vector<int>&)>& f) {
  if (total < 0) return;
  std::vector<int> a(static_cast<std::size_t>(d), 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == d - 1) {
      a[i] = left;
      f(a);
      return;
    }
    for (int x = left; x >= 0; --x) {
      a[i] = x;
      rec(i + 1, left - x);
    }
  };
  rec(0, total);
}

inline void for_each_subset(int d, int size, const std::function<void(std::uint8_t)>& f) {
  for (unsigned m = 0; m < (1u << d); ++m)
    if (std::popcount(m) == size) f(static_cast<std::uint8_t>(m));
}

}  // namespace detail

/**
 * Monomial spanning set of R^{p,q} at a fixed torus weight subject to
 * condition (i): z*-homogeneity -q, denominators k <= k_max, numerator
 * degree <= deg_max.
 */
inline std::vector<ADElement> window_span(int d, int p, int q, const std::vector<int>& weight, int k_max,
                                          int deg_max) {
  std::vector<ADElement> out;
  if (p < 0 || q < 0 || p > d || q > d) return out;
  detail::for_each_subset(d, p, [&](std::uint8_t S) {
    detail::for_each_subset(d, q, [&](std::uint8_t T) {
      // b = a + c with c = 1_S - 1_T - w
      std::vector<int> c(static_cast<std::size_t>(d));
      int csum = 0;
      for (int i = 0; i < d; ++i) {
        c[i] = ((S >> i) & 1) - ((T >> i) & 1) - weight[i];
        csum += c[i];
      }
      for (int k = 0; k <= k_max; ++k) {
        int bsum = k - q;
        int asum = bsum - csum;
        if (bsum < 0 || asum < 0 || asum + bsum > deg_max) continue;
        detail::for_each_composition(d, asum, [&](const std::vector<int>& a) {
          std::vector<int> b(static_cast<std::size_t>(d));
          for (int i = 0; i < d; ++i) {
            b[i] = a[i] + c[i];
            if (b[i] < 0) return;
          }
          out.push_back(ADElement::term(d, a, b, S, T, k));
        });
      }
    });
  });
  return out;
}

/// Coordinates of elements as numerators over a common denominator (zz*)^K.
class CoordinateSpace {
 public:
  explicit CoordinateSpace(int K) : K_(K) {}

  int level() const { return K_; }

  sparse_vec<Scalar> coords(const ADElement& a) {
    if (a.is_zero()) return {};
    if (a.k() > K_) throw window_too_small("denominator exponent " + std::to_string(a.k()) + " exceeds window level " +
                                           std::to_string(K_));
    std::map<std::size_t, Scalar> v;
    for (const auto& [m, c] : a.numerator_at(K_)) v[index(m)] += c;
    return make_sparse(v);
  }

  /// Coordinates without registering unseen monomials; nullopt if one is new.
  std::optional<sparse_vec<Scalar>> coords_if_known(const ADElement& a) const {
    if (a.is_zero()) return sparse_vec<Scalar>{};
    if (a.k() > K_) return std::nullopt;
    std::map<std::size_t, Scalar> v;
    for (const auto& [m, c] : a.numerator_at(K_)) {
      auto it = index_.find(m);
      if (it == index_.end()) return std::nullopt;
      v[it->second] += c;
    }
    return make_sparse(v);
  }

  std::size_t size() const { return index_.size(); }

 private:
  int K_;
  std::map<ADMonomial, std::size_t, ADMonomialOrder> index_;

  std::size_t index(const ADMonomial& m) {
    auto [it, fresh] = index_.emplace(m, index_.size());
    return it->second;
  }
};

/**
 * Basis (as elements) of the members of A^{p,q} inside the span of
 * window_span: kernel of the Euler contraction on that span.
 */
inline std::vector<ADElement> window_members(int d, int p, int q, const std::vector<int>& weight, int k_max,
                                             int deg_max) {
  auto span = window_span(d, p, q, weight, k_max, deg_max);
  if (span.empty()) return {};
  if (q == 0) {
    // the contraction vanishes identically; drop dependent spanning elements
    CoordinateSpace cs(k_max);
    Echelon<Scalar> ech;
    std::vector<ADElement> out;
    for (auto& s : span)
      if (ech.insert(cs.coords(s))) out.push_back(std::move(s));
    return out;
  }
  CoordinateSpace cs(k_max);
  SparseMatrix<Scalar> E;
  std::vector<sparse_vec<Scalar>> cols;
  for (const auto& s : span) cols.push_back(cs.coords(s.euler_contraction()));
  E = SparseMatrix<Scalar>(std::max<std::size_t>(cs.size(), 1), span.size());
  for (std::size_t j = 0; j < span.size(); ++j) E.set_column(j, cols[j]);
  auto rk = rank_kernel(E);
  CoordinateSpace target(k_max);
  Echelon<Scalar> ech;
  std::vector<ADElement> out;
  for (const auto& v : rk.kernel) {
    ADElement x(d);
    for (const auto& [j, c] : v) x += c * span[j];
    if (ech.insert(target.coords(x))) out.push_back(std::move(x));
  }
  return out;
}

}  // namespace hkm
