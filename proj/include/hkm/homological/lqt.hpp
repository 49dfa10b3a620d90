#pragma once

#include "hkm/core/koszul.hpp"
#include "hkm/current/extension.hpp"
#include "hkm/homological/cyclic.hpp"

#include <stdexcept>
#include <vector>

namespace hkm {

namespace detail {

inline int sphere_q(const SphereElement& x) {
  for (const auto& a : x.comps)
    if (!a.is_zero()) return a.bidegree().second;
  return 0;
}

}  // namespace detail

/**
 * Pullback of a cyclic cochain along gl_N(A) -> A by the generalized trace:
 * (1/m!) sum_{sigma in S_m} eps(sigma) tr(X_0 X_{sigma 1} ... X_{sigma m}),
 * where tr(M_0 a_0, ..., M_m a_m) = tr(M_0 ... M_m) Theta(a_0, ..., a_m) and
 * eps is the Koszul sign of the shifted inputs, of bidegree (1, q).  Inputs are sphere elements over
 * gl(N) (component i*N + j is the E_ij entry).
 */
class LqtPullback {
 public:
  LqtPullback(CyclicCochain theta, int N) : th_(std::move(theta)), N_(N) {
    if (N < 1) throw std::invalid_argument("lqt_pullback: N >= 1");
  }

  int arity() const { return th_.arity(); }

  Scalar operator()(const std::vector<SphereElement>& xs) const {
    const int m = th_.arity() - 1;
    if (static_cast<int>(xs.size()) != m + 1) throw std::invalid_argument("lqt_pullback: wrong arity");
    for (const auto& x : xs)
      if (x.comps.size() != static_cast<std::size_t>(N_ * N_)) throw std::invalid_argument("lqt_pullback: not gl_N");
    std::vector<std::pair<int, int>> shifted;
    for (const auto& x : xs) shifted.emplace_back(1, detail::sphere_q(x));
    Scalar total;
    std::vector<int> tail(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) tail[static_cast<std::size_t>(i)] = i;
    long count = 0;
    do {
      // order X_0, X_{sigma 1}, ..., X_{sigma m}
      std::vector<int> perm{0};
      for (int t : tail) perm.push_back(t + 1);
      int eps = koszul_sign(perm, shifted);
      total += Scalar(eps) * generalized_trace(xs, perm);
      ++count;
    } while (std::next_permutation(tail.begin(), tail.end()));
    return total * Scalar(1) / Scalar(count);
  }

 private:
  CyclicCochain th_;
  int N_;

  /// sum over index cycles i_0 -> i_1 -> ... -> i_0 of Theta(a^{i_0 i_1}, a^{i_1 i_2}, ...).
  Scalar generalized_trace(const std::vector<SphereElement>& xs, const std::vector<int>& perm) const {
    const std::size_t n = perm.size();
    Scalar total;
    std::vector<ADElement> args(n);
    // enumerate i_0..i_{n-1}; i_n = i_0
    std::vector<int> i(n, 0);
    while (true) {
      bool zero = false;
      for (std::size_t k = 0; k < n && !zero; ++k) {
        int r = i[k], c = i[(k + 1) % n];
        const auto& a = xs[static_cast<std::size_t>(perm[k])].comps[static_cast<std::size_t>(r * N_ + c)];
        if (a.is_zero()) zero = true;
        args[k] = a;
      }
      if (!zero) total += th_(args);
      std::size_t k = n;
      while (k > 0 && i[k - 1] == N_ - 1) i[--k] = 0;
      if (k == 0) break;
      ++i[k - 1];
    }
    return total;
  }
};

inline LqtPullback lqt_pullback(const CyclicCochain& theta, int N) { return LqtPullback(theta, N); }

}  // namespace hkm
