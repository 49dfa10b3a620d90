#pragma once

#include "hkm/current/ccr.hpp"
#include "hkm/current/lie.hpp"

#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace hkm {

struct cutoff_exceeded : std::out_of_range {
  using std::out_of_range::out_of_range;
};

enum class Statistics { bosonic, fermionic };

/**
 * Truncated mode algebra of a d = 1 free field valued in V: generators
 * b^(i)_k, c^(i)_k with |k| <= cutoff and [c^(i)_p, b^(j)_q] = d_ij d_{p+q,0}
 * (commutator for bosons, anticommutator for fermions).  Annihilators
 * c_k (k > 0) and b_k (k >= 0) are ordered to the right.
 */
class FreeFieldModes {
 public:
  FreeFieldModes(std::size_t dimV, int cutoff, Statistics st = Statistics::bosonic)
      : dimV_(dimV), cutoff_(cutoff), st_(st), alg_(make_algebra()) {}

  int cutoff() const { return cutoff_; }
  const CanonicalAlgebra& algebra() const { return alg_; }

  int b(std::size_t i, int k) const { return id(0, i, k); }
  int c(std::size_t i, int k) const { return id(1, i, k); }

  /// J_m(x) = sum_k sum_ij rho(x)_ij :b^(i)_{-k} c^(j)_{m+k}: over modes inside the window.
  CanonicalAlgebra::element current(const matrix& rho, int m) const {
    if (std::abs(m) > cutoff_) throw cutoff_exceeded("free field: current mode outside the cutoff");
    CanonicalAlgebra::element out;
    for (int k = -cutoff_; k <= cutoff_; ++k) {
      if (std::abs(m + k) > cutoff_) continue;
      for (std::size_t i = 0; i < dimV_; ++i)
        for (std::size_t j = 0; j < dimV_; ++j) {
          if (rho[i][j].is_zero()) continue;
          int x = b(i, -k), y = c(j, m + k);
          // normal ordering of a pair of distinct generators is a reordering
          CanonicalAlgebra::word w = x < y ? CanonicalAlgebra::word{x, y} : CanonicalAlgebra::word{y, x};
          Scalar s = rho[i][j];
          if (x > y && st_ == Statistics::fermionic) s = -s;
          CanonicalAlgebra::add_to(out, CanonicalAlgebra::element{{w, Scalar(1)}}, s);
        }
    }
    return out;
  }

  /// Largest |mode| appearing in a word.
  int max_mode(const CanonicalAlgebra::word& w) const {
    int m = 0;
    for (int g : w) m = std::max(m, std::abs(std::get<2>(gens_[static_cast<std::size_t>(g)])));
    return m;
  }

 private:
  std::size_t dimV_;
  int cutoff_;
  Statistics st_;
  std::vector<std::tuple<int, std::size_t, int>> gens_;  // (type, component, mode)
  std::map<std::tuple<int, std::size_t, int>, int> index_;
  CanonicalAlgebra alg_;

  static bool annihilates(int type, int k) { return type == 0 ? k >= 0 : k > 0; }

  int id(int type, std::size_t i, int k) const {
    if (std::abs(k) > cutoff_) throw cutoff_exceeded("free field: mode " + std::to_string(k) + " outside the cutoff");
    return index_.at({type, i, k});
  }

  CanonicalAlgebra make_algebra() {
    for (int pass = 0; pass < 2; ++pass)
      for (int type = 0; type < 2; ++type)
        for (std::size_t i = 0; i < dimV_; ++i)
          for (int k = -cutoff_; k <= cutoff_; ++k)
            if (annihilates(type, k) == (pass == 1)) {
              index_[{type, i, k}] = static_cast<int>(gens_.size());
              gens_.emplace_back(type, i, k);
            }
    bool odd = st_ == Statistics::fermionic;
    auto gens = gens_;
    auto br = [gens, odd](int a, int b) {
      const auto& [ta, ia, ka] = gens[static_cast<std::size_t>(a)];
      const auto& [tb, ib, kb] = gens[static_cast<std::size_t>(b)];
      if (ta == tb || ia != ib || ka + kb != 0) return Scalar();
      // [c, b] = 1; [b, c] = -1 for bosons, +1 for fermions
      if (ta == 1) return Scalar(1);
      return odd ? Scalar(1) : Scalar(-1);
    };
    return CanonicalAlgebra(std::vector<bool>(gens_.size(), odd), br);
  }
};

struct FreeFieldLevel {
  Scalar central;
  /// [J_m(x), J_n(y)] - J_{m+n}([x,y]) has no quadratic terms with modes
  /// at most cutoff - max(|m|, |n|)
  bool noncentral_matches = true;
};

inline FreeFieldLevel free_field_commutator(const Representation& rho, int m, int n, std::size_t x, std::size_t y,
                                            int cutoff, Statistics st = Statistics::bosonic) {
  if (std::abs(m) > cutoff || std::abs(n) > cutoff || std::abs(m + n) > cutoff)
    throw cutoff_exceeded("free field: modes outside the cutoff");
  FreeFieldModes F(rho.dim, cutoff, st);
  const auto& A = F.algebra();
  auto C = A.supercommutator(F.current(rho.rho[x], m), F.current(rho.rho[y], n));
  auto D = F.current(rho.of(rho.algebra.bracket_basis(x, y)), m + n);
  CanonicalAlgebra::add_to(C, D, Scalar(-1));
  FreeFieldLevel out;
  auto it = C.find(CanonicalAlgebra::word{});
  if (it != C.end()) out.central = it->second;
  const int interior = cutoff - std::max(std::abs(m), std::abs(n));
  for (const auto& [w, c] : C)
    if (!w.empty() && F.max_mode(w) <= interior) out.noncentral_matches = false;
  return out;
}

/// Central coefficient of [J_m(x), J_n(y)] - J_{m+n}([x,y]).
inline Scalar free_field_level_d1(const Representation& rho, int m, int n, std::size_t x, std::size_t y,
                                  int cutoff, Statistics st = Statistics::bosonic) {
  return free_field_commutator(rho, m, n, x, y, cutoff, st).central;
}

}  // namespace hkm
