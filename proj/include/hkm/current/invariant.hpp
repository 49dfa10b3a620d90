#pragma once

#include "hkm/core/koszul.hpp"
#include "hkm/current/lie.hpp"
#include "hkm/jouanolou/residue.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace hkm {

/// Symmetric multilinear form of degree m on a Lie algebra (even basis only).
class InvariantPolynomial {
 public:
  using key = std::vector<std::size_t>;

  InvariantPolynomial() = default;
  InvariantPolynomial(std::size_t dim, int degree) : dim_(dim), degree_(degree) {}

  std::size_t dim() const { return dim_; }
  int degree() const { return degree_; }
  const std::map<key, Scalar>& values() const { return vals_; }

  /// Value on basis elements (any order).
  Scalar at(key idx) const {
    std::sort(idx.begin(), idx.end());
    auto it = vals_.find(idx);
    return it == vals_.end() ? Scalar() : it->second;
  }
  void set(key idx, const Scalar& c) {
    if (idx.size() != static_cast<std::size_t>(degree_)) throw std::invalid_argument("invariant: arity");
    std::sort(idx.begin(), idx.end());
    if (c.is_zero())
      vals_.erase(idx);
    else
      vals_[idx] = c;
  }

  Scalar operator()(const std::vector<lie_vec>& xs) const {
    if (xs.size() != static_cast<std::size_t>(degree_)) throw std::invalid_argument("invariant: arity");
    Scalar out;
    for_each_ordered([&](const key& idx, const Scalar& c) {
      Scalar t = c;
      for (std::size_t i = 0; i < idx.size() && !t.is_zero(); ++i) t *= xs[i][idx[i]];
      out += t;
    });
    return out;
  }

  /// Visits every ordered basis tuple with a nonzero value.
  void for_each_ordered(const std::function<void(const key&, const Scalar&)>& f) const {
    for (const auto& [k, c] : vals_) {
      key p = k;
      do f(p, c);
      while (std::next_permutation(p.begin(), p.end()));
    }
  }

 private:
  std::size_t dim_ = 0;
  int degree_ = 0;
  std::map<key, Scalar> vals_;
};

/// Symmetric and ad-invariant on all basis tuples.
inline bool check_invariance(const InvariantPolynomial& th, const FiniteLieAlgebra& g) {
  if (th.dim() != g.dim()) return false;
  const std::size_t n = g.dim();
  const int m = th.degree();
  std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
  while (true) {
    if (std::is_sorted(idx.begin(), idx.end())) {
      for (std::size_t y = 0; y < n; ++y) {
        Scalar s;
        for (int i = 0; i < m; ++i)
          for (const auto& [k, c] : g.bracket_terms(y, idx[i])) {
            auto j = idx;
            j[i] = k;
            s += c * th.at(j);
          }
        if (!s.is_zero()) return false;
      }
    }
    int i = m - 1;
    while (i >= 0 && idx[i] == n - 1) idx[i--] = 0;
    if (i < 0) break;
    ++idx[i];
  }
  return true;
}

/// (1/m!) sum over orderings of tr(rho(x_s1) ... rho(x_sm)), scaled by c.
inline InvariantPolynomial polarized_trace(const Representation& r, int m, const Scalar& c = Scalar(1)) {
  const std::size_t n = r.algebra.dim();
  InvariantPolynomial out(n, m);
  Scalar norm = c / factorial(m);
  std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
  auto fill = [&](std::size_t pos, std::size_t from, auto&& self) -> void {
    if (pos == idx.size()) {
      Scalar s;
      auto p = idx;
      Scalar mult(1);
      for (std::size_t a = 0, run = 1; a < idx.size(); ++a) {
        run = (a > 0 && idx[a] == idx[a - 1]) ? run + 1 : 1;
        mult *= Scalar(static_cast<long>(run));
      }
      do s += trace(std::accumulate(p.begin() + 1, p.end(), r.rho[p[0]],
                                    [&](const matrix& acc, std::size_t j) { return mat_mul(acc, r.rho[j]); }));
      while (std::next_permutation(p.begin(), p.end()));
      out.set(idx, norm * mult * s);
      return;
    }
    for (std::size_t j = from; j < n; ++j) {
      idx[pos] = j;
      self(pos + 1, j, self);
    }
  };
  fill(0, 0, fill);
  return out;
}

/// theta_{k,N}(X_1..X_k) = (1/k!) sum_s tr(X_s1 ... X_sk) on gl_N.
inline InvariantPolynomial theta_kN(int k, std::size_t N) { return polarized_trace(fundamental_gl(N), k); }

/// Degree-(d+1) Chern character form (1/(d+1)!) tr rho^{d+1}, polarized.
inline InvariantPolynomial chern_character(const Representation& r, int d) {
  return polarized_trace(r, d + 1, Scalar(1) / factorial(d + 1));
}

/// kappa(x, y) = tr(ad x ad y).
inline InvariantPolynomial killing_form(const FiniteLieAlgebra& g) { return polarized_trace(adjoint(g), 2); }

/// Trace form of a representation.
inline InvariantPolynomial trace_form(const Representation& r) { return polarized_trace(r, 2); }

}  // namespace hkm
