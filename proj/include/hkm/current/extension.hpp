#pragma once

#include "hkm/current/invariant.hpp"
#include "hkm/current/lie.hpp"
#include "hkm/jouanolou/residue.hpp"
#include "hkm/jouanolou/window.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hkm {

/// sum_i w_i (x) a_i over a graded basis w_i, plus a multiple of the central K.
struct SphereElement {
  int d = 1;
  std::vector<ADElement> comps;
  Scalar central;

  SphereElement() = default;
  SphereElement(int d_, std::size_t n) : d(d_), comps(n, ADElement(d_)) {}

  static SphereElement pure(int d, std::size_t n, std::size_t i, const ADElement& a) {
    SphereElement x(d, n);
    x.comps.at(i) = a;
    return x;
  }
  static SphereElement central_multiple(int d, std::size_t n, const Scalar& c) {
    SphereElement x(d, n);
    x.central = c;
    return x;
  }

  bool is_zero() const {
    if (!central.is_zero()) return false;
    for (const auto& a : comps)
      if (!a.is_zero()) return false;
    return true;
  }

  SphereElement& operator+=(const SphereElement& y) {
    for (std::size_t i = 0; i < comps.size(); ++i) comps[i] += y.comps[i];
    central += y.central;
    return *this;
  }
  friend SphereElement operator+(SphereElement x, const SphereElement& y) { return x += y; }
  friend SphereElement operator*(const Scalar& s, SphereElement x) {
    for (auto& a : x.comps) a = s * a;
    x.central *= s;
    return x;
  }
  friend SphereElement operator-(const SphereElement& x, const SphereElement& y) { return x + Scalar(-1) * y; }
  friend bool operator==(const SphereElement& x, const SphereElement& y) { return (x - y).is_zero(); }

  std::string str(const std::vector<std::string>& names) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      if (comps[i].is_zero()) continue;
      os << (first ? "" : " + ") << names[i] << "(x)" << comps[i].str();
      first = false;
    }
    if (!central.is_zero()) {
      os << (first ? "" : " + ") << "[" << central.str() << "]*K";
      first = false;
    }
    if (first) os << "0";
    return os.str();
  }
};

/// Parity of the antiholomorphic form degree of a q-homogeneous element.
inline bool q_parity(const ADElement& a) {
  for (const auto& [m, c] : a.terms()) return m.q() & 1;
  return false;
}

/**
 * Residue evaluated at the smallest level covering the element and again one
 * level up; disagreement raises window_too_small.  Maps are cached per level.
 */
class ResidueOracle {
 public:
  explicit ResidueOracle(int d) : d_(d) {}

  int dim() const { return d_; }

  Scalar operator()(const ADElement& omega) const {
    if (omega.is_zero()) return Scalar();
    std::vector<int> zero(static_cast<std::size_t>(d_), 0);
    auto w = omega.component(d_, d_ - 1).weight_component(zero);
    if (w.is_zero()) return Scalar();
    int K = std::max(d_, w.k());
    Scalar a = at(K)(w), b = at(K + 1)(w);
    if (!(a == b)) throw window_too_small("residue: unstable between levels " + std::to_string(K) + " and " +
                                          std::to_string(K + 1));
    return a;
  }

 private:
  int d_;
  mutable std::mutex mu_;
  mutable std::map<int, std::shared_ptr<const ResidueMap>> maps_;

  const ResidueMap& at(int K) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto& p = maps_[K];
    if (!p) p = std::make_shared<const ResidueMap>(d_, K);
    return *p;
  }
};

/// Res theta(a_0, del a_1, ..., del a_d) on sphere-algebra inputs (degree-0 Lie part).
inline Scalar fhk_cocycle(const InvariantPolynomial& theta, const std::vector<SphereElement>& xs,
                          const ResidueOracle& res) {
  const int d = res.dim();
  if (theta.degree() != d + 1 || xs.size() != static_cast<std::size_t>(d + 1))
    throw std::invalid_argument("fhk_cocycle: arity must be d+1");
  std::vector<std::vector<ADElement>> dels(xs.size());
  for (std::size_t j = 1; j < xs.size(); ++j)
    for (const auto& a : xs[j].comps) dels[j].push_back(a.del());
  ADElement total(d);
  theta.for_each_ordered([&](const std::vector<std::size_t>& idx, const Scalar& c) {
    if (xs[0].comps[idx[0]].is_zero()) return;
    for (std::size_t j = 1; j < idx.size(); ++j)
      if (dels[j][idx[j]].is_zero()) return;
    ADElement p = xs[0].comps[idx[0]];
    for (std::size_t j = 1; j < idx.size() && !p.is_zero(); ++j) p = p * dels[j][idx[j]];
    total += c * p;
  });
  return res(total);
}

/**
 * Central extension of A_d (x) W by K, with W a finite graded Lie algebra.
 * l_1 = dbar, l_2 the pointwise bracket, l_r the cocycle into K.
 * Sampling draws homogeneous combinations from a pool of windowed pure tensors.
 */
class CurrentExtension {
 public:
  using element = SphereElement;
  using cocycle_fn = std::function<Scalar(const std::vector<SphereElement>&)>;

  CurrentExtension(FiniteLieAlgebra W, int d, int arity, cocycle_fn cocycle, WeightWindow pool_window)
      : W_(std::move(W)), d_(d), r_(arity), cocycle_(std::move(cocycle)), window_(pool_window) {
    if (arity < 2) throw std::invalid_argument("extension: cocycle arity must be at least 2");
    window_.validate();
    build_pool();
  }

  const FiniteLieAlgebra& lie() const { return W_; }
  int dim() const { return d_; }
  int cocycle_arity() const { return r_; }
  const WeightWindow& window() const { return window_; }

  /// Cocycle with one value replaced (decorators such as corruption tests).
  void set_cocycle(cocycle_fn f) { cocycle_ = std::move(f); }
  const cocycle_fn& cocycle() const { return cocycle_; }

  SphereElement zero() const { return SphereElement(d_, W_.dim()); }

  /// Total degree of a homogeneous element; throws if inhomogeneous.
  int degree(const SphereElement& x) const {
    std::optional<int> deg;
    for (std::size_t i = 0; i < x.comps.size(); ++i) {
      const auto& a = x.comps[i];
      if (a.is_zero()) continue;
      for (const auto& [m, c] : a.terms()) {
        int g = W_.degree(i) + m.q();
        if (deg && *deg != g) throw std::invalid_argument("extension: inhomogeneous element");
        deg = g;
      }
    }
    if (!x.central.is_zero() && deg && *deg != 0) throw std::invalid_argument("extension: inhomogeneous element");
    return deg.value_or(0);
  }

  SphereElement bracket(const std::vector<SphereElement>& xs) const {
    const std::size_t n = xs.size();
    SphereElement out = zero();
    if (n == 1) {
      for (std::size_t i = 0; i < W_.dim(); ++i) {
        auto db = xs[0].comps[i].dbar();
        out.comps[i] = (W_.degree(i) & 1) ? -db : db;
      }
    }
    if (n == 2) {
      for (std::size_t i = 0; i < W_.dim(); ++i) {
        const auto& a = xs[0].comps[i];
        if (a.is_zero()) continue;
        for (std::size_t j = 0; j < W_.dim(); ++j) {
          const auto& b = xs[1].comps[j];
          if (b.is_zero() || W_.bracket_terms(i, j).empty()) continue;
          ADElement ab = a * b;
          if (q_parity(a) && (W_.degree(j) & 1)) ab = -ab;
          for (const auto& [k, c] : W_.bracket_terms(i, j)) out.comps[k] += c * ab;
        }
      }
    }
    if (n == static_cast<std::size_t>(r_)) out.central += cocycle_(strip(xs));
    return out;
  }

  /// Random homogeneous element of total degree `deg` built from `terms` pool entries.
  template <class Rng>
  SphereElement sample(Rng& rng, int deg, std::size_t terms) const {
    SphereElement x = zero();
    auto it = pool_.find(deg);
    if (it == pool_.end() || it->second.empty()) return x;
    const auto& p = it->second;
    std::uniform_int_distribution<std::size_t> pick(0, p.size() - 1);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (std::size_t t = 0; t < terms; ++t) {
      const auto& [i, a] = p[pick(rng)];
      int c = 0;
      while (c == 0) c = coef(rng);
      x.comps[i] += Scalar(c) * a;
    }
    return x;
  }

  /// Generic element: every pool entry of degree `deg` with a random coefficient.
  template <class Rng>
  SphereElement sample_dense(Rng& rng, int deg) const {
    SphereElement x = zero();
    auto it = pool_.find(deg);
    if (it == pool_.end()) return x;
    std::uniform_int_distribution<int> coef(1, 9);
    for (const auto& [i, a] : it->second) x.comps[i] += Scalar(coef(rng)) * a;
    return x;
  }

  /// Degrees present in the sampling pool.
  std::vector<int> pool_degrees() const {
    std::vector<int> out;
    for (const auto& [g, p] : pool_)
      if (!p.empty()) out.push_back(g);
    return out;
  }
  std::size_t pool_size(int deg) const {
    auto it = pool_.find(deg);
    return it == pool_.end() ? 0 : it->second.size();
  }
  const std::vector<std::pair<std::size_t, ADElement>>& pool(int deg) const { return pool_.at(deg); }

  std::string str(const SphereElement& x) const { return x.str(W_.names()); }

 private:
  FiniteLieAlgebra W_;
  int d_;
  int r_;
  cocycle_fn cocycle_;
  WeightWindow window_;
  std::map<int, std::vector<std::pair<std::size_t, ADElement>>> pool_;

  std::vector<SphereElement> strip(const std::vector<SphereElement>& xs) const {
    std::vector<SphereElement> ys = xs;
    for (auto& y : ys) y.central = Scalar();
    return ys;
  }

  void build_pool() {
    for (int q = 0; q < d_; ++q) {
      std::vector<ADElement> members;
      for (const auto& w : window_.weights())
        for (auto& m : window_members(d_, 0, q, w, window_.k_max, window_.deg_max)) members.push_back(std::move(m));
      for (std::size_t i = 0; i < W_.dim(); ++i)
        for (const auto& a : members) pool_[W_.degree(i) + q].emplace_back(i, a);
    }
  }
};

/// Sphere-algebra extension of g by Res theta(a_0, del a_1, ...).
inline CurrentExtension build_extension(const FiniteLieAlgebra& g, const InvariantPolynomial& theta, int d,
                                        const WeightWindow& window) {
  if (theta.degree() != d + 1) throw std::invalid_argument("build_extension: theta must have degree d+1");
  if (!check_invariance(theta, g)) throw std::invalid_argument("build_extension: theta is not invariant");
  for (std::size_t i = 0; i < g.dim(); ++i)
    if (g.degree(i) != 0) throw std::invalid_argument("build_extension: g must be concentrated in degree 0");
  auto res = std::make_shared<ResidueOracle>(d);
  auto fn = [theta, res](const std::vector<SphereElement>& xs) { return fhk_cocycle(theta, xs, *res); };
  return CurrentExtension(g, d, d + 1, fn, window);
}

/**
 * Abelian A_d (x) (V + V*[d-1]) with the residue pairing <c, b> into K.
 * Even V sits in degree 0; odd V in degree 1 (V* then in -d).
 */
inline CurrentExtension heisenberg(std::size_t n, bool fermionic, int d, const WeightWindow& window) {
  std::vector<std::string> names;
  std::vector<int> degs;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back("v" + std::to_string(i + 1));
    degs.push_back(fermionic ? 1 : 0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back("v*" + std::to_string(i + 1));
    degs.push_back(fermionic ? -d : -(d - 1));
  }
  FiniteLieAlgebra W(names, degs);
  auto res = std::make_shared<ResidueOracle>(d);
  auto fn = [n, degs, res, d](const std::vector<SphereElement>& xs) {
    const auto& X = xs[0];
    const auto& Y = xs[1];
    ADElement total(d);
    ADElement top = top_holomorphic(d);
    for (std::size_t i = 0; i < 2 * n; ++i) {
      if (X.comps[i].is_zero()) continue;
      std::size_t j = i < n ? i + n : i - n;
      if (Y.comps[j].is_zero()) continue;
      // <v_i, v*_i> = 1, <v*_i, v_i> = -(-1)^{|v||v*|}
      Scalar pair(1);
      if (i >= n && !((degs[j] * degs[i]) & 1)) pair = Scalar(-1);
      // (-1)^{|a||w_j|}
      if (q_parity(X.comps[i]) && (degs[j] & 1)) pair = -pair;
      ADElement ab = X.comps[i] * Y.comps[j];
      total += pair * (ab * top);
    }
    return (*res)(total);
  };
  return CurrentExtension(W, d, 2, fn, window);
}

}  // namespace hkm
