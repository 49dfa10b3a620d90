#pragma once

#include "hkm/core/koszul.hpp"
#include "hkm/current/extension.hpp"
#include "hkm/jouanolou/ad_element.hpp"
#include "hkm/jouanolou/residue.hpp"
#include "hkm/jouanolou/window.hpp"

#include <functional>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hkm {

/**
 * Multilinear functional of fixed arity on A_d.  Single numerator terms are
 * not members of A_d for d >= 2, so the functional is evaluated on whole
 * inputs rather than expanded over a monomial basis.
 */
class CyclicCochain {
 public:
  using fn = std::function<Scalar(const std::vector<ADElement>&)>;

  CyclicCochain(int d, int arity, fn f) : d_(d), arity_(arity), f_(std::move(f)) {
    if (arity < 1) throw std::invalid_argument("cyclic cochain: arity >= 1");
  }

  int dim() const { return d_; }
  int arity() const { return arity_; }

  Scalar operator()(const std::vector<ADElement>& xs) const {
    if (static_cast<int>(xs.size()) != arity_) throw std::invalid_argument("cyclic cochain: wrong arity");
    for (const auto& x : xs)
      if (x.is_zero()) return Scalar();
    return f_(xs);
  }

  static CyclicCochain zero(int d, int arity) {
    return CyclicCochain(d, arity, [](const std::vector<ADElement>&) { return Scalar(); });
  }

 private:
  int d_;
  int arity_;
  fn f_;
};

/// Theta_d^infty(a_0, ..., a_d) = Res(a_0 del a_1 ... del a_d).
inline CyclicCochain theta_infinity(int d, std::shared_ptr<const ResidueOracle> res = nullptr) {
  if (!res) res = std::make_shared<const ResidueOracle>(d);
  return CyclicCochain(d, d + 1, [d, res](const std::vector<ADElement>& a) {
    ADElement p = a[0];
    for (int j = 1; j <= d && !p.is_zero(); ++j) p = p * a[static_cast<std::size_t>(j)].del();
    return (*res)(p);
  });
}

/*
 * Sign conventions on A_d follow its bigraded rule: a shifted input sa has
 * bidegree (1, q) (the shift runs along del), so sa past sb costs
 * (-1)^{1 + q_a q_b}.  The product sa (x) sb -> s(ab) carries no sign and
 * the bar differential, of bidegree (-1, 0), picks up (-1) per input passed.
 */
namespace detail {

inline int parity(int e) { return (e & 1) ? -1 : 1; }

inline std::vector<int> q_degrees(const std::vector<ADElement>& a) {
  std::vector<int> q;
  for (const auto& x : a) q.push_back(x.is_zero() ? 0 : x.bidegree().second);
  return q;
}

/// Koszul sign of the rotation (a_0..a_n) -> (a_n, a_0..a_{n-1}).
inline int cyclic_rotation_sign(const std::vector<int>& q) {
  const std::size_t n = q.size() - 1;
  int e = 0;
  for (std::size_t j = 0; j < n; ++j) e += 1 + q[n] * q[j];
  return parity(e);
}

}  // namespace detail

/// (b Theta)(a_0..a_m) = sum_i (-1)^i Theta(.., a_i a_{i+1}, ..) + rot_sign Theta(a_m a_0, a_1, ..).
inline Scalar hochschild_coboundary(const CyclicCochain& th, const std::vector<ADElement>& a) {
  const std::size_t n = a.size() - 1;
  if (static_cast<int>(n) != th.arity()) throw std::invalid_argument("hochschild_coboundary: arity");
  Scalar total;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<ADElement> u(a.begin(), a.begin() + static_cast<long>(i));
    u.push_back(a[i] * a[i + 1]);
    u.insert(u.end(), a.begin() + static_cast<long>(i) + 2, a.end());
    total += Scalar(detail::parity(static_cast<int>(i))) * th(u);
  }
  std::vector<ADElement> u{a[n] * a[0]};
  u.insert(u.end(), a.begin() + 1, a.begin() + static_cast<long>(n));
  total += Scalar(detail::cyclic_rotation_sign(detail::q_degrees(a))) * th(u);
  return total;
}

/// sum_i (-1)^{q_0 + .. + q_{i-1}} Theta(a_0, .., dbar a_i, .., a_m).
inline Scalar dbar_compatibility(const CyclicCochain& th, const std::vector<ADElement>& a) {
  Scalar total;
  int pre = 0;
  auto q = detail::q_degrees(a);
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto u = a;
    u[i] = a[i].dbar();
    total += Scalar(detail::parity(pre)) * th(u);
    pre += q[i];
  }
  return total;
}

/// Theta(t a) - Theta(a) with t the signed rotation.
inline Scalar cyclic_defect(const CyclicCochain& th, const std::vector<ADElement>& a) {
  std::vector<ADElement> r{a.back()};
  r.insert(r.end(), a.begin(), a.end() - 1);
  return Scalar(detail::cyclic_rotation_sign(detail::q_degrees(a))) * th(r) - th(a);
}

struct CyclicCheckReport {
  bool passed = true;
  std::size_t tuples = 0;
  std::size_t nonzero_values = 0;
  std::string failure;
  std::vector<ADElement> witness;
};

/// Random members of A^{0,q} of a given weight, drawn from window bases (cached).
class FormSampler {
 public:
  FormSampler(int d, WeightWindow w) : d_(d), w_(w) { w_.d = d; }

  int dim() const { return d_; }
  const WeightWindow& window() const { return w_; }

  const std::vector<ADElement>& members(int q, const std::vector<int>& weight) {
    auto key = std::make_pair(q, weight);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    return cache_[key] = window_members(d_, 0, q, weight, w_.k_max, w_.deg_max);
  }

  template <class Rng>
  ADElement sample(Rng& rng, int q, const std::vector<int>& weight, std::size_t terms) {
    const auto& pool = members(q, weight);
    ADElement out(d_);
    if (pool.empty()) return out;
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (std::size_t t = 0; t < terms; ++t) {
      int c = 0;
      while (c == 0) c = coef(rng);
      out += Scalar(c) * pool[pick(rng)];
    }
    return out;
  }

  /// n forms of degrees qs whose weights sum to zero when the window allows it.
  template <class Rng>
  std::vector<ADElement> balanced(Rng& rng, const std::vector<int>& qs, std::size_t terms) {
    const std::size_t n = qs.size();
    std::uniform_int_distribution<int> wd(-w_.radius, w_.radius);
    std::vector<std::vector<int>> ws(n, std::vector<int>(static_cast<std::size_t>(d_), 0));
    for (int tries = 0; tries < 16; ++tries) {
      std::vector<int> sum(static_cast<std::size_t>(d_), 0);
      for (std::size_t i = 0; i + 1 < n; ++i)
        for (int j = 0; j < d_; ++j) sum[static_cast<std::size_t>(j)] += ws[i][static_cast<std::size_t>(j)] = wd(rng);
      bool ok = true;
      for (int j = 0; j < d_; ++j) {
        int v = -sum[static_cast<std::size_t>(j)];
        ok = ok && v >= -w_.radius && v <= w_.radius;
        ws[n - 1][static_cast<std::size_t>(j)] = v;
      }
      if (ok) break;
    }
    std::vector<ADElement> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(sample(rng, qs[i], ws[i], terms));
    return out;
  }

 private:
  int d_;
  WeightWindow w_;
  std::map<std::pair<int, std::vector<int>>, std::vector<ADElement>> cache_;
};

/**
 * Samples tuples of (0, *)-forms and checks b Theta = 0 at arity + 1,
 * dbar-compatibility and cyclic invariance at the cochain's arity.  Degree
 * patterns are steered so that the total form degree can reach d - 1.
 */
inline CyclicCheckReport check_cyclic_cocycle(const CyclicCochain& th, std::size_t samples, std::uint64_t seed = 1,
                                              WeightWindow w = WeightWindow{1, 2, 3, 2}) {
  const int d = th.dim();
  const int m = th.arity();
  std::mt19937_64 rng(seed);
  FormSampler forms(d, w);
  CyclicCheckReport out;
  auto degrees = [&](int n, int total) {
    // n form degrees in [0, d-1] with the given total, when possible
    std::vector<int> q(static_cast<std::size_t>(n), 0);
    std::uniform_int_distribution<int> s(0, n - 1);
    for (int t = 0; t < total; ++t)
      for (int tries = 0; tries < 8 * n; ++tries) {
        int i = s(rng);
        if (q[static_cast<std::size_t>(i)] < d - 1) {
          ++q[static_cast<std::size_t>(i)];
          break;
        }
      }
    return q;
  };
  auto fail = [&](const std::string& what, const std::vector<ADElement>& a) {
    out.passed = false;
    out.failure = what;
    out.witness = a;
  };
  for (std::size_t s = 0; s < samples && out.passed; ++s) {
    // b-closedness on m+1 inputs: nonzero terms need total degree d-1
    auto a = forms.balanced(rng, degrees(m + 1, d - 1), 2);
    if (!hochschild_coboundary(th, a).is_zero()) fail("b Theta != 0", a);
    ++out.tuples;
    // dbar compatibility: total degree d-2 so dbar can land in the residue degree
    if (d >= 2 && out.passed) {
      a = forms.balanced(rng, degrees(m, d - 2), 2);
      if (!dbar_compatibility(th, a).is_zero()) fail("Theta o dbar != 0", a);
      ++out.tuples;
    }
    if (out.passed) {
      a = forms.balanced(rng, degrees(m, d - 1), 2);
      if (!th(a).is_zero()) ++out.nonzero_values;
      if (!cyclic_defect(th, a).is_zero()) fail("cyclic invariance", a);
      ++out.tuples;
    }
  }
  return out;
}

}  // namespace hkm
