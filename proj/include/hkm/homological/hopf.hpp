#pragma once

#include "hkm/core/complex.hpp"
#include "hkm/current/invariant.hpp"
#include "hkm/current/lie.hpp"
#include "hkm/current/linf.hpp"
#include "hkm/homological/ce.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hkm {

/// Coinvariants Sym^s(g)_g = Sym^s(g) / span{x . v}, by exact linear algebra.
inline std::vector<std::size_t> coinvariant_dims(const FiniteLieAlgebra& g, int cutoff) {
  const std::size_t n = g.dim();
  std::vector<std::size_t> out;
  for (int s = 0; s <= cutoff; ++s) {
    // monomials of Sym^s as non-decreasing index lists
    std::vector<std::vector<std::size_t>> monos{{}};
    for (int t = 0; t < s; ++t) {
      std::vector<std::vector<std::size_t>> next;
      for (const auto& m : monos)
        for (std::size_t i = m.empty() ? 0 : m.back(); i < n; ++i) {
          auto w = m;
          w.push_back(i);
          next.push_back(std::move(w));
        }
      monos = std::move(next);
    }
    std::map<std::vector<std::size_t>, std::size_t> idx;
    for (std::size_t i = 0; i < monos.size(); ++i) idx[monos[i]] = i;
    Echelon<Scalar> image;
    for (std::size_t x = 0; x < n; ++x)
      for (const auto& m : monos) {
        // x . (y_1 ... y_s) = sum_j y_1 ... [x, y_j] ... y_s
        std::map<std::size_t, Scalar> v;
        for (std::size_t j = 0; j < m.size(); ++j)
          for (const auto& [k, c] : g.bracket_terms(x, m[j])) {
            auto w = m;
            w[j] = k;
            std::sort(w.begin(), w.end());
            v[idx.at(w)] += c;
          }
        image.insert(make_sparse(v));
      }
    out.push_back(monos.size() - image.rank());
  }
  return out;
}

/**
 * CE chains of g with coefficients in Sym^{<=cutoff}(g^ad), written directly:
 * d(x_1 ^ ... ^ x_e (x) v) = sum_i (-1)^i ... x^_i ... (x) x_i.v
 *                           + sum_{i<j} (-1)^{i+j} [x_i, x_j] ^ ... (x) v.
 * Returns dims per (exterior degree e, Sym degree s).  Ungraded g only.
 */
inline std::map<std::pair<int, int>, std::size_t> module_ce_dims(const FiniteLieAlgebra& g, int cutoff) {
  const std::size_t n = g.dim();
  for (std::size_t i = 0; i < n; ++i)
    if (g.degree(i) != 0) throw std::invalid_argument("module_ce_dims: g must sit in degree 0");
  using mono = std::vector<std::size_t>;
  // exterior monomials: increasing subsets
  std::vector<mono> ext;
  for (unsigned m = 0; m < (1u << n); ++m) {
    mono w;
    for (std::size_t i = 0; i < n; ++i)
      if ((m >> i) & 1u) w.push_back(i);
    ext.push_back(w);
  }
  std::map<std::pair<int, int>, std::size_t> out;
  for (int s = 0; s <= cutoff; ++s) {
    std::vector<mono> sym{{}};
    for (int t = 0; t < s; ++t) {
      std::vector<mono> next;
      for (const auto& m : sym)
        for (std::size_t i = m.empty() ? 0 : m.back(); i < n; ++i) {
          auto w = m;
          w.push_back(i);
          next.push_back(std::move(w));
        }
      sym = std::move(next);
    }
    std::map<std::pair<mono, mono>, std::size_t> idx;
    std::map<int, std::vector<std::size_t>> by_e;
    std::vector<std::pair<mono, mono>> basis;
    for (const auto& a : ext)
      for (const auto& b : sym) {
        idx[{a, b}] = basis.size();
        by_e[static_cast<int>(a.size())].push_back(basis.size());
        basis.emplace_back(a, b);
      }
    auto wedge_insert = [](const mono& a, std::size_t k, mono& outw) {
      // k ^ a, sorted; returns sign, 0 if k already present
      int pos = 0;
      for (auto x : a) {
        if (x == k) return 0;
        if (x < k) ++pos;
      }
      outw = a;
      outw.insert(outw.begin() + pos, k);
      return (pos & 1) ? -1 : 1;
    };
    SparseMatrix<Scalar> D(basis.size(), basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c) {
      const auto& [a, v] = basis[c];
      std::map<std::size_t, Scalar> col;
      const int e = static_cast<int>(a.size());
      for (int i = 0; i < e; ++i) {
        mono rest = a;
        rest.erase(rest.begin() + i);
        // 0-based i: (-1)^{i+1}
        Scalar si((i & 1) ? 1 : -1);
        for (std::size_t j = 0; j < v.size(); ++j)
          for (const auto& [k, x] : g.bracket_terms(a[static_cast<std::size_t>(i)], v[j])) {
            auto w = v;
            w[j] = k;
            std::sort(w.begin(), w.end());
            col[idx.at({rest, w})] += si * x;
          }
        for (int j = i + 1; j < e; ++j) {
          mono r2 = rest;
          r2.erase(r2.begin() + (j - 1));
          Scalar sij(((i + j) & 1) ? -1 : 1);
          for (const auto& [k, x] : g.bracket_terms(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(j)])) {
            mono w;
            int sg = wedge_insert(r2, k, w);
            if (sg == 0) continue;
            col[idx.at({w, v})] += Scalar(sg) * sij * x;
          }
        }
      }
      D.set_column(c, make_sparse(col));
    }
    if (!(D * D).is_zero_matrix()) throw std::logic_error("module_ce_dims: d^2 != 0");
    for (const auto& [e, cols] : by_e) {
      SparseMatrix<Scalar> sub(basis.size(), cols.size());
      for (std::size_t j = 0; j < cols.size(); ++j) sub.set_column(j, D.column(cols[j]));
      std::size_t rk_out = rank(sub);
      std::size_t rk_in = 0;
      auto up = by_e.find(e + 1);
      if (up != by_e.end()) {
        SparseMatrix<Scalar> s2(basis.size(), up->second.size());
        for (std::size_t j = 0; j < up->second.size(); ++j) s2.set_column(j, D.column(up->second[j]));
        rk_in = rank(s2);
      }
      out[{e, s}] = cols.size() - rk_out - rk_in;
    }
  }
  return out;
}

/// g (+) g alpha with alpha of degree 1, alpha^2 = 0; alpha copies carry weight 1.
inline LInfinityAlgebra small_model_algebra(const FiniteLieAlgebra& g, bool with_k) {
  const std::size_t n = g.dim();
  for (std::size_t i = 0; i < n; ++i)
    if (g.degree(i) != 0) throw std::invalid_argument("hopf_small_model: g must sit in degree 0");
  GradedSpaceWindow b;
  for (std::size_t i = 0; i < n; ++i) b.add(g.name(i), 0, {0});
  for (std::size_t i = 0; i < n; ++i) b.add(g.name(i) + "a", 1, {1});
  // K of degree 1, so K[1] is even and the twist is a polynomial parameter
  if (with_k) b.add("K", 1, {0});
  LInfinityAlgebra L(b);
  if (with_k) L.set_central(2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::map<std::size_t, Scalar> v, va;
      for (const auto& [k, c] : g.bracket_terms(i, j)) {
        v[k] += c;
        va[n + k] += c;
      }
      if (j >= i && !v.empty()) L.set_l2(i, j, make_sparse(v));
      if (!va.empty()) L.set_l2(i, n + j, make_sparse(va));
    }
  return L;
}

/**
 * Restriction of the local cocycle of theta to the small model.  Inputs are
 * x_i a_i with a_i in {1, alpha}; each term carries del a_1 ... del a_d and
 * del vanishes on C[alpha], so only the degree check survives.
 */
inline std::map<std::vector<std::size_t>, Scalar> small_model_twist(const InvariantPolynomial& theta) {
  if (theta.degree() < 2) throw std::invalid_argument("hopf_small_model: theta must have degree >= 2");
  return {};
}

struct HopfHomology {
  int cutoff = 0;
  /// dims per (exterior degree, Sym degree) of the CE model of g[alpha], K = 0
  std::map<std::pair<int, int>, std::size_t> dims;
  /// same with the twist switched on at K = 1 (rank over Q[K] for a free module)
  std::map<std::pair<int, int>, std::size_t> twisted_dims;
  /// CE_*(g, Sym(g^ad)) computed directly
  std::map<std::pair<int, int>, std::size_t> module_dims;
  /// Sym^s(g)_g
  std::vector<std::size_t> coinvariants;
  bool twist_vanishes = true;

  std::vector<std::size_t> degree_zero() const {
    std::vector<std::size_t> out(static_cast<std::size_t>(cutoff + 1), 0);
    for (const auto& [k, v] : dims)
      if (k.first == 0) out[static_cast<std::size_t>(k.second)] = v;
    return out;
  }
  bool consistent() const {
    if (dims != module_dims || dims != twisted_dims) return false;
    return degree_zero() == coinvariants;
  }
};

inline std::map<std::pair<int, int>, std::size_t> small_model_dims(const ChainComplexWindow& cx, const Scalar& k) {
  auto h = cohomology_window(cx, k, true);
  std::map<std::pair<int, int>, std::size_t> out;
  for (const auto& p : h.pieces) out[{-p.degree, p.weight.empty() ? 0 : p.weight[0]}] = p.dim;
  return out;
}

inline HopfHomology hopf_small_model(const FiniteLieAlgebra& g, int cutoff,
                                     const std::optional<InvariantPolynomial>& theta = std::nullopt) {
  if (cutoff < 0) throw std::invalid_argument("hopf_small_model: negative cutoff");
  HopfHomology out;
  out.cutoff = cutoff;
  auto L = small_model_algebra(g, false);
  // Sym degree counts the even generators g alpha; weights label it
  auto cx = CeComplex(L, CeOptions{cutoff, true}).complex();
  out.dims = small_model_dims(cx, Scalar());
  auto Lk = small_model_algebra(g, true);
  if (theta) {
    auto tw = small_model_twist(*theta);
    out.twist_vanishes = tw.empty();
    for (const auto& [idx, c] : tw) Lk.set_top(idx, c);
  }
  auto ck = CeComplex(Lk, CeOptions{cutoff, true}).complex();
  out.twisted_dims = small_model_dims(ck, Scalar(1));
  out.module_dims = module_ce_dims(g, cutoff);
  out.coinvariants = coinvariant_dims(g, cutoff);
  return out;
}

}  // namespace hkm
