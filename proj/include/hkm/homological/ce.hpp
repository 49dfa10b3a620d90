#pragma once

#include "hkm/core/complex.hpp"
#include "hkm/core/koszul.hpp"
#include "hkm/current/linf.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hkm {

struct CeOptions {
  /// bound on the number of factors of a monomial
  int sym_cutoff = 1;
  /// count only even factors of L[1] against the cutoff (the exterior part must then be finite)
  bool count_even_only = false;
};

/**
 * Chevalley-Eilenberg chains of a table L-infinity algebra: monomials in
 * L[1] (the central element excluded) with the coderivation built from all
 * brackets.  Bracket components along the central element go to the K^1
 * piece, K sitting to the right.  K has the degree of the central element
 * of L[1], so it is odd for an unshifted extension.
 */
class CeComplex {
 public:
  using monomial = std::vector<std::size_t>;

  CeComplex(const LInfinityAlgebra& L, CeOptions opt) : L_(L), opt_(opt) {
    if (opt.sym_cutoff < 0) throw std::invalid_argument("ce_complex: negative cutoff");
    for (std::size_t i = 0; i < L.size(); ++i)
      if (!L.central() || *L.central() != i) gens_.push_back(i);
    enumerate({}, 0);
    build();
  }

  const ChainComplexWindow& complex() const { return cx_; }
  const std::vector<monomial>& monomials() const { return monos_; }
  std::size_t index(const monomial& m) const { return index_.at(m); }

  int shifted(std::size_t i) const { return L_.deg(i) - 1; }

  /// Sorted form of a word of generators with its Koszul sign; sign 0 if an odd factor repeats.
  std::pair<monomial, int> normalize(const std::vector<std::size_t>& w) const {
    std::vector<int> perm(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) perm[i] = static_cast<int>(i);
    std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) { return w[a] < w[b]; });
    std::vector<int> degs;
    for (auto i : w) degs.push_back(shifted(i));
    monomial m;
    for (int p : perm) m.push_back(w[static_cast<std::size_t>(p)]);
    for (std::size_t i = 0; i + 1 < m.size(); ++i)
      if (m[i] == m[i + 1] && (shifted(m[i]) & 1)) return {m, 0};
    return {m, koszul_sign(perm, degs)};
  }

 private:
  LInfinityAlgebra L_;
  CeOptions opt_;
  std::vector<std::size_t> gens_;
  std::vector<monomial> monos_;
  std::map<monomial, std::size_t> index_;
  ChainComplexWindow cx_;
  bool complete_ = true;

  bool even(std::size_t i) const { return (shifted(i) & 1) == 0; }

  int length(const monomial& m) const {
    if (!opt_.count_even_only) return static_cast<int>(m.size());
    int n = 0;
    for (auto i : m) n += even(i) ? 1 : 0;
    return n;
  }

  // monomials as non-decreasing generator lists, odd generators at most once
  void enumerate(monomial cur, std::size_t from) {
    monos_.push_back(cur);
    for (std::size_t g = from; g < gens_.size(); ++g) {
      std::size_t i = gens_[g];
      monomial next = cur;
      next.push_back(i);
      if (length(next) > opt_.sym_cutoff) {
        complete_ = false;
        continue;
      }
      enumerate(next, even(i) ? g : g + 1);
    }
  }

  void build() {
    for (std::size_t i = 0; i < monos_.size(); ++i) index_[monos_[i]] = i;
    int kdeg = 0;
    if (L_.central()) kdeg = shifted(*L_.central());
    for (const auto& m : monos_) {
      std::string name;
      int deg = 0;
      std::vector<int> weight;
      for (auto i : m) {
        name += (name.empty() ? "" : ".") + L_.basis()[i].name;
        deg += shifted(i);
        const auto& w = L_.basis()[i].weight;
        if (weight.size() < w.size()) weight.resize(w.size(), 0);
        for (std::size_t t = 0; t < w.size(); ++t) weight[t] += w[t];
      }
      cx_.space.add(name.empty() ? "1" : name, deg, weight);
    }
    cx_.k_degree = kdeg;
    const std::size_t n = monos_.size();
    std::vector<std::map<std::size_t, Scalar>> d0(n), d1(n);
    for (std::size_t c = 0; c < n; ++c) apply(monos_[c], d0[c], d1[c]);
    cx_.d.coeff.assign(2, SparseMatrix<Scalar>(n, n));
    for (std::size_t c = 0; c < n; ++c) {
      cx_.d.coeff[0].set_column(c, make_sparse(d0[c]));
      cx_.d.coeff[1].set_column(c, make_sparse(d1[c]));
    }
    if (cx_.d.coeff[1].is_zero_matrix()) cx_.d.coeff.pop_back();
    cx_.closed_below = cx_.closed_above = complete_ || opt_.count_even_only;
    cx_.require_valid();
  }

  void apply(const monomial& w, std::map<std::size_t, Scalar>& out0, std::map<std::size_t, Scalar>& out1) const {
    const int n = static_cast<int>(w.size());
    std::vector<int> sh;
    for (auto i : w) sh.push_back(shifted(i));
    for (int k = 1; k <= n; ++k) {
      if (!L_.has_bracket(static_cast<std::size_t>(k))) continue;
      for_each_unshuffle(n, k, [&](const std::vector<int>& S, const std::vector<int>& R) {
        std::vector<int> perm = S;
        perm.insert(perm.end(), R.begin(), R.end());
        int eps = koszul_sign(perm, sh);
        std::vector<LInfinityAlgebra::element> in;
        std::vector<int> in_deg;
        for (int s : S) {
          auto e = L_.zero();
          e[w[static_cast<std::size_t>(s)]] = Scalar(1);
          in.push_back(std::move(e));
          in_deg.push_back(L_.deg(w[static_cast<std::size_t>(s)]));
        }
        auto z = L_.bracket(in);
        int sign = eps * detail::decalage_sign(in_deg);
        std::vector<std::size_t> rest;
        int rest_deg = 0;
        for (int r : R) {
          rest.push_back(w[static_cast<std::size_t>(r)]);
          rest_deg += shifted(w[static_cast<std::size_t>(r)]);
        }
        for (std::size_t t = 0; t < z.size(); ++t) {
          if (z[t].is_zero()) continue;
          if (L_.central() && *L_.central() == t) {
            // sK v_R = (-1)^{|sK||v_R|} v_R sK
            auto [m, s] = normalize(rest);
            if (s == 0) continue;
            int ks = ((shifted(t) * rest_deg) & 1) ? -1 : 1;
            add(out1, m, Scalar(sign * s * ks) * z[t]);
            continue;
          }
          std::vector<std::size_t> word{t};
          word.insert(word.end(), rest.begin(), rest.end());
          auto [m, s] = normalize(word);
          if (s == 0) continue;
          add(out0, m, Scalar(sign * s) * z[t]);
        }
      });
    }
  }

  void add(std::map<std::size_t, Scalar>& out, const monomial& m, const Scalar& c) const {
    auto it = index_.find(m);
    // the differential never lengthens a monomial, so this only fires for a malformed L
    if (it == index_.end()) throw std::logic_error("ce_complex: image outside the window");
    auto& x = out[it->second];
    x += c;
    if (x.is_zero()) out.erase(it->second);
  }
};

inline ChainComplexWindow ce_complex(const LInfinityAlgebra& L, int sym_cutoff) {
  return CeComplex(L, CeOptions{sym_cutoff, false}).complex();
}

}  // namespace hkm
