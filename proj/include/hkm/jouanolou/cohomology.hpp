#pragma once

#include "hkm/core/linalg.hpp"
#include "hkm/jouanolou/window.hpp"

#include <map>
#include <utility>
#include <vector>

namespace hkm {

struct ADCohomology {
  WeightWindow window;
  int p = 0;
  /// (q, weight) -> dim H^{p,q}
  std::map<std::pair<int, std::vector<int>>, std::size_t> dims;
  /// entries whose dimension changed between the window and its enlargement
  std::vector<std::pair<int, std::vector<int>>> unstable;

  std::size_t dim(int q, const std::vector<int>& w) const {
    auto it = dims.find({q, w});
    return it == dims.end() ? 0 : it->second;
  }
  bool stable() const { return unstable.empty(); }
};

namespace detail {

/// dim H^{p,q} at a single weight, all q, for one window (no stability check).
inline std::vector<std::size_t> ad_cohomology_at_weight(int d, int p, const std::vector<int>& w, int k_max,
                                                        int deg_max) {
  const int Kc = k_max + 1;
  struct level {
    std::vector<sparse_vec<Scalar>> members;  // coordinates of W_q
    std::vector<sparse_vec<Scalar>> images;   // dbar of W_q
  };
  CoordinateSpace cs(Kc);
  std::vector<level> lv(static_cast<std::size_t>(d + 1));
  for (int q = 0; q <= d; ++q) {
    auto span = window_span(d, p, q, w, k_max, deg_max);
    if (span.empty()) continue;
    std::vector<sparse_vec<Scalar>> S, E, D;
    for (const auto& s : span) {
      S.push_back(cs.coords(s));
      E.push_back(cs.coords(s.euler_contraction()));
      D.push_back(cs.coords(s.dbar()));
    }
    std::size_t rows = 1;
    for (const auto* fam : {&S, &E, &D})
      for (const auto& v : *fam)
        if (!v.empty()) rows = std::max(rows, v.back().first + 1);
    SparseMatrix<Scalar> Em(rows, span.size());
    for (std::size_t j = 0; j < span.size(); ++j) Em.set_column(j, E[j]);
    for (const auto& c : rank_kernel(Em).kernel) {
      sparse_vec<Scalar> sv, dv;
      for (const auto& [j, x] : c) {
        sv = axpy(sv, x, S[j]);
        dv = axpy(dv, x, D[j]);
      }
      lv[q].members.push_back(std::move(sv));
      lv[q].images.push_back(std::move(dv));
    }
  }

  std::vector<std::size_t> out(static_cast<std::size_t>(d + 1), 0);
  for (int q = 0; q <= d; ++q) {
    const auto& L = lv[q];
    // cocycles: combinations of members with vanishing dbar
    std::size_t n = L.members.size();
    std::size_t rows = 1;
    for (const auto& v : L.images)
      if (!v.empty()) rows = std::max(rows, v.back().first + 1);
    SparseMatrix<Scalar> Dm(rows, n);
    for (std::size_t j = 0; j < n; ++j) Dm.set_column(j, L.images[j]);
    std::vector<sparse_vec<Scalar>> Z;
    for (const auto& c : rank_kernel(Dm).kernel) {
      sparse_vec<Scalar> v;
      for (const auto& [j, x] : c) v = axpy(v, x, L.members[j]);
      Z.push_back(std::move(v));
    }
    std::size_t dimZ = span_rank(Z);
    std::size_t dimW = span_rank(L.members);
    std::size_t dimBW = 0;
    if (q > 0) {
      const auto& B = lv[q - 1].images;
      std::vector<sparse_vec<Scalar>> both = B;
      both.insert(both.end(), L.members.begin(), L.members.end());
      dimBW = span_rank(B) + dimW - span_rank(both);
    }
    out[q] = dimZ - dimBW;
  }
  return out;
}

}  // namespace detail

/**
 * Windowed dim H^{p,q}(A_d, dbar) per torus weight.  The computation is
 * repeated on the enlarged window (K_max+1, deg_max+1); entries that move are
 * listed in `unstable`.
 */
inline ADCohomology cohomology_ad(const WeightWindow& window, int p) {
  window.validate();
  ADCohomology out;
  out.window = window;
  out.p = p;
  auto big = window.enlarged();
  for (const auto& w : window.weights()) {
    auto a = detail::ad_cohomology_at_weight(window.d, p, w, window.k_max, window.deg_max);
    auto b = detail::ad_cohomology_at_weight(big.d, p, w, big.k_max, big.deg_max);
    for (int q = 0; q <= window.d; ++q) {
      out.dims[{q, w}] = a[q];
      if (a[q] != b[q]) out.unstable.push_back({q, w});
    }
  }
  return out;
}

}  // namespace hkm
