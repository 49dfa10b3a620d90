#pragma once

#include "hkm/core/graded.hpp"
#include "hkm/core/linalg.hpp"
#include "hkm/core/scalar.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hkm {

/// Matrix with entries in F[K], stored as its coefficients of K^0, K^1, ...
template <class F>
struct KMatrix {
  std::vector<SparseMatrix<F>> coeff;

  std::size_t rows() const { return coeff.empty() ? 0 : coeff[0].rows(); }
  std::size_t cols() const { return coeff.empty() ? 0 : coeff[0].cols(); }

  /// Specialize K to a value.
  SparseMatrix<F> at(const F& k) const {
    SparseMatrix<F> m(rows(), cols());
    F pw(1);
    for (const auto& c : coeff) {
      if (!is_zero(pw)) m = m + c.scaled(pw);
      pw = pw * k;
    }
    return m;
  }

  /// Product, truncating K^2 = 0 when K is odd.
  static KMatrix multiply(const KMatrix& a, const KMatrix& b, bool k_odd) {
    KMatrix r;
    std::size_t n = a.coeff.size() + b.coeff.size();
    if (n == 0) return r;
    n -= 1;
    if (k_odd) n = std::min<std::size_t>(n, 2);
    r.coeff.assign(n, SparseMatrix<F>(a.rows(), b.cols()));
    for (std::size_t i = 0; i < a.coeff.size(); ++i)
      for (std::size_t j = 0; j < b.coeff.size(); ++j)
        if (i + j < n) r.coeff[i + j] = r.coeff[i + j] + a.coeff[i] * b.coeff[j];
    return r;
  }

  bool is_zero_matrix() const {
    for (const auto& c : coeff)
      if (!c.is_zero_matrix()) return false;
    return true;
  }
};

/**
 * Finite window of a cochain complex.  All degrees live in one labeled space;
 * the differential raises degree by one and is polynomial in a central
 * parameter K of degree k_degree (so the K^j piece raises degree by
 * 1 - j*k_degree).  Chain complexes are stored with negated degrees.
 */
struct ChainComplexWindow {
  GradedSpaceWindow space;
  KMatrix<Scalar> d;
  int k_degree = 0;
  /// Degrees at which the window is a genuine end of the complex.
  bool closed_below = false;
  bool closed_above = false;

  bool k_odd() const { return (k_degree % 2) != 0; }

  SparseMatrix<Scalar> differential(const Scalar& k = Scalar()) const { return d.at(k); }

  /// d^2 = 0 as a polynomial identity in K.
  bool squares_to_zero() const { return KMatrix<Scalar>::multiply(d, d, k_odd()).is_zero_matrix(); }

  void require_valid() const {
    if (d.coeff.empty() || d.rows() != space.size() || d.cols() != space.size())
      throw std::invalid_argument("complex: differential shape mismatch");
    for (std::size_t j = 0; j < d.coeff.size(); ++j)
      for (std::size_t c = 0; c < space.size(); ++c)
        for (const auto& [r, x] : d.coeff[j].column(c))
          if (space[r].degree != space[c].degree + 1 - static_cast<int>(j) * k_degree)
            throw std::invalid_argument("complex: differential piece K^" + std::to_string(j) +
                                        " has wrong degree at " + space[c].name);
    if (!squares_to_zero()) throw std::invalid_argument("complex: d^2 != 0");
  }

  ChainComplexWindow shifted(int k) const {
    ChainComplexWindow c = *this;
    c.space = space.shifted(k);
    return c;
  }
};

struct CohomologyPiece {
  int degree = 0;
  std::vector<int> weight;
  std::size_t chain_dim = 0;
  std::size_t dim = 0;
  std::vector<sparse_vec<Scalar>> representatives;
  bool boundary_contaminated = false;
};

struct CohomologyWindow {
  std::vector<CohomologyPiece> pieces;

  std::size_t dim(int degree) const {
    std::size_t n = 0;
    for (const auto& p : pieces)
      if (p.degree == degree) n += p.dim;
    return n;
  }
  std::size_t dim(int degree, const std::vector<int>& weight) const {
    for (const auto& p : pieces)
      if (p.degree == degree && p.weight == weight) return p.dim;
    return 0;
  }
  std::vector<int> contaminated_degrees() const {
    std::vector<int> out;
    for (const auto& p : pieces)
      if (p.boundary_contaminated && (out.empty() || out.back() != p.degree)) out.push_back(p.degree);
    return out;
  }
};

/**
 * Cohomology of the window with K specialized to k_value.  When split_by_weight
 * is set the label weights must be preserved by d and pieces are reported per
 * (degree, weight).  The lowest and highest degrees are flagged unless the
 * complex declares them closed.
 */
inline CohomologyWindow cohomology_window(const ChainComplexWindow& cx, const Scalar& k_value = Scalar(),
                                          bool split_by_weight = false) {
  if (cx.k_degree != 0 && !k_value.is_zero())
    throw std::invalid_argument("cohomology_window: specializing a graded K breaks the grading");
  auto d = cx.differential(k_value);
  using key_t = std::pair<int, std::vector<int>>;
  std::map<key_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < cx.space.size(); ++i) {
    const auto& l = cx.space[i];
    groups[{l.degree, split_by_weight ? l.weight : std::vector<int>{}}].push_back(i);
  }
  if (split_by_weight)
    for (std::size_t c = 0; c < cx.space.size(); ++c)
      for (const auto& [r, x] : d.column(c))
        if (cx.space[r].weight != cx.space[c].weight)
          throw std::invalid_argument("cohomology_window: differential does not preserve weights");

  int lo = 0, hi = 0;
  if (!groups.empty()) {
    lo = groups.begin()->first.first;
    hi = groups.rbegin()->first.first;
  }

  CohomologyWindow out;
  for (const auto& [key, idx] : groups) {
    CohomologyPiece piece;
    piece.degree = key.first;
    piece.weight = key.second;
    piece.chain_dim = idx.size();
    piece.boundary_contaminated = (key.first == lo && !cx.closed_below) || (key.first == hi && !cx.closed_above);

    SparseMatrix<Scalar> sub(cx.space.size(), idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j) sub.set_column(j, d.column(idx[j]));
    auto rk = rank_kernel(sub);

    Echelon<Scalar> image;
    auto prev = groups.find({key.first - 1, key.second});
    if (prev != groups.end())
      for (auto c : prev->second) image.insert(d.column(c));

    for (const auto& kv : rk.kernel) {
      sparse_vec<Scalar> v;
      for (const auto& [j, x] : kv) v.emplace_back(idx[j], x);
      std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      if (image.insert(v)) piece.representatives.push_back(std::move(v));
    }
    piece.dim = piece.representatives.size();
    out.pieces.push_back(std::move(piece));
  }
  return out;
}

}  // namespace hkm
