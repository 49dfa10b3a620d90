#pragma once

#include "hkm/core/scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hkm {

/// Sparse vector: sorted (index, value) pairs, no stored zeros.
template <class F>
using sparse_vec = std::vector<std::pair<std::size_t, F>>;

template <class F>
sparse_vec<F> make_sparse(const std::map<std::size_t, F>& m) {
  sparse_vec<F> v;
  v.reserve(m.size());
  for (const auto& [i, x] : m)
    if (!is_zero(x)) v.emplace_back(i, x);
  return v;
}

template <class F>
sparse_vec<F> make_sparse(const std::vector<F>& dense) {
  sparse_vec<F> v;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (!is_zero(dense[i])) v.emplace_back(i, dense[i]);
  return v;
}

/// a + s*b
template <class F>
sparse_vec<F> axpy(const sparse_vec<F>& a, const F& s, const sparse_vec<F>& b) {
  sparse_vec<F> r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      F x = s * b[j].second;
      if (!is_zero(x)) r.emplace_back(b[j].first, std::move(x));
      ++j;
    } else {
      F x = a[i].second + s * b[j].second;
      if (!is_zero(x)) r.emplace_back(a[i].first, std::move(x));
      ++i;
      ++j;
    }
  }
  return r;
}

template <class F>
F dot(const sparse_vec<F>& a, const sparse_vec<F>& b) {
  F acc{};
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first)
      ++i;
    else if (b[j].first < a[i].first)
      ++j;
    else
      acc += a[i++].second * b[j++].second;
  }
  return acc;
}

template <class F>
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), col_data_(cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void set(std::size_t r, std::size_t c, const F& x) {
    check(r, c);
    auto& col = col_data_[c];
    auto it = std::lower_bound(col.begin(), col.end(), r, [](const auto& e, std::size_t k) { return e.first < k; });
    if (it != col.end() && it->first == r) {
      if (is_zero(x))
        col.erase(it);
      else
        it->second = x;
    } else if (!is_zero(x)) {
      col.insert(it, {r, x});
    }
  }

  void add(std::size_t r, std::size_t c, const F& x) { set(r, c, get(r, c) + x); }

  F get(std::size_t r, std::size_t c) const {
    check(r, c);
    const auto& col = col_data_[c];
    auto it = std::lower_bound(col.begin(), col.end(), r, [](const auto& e, std::size_t k) { return e.first < k; });
    if (it != col.end() && it->first == r) return it->second;
    return F{};
  }

  const sparse_vec<F>& column(std::size_t c) const { return col_data_.at(c); }
  void set_column(std::size_t c, sparse_vec<F> v) {
    if (!v.empty() && v.back().first >= rows_) throw std::out_of_range("column entry out of range");
    col_data_.at(c) = std::move(v);
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : col_data_) n += c.size();
    return n;
  }

  bool is_zero_matrix() const { return nonzeros() == 0; }

  std::vector<sparse_vec<F>> row_vectors() const {
    std::vector<sparse_vec<F>> rows(rows_);
    for (std::size_t c = 0; c < cols_; ++c)
      for (const auto& [r, x] : col_data_[c]) rows[r].emplace_back(c, x);
    return rows;
  }

  SparseMatrix transpose() const {
    SparseMatrix t(cols_, rows_);
    auto rv = row_vectors();
    for (std::size_t r = 0; r < rows_; ++r) t.col_data_[r] = std::move(rv[r]);
    return t;
  }

  sparse_vec<F> apply(const sparse_vec<F>& v) const {
    std::map<std::size_t, F> acc;
    for (const auto& [c, x] : v) {
      if (c >= cols_) throw std::out_of_range("vector index out of range");
      for (const auto& [r, y] : col_data_[c]) acc[r] += y * x;
    }
    return make_sparse(acc);
  }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
    SparseMatrix r(a.rows_, b.cols_);
    for (std::size_t c = 0; c < b.cols_; ++c) r.col_data_[c] = a.apply(b.col_data_[c]);
    return r;
  }

  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
    SparseMatrix r(a.rows_, a.cols_);
    for (std::size_t c = 0; c < a.cols_; ++c) r.col_data_[c] = axpy(a.col_data_[c], F(1), b.col_data_[c]);
    return r;
  }

  SparseMatrix scaled(const F& s) const {
    SparseMatrix r(rows_, cols_);
    if (is_zero(s)) return r;
    for (std::size_t c = 0; c < cols_; ++c)
      for (const auto& [i, x] : col_data_[c]) r.col_data_[c].emplace_back(i, x * s);
    return r;
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.col_data_ == b.col_data_;
  }

  static SparseMatrix identity(std::size_t n) {
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.col_data_[i].emplace_back(i, F(1));
    return m;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<sparse_vec<F>> col_data_;

  void check(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index out of range");
  }
};

/**
 * Incrementally built row echelon form.  Pivot rows are normalized to have
 * leading coefficient 1; reduce() eliminates every pivot coordinate, so it is
 * a linear projection onto the non-pivot coordinates along the span.
 */
template <class F>
class Echelon {
 public:
  std::size_t rank() const { return pivots_.size(); }

  /// Full reduction of v modulo the current span.
  sparse_vec<F> reduce(sparse_vec<F> v) const {
    std::size_t pos = 0;
    while (pos < v.size()) {
      auto it = pivots_.find(v[pos].first);
      if (it == pivots_.end()) {
        ++pos;
        continue;
      }
      F s = -v[pos].second;
      std::size_t key = v[pos].first;
      v = axpy(v, s, rows_[it->second]);
      // entries below key are untouched by a pivot row starting at key
      pos = static_cast<std::size_t>(
          std::lower_bound(v.begin(), v.end(), key, [](const auto& e, std::size_t k) { return e.first < k; }) -
          v.begin());
    }
    return v;
  }

  bool contains(const sparse_vec<F>& v) const { return reduce(v).empty(); }

  /// Adds v; returns true if the rank grew.
  bool insert(const sparse_vec<F>& v) {
    auto r = reduce(v);
    if (r.empty()) return false;
    F inv = F(1) / r.front().second;
    for (auto& e : r) e.second = e.second * inv;
    pivots_.emplace(r.front().first, rows_.size());
    rows_.push_back(std::move(r));
    return true;
  }

  const std::vector<sparse_vec<F>>& rows() const { return rows_; }
  const std::map<std::size_t, std::size_t>& pivots() const { return pivots_; }

 private:
  std::vector<sparse_vec<F>> rows_;
  std::map<std::size_t, std::size_t> pivots_;  // pivot column -> row index
};

template <class F>
struct RankKernel {
  std::size_t rank = 0;
  std::vector<sparse_vec<F>> kernel;
};

/// Rank and a kernel basis of m (kernel vectors live in the column space).
template <class F>
RankKernel<F> rank_kernel(const SparseMatrix<F>& m) {
  auto rows = m.row_vectors();
  // sparse rows first: less fill during elimination
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  Echelon<F> ech;
  for (const auto& r : rows)
    if (!r.empty()) ech.insert(r);

  // back substitution to reduced row echelon form
  std::map<std::size_t, sparse_vec<F>> rref;
  for (auto it = ech.pivots().rbegin(); it != ech.pivots().rend(); ++it) {
    sparse_vec<F> row = ech.rows()[it->second];
    for (std::size_t pos = 1; pos < row.size();) {
      auto f = rref.find(row[pos].first);
      if (f == rref.end()) {
        ++pos;
        continue;
      }
      std::size_t key = row[pos].first;
      row = axpy(row, F(-row[pos].second), f->second);
      pos = static_cast<std::size_t>(
          std::lower_bound(row.begin(), row.end(), key, [](const auto& e, std::size_t k) { return e.first < k; }) -
          row.begin());
    }
    rref.emplace(it->first, std::move(row));
  }

  RankKernel<F> out;
  out.rank = ech.rank();
  // kernel: one vector per free column
  std::vector<std::vector<std::pair<std::size_t, F>>> by_free(m.cols());
  for (const auto& [p, row] : rref)
    for (const auto& [c, x] : row)
      if (c != p) by_free[c].emplace_back(p, -x);
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (rref.count(c)) continue;
    std::map<std::size_t, F> v;
    v[c] = F(1);
    for (const auto& [p, x] : by_free[c]) v[p] = x;
    out.kernel.push_back(make_sparse(v));
  }
  return out;
}

template <class F>
std::size_t rank(const SparseMatrix<F>& m) {
  Echelon<F> ech;
  for (std::size_t c = 0; c < m.cols(); ++c) ech.insert(m.column(c));
  return ech.rank();
}

/// Dimension of the span of a family of vectors.
template <class F>
std::size_t span_rank(const std::vector<sparse_vec<F>>& vs) {
  Echelon<F> ech;
  for (const auto& v : vs) ech.insert(v);
  return ech.rank();
}

/// Some x with m*x = b, if one exists.
template <class F>
std::optional<sparse_vec<F>> solve(const SparseMatrix<F>& m, const sparse_vec<F>& b) {
  // augment with an extra column and read the solution off the kernel
  SparseMatrix<F> aug(m.rows(), m.cols() + 1);
  for (std::size_t c = 0; c < m.cols(); ++c) aug.set_column(c, m.column(c));
  sparse_vec<F> nb;
  for (const auto& [i, x] : b) nb.emplace_back(i, -x);
  aug.set_column(m.cols(), nb);
  auto rk = rank_kernel(aug);
  for (const auto& v : rk.kernel) {
    if (v.empty() || v.back().first != m.cols()) continue;
    F inv = F(1) / v.back().second;
    sparse_vec<F> x;
    for (const auto& [i, y] : v)
      if (i != m.cols()) x.emplace_back(i, y * inv);
    return x;
  }
  return std::nullopt;
}

}  // namespace hkm
