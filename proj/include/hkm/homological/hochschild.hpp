#pragma once

#include "hkm/core/complex.hpp"
#include "hkm/core/koszul.hpp"
#include "hkm/core/linalg.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hkm {

/**
 * Graded associative algebra on a finite basis.  A product may be marked as
 * leaving the window (e.g. a degree-truncated polynomial ring), in which case
 * complexes built from it raise the overflow flag.
 */
class FiniteAlgebra {
 public:
  FiniteAlgebra() = default;
  FiniteAlgebra(std::vector<std::string> names, std::vector<int> degrees)
      : names_(std::move(names)), degrees_(std::move(degrees)) {
    if (names_.size() != degrees_.size()) throw std::invalid_argument("algebra: names and degrees differ in length");
  }

  std::size_t dim() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  int degree(std::size_t i) const { return degrees_.at(i); }
  std::optional<std::size_t> unit() const { return unit_; }
  void set_unit(std::size_t i) { unit_ = i; }

  void set_product(std::size_t i, std::size_t j, sparse_vec<Scalar> v) { table_[{i, j}] = std::move(v); }
  void set_overflow(std::size_t i, std::size_t j) { overflow_.insert({i, j}); }
  bool overflows(std::size_t i, std::size_t j) const { return overflow_.count({i, j}) != 0; }

  sparse_vec<Scalar> mul(std::size_t i, std::size_t j) const {
    if (unit_ && i == *unit_) return {{j, Scalar(1)}};
    if (unit_ && j == *unit_) return {{i, Scalar(1)}};
    auto it = table_.find({i, j});
    return it == table_.end() ? sparse_vec<Scalar>{} : it->second;
  }

  /// Associativity on basis triples whose products stay inside the window.
  bool check_associative() const {
    for (std::size_t a = 0; a < dim(); ++a)
      for (std::size_t b = 0; b < dim(); ++b)
        for (std::size_t c = 0; c < dim(); ++c) {
          std::map<std::size_t, Scalar> l, r;
          bool skip = overflows(a, b) || overflows(b, c);
          for (const auto& [k, x] : mul(a, b)) {
            skip = skip || overflows(k, c);
            for (const auto& [m, y] : mul(k, c)) l[m] += x * y;
          }
          for (const auto& [k, x] : mul(b, c)) {
            skip = skip || overflows(a, k);
            for (const auto& [m, y] : mul(a, k)) r[m] += x * y;
          }
          if (!skip && make_sparse(l) != make_sparse(r)) return false;
        }
    return true;
  }

  static FiniteAlgebra ground_field() {
    FiniteAlgebra A({"1"}, {0});
    A.set_unit(0);
    return A;
  }

  /// C[x]/(x^n), basis 1, x, ..., x^{n-1}.
  static FiniteAlgebra truncated_polynomial(int n) {
    if (n < 1) throw std::invalid_argument("truncated_polynomial: n >= 1");
    FiniteAlgebra A = powers(n - 1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i + j < n) A.set_product(i, j, {{static_cast<std::size_t>(i + j), Scalar(1)}});
    return A;
  }

  /// Degree window x^0..x^max of C[x]; products past max are flagged.
  static FiniteAlgebra polynomial_window(int max) {
    FiniteAlgebra A = powers(max);
    for (int i = 0; i <= max; ++i)
      for (int j = 0; j <= max; ++j) {
        if (i + j <= max)
          A.set_product(i, j, {{static_cast<std::size_t>(i + j), Scalar(1)}});
        else
          A.set_overflow(i, j);
      }
    return A;
  }

  /// Exterior algebra on one generator e of degree 1.
  static FiniteAlgebra exterior1() {
    FiniteAlgebra A({"1", "e"}, {0, 1});
    A.set_unit(0);
    return A;
  }

  /// Graded commutative C[x]/(x^n) (x) Lambda[e], |x| = 0, |e| = 1.
  static FiniteAlgebra truncated_with_odd(int n) {
    std::vector<std::string> names;
    std::vector<int> degs;
    for (int e = 0; e < 2; ++e)
      for (int i = 0; i < n; ++i) {
        names.push_back((i ? "x^" + std::to_string(i) : std::string("1")) + (e ? "e" : ""));
        degs.push_back(e);
      }
    FiniteAlgebra A(names, degs);
    A.set_unit(0);
    auto id = [n](int i, int e) { return static_cast<std::size_t>(e * n + i); };
    for (int e1 = 0; e1 < 2; ++e1)
      for (int e2 = 0; e2 < 2; ++e2)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            if (i + j < n && e1 + e2 < 2) A.set_product(id(i, e1), id(j, e2), {{id(i + j, e1 + e2), Scalar(1)}});
    return A;
  }

  /// N x N matrices, basis E_ij at i*N + j.
  static FiniteAlgebra matrices(int N) {
    std::vector<std::string> names;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) names.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
    FiniteAlgebra A(names, std::vector<int>(names.size(), 0));
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k)
          A.set_product(static_cast<std::size_t>(i * N + j), static_cast<std::size_t>(j * N + k),
                        {{static_cast<std::size_t>(i * N + k), Scalar(1)}});
    return A;
  }

 private:
  std::vector<std::string> names_;
  std::vector<int> degrees_;
  std::optional<std::size_t> unit_;
  std::map<std::pair<std::size_t, std::size_t>, sparse_vec<Scalar>> table_;
  std::set<std::pair<std::size_t, std::size_t>> overflow_;

  static FiniteAlgebra powers(int max) {
    std::vector<std::string> names;
    for (int i = 0; i <= max; ++i) names.push_back(i == 0 ? "1" : (i == 1 ? "x" : "x^" + std::to_string(i)));
    FiniteAlgebra A(names, std::vector<int>(names.size(), 0));
    A.set_unit(0);
    return A;
  }
};

namespace detail {

inline int parity_sign(int e) { return (e & 1) ? -1 : 1; }

/// Shifted degree sum of a_0..a_{k-1}.
inline int shifted_prefix(const FiniteAlgebra& A, const std::vector<std::size_t>& t, std::size_t k) {
  int s = 0;
  for (std::size_t j = 0; j < k; ++j) s += A.degree(t[j]) + 1;
  return s;
}

}  // namespace detail

/// Sign of t(a_0 (x) ... (x) a_n) = sign * a_n (x) a_0 (x) ... (x) a_{n-1}, Koszul in shifted degrees.
inline int rotation_sign(const FiniteAlgebra& A, const std::vector<std::size_t>& t) {
  const std::size_t n = t.size() - 1;
  return detail::parity_sign((A.degree(t[n]) + 1) * detail::shifted_prefix(A, t, n));
}

/**
 * b(a_0 (x) ... (x) a_n) = sum_i s_i a_0 .. (a_i a_{i+1}) .. a_n + s_w (a_n a_0) (x) a_1 .. a_{n-1}, with
 * s_i = (-1)^{sum_{j<i}(|a_j|+1) + |a_i|} and s_w = rotation sign times (-1)^{|a_n|}.
 * Calls f(tuple, coefficient) per term; sets overflow when a product leaves the window.
 */
template <class Fn>
void hochschild_b(const FiniteAlgebra& A, const std::vector<std::size_t>& t, bool& overflow, Fn&& f) {
  const std::size_t n = t.size() - 1;
  if (n == 0) return;
  for (std::size_t i = 0; i < n; ++i) {
    if (A.overflows(t[i], t[i + 1])) overflow = true;
    int s = detail::parity_sign(detail::shifted_prefix(A, t, i) + A.degree(t[i]));
    for (const auto& [k, c] : A.mul(t[i], t[i + 1])) {
      std::vector<std::size_t> u(t.begin(), t.begin() + static_cast<long>(i));
      u.push_back(k);
      u.insert(u.end(), t.begin() + static_cast<long>(i) + 2, t.end());
      f(u, Scalar(s) * c);
    }
  }
  if (A.overflows(t[n], t[0])) overflow = true;
  int s = rotation_sign(A, t) * detail::parity_sign(A.degree(t[n]));
  for (const auto& [k, c] : A.mul(t[n], t[0])) {
    std::vector<std::size_t> u{k};
    u.insert(u.end(), t.begin() + 1, t.begin() + static_cast<long>(n));
    f(u, Scalar(s) * c);
  }
}

struct HochschildWindow {
  ChainComplexWindow complex;
  /// basis tuples (orbit representatives for the cyclic quotient)
  std::vector<std::vector<std::size_t>> tuples;
  bool overflow = false;
};

struct HochschildOptions {
  /// drop tuples with the unit in slots 1..n
  bool normalized = false;
  /// additionally drop the unit in arity 1 (quotient by the chains of the ground field)
  bool reduced = false;
};

namespace detail {

inline int chain_degree(const FiniteAlgebra& A, const std::vector<std::size_t>& t) {
  int s = 1;
  for (auto i : t) s += A.degree(i) - 1;
  return s;
}

inline std::string tuple_name(const FiniteAlgebra& A, const std::vector<std::size_t>& t) {
  std::string s;
  for (std::size_t j = 0; j < t.size(); ++j) s += (j ? "|" : "") + A.name(t[j]);
  return s;
}

inline void for_each_tuple(std::size_t dim, int arity, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> t(static_cast<std::size_t>(arity), 0);
  if (dim == 0) return;
  while (true) {
    f(t);
    int i = arity - 1;
    while (i >= 0 && t[static_cast<std::size_t>(i)] + 1 == dim) t[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return;
    ++t[static_cast<std::size_t>(i)];
  }
}

}  // namespace detail

/**
 * Hochschild chains A^{(x)(n+1)}, n + 1 <= arity_cutoff, with degree
 * 1 + sum(|a_j| - 1) (chain degree n appears as -n).  The bottom arity is
 * not closed: b from arity_cutoff + 1 is missing.
 */
inline HochschildWindow hochschild_window(const FiniteAlgebra& A, int arity_cutoff, HochschildOptions opt = {}) {
  if (arity_cutoff < 1) throw std::invalid_argument("hochschild_window: arity_cutoff >= 1");
  if ((opt.normalized || opt.reduced) && !A.unit()) throw std::invalid_argument("hochschild_window: needs a unit");
  if (opt.reduced) opt.normalized = true;
  HochschildWindow out;
  std::map<std::vector<std::size_t>, std::size_t> idx;
  auto keep = [&](const std::vector<std::size_t>& t) {
    if (!opt.normalized) return true;
    for (std::size_t j = 1; j < t.size(); ++j)
      if (t[j] == *A.unit()) return false;
    return !(opt.reduced && t.size() == 1 && t[0] == *A.unit());
  };
  for (int a = 1; a <= arity_cutoff; ++a)
    detail::for_each_tuple(A.dim(), a, [&](const std::vector<std::size_t>& t) {
      if (!keep(t)) return;
      idx[t] = out.tuples.size();
      out.tuples.push_back(t);
      out.complex.space.add(detail::tuple_name(A, t), detail::chain_degree(A, t), {static_cast<int>(t.size())});
    });
  const std::size_t n = out.tuples.size();
  SparseMatrix<Scalar> D(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::map<std::size_t, Scalar> col;
    hochschild_b(A, out.tuples[c], out.overflow, [&](const std::vector<std::size_t>& u, const Scalar& x) {
      auto it = idx.find(u);
      if (it != idx.end()) col[it->second] += x;
    });
    D.set_column(c, make_sparse(col));
  }
  out.complex.d.coeff = {D};
  out.complex.closed_above = true;
  out.complex.require_valid();
  return out;
}

/// Orbit representative of t under signed rotation, and the sign with t = sign * rep (0 if the class vanishes).
inline std::pair<std::vector<std::size_t>, int> cyclic_representative(const FiniteAlgebra& A,
                                                                     const std::vector<std::size_t>& t) {
  std::vector<std::size_t> cur = t, best = t;
  int s = 1, best_s = 1;
  // rep = sign(rep) * t: walk the orbit, tracking cur = s * t in the quotient
  std::map<std::vector<std::size_t>, int> seen{{t, 1}};
  for (std::size_t r = 1; r < t.size(); ++r) {
    // [cur] = [t(cur)] / rotation_sign(cur)
    int rs = rotation_sign(A, cur);
    std::vector<std::size_t> nxt{cur.back()};
    nxt.insert(nxt.end(), cur.begin(), cur.end() - 1);
    cur = nxt;
    s *= rs;
    auto it = seen.find(cur);
    if (it != seen.end()) {
      if (it->second != s) return {best, 0};
      continue;
    }
    seen[cur] = s;
    if (cur < best) {
      best = cur;
      best_s = s;
    }
  }
  // t(rest) closes the orbit: check the full turn
  int rs = rotation_sign(A, cur);
  if (s * rs != 1) return {best, 0};
  // [t] = s_best^{-1} [best] with [x] = rs [t x]
  return {best, best_s};
}

/// Cyclic quotient C / (1 - t) of the (unnormalized) Hochschild window.
inline HochschildWindow cyclic_quotient(const FiniteAlgebra& A, int arity_cutoff) {
  if (arity_cutoff < 1) throw std::invalid_argument("cyclic_quotient: arity_cutoff >= 1");
  HochschildWindow out;
  std::map<std::vector<std::size_t>, std::size_t> idx;
  for (int a = 1; a <= arity_cutoff; ++a)
    detail::for_each_tuple(A.dim(), a, [&](const std::vector<std::size_t>& t) {
      auto [rep, s] = cyclic_representative(A, t);
      if (s == 0 || rep != t) return;
      idx[t] = out.tuples.size();
      out.tuples.push_back(t);
      out.complex.space.add(detail::tuple_name(A, t), detail::chain_degree(A, t), {static_cast<int>(t.size())});
    });
  const std::size_t n = out.tuples.size();
  SparseMatrix<Scalar> D(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::map<std::size_t, Scalar> col;
    hochschild_b(A, out.tuples[c], out.overflow, [&](const std::vector<std::size_t>& u, const Scalar& x) {
      auto [rep, s] = cyclic_representative(A, u);
      if (s == 0) return;
      auto it = idx.find(rep);
      if (it != idx.end()) col[it->second] += Scalar(s) * x;
    });
    D.set_column(c, make_sparse(col));
  }
  out.complex.d.coeff = {D};
  out.complex.closed_above = true;
  out.complex.require_valid();
  return out;
}

}  // namespace hkm
