#pragma once

#include "hkm/core/complex.hpp"
#include "hkm/core/linalg.hpp"
#include "hkm/core/scalar.hpp"

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hkm {

using QMatrix = SparseMatrix<Scalar>;
using KPoly = KMatrix<Scalar>;

namespace detail {

inline KPoly kconst(const QMatrix& m) { return KPoly{{m}}; }

inline KPoly kadd(const KPoly& a, const KPoly& b, const Scalar& sb = Scalar(1)) {
  KPoly r;
  const std::size_t n = std::max(a.coeff.size(), b.coeff.size());
  const std::size_t rows = a.coeff.empty() ? b.rows() : a.rows();
  const std::size_t cols = a.coeff.empty() ? b.cols() : a.cols();
  r.coeff.assign(n, QMatrix(rows, cols));
  for (std::size_t i = 0; i < a.coeff.size(); ++i) r.coeff[i] = r.coeff[i] + a.coeff[i];
  for (std::size_t i = 0; i < b.coeff.size(); ++i) r.coeff[i] = r.coeff[i] + b.coeff[i].scaled(sb);
  return r;
}

inline KPoly kmul(const KPoly& a, const KPoly& b) { return KPoly::multiply(a, b, false); }
inline KPoly kmul(const KPoly& a, const KPoly& b, const KPoly& c) { return kmul(kmul(a, b), c); }

inline bool kequal(const KPoly& a, const KPoly& b) { return kadd(a, b, Scalar(-1)).is_zero_matrix(); }

inline QMatrix minus(const QMatrix& a, const QMatrix& b) { return a + b.scaled(Scalar(-1)); }

/// Map between two graded windows has the given degree.
inline void require_degree(const QMatrix& m, const GradedSpaceWindow& from, const GradedSpaceWindow& to, int deg,
                           const std::string& what) {
  if (m.rows() != to.size() || m.cols() != from.size()) throw std::invalid_argument(what + ": shape mismatch");
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (const auto& [r, x] : m.column(c))
      if (to[r].degree != from[c].degree + deg) throw std::invalid_argument(what + ": wrong degree");
}

}  // namespace detail

/**
 * Deformation retraction (iota, pi, eta) of a big complex onto a small one with
 * pi iota = id and iota pi - id = d eta + eta d.  Side conditions are imposed
 * at construction: eta is replaced by Q eta Q (Q = id - iota pi) and then by
 * -eta d eta, which keeps the homotopy identity.
 */
struct Retraction {
  ChainComplexWindow big;
  ChainComplexWindow small;
  QMatrix iota, pi, eta;
  /// the homotopy handed in violated a side condition and was replaced
  bool side_conditions_enforced = false;

  Retraction(ChainComplexWindow big_, ChainComplexWindow small_, QMatrix iota_, QMatrix pi_, QMatrix eta_)
      : big(std::move(big_)), small(std::move(small_)), iota(std::move(iota_)), pi(std::move(pi_)),
        eta(std::move(eta_)) {
    if (big.d.coeff.size() != 1 || small.d.coeff.size() != 1)
      throw std::invalid_argument("retraction: differentials must not depend on K");
    big.require_valid();
    small.require_valid();
    detail::require_degree(iota, small.space, big.space, 0, "retraction: iota");
    detail::require_degree(pi, big.space, small.space, 0, "retraction: pi");
    detail::require_degree(eta, big.space, big.space, -1, "retraction: eta");
    const auto& d = big.d.coeff[0];
    const auto& ds = small.d.coeff[0];
    if (!(d * iota == iota * ds) || !(pi * d == ds * pi)) throw std::invalid_argument("retraction: iota, pi not chain maps");
    if (!(pi * iota == QMatrix::identity(small.space.size())))
      throw std::invalid_argument("retraction: pi iota != id");
    if (!homotopy_holds(eta)) throw std::invalid_argument("retraction: iota pi - id != d eta + eta d");
    if (!satisfies_side_conditions()) {
      side_conditions_enforced = true;
      const auto q = detail::minus(QMatrix::identity(big.space.size()), iota * pi);
      QMatrix e1 = q * eta * q;
      eta = (e1 * d * e1).scaled(Scalar(-1));
      if (!homotopy_holds(eta) || !satisfies_side_conditions())
        throw std::logic_error("retraction: side-condition replacement failed");
    }
  }

  bool homotopy_holds(const QMatrix& h) const {
    const auto& d = big.d.coeff[0];
    return detail::minus(iota * pi, QMatrix::identity(big.space.size())) == d * h + h * d;
  }

  bool satisfies_side_conditions() const {
    return (eta * iota).is_zero_matrix() && (pi * eta).is_zero_matrix() && (eta * eta).is_zero_matrix();
  }
};

struct RetractionIdentities {
  bool small_d_squared = false;
  bool pi_iota = false;
  bool homotopy = false;
  bool iota_chain = false;
  bool pi_chain = false;
  bool eta_iota = false;
  bool pi_eta = false;
  bool eta_eta = false;

  bool all() const { return small_d_squared && pi_iota && homotopy && iota_chain && pi_chain && eta_iota && pi_eta && eta_eta; }
};

/// Deformed retraction data, polynomial in K.
struct PerturbationResult {
  KPoly big_d;  // d + K delta
  KPoly small_d;
  KPoly iota, pi, eta;
  GradedSpaceWindow big_space, small_space;
  /// number of terms of the geometric series that were nonzero
  std::size_t series_terms = 0;
  bool side_conditions_enforced = false;

  ChainComplexWindow big_complex() const { return complex_of(big_space, big_d); }
  ChainComplexWindow small_complex() const { return complex_of(small_space, small_d); }

  RetractionIdentities check() const {
    using namespace detail;
    RetractionIdentities r;
    const std::size_t nb = big_space.size();
    const std::size_t ns = small_space.size();
    r.small_d_squared = kmul(small_d, small_d).is_zero_matrix();
    r.pi_iota = kequal(kmul(pi, iota), kconst(QMatrix::identity(ns)));
    r.homotopy = kequal(kadd(kmul(iota, pi), kconst(QMatrix::identity(nb)), Scalar(-1)),
                        kadd(kmul(big_d, eta), kmul(eta, big_d)));
    r.iota_chain = kequal(kmul(big_d, iota), kmul(iota, small_d));
    r.pi_chain = kequal(kmul(pi, big_d), kmul(small_d, pi));
    r.eta_iota = kmul(eta, iota).is_zero_matrix();
    r.pi_eta = kmul(pi, eta).is_zero_matrix();
    r.eta_eta = kmul(eta, eta).is_zero_matrix();
    return r;
  }

 private:
  static ChainComplexWindow complex_of(const GradedSpaceWindow& s, KPoly d) {
    ChainComplexWindow c;
    c.space = s;
    while (d.coeff.size() > 1 && d.coeff.back().is_zero_matrix()) d.coeff.pop_back();
    c.d = std::move(d);
    c.k_degree = 0;
    c.closed_below = c.closed_above = true;
    return c;
  }
};

/**
 * Transfer of the perturbation d -> d + K delta.  With A = sum_n (K delta eta)^n K delta:
 *   small_d = d_s + pi A iota,  iota' = iota + eta A iota,
 *   pi' = pi + pi A eta,        eta' = eta + eta A eta.
 * The series is summed up to the nilpotency index of delta eta.
 */
inline PerturbationResult perturb_retraction(const Retraction& r, const QMatrix& delta) {
  using namespace detail;
  const std::size_t nb = r.big.space.size();
  require_degree(delta, r.big.space, r.big.space, 1, "perturb_retraction: delta");
  const auto& d = r.big.d.coeff[0];
  if (!(d * delta + delta * d).is_zero_matrix() || !(delta * delta).is_zero_matrix())
    throw std::invalid_argument("perturb_retraction: (d + K delta)^2 != 0");

  PerturbationResult out;
  out.big_space = r.big.space;
  out.small_space = r.small.space;
  out.side_conditions_enforced = r.side_conditions_enforced;
  out.big_d = KPoly{{d, delta}};

  // A as a polynomial: coefficient of K^{n+1} is (delta eta)^n delta
  const QMatrix de = delta * r.eta;
  KPoly A;
  A.coeff.push_back(QMatrix(nb, nb));
  QMatrix term = delta;
  std::size_t n = 0;
  while (!term.is_zero_matrix()) {
    if (n > nb) throw std::invalid_argument("perturb_retraction: delta eta is not nilpotent on the window");
    A.coeff.push_back(term);
    ++out.series_terms;
    term = de * term;
    ++n;
  }
  const KPoly I = kconst(r.iota), P = kconst(r.pi), H = kconst(r.eta);
  out.small_d = kadd(kconst(r.small.d.coeff[0]), kmul(P, A, I));
  out.iota = kadd(I, kmul(H, A, I));
  out.pi = kadd(P, kmul(P, A, H));
  out.eta = kadd(H, kmul(H, A, H));
  return out;
}

// ---------------------------------------------------------------------------
// Random retractions with nilpotent perturbations

struct RandomRetraction {
  Retraction retraction;
  QMatrix delta;
  /// "cone": delta is a chain map between columns, homology changes;
  /// "gauge": d + K delta is conjugate to d, second-order series terms appear
  std::string kind;
};

namespace detail {

struct ColumnBasis {
  enum Kind { H, E, F };
  std::vector<Kind> kind;
  std::vector<int> degree;           // own degree
  std::vector<std::size_t> partner;  // e <-> f
};

template <class Rng>
ColumnBasis random_column(Rng& rng) {
  ColumnBasis c;
  std::uniform_int_distribution<int> small(0, 2);
  for (int n = 0; n <= 2; ++n)
    for (int t = small(rng); t > 0; --t) {
      c.kind.push_back(ColumnBasis::H);
      c.degree.push_back(n);
      c.partner.push_back(0);
    }
  for (int n = 0; n <= 1; ++n)
    for (int t = small(rng); t > 0; --t) {
      std::size_t e = c.kind.size();
      c.kind.push_back(ColumnBasis::E);
      c.degree.push_back(n);
      c.partner.push_back(e + 1);
      c.kind.push_back(ColumnBasis::F);
      c.degree.push_back(n + 1);
      c.partner.push_back(e);
    }
  return c;
}

/// Unit-triangular matrix with random entries between equal-degree basis vectors.
template <class Rng>
QMatrix random_unitriangular(Rng& rng, const GradedSpaceWindow& s, bool lower) {
  std::uniform_int_distribution<int> coef(-2, 2);
  QMatrix m = QMatrix::identity(s.size());
  for (std::size_t r = 0; r < s.size(); ++r)
    for (std::size_t c = 0; c < s.size(); ++c)
      if ((lower ? r > c : r < c) && s[r].degree == s[c].degree) {
        int x = coef(rng);
        if (x != 0) m.set(r, c, Scalar(x));
      }
  return m;
}

inline QMatrix unitriangular_inverse(const QMatrix& m) {
  const std::size_t n = m.rows();
  const QMatrix nil = minus(m, QMatrix::identity(n));
  QMatrix out = QMatrix::identity(n);
  QMatrix pw = QMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    pw = pw * nil.scaled(Scalar(-1));
    if (pw.is_zero_matrix()) break;
    out = out + pw;
  }
  return out;
}

}  // namespace detail

/**
 * A retraction of C_0 + C_1 (+ C_2) onto homology with a random nilpotent
 * perturbation, all in a random basis.  Columns are H + (e -> f) pairs; on
 * about half the seeds eta is spoiled by iota s pi so that the side-condition
 * replacement runs.
 */
inline RandomRetraction random_retraction(std::uint64_t seed) {
  using namespace detail;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-2, 2);
  std::bernoulli_distribution coin(0.5);
  const bool cone = (seed % 2) == 0;
  const std::size_t ncol = cone ? 2 : 3;

  std::vector<ColumnBasis> cols;
  std::vector<std::size_t> offset;
  std::size_t nb = 0;
  for (std::size_t c = 0; c < ncol; ++c) {
    cols.push_back(random_column(rng));
    offset.push_back(nb);
    nb += cols.back().kind.size();
  }
  // cone columns are stacked with a shift so a degree-0 chain map becomes degree 1
  auto shift = [&](std::size_t c) { return cone ? static_cast<int>(c) : 0; };

  ChainComplexWindow big;
  std::vector<std::size_t> hvecs;
  for (std::size_t c = 0; c < ncol; ++c)
    for (std::size_t i = 0; i < cols[c].kind.size(); ++i) {
      const char* k = cols[c].kind[i] == ColumnBasis::H ? "h" : cols[c].kind[i] == ColumnBasis::E ? "e" : "f";
      big.space.add(std::string(k) + std::to_string(c) + "_" + std::to_string(i), cols[c].degree[i] + shift(c));
      if (cols[c].kind[i] == ColumnBasis::H) hvecs.push_back(offset[c] + i);
    }
  QMatrix d(nb, nb), eta(nb, nb), iota(nb, hvecs.size()), pi(hvecs.size(), nb);
  for (std::size_t c = 0; c < ncol; ++c)
    for (std::size_t i = 0; i < cols[c].kind.size(); ++i)
      if (cols[c].kind[i] == ColumnBasis::E) {
        d.set(offset[c] + cols[c].partner[i], offset[c] + i, Scalar(1));
        eta.set(offset[c] + i, offset[c] + cols[c].partner[i], Scalar(-1));
      }
  ChainComplexWindow small;
  for (std::size_t j = 0; j < hvecs.size(); ++j) {
    small.space.add(big.space[hvecs[j]].name, big.space[hvecs[j]].degree);
    iota.set(hvecs[j], j, Scalar(1));
    pi.set(j, hvecs[j], Scalar(1));
  }

  auto in_col = [&](std::size_t g, std::size_t c) { return g >= offset[c] && g < offset[c] + cols[c].kind.size(); };
  auto own = [&](std::size_t g) {
    for (std::size_t c = 0; c < ncol; ++c)
      if (in_col(g, c)) return std::make_pair(c, g - offset[c]);
    return std::make_pair(ncol, std::size_t{0});
  };

  QMatrix delta(nb, nb);
  if (cone) {
    // f = iota_1 phi pi_0 + d s + s d with phi between homology vectors of equal own degree
    QMatrix f(nb, nb), s(nb, nb);
    for (std::size_t a = 0; a < nb; ++a)
      for (std::size_t b = 0; b < nb; ++b) {
        auto [ca, ia] = own(a);
        auto [cb, ib] = own(b);
        if (ca != 1 || cb != 0) continue;
        int da = cols[1].degree[ia], db = cols[0].degree[ib];
        if (da == db && cols[1].kind[ia] == ColumnBasis::H && cols[0].kind[ib] == ColumnBasis::H)
          f.set(a, b, Scalar(coef(rng)));
        if (da == db - 1) s.set(a, b, Scalar(coef(rng)));
      }
    f = f + d * s + s * d;
    for (std::size_t b = 0; b < nb; ++b)
      for (const auto& [a, x] : f.column(b))
        delta.set(a, b, (big.space[b].degree & 1) ? -x : x);
  } else {
    // delta = u d - d u with u = u10 + u21, u21 killing S + d S where u10 lands in S
    std::vector<bool> in_s(nb, false), killed(nb, false);
    for (std::size_t g = offset[1]; g < offset[1] + cols[1].kind.size(); ++g) in_s[g] = coin(rng);
    for (std::size_t g = offset[1]; g < offset[1] + cols[1].kind.size(); ++g) {
      if (!in_s[g]) continue;
      killed[g] = true;
      auto [c, i] = own(g);
      if (cols[c].kind[i] == ColumnBasis::E) killed[offset[c] + cols[c].partner[i]] = true;
    }
    QMatrix u(nb, nb);
    for (std::size_t a = 0; a < nb; ++a)
      for (std::size_t b = 0; b < nb; ++b) {
        auto [ca, ia] = own(a);
        auto [cb, ib] = own(b);
        if (ca != cb + 1 || cols[ca].degree[ia] != cols[cb].degree[ib]) continue;
        if (cb == 0 && !in_s[a]) continue;
        if (cb == 1 && killed[b]) continue;
        u.set(a, b, Scalar(coef(rng)));
      }
    delta = u * d + (d * u).scaled(Scalar(-1));
  }

  // spoil the homotopy: eta + iota sigma pi keeps d eta + eta d
  if (coin(rng)) {
    QMatrix sigma(hvecs.size(), hvecs.size());
    for (std::size_t a = 0; a < hvecs.size(); ++a)
      for (std::size_t b = 0; b < hvecs.size(); ++b)
        if (small.space[a].degree == small.space[b].degree - 1) sigma.set(a, b, Scalar(coef(rng)));
    eta = eta + iota * sigma * pi;
  }

  // random basis of the big complex: g = L U
  const QMatrix L = random_unitriangular(rng, big.space, true);
  const QMatrix U = random_unitriangular(rng, big.space, false);
  const QMatrix g = L * U;
  const QMatrix gi = unitriangular_inverse(U) * unitriangular_inverse(L);
  big.d = KPoly{{g * d * gi}};
  big.closed_below = big.closed_above = true;
  small.d = KPoly{{QMatrix(hvecs.size(), hvecs.size())}};
  small.closed_below = small.closed_above = true;
  return RandomRetraction{Retraction(big, small, g * iota, pi * gi, g * eta * gi), g * delta * gi,
                          cone ? "cone" : "gauge"};
}

}  // namespace hkm
