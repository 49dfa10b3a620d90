#pragma once

#include "hkm/core/linalg.hpp"
#include "hkm/current/ccr.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace hkm {

/// Cl(V + V*) with {v_i, v*_j} = d_ij; generators v_1..v_n then v*_1..v*_n.
inline CanonicalAlgebra clifford_algebra(int n) {
  return CanonicalAlgebra(std::vector<bool>(static_cast<std::size_t>(2 * n), true), [n](int a, int b) {
    if ((a < n) == (b < n)) return Scalar();
    return (a % n == b % n) ? Scalar(1) : Scalar();
  });
}

/// Ordered monomials v_S v*_T, 4^n of them.
inline std::vector<CanonicalAlgebra::word> clifford_basis(int n) {
  std::vector<CanonicalAlgebra::word> out;
  for (unsigned m = 0; m < (1u << (2 * n)); ++m) {
    CanonicalAlgebra::word w;
    for (int g = 0; g < 2 * n; ++g)
      if ((m >> g) & 1u) w.push_back(g);
    out.push_back(w);
  }
  return out;
}

/// Coefficient of v_1 ... v_n v*_1 ... v*_n.
inline Scalar berezin(const CanonicalAlgebra::element& x, int n) {
  CanonicalAlgebra::word top;
  for (int g = 0; g < 2 * n; ++g) top.push_back(g);
  auto it = x.find(top);
  return it == x.end() ? Scalar() : it->second;
}

struct CliffordHH0 {
  int n = 0;
  std::size_t algebra_dim = 0;
  std::size_t dim = 0;
  /// Berezin integral of the chosen representatives of HH_0
  std::vector<Scalar> berezin_of_representatives;
  /// Berezin vanishes on every supercommutator of basis elements
  bool berezin_kills_commutators = true;
};

/// HH_0 = Cl / [Cl, Cl] (supercommutators) by exact linear algebra.
inline CliffordHH0 clifford_hh0(int n) {
  if (n < 0 || n > 3) throw std::invalid_argument("clifford_hh0: dim V must be at most 3");
  auto A = clifford_algebra(n);
  auto basis = clifford_basis(n);
  std::map<CanonicalAlgebra::word, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
  CliffordHH0 out;
  out.n = n;
  out.algebra_dim = basis.size();
  Echelon<Scalar> comm;
  for (const auto& a : basis)
    for (const auto& b : basis) {
      auto c = A.supercommutator(CanonicalAlgebra::element{{a, Scalar(1)}}, CanonicalAlgebra::element{{b, Scalar(1)}});
      if (!berezin(c, n).is_zero()) out.berezin_kills_commutators = false;
      std::map<std::size_t, Scalar> v;
      for (const auto& [w, x] : c) v[index.at(w)] += x;
      comm.insert(make_sparse(v));
    }
  out.dim = basis.size() - comm.rank();
  // representatives: basis monomials independent modulo commutators, top first
  Echelon<Scalar> grow = comm;
  for (std::size_t i = basis.size(); i-- > 0;) {
    if (grow.insert(sparse_vec<Scalar>{{i, Scalar(1)}}))
      out.berezin_of_representatives.push_back(berezin(CanonicalAlgebra::element{{basis[i], Scalar(1)}}, n));
  }
  return out;
}

}  // namespace hkm
