#pragma once

#include "hkm/core/scalar.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace hkm {

using lie_vec = std::vector<Scalar>;
using matrix = std::vector<std::vector<Scalar>>;

inline matrix zero_matrix(std::size_t n) { return matrix(n, std::vector<Scalar>(n)); }

inline matrix mat_mul(const matrix& a, const matrix& b) {
  std::size_t n = a.size();
  matrix c = zero_matrix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!b[k][j].is_zero()) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

inline matrix mat_add(const matrix& a, const matrix& b, const Scalar& s = Scalar(1)) {
  matrix c = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) c[i][j] += s * b[i][j];
  return c;
}

inline Scalar trace(const matrix& a) {
  Scalar t;
  for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

/**
 * Finite-dimensional graded Lie algebra with structure constants
 * [x_i, x_j] = sum_k c_ij^k x_k.  Basis degrees default to zero.
 */
class FiniteLieAlgebra {
 public:
  FiniteLieAlgebra() = default;
  explicit FiniteLieAlgebra(std::vector<std::string> names, std::vector<int> degrees = {})
      : names_(std::move(names)), degrees_(std::move(degrees)) {
    if (degrees_.empty()) degrees_.assign(names_.size(), 0);
    if (degrees_.size() != names_.size()) throw std::invalid_argument("lie: degree list length");
    br_.assign(dim(), std::vector<std::vector<std::pair<std::size_t, Scalar>>>(dim()));
  }

  std::size_t dim() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  int degree(std::size_t i) const { return degrees_.at(i); }

  std::size_t index(const std::string& n) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == n) return i;
    throw std::out_of_range("lie: unknown basis element " + n);
  }

  /// Sets [x_i, x_j] and its graded-antisymmetric partner.
  void set_bracket(std::size_t i, std::size_t j, const lie_vec& v) {
    if (i == j && ((degrees_[i] & 1) == 0)) {
      for (const auto& c : v)
        if (!c.is_zero()) throw std::invalid_argument("lie: [x,x] must vanish for even x");
    }
    br_[i][j].clear();
    br_[j][i].clear();
    int s = ((degrees_[i] * degrees_[j]) & 1) ? 1 : -1;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v[k].is_zero()) continue;
      br_[i][j].emplace_back(k, v[k]);
      if (i != j) br_[j][i].emplace_back(k, s > 0 ? v[k] : -v[k]);
    }
  }
  void add_structure_constant(std::size_t i, std::size_t j, std::size_t k, const Scalar& c) {
    lie_vec v = bracket_basis(i, j);
    v[k] += c;
    set_bracket(i, j, v);
  }

  const std::vector<std::pair<std::size_t, Scalar>>& bracket_terms(std::size_t i, std::size_t j) const {
    return br_[i][j];
  }

  lie_vec bracket_basis(std::size_t i, std::size_t j) const {
    lie_vec v(dim());
    for (const auto& [k, c] : br_[i][j]) v[k] = c;
    return v;
  }

  lie_vec bracket(const lie_vec& x, const lie_vec& y) const {
    lie_vec v(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (y[j].is_zero()) continue;
        Scalar s = x[i] * y[j];
        for (const auto& [k, c] : br_[i][j]) v[k] += s * c;
      }
    }
    return v;
  }

  lie_vec unit(std::size_t i) const {
    lie_vec v(dim());
    v.at(i) = Scalar(1);
    return v;
  }

  bool is_abelian() const {
    for (const auto& row : br_)
      for (const auto& e : row)
        if (!e.empty()) return false;
    return true;
  }

  /// Graded antisymmetry and Jacobi on all basis triples.
  bool check_axioms() const {
    std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        lie_vec a = bracket_basis(i, j), b = bracket_basis(j, i);
        int s = ((degrees_[i] * degrees_[j]) & 1) ? 1 : -1;
        for (std::size_t k = 0; k < n; ++k)
          if (!(a[k] == (s > 0 ? b[k] : -b[k]))) return false;
      }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          // (-1)^{|x||z|}[x,[y,z]] + cyclic = 0
          auto term = [&](std::size_t a, std::size_t b, std::size_t c) {
            lie_vec v = bracket(unit(a), bracket_basis(b, c));
            if ((degrees_[a] * degrees_[c]) & 1)
              for (auto& x : v) x = -x;
            return v;
          };
          lie_vec t1 = term(i, j, k), t2 = term(j, k, i), t3 = term(k, i, j);
          for (std::size_t m = 0; m < n; ++m)
            if (!(t1[m] + t2[m] + t3[m]).is_zero()) return false;
        }
    return true;
  }

 private:
  std::vector<std::string> names_;
  std::vector<int> degrees_;
  std::vector<std::vector<std::vector<std::pair<std::size_t, Scalar>>>> br_;
};

/// Representation on V = K^dim by matrices rho(x_i).
struct Representation {
  FiniteLieAlgebra algebra;
  std::size_t dim = 0;
  std::vector<matrix> rho;

  matrix of(const lie_vec& x) const {
    matrix m = zero_matrix(dim);
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!x[i].is_zero()) m = mat_add(m, rho[i], x[i]);
    return m;
  }

  /// rho([x,y]) = [rho(x), rho(y)] on all basis pairs.
  bool check() const {
    if (rho.size() != algebra.dim()) return false;
    for (std::size_t i = 0; i < algebra.dim(); ++i)
      for (std::size_t j = 0; j < algebra.dim(); ++j) {
        matrix lhs = of(algebra.bracket_basis(i, j));
        matrix rhs = mat_add(mat_mul(rho[i], rho[j]), mat_mul(rho[j], rho[i]), Scalar(-1));
        if (lhs != rhs) return false;
      }
    return true;
  }
};

inline FiniteLieAlgebra abelian(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("a" + std::to_string(i + 1));
  return FiniteLieAlgebra(names);
}

/// Basis (e, f, h): [h,e] = 2e, [h,f] = -2f, [e,f] = h.
inline FiniteLieAlgebra sl2() {
  FiniteLieAlgebra g({"e", "f", "h"});
  g.set_bracket(2, 0, {Scalar(2), Scalar(), Scalar()});
  g.set_bracket(2, 1, {Scalar(), Scalar(-2), Scalar()});
  g.set_bracket(0, 1, {Scalar(), Scalar(), Scalar(1)});
  return g;
}

/// Matrix units E_ij (index i*N + j): [E_ij, E_kl] = d_jk E_il - d_li E_kj.
inline FiniteLieAlgebra gl(std::size_t N) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) names.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
  FiniteLieAlgebra g(names);
  for (std::size_t a = 0; a < N * N; ++a)
    for (std::size_t b = a + 1; b < N * N; ++b) {
      std::size_t i = a / N, j = a % N, k = b / N, l = b % N;
      lie_vec v(N * N);
      if (j == k) v[i * N + l] += Scalar(1);
      if (l == i) v[k * N + j] -= Scalar(1);
      g.set_bracket(a, b, v);
    }
  return g;
}

inline Representation fundamental_sl2() {
  Representation r{sl2(), 2, {}};
  matrix e = zero_matrix(2), f = zero_matrix(2), h = zero_matrix(2);
  e[0][1] = Scalar(1);
  f[1][0] = Scalar(1);
  h[0][0] = Scalar(1);
  h[1][1] = Scalar(-1);
  r.rho = {e, f, h};
  return r;
}

inline Representation fundamental_gl(std::size_t N) {
  Representation r{gl(N), N, {}};
  for (std::size_t a = 0; a < N * N; ++a) {
    matrix m = zero_matrix(N);
    m[a / N][a % N] = Scalar(1);
    r.rho.push_back(m);
  }
  return r;
}

/// One-dimensional representation of abelian(n) with weights lambda.
inline Representation abelian_weight(const std::vector<Scalar>& lambda) {
  Representation r{abelian(lambda.size()), 1, {}};
  for (const auto& l : lambda) r.rho.push_back(matrix{{l}});
  return r;
}

inline Representation trivial_rep(const FiniteLieAlgebra& g, std::size_t dim = 1) {
  Representation r{g, dim, {}};
  r.rho.assign(g.dim(), zero_matrix(dim));
  return r;
}

/// Adjoint representation.
inline Representation adjoint(const FiniteLieAlgebra& g) {
  Representation r{g, g.dim(), {}};
  for (std::size_t i = 0; i < g.dim(); ++i) {
    matrix m = zero_matrix(g.dim());
    for (std::size_t j = 0; j < g.dim(); ++j)
      for (const auto& [k, c] : g.bracket_terms(i, j)) m[k][j] += c;
    r.rho.push_back(m);
  }
  return r;
}

/// Built-in by name: "sl2", "glN", "abelianN".
inline FiniteLieAlgebra builtin_lie(const std::string& name) {
  if (name == "sl2") return sl2();
  if (name.rfind("gl", 0) == 0 && name.size() > 2) return gl(std::stoul(name.substr(2)));
  if (name.rfind("abelian", 0) == 0 && name.size() > 7) return abelian(std::stoul(name.substr(7)));
  throw std::invalid_argument("unknown built-in Lie algebra: " + name);
}

inline Representation builtin_rep(const std::string& lie, const std::string& rep) {
  if (rep == "adjoint") return adjoint(builtin_lie(lie));
  if (rep == "trivial") return trivial_rep(builtin_lie(lie));
  if (rep == "fundamental") {
    if (lie == "sl2") return fundamental_sl2();
    if (lie.rfind("gl", 0) == 0) return fundamental_gl(std::stoul(lie.substr(2)));
    if (lie.rfind("abelian", 0) == 0) return abelian_weight(std::vector<Scalar>(std::stoul(lie.substr(7)), Scalar(1)));
  }
  throw std::invalid_argument("unknown built-in representation: " + lie + "/" + rep);
}

/**
 * Text format, one directive per line, '#' starts a comment:
 *   basis e f h
 *   bracket <i> <j> <k> <scalar>      (1-based indices: [x_i, x_j] += c x_k)
 *   rep <dim>
 *   matrix <basis name> <dim*dim scalars, row-major>
 */
struct LieFile {
  FiniteLieAlgebra algebra;
  std::optional<Representation> rep;
};

inline LieFile parse_lie_file(std::istream& in) {
  std::vector<std::string> names;
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Scalar>> brackets;
  std::size_t rep_dim = 0;
  std::map<std::string, matrix> mats;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    auto fail = [&](const std::string& why) {
      throw std::invalid_argument("lie file line " + std::to_string(lineno) + ": " + why);
    };
    if (kw == "basis") {
      std::string n;
      while (ls >> n) names.push_back(n);
    } else if (kw == "bracket") {
      std::size_t i, j, k;
      std::string c;
      if (!(ls >> i >> j >> k >> c) || i == 0 || j == 0 || k == 0) fail("bad bracket");
      brackets.emplace_back(i - 1, j - 1, k - 1, Scalar::parse(c));
    } else if (kw == "rep") {
      if (!(ls >> rep_dim) || rep_dim == 0) fail("bad rep dimension");
    } else if (kw == "matrix") {
      std::string n;
      if (!(ls >> n) || rep_dim == 0) fail("matrix before rep");
      matrix m = zero_matrix(rep_dim);
      for (std::size_t a = 0; a < rep_dim * rep_dim; ++a) {
        std::string c;
        if (!(ls >> c)) fail("short matrix");
        m[a / rep_dim][a % rep_dim] = Scalar::parse(c);
      }
      mats[n] = m;
    } else {
      fail("unknown directive " + kw);
    }
  }
  if (names.empty()) throw std::invalid_argument("lie file: no basis");
  LieFile out{FiniteLieAlgebra(names), std::nullopt};
  for (const auto& [i, j, k, c] : brackets) {
    if (i >= names.size() || j >= names.size() || k >= names.size())
      throw std::invalid_argument("lie file: bracket index out of range");
    out.algebra.add_structure_constant(i, j, k, c);
  }
  if (!out.algebra.check_axioms()) throw std::invalid_argument("lie file: structure constants violate Jacobi");
  if (rep_dim) {
    Representation r{out.algebra, rep_dim, {}};
    for (const auto& n : names) {
      auto it = mats.find(n);
      r.rho.push_back(it == mats.end() ? zero_matrix(rep_dim) : it->second);
    }
    if (!r.check()) throw std::invalid_argument("lie file: matrices do not form a representation");
    out.rep = r;
  }
  return out;
}

inline LieFile load_lie_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open lie file: " + path);
  return parse_lie_file(in);
}

}  // namespace hkm
