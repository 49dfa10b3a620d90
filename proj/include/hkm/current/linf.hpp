#pragma once

#include "hkm/core/graded.hpp"
#include "hkm/core/koszul.hpp"
#include "hkm/core/linalg.hpp"
#include "hkm/current/extension.hpp"
#include "hkm/current/lie.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hkm {

/**
 * Finite L-infinity algebra stored by tables: l_1 as a matrix, l_2 by
 * structure constants, and at most one higher bracket l_r valued in the
 * central basis element K.
 */
class LInfinityAlgebra {
 public:
  using element = std::vector<Scalar>;

  LInfinityAlgebra() = default;
  explicit LInfinityAlgebra(GradedSpaceWindow basis) : basis_(std::move(basis)), l1_(basis_.size(), basis_.size()) {}

  const GradedSpaceWindow& basis() const { return basis_; }
  std::size_t size() const { return basis_.size(); }
  std::optional<std::size_t> central() const { return K_; }
  int cocycle_arity() const { return top_; }

  void set_central(std::size_t k) { K_ = k; }
  void set_l1(std::size_t i, const sparse_vec<Scalar>& v) { l1_.set_column(i, v); }
  const SparseMatrix<Scalar>& l1() const { return l1_; }

  /// l_2(e_i, e_j) = v; the transposed entry is filled by graded antisymmetry.
  void set_l2(std::size_t i, std::size_t j, const sparse_vec<Scalar>& v) {
    l2_[{i, j}] = v;
    if (i != j) {
      bool even = ((deg(i) * deg(j)) & 1) == 0;
      l2_[{j, i}] = even ? scaled(v, Scalar(-1)) : v;
    }
  }
  sparse_vec<Scalar> l2(std::size_t i, std::size_t j) const {
    auto it = l2_.find({i, j});
    return it == l2_.end() ? sparse_vec<Scalar>{} : it->second;
  }
  const std::map<std::pair<std::size_t, std::size_t>, sparse_vec<Scalar>>& l2_table() const { return l2_; }

  /// l_r(e_{i_1}, ..., e_{i_r}) = c K on a tuple given in any order.
  void set_top(const std::vector<std::size_t>& idx, const Scalar& c) {
    if (!K_) throw std::invalid_argument("linf: no central element");
    if (top_ == 0) top_ = static_cast<int>(idx.size());
    if (static_cast<int>(idx.size()) != top_) throw std::invalid_argument("linf: top arity mismatch");
    auto [sorted, s] = canonical(idx);
    top_vals_[sorted] = s > 0 ? c : -c;
  }
  Scalar top(const std::vector<std::size_t>& idx) const {
    auto [sorted, s] = canonical(idx);
    auto it = top_vals_.find(sorted);
    if (it == top_vals_.end()) return Scalar();
    return s > 0 ? it->second : -it->second;
  }
  const std::map<std::vector<std::size_t>, Scalar>& top_table() const { return top_vals_; }

  int deg(std::size_t i) const { return basis_[i].degree; }

  // model interface

  element zero() const { return element(size()); }

  int degree(const element& x) const {
    std::optional<int> g;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].is_zero()) continue;
      if (g && *g != deg(i)) throw std::invalid_argument("linf: inhomogeneous element");
      g = deg(i);
    }
    return g.value_or(0);
  }

  bool has_bracket(std::size_t n) const { return n == 1 || n == 2 || static_cast<int>(n) == top_; }

  element bracket(const std::vector<element>& xs) const {
    element out = zero();
    const std::size_t n = xs.size();
    if (n == 1) {
      for (std::size_t i = 0; i < size(); ++i) {
        if (xs[0][i].is_zero()) continue;
        for (const auto& [r, c] : l1_.column(i)) out[r] += xs[0][i] * c;
      }
    }
    if (n == 2) {
      for (const auto& [ij, v] : l2_) {
        Scalar s = xs[0][ij.first] * xs[1][ij.second];
        if (s.is_zero()) continue;
        for (const auto& [r, c] : v) out[r] += s * c;
      }
    }
    if (K_ && static_cast<int>(n) == top_) {
      for (const auto& [key, c] : top_vals_) {
        // sum over orderings of the stored tuple
        std::vector<std::size_t> p = key;
        do {
          Scalar s(1);
          for (std::size_t k = 0; k < n && !s.is_zero(); ++k) s *= xs[k][p[k]];
          if (!s.is_zero()) out[*K_] += s * top(p);
        } while (std::next_permutation(p.begin(), p.end()));
      }
    }
    return out;
  }

  template <class Rng>
  element sample(Rng& rng, int g, std::size_t terms) const {
    element x = zero();
    std::vector<std::size_t> cand;
    for (std::size_t i = 0; i < size(); ++i)
      if (deg(i) == g) cand.push_back(i);
    if (cand.empty()) return x;
    std::uniform_int_distribution<std::size_t> pick(0, cand.size() - 1);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (std::size_t t = 0; t < terms; ++t) {
      int c = 0;
      while (c == 0) c = coef(rng);
      x[cand[pick(rng)]] += Scalar(c);
    }
    return x;
  }

  template <class Rng>
  element sample_dense(Rng& rng, int g) const {
    element x = zero();
    std::uniform_int_distribution<int> coef(1, 9);
    for (std::size_t i = 0; i < size(); ++i)
      if (deg(i) == g) x[i] = Scalar(coef(rng));
    return x;
  }

  std::vector<int> pool_degrees() const {
    std::vector<int> out;
    for (const auto& [g, v] : basis_.by_degree()) out.push_back(g);
    return out;
  }

  std::string str(const element& x) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].is_zero()) continue;
      os << (first ? "" : " + ") << "[" << x[i].str() << "]" << basis_[i].name;
      first = false;
    }
    if (first) os << "0";
    return os.str();
  }

 private:
  GradedSpaceWindow basis_;
  SparseMatrix<Scalar> l1_;
  std::map<std::pair<std::size_t, std::size_t>, sparse_vec<Scalar>> l2_;
  std::optional<std::size_t> K_;
  int top_ = 0;
  std::map<std::vector<std::size_t>, Scalar> top_vals_;

  static sparse_vec<Scalar> scaled(sparse_vec<Scalar> v, const Scalar& s) {
    for (auto& e : v) e.second *= s;
    return v;
  }

  /// Sorted tuple and the graded-antisymmetric sign relating it to idx.
  std::pair<std::vector<std::size_t>, int> canonical(const std::vector<std::size_t>& idx) const {
    std::vector<int> perm(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) perm[i] = static_cast<int>(i);
    std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) { return idx[a] < idx[b]; });
    std::vector<int> degs;
    std::vector<std::size_t> sorted;
    for (std::size_t i : idx) degs.push_back(deg(i));
    for (int p : perm) sorted.push_back(idx[static_cast<std::size_t>(p)]);
    int s = permutation_sign(perm) * koszul_sign(perm, degs);
    return {sorted, s};
  }
};

/// Lie algebra viewed as an L-infinity algebra with only l_2.
inline LInfinityAlgebra linf_from_lie(const FiniteLieAlgebra& g) {
  GradedSpaceWindow b;
  for (std::size_t i = 0; i < g.dim(); ++i) b.add(g.name(i), g.degree(i));
  LInfinityAlgebra L(b);
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = i; j < g.dim(); ++j) {
      std::map<std::size_t, Scalar> v;
      for (const auto& [k, c] : g.bracket_terms(i, j)) v[k] += c;
      if (!v.empty()) L.set_l2(i, j, make_sparse(v));
    }
  return L;
}

struct LInfinityReport {
  bool passed = true;
  std::size_t tuples = 0;
  std::size_t identities = 0;
  int failing_arity = 0;
  std::string failure;
  std::vector<std::string> witness;
};

namespace detail {

/// (-1)^{sum_j (k-j)(|x_j|-1)}, j = 1..k.
inline int decalage_sign(const std::vector<int>& degs) {
  const int k = static_cast<int>(degs.size());
  int e = 0;
  for (int j = 1; j <= k; ++j) e += (k - j) * (degs[static_cast<std::size_t>(j - 1)] - 1);
  return (e & 1) ? -1 : 1;
}

template <class Model>
bool has_bracket(const Model& L, std::size_t n) {
  if constexpr (requires { L.has_bracket(n); })
    return L.has_bracket(n);
  else
    return n == 1 || n == 2 || static_cast<int>(n) == L.cocycle_arity();
}

/**
 * sum over i and (i, n-i) unshuffles of eps * m_{n-i+1}(m_i(sx_S), sx_R),
 * brackets transported through the decalage isomorphism.
 */
template <class Model>
typename Model::element generalized_jacobi(const Model& L, const std::vector<typename Model::element>& xs,
                                           const std::vector<int>& degs) {
  using E = typename Model::element;
  const int n = static_cast<int>(xs.size());
  E total = L.zero();
  for (int i = 1; i <= n; ++i) {
    int j = n - i + 1;
    if (!has_bracket(L, static_cast<std::size_t>(i)) || !has_bracket(L, static_cast<std::size_t>(j))) continue;
    for_each_unshuffle(n, i, [&](const std::vector<int>& S, const std::vector<int>& R) {
      std::vector<int> perm = S;
      perm.insert(perm.end(), R.begin(), R.end());
      std::vector<int> shifted;
      for (int g : degs) shifted.push_back(g - 1);
      int eps = koszul_sign(perm, shifted);
      std::vector<E> in;
      std::vector<int> in_deg;
      for (int s : S) {
        in.push_back(xs[static_cast<std::size_t>(s)]);
        in_deg.push_back(degs[static_cast<std::size_t>(s)]);
      }
      E z = L.bracket(in);
      if (z.is_zero()) return;
      int zdeg = 2 - i;
      for (int g : in_deg) zdeg += g;
      int sign = eps * decalage_sign(in_deg);
      std::vector<E> out{z};
      std::vector<int> out_deg{zdeg};
      for (int r : R) {
        out.push_back(xs[static_cast<std::size_t>(r)]);
        out_deg.push_back(degs[static_cast<std::size_t>(r)]);
      }
      sign *= decalage_sign(out_deg);
      E w = L.bracket(out);
      if (!w.is_zero()) total = total + Scalar(sign) * w;
    });
  }
  return total;
}

}  // namespace detail

/**
 * Random-tuple check of the L-infinity relations up to arity r+1 (r the
 * top bracket arity), plus graded antisymmetry of l_2 and l_r.  Each input
 * is a random homogeneous combination of `terms` basis elements.
 */
struct LInfinityCheckOptions {
  std::uint64_t seed = 1;
  /// pool entries per sampled input
  std::size_t terms = 2;
  /// extra tuples whose inputs combine every pool entry of their degree
  std::size_t dense_tuples = 0;
};

template <class Model>
LInfinityReport check_l_infinity(const Model& L, std::size_t samples, const LInfinityCheckOptions& opt) {
  using E = typename Model::element;
  LInfinityReport rep;
  const std::uint64_t seed = opt.seed;
  const std::size_t terms = opt.terms;
  std::mt19937_64 rng(seed);
  auto degs_avail = L.pool_degrees();
  if (degs_avail.empty()) return rep;
  const int top = std::max(2, L.cocycle_arity());
  std::uniform_int_distribution<std::size_t> pickdeg(0, degs_avail.size() - 1);

  auto pattern = [&](int n) {
    // half of the tuples are steered to total degree n-3 (K-valued terms)
    bool steer = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
    std::vector<int> p(static_cast<std::size_t>(n));
    for (int attempt = 0; attempt < 200; ++attempt) {
      int total = 0;
      for (auto& g : p) {
        g = degs_avail[pickdeg(rng)];
        total += g;
      }
      if (!steer || total == n - 3) break;
    }
    return p;
  };

  auto fail = [&](int n, const std::string& what, const std::vector<E>& xs) {
    rep.passed = false;
    rep.failing_arity = n;
    rep.failure = what;
    rep.witness.clear();
    for (const auto& x : xs) rep.witness.push_back(L.str(x));
  };

  for (std::size_t s = 0; s < samples + opt.dense_tuples && rep.passed; ++s) {
    ++rep.tuples;
    const bool dense = s >= samples;
    for (int n = 1; n <= top + 1 && rep.passed; ++n) {
      auto degs = pattern(n);
      if (dense && n == top + 1) {
        // every degree assignment with total n-3, cycled through the dense tuples
        std::vector<std::vector<int>> pats;
        std::vector<int> p(static_cast<std::size_t>(n), 0);
        std::function<void(int, int)> rec = [&](int i, int total) {
          if (i == n) {
            if (total == n - 3) pats.push_back(p);
            return;
          }
          for (int g : degs_avail) {
            p[static_cast<std::size_t>(i)] = g;
            rec(i + 1, total + g);
          }
        };
        rec(0, 0);
        if (!pats.empty()) degs = pats[(s - samples) % pats.size()];
      }
      std::vector<E> xs;
      for (int g : degs) xs.push_back(dense ? L.sample_dense(rng, g) : L.sample(rng, g, terms));
      E J = detail::generalized_jacobi(L, xs, degs);
      ++rep.identities;
      if (!J.is_zero()) {
        fail(n, "arity " + std::to_string(n) + " identity residual " + L.str(J), xs);
        break;
      }
      if (n >= 2 && detail::has_bracket(L, static_cast<std::size_t>(n))) {
        std::size_t i = std::uniform_int_distribution<std::size_t>(0, static_cast<std::size_t>(n - 2))(rng);
        auto ys = xs;
        std::swap(ys[i], ys[i + 1]);
        E a = L.bracket(xs), b = L.bracket(ys);
        int sg = ((degs[i] * degs[i + 1]) & 1) ? -1 : 1;
        ++rep.identities;
        if (!(a + Scalar(sg) * b).is_zero()) fail(n, "l_" + std::to_string(n) + " not graded antisymmetric", xs);
      }
    }
  }
  return rep;
}

template <class Model>
LInfinityReport check_l_infinity(const Model& L, std::size_t samples, std::uint64_t seed = 1, std::size_t terms = 2) {
  LInfinityCheckOptions opt;
  opt.seed = seed;
  opt.terms = terms;
  return check_l_infinity(L, samples, opt);
}

/**
 * Adds delta times the graded-antisymmetrized product of coordinate
 * functionals dual to the pool entries `target` (one per input) to the
 * cocycle of an extension: a single altered cocycle value.
 */
inline void corrupt_cocycle(CurrentExtension& ext, const std::vector<std::pair<std::size_t, ADElement>>& target,
                            const Scalar& delta) {
  if (static_cast<int>(target.size()) != ext.cocycle_arity())
    throw std::invalid_argument("corrupt_cocycle: target arity");
  // numerators over a common (zz*)^level cover every bracket of pool entries
  const WeightWindow& w = ext.window();
  const int level = (ext.cocycle_arity() + 1) * (w.k_max + 1) + w.d;
  struct coord {
    std::size_t comp;
    ADMonomial mono;
    Scalar scale;
    int degree;
  };
  std::vector<coord> cs;
  for (const auto& [i, a] : target) {
    auto num = a.numerator_at(level);
    if (num.empty()) throw std::invalid_argument("corrupt_cocycle: zero target");
    cs.push_back({i, num.begin()->first, Scalar(1) / num.begin()->second,
                  ext.lie().degree(i) + num.begin()->first.q()});
  }
  auto base = ext.cocycle();
  const int r = ext.cocycle_arity();
  ext.set_cocycle([base, cs, level, delta, r](const std::vector<SphereElement>& xs) {
    Scalar v = base(xs);
    auto value = [&](std::size_t k, const coord& c) -> Scalar {
      const auto& a = xs[k].comps[c.comp];
      if (a.is_zero()) return Scalar();
      if (a.k() > level) throw window_too_small("corrupt_cocycle: input beyond coordinate level");
      auto num = a.numerator_at(level);
      auto it = num.find(c.mono);
      return it == num.end() ? Scalar() : it->second * c.scale;
    };
    std::vector<int> degs;
    for (const auto& c : cs) degs.push_back(c.degree);
    for_each_permutation(r, [&](const std::vector<int>& p) {
      // input k receives functional p[k]
      Scalar t(1);
      for (int k = 0; k < r && !t.is_zero(); ++k) t *= value(static_cast<std::size_t>(k), cs[static_cast<std::size_t>(p[k])]);
      if (t.is_zero()) return;
      int s = permutation_sign(p) * koszul_sign(p, degs);
      v += Scalar(s) * delta * t;
    });
    return v;
  });
}

}  // namespace hkm
