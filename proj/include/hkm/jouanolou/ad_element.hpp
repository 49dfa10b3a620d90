#pragma once

#include "hkm/core/scalar.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hkm {

inline constexpr int max_ad_dim = 4;

/**
 * Monomial z^a z*^b dz_S dz*_T.  Exponents are stored as (a_1..a_d, b_1..b_d);
 * S and T are bitmasks.  Forms are written dz-block first, indices increasing.
 */
struct ADMonomial {
  std::array<std::int16_t, 2 * max_ad_dim> e{};
  std::uint8_t S = 0;
  std::uint8_t T = 0;

  int z_degree(int d) const {
    int s = 0;
    for (int i = 0; i < d; ++i) s += e[i];
    return s;
  }
  int zs_degree(int d) const {
    int s = 0;
    for (int i = 0; i < d; ++i) s += e[d + i];
    return s;
  }
  int p() const { return std::popcount(S); }
  int q() const { return std::popcount(T); }

  friend bool operator==(const ADMonomial&, const ADMonomial&) = default;
};

/// Groups by exterior part, then graded-lex descending in z_1 > ... > z_d > z*_1 > ... > z*_d.
struct ADMonomialOrder {
  bool operator()(const ADMonomial& x, const ADMonomial& y) const {
    if (x.S != y.S) return x.S < y.S;
    if (x.T != y.T) return x.T < y.T;
    int dx = 0, dy = 0;
    for (std::size_t i = 0; i < x.e.size(); ++i) {
      dx += x.e[i];
      dy += y.e[i];
    }
    if (dx != dy) return dx > dy;
    for (std::size_t i = 0; i < x.e.size(); ++i)
      if (x.e[i] != y.e[i]) return x.e[i] > y.e[i];
    return false;
  }
};

namespace detail {

/// Sign of moving a single odd generator of index i into the sorted block mask.
inline int insert_sign(std::uint8_t mask, int i) {
  int below = std::popcount(static_cast<unsigned>(mask & ((1u << i) - 1u)));
  return (below & 1) ? -1 : 1;
}

/// Sign of the product of sorted blocks A and B (A written first).
inline int merge_sign(std::uint8_t a, std::uint8_t b) {
  int inv = 0;
  for (int j = 0; j < 8; ++j)
    if (b & (1u << j)) inv += std::popcount(static_cast<unsigned>(a >> (j + 1)));
  return (inv & 1) ? -1 : 1;
}

}  // namespace detail

/**
 * Element N / (zz*)^k of the localized bigraded algebra, zz* = sum z_i z*_i.
 *
 * Sign rule: dz_i has bidegree (1,0), dz*_i bidegree (0,1), and moving x past
 * y costs (-1)^{p_x p_y + q_x q_y}.  In particular dz and dz* commute, and
 * the two differentials commute.
 */
class ADElement {
 public:
  using term_map = std::map<ADMonomial, Scalar, ADMonomialOrder>;

  ADElement() = default;
  explicit ADElement(int d) : d_(d) { check_dim(d); }

  static ADElement constant(int d, const Scalar& c) {
    ADElement a(d);
    if (!c.is_zero()) a.terms_[ADMonomial{}] = c;
    return a;
  }
  static ADElement z(int d, int i) { return monomial(d, unit(d, i, false), 0, 0, 0); }
  static ADElement zs(int d, int i) { return monomial(d, unit(d, i, true), 0, 0, 0); }
  static ADElement dz(int d, int i) { return monomial(d, ADMonomial{}, static_cast<std::uint8_t>(1u << i), 0, 0); }
  static ADElement dzs(int d, int i) { return monomial(d, ADMonomial{}, 0, static_cast<std::uint8_t>(1u << i), 0); }
  /// (zz*)^{-k}
  static ADElement inv_zzs(int d, int k) { return monomial(d, ADMonomial{}, 0, 0, k); }
  /// zz* itself
  static ADElement zzs(int d) {
    ADElement a(d);
    for (int i = 0; i < d; ++i) {
      ADMonomial m;
      m.e[i] = 1;
      m.e[d + i] = 1;
      a.terms_[m] = Scalar(1);
    }
    return a;
  }

  /// c * z^a z*^b dz_S dz*_T / (zz*)^k, normalized.
  static ADElement term(int d, const std::vector<int>& a, const std::vector<int>& b, std::uint8_t S, std::uint8_t T,
                        int k, const Scalar& c = Scalar(1)) {
    check_dim(d);
    if (static_cast<int>(a.size()) != d || static_cast<int>(b.size()) != d)
      throw std::invalid_argument("ADElement::term: exponent length");
    ADMonomial m;
    for (int i = 0; i < d; ++i) {
      if (a[i] < 0 || b[i] < 0) throw std::invalid_argument("ADElement::term: negative exponent");
      m.e[i] = static_cast<std::int16_t>(a[i]);
      m.e[d + i] = static_cast<std::int16_t>(b[i]);
    }
    m.S = S;
    m.T = T;
    ADElement x(d);
    if (!c.is_zero()) x.terms_[m] = c;
    x.k_ = k;
    x.normalize();
    return x;
  }

  /// Build from raw numerator terms over (zz*)^k, then normalize.
  static ADElement from_raw(int d, int k, term_map terms) {
    ADElement x(d);
    x.k_ = k;
    for (auto& [m, c] : terms)
      if (!c.is_zero()) x.terms_.emplace(m, std::move(c));
    x.normalize();
    return x;
  }

  int dim() const { return d_; }
  int k() const { return k_; }
  const term_map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  friend bool operator==(const ADElement& x, const ADElement& y) {
    if (x.is_zero() && y.is_zero()) return true;
    return x.d_ == y.d_ && x.k_ == y.k_ && x.terms_ == y.terms_;
  }

  ADElement operator-() const {
    ADElement r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }

  friend ADElement operator+(const ADElement& x, const ADElement& y) { return combine(x, y, Scalar(1)); }
  friend ADElement operator-(const ADElement& x, const ADElement& y) { return combine(x, y, Scalar(-1)); }

  friend ADElement operator*(const Scalar& s, const ADElement& x) {
    if (s.is_zero()) return ADElement(x.d_);
    ADElement r = x;
    for (auto& [m, c] : r.terms_) c *= s;
    return r;
  }

  friend ADElement operator*(const ADElement& x, const ADElement& y) {
    int d = same_dim(x, y);
    ADElement r(d);
    if (x.is_zero() || y.is_zero()) return r;
    r.k_ = x.k_ + y.k_;
    for (const auto& [mx, cx] : x.terms_) {
      for (const auto& [my, cy] : y.terms_) {
        if ((mx.S & my.S) || (mx.T & my.T)) continue;
        ADMonomial m;
        for (int i = 0; i < 2 * d; ++i) m.e[i] = static_cast<std::int16_t>(mx.e[i] + my.e[i]);
        m.S = mx.S | my.S;
        m.T = mx.T | my.T;
        int s = detail::merge_sign(mx.S, my.S) * detail::merge_sign(mx.T, my.T);
        r.accumulate(m, s > 0 ? cx * cy : -(cx * cy));
      }
    }
    r.normalize();
    return r;
  }

  ADElement& operator+=(const ADElement& y) { return *this = *this + y; }
  ADElement& operator-=(const ADElement& y) { return *this = *this - y; }

  /// dbar = sum_i dz*_i d/dz*_i, as a left derivation.
  ADElement dbar() const { return differential(true); }
  /// del = sum_i dz_i d/dz_i, as a left derivation.
  ADElement del() const { return differential(false); }

  /// Contraction with the Euler field sum z*_i d/dz*_i: dz*_i -> z*_i.
  ADElement euler_contraction() const {
    ADElement r(d_);
    r.k_ = k_;
    for (const auto& [m, c] : terms_) {
      int pos = 0;
      for (int i = 0; i < d_; ++i) {
        if (!(m.T & (1u << i))) continue;
        ADMonomial n = m;
        n.T = static_cast<std::uint8_t>(m.T & ~(1u << i));
        n.e[d_ + i] += 1;
        r.accumulate(n, (pos & 1) ? -c : c);
        ++pos;
      }
    }
    r.normalize();
    return r;
  }

  /// Bidegree of a homogeneous element; throws if mixed or zero.
  std::pair<int, int> bidegree() const {
    if (terms_.empty()) throw std::domain_error("bidegree of zero element");
    auto first = terms_.begin()->first;
    for (const auto& [m, c] : terms_)
      if (m.p() != first.p() || m.q() != first.q()) throw std::domain_error("inhomogeneous element");
    return {first.p(), first.q()};
  }

  bool is_bihomogeneous() const {
    if (terms_.empty()) return true;
    auto first = terms_.begin()->first;
    for (const auto& [m, c] : terms_)
      if (m.p() != first.p() || m.q() != first.q()) return false;
    return true;
  }

  /// Component of bidegree (p, q).
  ADElement component(int p, int q) const {
    ADElement r(d_);
    r.k_ = k_;
    for (const auto& [m, c] : terms_)
      if (m.p() == p && m.q() == q) r.terms_.emplace(m, c);
    r.normalize();
    return r;
  }

  std::vector<int> weight_of(const ADMonomial& m) const {
    std::vector<int> w(static_cast<std::size_t>(d_));
    for (int i = 0; i < d_; ++i)
      w[i] = m.e[i] - m.e[d_ + i] + ((m.S >> i) & 1) - ((m.T >> i) & 1);
    return w;
  }

  /// Component of torus weight w.
  ADElement weight_component(const std::vector<int>& w) const {
    ADElement r(d_);
    r.k_ = k_;
    for (const auto& [m, c] : terms_)
      if (weight_of(m) == w) r.terms_.emplace(m, c);
    r.normalize();
    return r;
  }

  /// Numerator raised to the common denominator (zz*)^K, K >= k().
  term_map numerator_at(int K) const {
    if (K < k_) throw std::invalid_argument("numerator_at: K below denominator exponent");
    term_map cur = terms_;
    for (int s = k_; s < K; ++s) {
      term_map next;
      for (const auto& [m, c] : cur) {
        for (int i = 0; i < d_; ++i) {
          ADMonomial n = m;
          n.e[i] += 1;
          n.e[d_ + i] += 1;
          auto [it, fresh] = next.emplace(n, c);
          if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) next.erase(it);
          }
        }
      }
      cur = std::move(next);
    }
    return cur;
  }

  std::string str() const;
  static ADElement parse(int d, std::string_view text);

 private:
  int d_ = 1;
  int k_ = 0;
  term_map terms_;

  static void check_dim(int d) {
    if (d < 1 || d > max_ad_dim) throw std::invalid_argument("ADElement: dimension out of range");
  }
  static int same_dim(const ADElement& x, const ADElement& y) {
    if (x.is_zero()) return y.d_;
    if (y.is_zero()) return x.d_;
    if (x.d_ != y.d_) throw std::invalid_argument("ADElement: dimension mismatch");
    return x.d_;
  }
  static ADMonomial unit(int d, int i, bool star) {
    check_dim(d);
    if (i < 0 || i >= d) throw std::out_of_range("ADElement: variable index");
    ADMonomial m;
    m.e[star ? d + i : i] = 1;
    return m;
  }
  static ADElement monomial(int d, ADMonomial m, std::uint8_t S, std::uint8_t T, int k) {
    check_dim(d);
    m.S = S;
    m.T = T;
    ADElement x(d);
    x.terms_[m] = Scalar(1);
    x.k_ = k;
    x.normalize();
    return x;
  }

  void accumulate(const ADMonomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  static ADElement combine(const ADElement& x, const ADElement& y, const Scalar& sy) {
    int d = same_dim(x, y);
    if (y.is_zero()) return x;
    if (x.is_zero()) return sy * y;
    int K = std::max(x.k_, y.k_);
    ADElement r(d);
    r.k_ = K;
    r.terms_ = x.numerator_at(K);
    for (const auto& [m, c] : y.numerator_at(K)) r.accumulate(m, sy * c);
    r.normalize();
    return r;
  }

  /**
   * Divide the numerator by zz* with the leading monomial z_1 z*_1; returns
   * the quotient if the remainder vanishes.
   */
  bool divide_by_zzs(term_map& quotient) const {
    term_map p = terms_;
    quotient.clear();
    while (!p.empty()) {
      auto it = p.begin();
      ADMonomial lm = it->first;
      Scalar lc = it->second;
      if (lm.e[0] < 1 || lm.e[d_] < 1) return false;
      ADMonomial qm = lm;
      qm.e[0] -= 1;
      qm.e[d_] -= 1;
      quotient.emplace(qm, lc);
      for (int i = 0; i < d_; ++i) {
        ADMonomial n = qm;
        n.e[i] += 1;
        n.e[d_ + i] += 1;
        auto [jt, fresh] = p.emplace(n, -lc);
        if (!fresh) {
          jt->second -= lc;
          if (jt->second.is_zero()) p.erase(jt);
        }
      }
    }
    return true;
  }

  void normalize() {
    if (terms_.empty()) {
      k_ = 0;
      return;
    }
    term_map q;
    while (k_ > 0 && divide_by_zzs(q)) {
      terms_ = std::move(q);
      --k_;
    }
  }

  ADElement differential(bool star) const {
    ADElement r(d_);
    if (terms_.empty()) return r;
    r.k_ = k_ + 1;
    // (zz*) dN - k (sum_i w_i dx_i) N, with w_i = z_i for dbar and z*_i for del
    for (const auto& [m, c] : terms_) {
      for (int i = 0; i < d_; ++i) {
        std::uint8_t block = star ? m.T : m.S;
        if (block & (1u << i)) continue;
        int sgn = detail::insert_sign(block, i);
        ADMonomial base = m;
        if (star)
          base.T = static_cast<std::uint8_t>(m.T | (1u << i));
        else
          base.S = static_cast<std::uint8_t>(m.S | (1u << i));
        int var = star ? d_ + i : i;
        if (m.e[var] > 0) {
          ADMonomial n = base;
          n.e[var] -= 1;
          Scalar f = c * Scalar(static_cast<long>(m.e[var]));
          if (sgn < 0) f = -f;
          for (int j = 0; j < d_; ++j) {
            ADMonomial t = n;
            t.e[j] += 1;
            t.e[d_ + j] += 1;
            r.accumulate(t, f);
          }
        }
        if (k_ > 0) {
          ADMonomial n = base;
          n.e[star ? i : d_ + i] += 1;
          Scalar f = c * Scalar(static_cast<long>(k_));
          r.accumulate(n, sgn < 0 ? f : -f);
        }
      }
    }
    r.normalize();
    return r;
  }

  friend class ADElementParser;
};

/// z*-homogeneity of a term: z*-degree of the numerator minus k.
inline int zs_homogeneity(const ADElement& a, const ADMonomial& m) { return m.zs_degree(a.dim()) - a.k(); }

/**
 * Membership in A^{p,q}: every term has bidegree (p,q) and z*-homogeneity -q,
 * and the Euler contraction vanishes.
 */
inline bool check_membership(const ADElement& a, int p, int q) {
  for (const auto& [m, c] : a.terms()) {
    if (m.p() != p || m.q() != q) return false;
    if (zs_homogeneity(a, m) != -q) return false;
  }
  return a.euler_contraction().is_zero();
}

/// Membership in A^{p,*} for a bihomogeneous element of any q.
inline bool is_member(const ADElement& a) {
  if (a.is_zero()) return true;
  if (!a.is_bihomogeneous()) return false;
  auto [p, q] = a.bidegree();
  return check_membership(a, p, q);
}

inline std::string ADElement::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) out += " + ";
    first = false;
    out += c.is_rational() ? c.str() : "[" + c.str() + "]";
    for (int i = 0; i < d_; ++i) {
      if (m.e[i] == 0) continue;
      out += "*z" + std::to_string(i + 1);
      if (m.e[i] > 1) out += "^" + std::to_string(m.e[i]);
    }
    for (int i = 0; i < d_; ++i) {
      if (m.e[d_ + i] == 0) continue;
      out += "*zs" + std::to_string(i + 1);
      if (m.e[d_ + i] > 1) out += "^" + std::to_string(m.e[d_ + i]);
    }
    for (int i = 0; i < d_; ++i)
      if (m.S & (1u << i)) out += "*dz" + std::to_string(i + 1);
    for (int i = 0; i < d_; ++i)
      if (m.T & (1u << i)) out += "*dzs" + std::to_string(i + 1);
  }
  if (k_ == 0) return out;
  return "(" + out + ") / (zzs)^" + std::to_string(k_);
}

class ADElementParser {
 public:
  static ADElement parse(int d, std::string_view text) {
    std::string t(text);
    auto trim = [](std::string s) {
      auto a = s.find_first_not_of(" \t\n");
      auto b = s.find_last_not_of(" \t\n");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    t = trim(t);
    ADElement x(d);
    if (t == "0") return x;
    int k = 0;
    auto slash = t.rfind("/ (zzs)^");
    if (slash != std::string::npos) {
      k = std::stoi(t.substr(slash + 8));
      t = trim(t.substr(0, slash));
      if (t.size() < 2 || t.front() != '(' || t.back() != ')') throw std::invalid_argument("ADElement: bad fraction");
      t = t.substr(1, t.size() - 2);
    }
    ADElement::term_map terms;
    std::size_t pos = 0;
    while (pos <= t.size()) {
      auto next = t.find(" + ", pos);
      std::string part = trim(t.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
      auto [m, c] = parse_term(d, part);
      auto [it, fresh] = terms.emplace(m, c);
      if (!fresh) it->second += c;
      if (next == std::string::npos) break;
      pos = next + 3;
    }
    return ADElement::from_raw(d, k, std::move(terms));
  }

 private:
  static std::pair<ADMonomial, Scalar> parse_term(int d, const std::string& s) {
    if (s.empty()) throw std::invalid_argument("ADElement: empty term");
    Scalar c(1);
    std::size_t pos = 0;
    if (s[0] == '[') {
      auto close = s.find(']');
      if (close == std::string::npos) throw std::invalid_argument("ADElement: unclosed coefficient");
      c = Scalar::parse(s.substr(1, close - 1));
      pos = close + 1;
    } else {
      auto star = s.find('*');
      std::string head = s.substr(0, star);
      if (!head.empty() && (std::isdigit(static_cast<unsigned char>(head[0])) || head[0] == '-')) {
        c = Scalar::parse(head);
        pos = star == std::string::npos ? s.size() : star;
      }
    }
    ADMonomial m;
    while (pos < s.size()) {
      if (s[pos] != '*') throw std::invalid_argument("ADElement: expected '*' in " + s);
      ++pos;
      auto end = s.find('*', pos);
      std::string f = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
      pos = end == std::string::npos ? s.size() : end;
      int expo = 1;
      auto caret = f.find('^');
      if (caret != std::string::npos) {
        expo = std::stoi(f.substr(caret + 1));
        f = f.substr(0, caret);
      }
      auto index_of = [&](std::size_t prefix) {
        int i = std::stoi(f.substr(prefix)) - 1;
        if (i < 0 || i >= d) throw std::invalid_argument("ADElement: index out of range in " + f);
        return i;
      };
      if (f.rfind("dzs", 0) == 0) {
        int i = index_of(3);
        if (m.T & (1u << i)) return {m, Scalar()};
        c = c * Scalar(detail::insert_sign(m.T, i) * reverse_sign(m.T, i));
        m.T = static_cast<std::uint8_t>(m.T | (1u << i));
      } else if (f.rfind("dz", 0) == 0) {
        int i = index_of(2);
        if (m.S & (1u << i)) return {m, Scalar()};
        // dz and dz* commute, so only the dz block contributes
        c = c * Scalar(detail::insert_sign(m.S, i) * reverse_sign(m.S, i));
        m.S = static_cast<std::uint8_t>(m.S | (1u << i));
      } else if (f.rfind("zs", 0) == 0) {
        m.e[d + index_of(2)] = static_cast<std::int16_t>(m.e[d + index_of(2)] + expo);
      } else if (f.rfind("z", 0) == 0) {
        m.e[index_of(1)] = static_cast<std::int16_t>(m.e[index_of(1)] + expo);
      } else {
        throw std::invalid_argument("ADElement: unknown factor " + f);
      }
    }
    return {m, c};
  }

  // Appending factor i on the right of a sorted block vs inserting from the left.
  static int reverse_sign(std::uint8_t mask, int) { return (std::popcount(static_cast<unsigned>(mask)) & 1) ? -1 : 1; }
};

inline ADElement ADElement::parse(int d, std::string_view text) { return ADElementParser::parse(d, text); }

}  // namespace hkm
