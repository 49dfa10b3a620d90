#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <compare>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hkm {

using rational = mpq_class;

inline bool is_zero(const rational& x) { return sgn(x) == 0; }

namespace detail {

/// Dense univariate polynomial over Q, coefficients stored low degree first.
/// Trailing zeros are always trimmed, so the zero polynomial is empty.
struct qpoly {
  std::vector<rational> c;

  qpoly() = default;
  explicit qpoly(rational x) {
    if (!is_zero(x)) c.push_back(std::move(x));
  }

  bool empty() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  const rational& lead() const { return c.back(); }
  bool is_one() const { return c.size() == 1 && c[0] == 1; }

  void trim() {
    while (!c.empty() && is_zero(c.back())) c.pop_back();
  }

  friend bool operator==(const qpoly& a, const qpoly& b) { return a.c == b.c; }
};

inline qpoly add(const qpoly& a, const qpoly& b, int sign = 1) {
  qpoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()));
  for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) {
    if (sign > 0)
      r.c[i] += b.c[i];
    else
      r.c[i] -= b.c[i];
  }
  r.trim();
  return r;
}

inline qpoly mul(const qpoly& a, const qpoly& b) {
  qpoly r;
  if (a.empty() || b.empty()) return r;
  if (a.c.size() == 1 && a.c[0] == 1) return b;
  if (b.c.size() == 1 && b.c[0] == 1) return a;
  r.c.assign(a.c.size() + b.c.size() - 1, rational(0));
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (is_zero(a.c[i])) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  }
  r.trim();
  return r;
}

inline qpoly scale(const qpoly& a, const rational& s) {
  qpoly r;
  if (is_zero(s)) return r;
  r.c.reserve(a.c.size());
  for (const auto& x : a.c) r.c.push_back(x * s);
  return r;
}

inline qpoly shift(const qpoly& a, int k) {
  if (a.empty() || k == 0) return a;
  qpoly r;
  r.c.assign(static_cast<std::size_t>(k), rational(0));
  r.c.insert(r.c.end(), a.c.begin(), a.c.end());
  return r;
}

/// Quotient and remainder of a by nonzero b.
inline std::pair<qpoly, qpoly> divmod(qpoly a, const qpoly& b) {
  qpoly q;
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  int db = b.degree();
  if (a.degree() >= db) q.c.assign(static_cast<std::size_t>(a.degree() - db + 1), rational(0));
  while (!a.empty() && a.degree() >= db) {
    int s = a.degree() - db;
    rational f = a.lead() / b.lead();
    q.c[static_cast<std::size_t>(s)] = f;
    for (int i = 0; i <= db; ++i) a.c[static_cast<std::size_t>(s + i)] -= f * b.c[static_cast<std::size_t>(i)];
    a.trim();
  }
  q.trim();
  return {std::move(q), std::move(a)};
}

inline qpoly monic(const qpoly& a) {
  if (a.empty() || a.lead() == 1) return a;
  rational inv = 1 / a.lead();
  return scale(a, inv);
}

inline qpoly gcd(qpoly a, qpoly b) {
  while (!b.empty()) {
    auto r = divmod(std::move(a), b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

/// Number of leading zero coefficients (the tau-adic valuation).
inline int valuation(const qpoly& a) {
  int v = 0;
  while (v < static_cast<int>(a.c.size()) && is_zero(a.c[static_cast<std::size_t>(v)])) ++v;
  return v;
}

inline qpoly drop_low(const qpoly& a, int v) {
  qpoly r;
  if (v <= 0) return a;
  r.c.assign(a.c.begin() + v, a.c.end());
  return r;
}

}  // namespace detail

/**
 * Element of Q(tau), tau a formal transcendental.
 *
 * Stored as tau^val * num(tau) / den(tau) with num(0) != 0, den(0) != 0,
 * den monic and gcd(num, den) = 1.  The common cases (rationals and
 * Laurent monomials) never touch the Euclidean algorithm.
 */
class Scalar {
 public:
  Scalar() { den_.c.push_back(rational(1)); }
  Scalar(int x) : Scalar(rational(x)) {}
  Scalar(long x) : Scalar(rational(x)) {}
  Scalar(rational x) : Scalar() {
    if (!hkm::is_zero(x)) num_.c.push_back(std::move(x));
  }

  static Scalar tau(int e = 1) {
    Scalar s(1);
    s.val_ = e;
    return s;
  }
  static Scalar fraction(long p, long q) { return Scalar(rational(p, q)); }

  bool is_zero() const { return num_.empty(); }
  bool is_rational() const { return val_ == 0 && num_.c.size() <= 1 && den_.is_one(); }
  bool is_monomial() const { return num_.c.size() == 1 && den_.is_one(); }
  /// Exponent of tau when is_monomial().
  int tau_exponent() const { return val_; }
  /// Rational value; throws unless is_rational().
  rational to_rational() const {
    if (!is_rational()) throw std::domain_error("scalar is not rational: " + str());
    return num_.empty() ? rational(0) : num_.c[0];
  }
  /// Value at tau = t; throws at a pole.
  rational at(const rational& t) const {
    auto ev = [&](const detail::qpoly& p) {
      rational v(0);
      for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) v = v * t + *it;
      return v;
    };
    rational den = ev(den_);
    if (hkm::is_zero(den) || (val_ < 0 && hkm::is_zero(t))) throw std::domain_error("scalar: pole at evaluation point");
    rational pw(1);
    for (int i = 0; i < std::abs(val_); ++i) pw *= t;
    rational v = ev(num_) / den;
    return val_ >= 0 ? rational(v * pw) : rational(v / pw);
  }

  /// Coefficient of a monomial scalar.
  rational monomial_coeff() const { return num_.empty() ? rational(0) : num_.c[0]; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.val_ == b.val_ && a.num_ == b.num_ && a.den_ == b.den_;
  }

  Scalar operator-() const {
    Scalar r = *this;
    for (auto& x : r.num_.c) x = -x;
    return r;
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) { return combine(a, b, 1); }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return combine(a, b, -1); }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_zero() || b.is_zero()) return Scalar();
    Scalar r;
    r.val_ = a.val_ + b.val_;
    if (a.den_.is_one() && b.den_.is_one()) {
      r.num_ = detail::mul(a.num_, b.num_);
      return r;
    }
    // cross cancellation keeps the result reduced
    auto g1 = detail::gcd(a.num_, b.den_);
    auto g2 = detail::gcd(b.num_, a.den_);
    auto an = detail::divmod(a.num_, g1).first;
    auto bd = detail::divmod(b.den_, g1).first;
    auto bn = detail::divmod(b.num_, g2).first;
    auto ad = detail::divmod(a.den_, g2).first;
    r.num_ = detail::mul(an, bn);
    r.den_ = detail::mul(ad, bd);
    r.fix_leading();
    return r;
  }

  Scalar inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero scalar");
    Scalar r;
    r.val_ = -val_;
    r.num_ = den_;
    r.den_ = num_;
    r.fix_leading();
    return r;
  }

  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

  Scalar pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar r(1), b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  /// Canonical text form, e.g. "3/2*tau^-2", "1+tau", "(1)/(1+tau)".
  std::string str() const {
    if (den_.is_one()) return laurent_str(num_, val_);
    return "(" + laurent_str(num_, val_) + ")/(" + laurent_str(den_, 0) + ")";
  }

  static Scalar parse(std::string_view s) {
    std::string t;
    for (char ch : s)
      if (ch != ' ' && ch != '\t') t.push_back(ch);
    if (t.empty()) throw std::invalid_argument("empty scalar");
    if (t.front() == '(') {
      auto mid = t.find(")/(");
      if (mid == std::string::npos || t.back() != ')') throw std::invalid_argument("bad scalar: " + t);
      Scalar n = parse_laurent(std::string_view(t).substr(1, mid - 1));
      Scalar d = parse_laurent(std::string_view(t).substr(mid + 3, t.size() - mid - 4));
      return n / d;
    }
    return parse_laurent(t);
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

 private:
  int val_ = 0;
  detail::qpoly num_;
  detail::qpoly den_;

  // Restore num(0) != 0, den(0) != 0, den monic after num_/den_ changed.
  void fix_leading() {
    if (num_.empty()) {
      val_ = 0;
      den_ = detail::qpoly(rational(1));
      return;
    }
    int vn = detail::valuation(num_);
    int vd = detail::valuation(den_);
    num_ = detail::drop_low(num_, vn);
    den_ = detail::drop_low(den_, vd);
    val_ += vn - vd;
    if (den_.lead() != 1) {
      rational inv = 1 / den_.lead();
      num_ = detail::scale(num_, inv);
      den_ = detail::scale(den_, inv);
    }
  }

  static Scalar combine(const Scalar& a, const Scalar& b, int sign) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return sign > 0 ? b : -b;
    int v = std::min(a.val_, b.val_);
    Scalar r;
    r.val_ = v;
    if (a.den_.is_one() && b.den_.is_one()) {
      r.num_ = detail::add(detail::shift(a.num_, a.val_ - v), detail::shift(b.num_, b.val_ - v), sign);
      r.fix_leading();
      return r;
    }
    auto g = detail::gcd(a.den_, b.den_);
    auto ad = detail::divmod(a.den_, g).first;
    auto bd = detail::divmod(b.den_, g).first;
    auto n = detail::add(detail::shift(detail::mul(a.num_, bd), a.val_ - v),
                         detail::shift(detail::mul(b.num_, ad), b.val_ - v), sign);
    auto den = detail::mul(detail::mul(ad, bd), g);
    auto h = detail::gcd(n, den);
    r.num_ = detail::divmod(n, h).first;
    r.den_ = detail::divmod(den, h).first;
    r.fix_leading();
    return r;
  }

  static std::string monomial_str(const rational& q, int e) {
    if (e == 0) return q.get_str();
    std::string t = e == 1 ? "tau" : "tau^" + std::to_string(e);
    if (q == 1) return t;
    if (q == -1) return "-" + t;
    return q.get_str() + "*" + t;
  }

  static std::string laurent_str(const detail::qpoly& p, int val) {
    if (p.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < p.c.size(); ++i) {
      if (hkm::is_zero(p.c[i])) continue;
      std::string m = monomial_str(p.c[i], val + static_cast<int>(i));
      if (!out.empty() && m.front() != '-') out.push_back('+');
      out += m;
    }
    return out;
  }

  static Scalar parse_monomial(std::string_view m) {
    if (m.empty()) throw std::invalid_argument("empty scalar term");
    rational coef(1);
    int e = 0;
    auto tpos = m.find("tau");
    std::string_view cpart = m, tpart;
    if (tpos != std::string_view::npos) {
      cpart = m.substr(0, tpos);
      tpart = m.substr(tpos + 3);
      e = 1;
      if (!tpart.empty()) {
        if (tpart.front() != '^') throw std::invalid_argument("bad tau power");
        e = std::stoi(std::string(tpart.substr(1)));
      }
      if (!cpart.empty() && cpart.back() == '*') cpart.remove_suffix(1);
      if (cpart.empty() || cpart == "+")
        coef = 1;
      else if (cpart == "-")
        coef = -1;
      else
        coef = parse_rational(cpart);
    } else {
      coef = parse_rational(cpart);
    }
    return Scalar(coef) * Scalar::tau(e);
  }

  static rational parse_rational(std::string_view s) {
    std::string t(s);
    if (!t.empty() && t.front() == '+') t.erase(0, 1);
    if (t.empty()) throw std::invalid_argument("empty rational");
    for (std::size_t i = 0; i < t.size(); ++i) {
      char ch = t[i];
      if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' || (ch == '-' && i == 0)))
        throw std::invalid_argument("bad rational: " + t);
    }
    rational q;
    if (q.set_str(t, 10) != 0) throw std::invalid_argument("bad rational: " + t);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + t);
    q.canonicalize();
    return q;
  }

  static Scalar parse_laurent(std::string_view s) {
    Scalar acc;
    std::size_t start = 0;
    for (std::size_t i = 1; i <= s.size(); ++i) {
      bool split = i == s.size() || ((s[i] == '+' || s[i] == '-') && s[i - 1] != '^' && s[i - 1] != '*');
      if (split) {
        acc += parse_monomial(s.substr(start, i - start));
        start = i;
      }
    }
    return acc;
  }
};

inline bool is_zero(const Scalar& x) { return x.is_zero(); }

}  // namespace hkm
