#pragma once

// The only floating-point code in the library.  Every value leaves with an error estimate.

#include "hkm/core/scalar.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace hkm {

/// Subdivision limit reached before the tolerance.
class quadrature_error : public std::runtime_error {
 public:
  quadrature_error(const std::string& what, double reached) : std::runtime_error(what), reached_(reached) {}
  double reached() const { return reached_; }

 private:
  double reached_;
};

struct QuadratureConfig {
  int d = 1;
  rational eps{1, 10000};
  rational L{1};
  /// absolute target for the quadrature error estimate
  double tolerance = 1e-8;
  std::size_t max_regions = 400000;

  void validate() const {
    if (d < 1 || d > 4) throw std::invalid_argument("quadrature: d must be in 1..4");
    if (eps <= 0 || eps >= L) throw std::invalid_argument("quadrature: need 0 < eps < L");
    if (!(tolerance > 0)) throw std::invalid_argument("quadrature: tolerance must be positive");
  }
};

struct QuadratureResult {
  double value = 0;
  /// embedded-rule error estimate (Kronrod or degree 7 vs 5)
  double error = 0;
  std::size_t evaluations = 0;
  std::size_t regions = 0;
};

namespace detail {

struct GmRegion {
  std::vector<double> center, half;
  double value = 0, error = 0;
  std::size_t split_axis = 0;
  bool operator<(const GmRegion& o) const { return error < o.error; }
};

/**
 * Genz-Malik degree 7 rule with embedded degree 5 rule on a box; picks the
 * split axis by the largest fourth difference.
 */
class GenzMalik {
 public:
  explicit GenzMalik(std::size_t n) : n_(n) {
    const double nn = static_cast<double>(n);
    w7_ = {(12824 - 9120 * nn + 400 * nn * nn) / 19683, 980.0 / 6561, (1820 - 400 * nn) / 19683, 200.0 / 19683,
           6859.0 / 19683 / std::ldexp(1.0, static_cast<int>(n))};
    w5_ = {(729 - 950 * nn + 50 * nn * nn) / 729, 245.0 / 486, (265 - 100 * nn) / 1458, 25.0 / 729};
  }

  std::size_t evaluations_per_region() const { return 1 + 4 * n_ + 2 * n_ * (n_ - 1) + (std::size_t{1} << n_); }

  void apply(const std::function<double(const std::vector<double>&)>& f, GmRegion& r) const {
    const double l2 = std::sqrt(9.0 / 70), l3 = std::sqrt(9.0 / 10), l4 = std::sqrt(9.0 / 10), l5 = std::sqrt(9.0 / 19);
    std::vector<double> x = r.center;
    const double f0 = f(x);
    double s2 = 0, s3 = 0, s4 = 0, s5 = 0, best = -1;
    for (std::size_t i = 0; i < n_; ++i) {
      auto at = [&](double lam) {
        x[i] = r.center[i] + lam * r.half[i];
        double v = f(x);
        x[i] = r.center[i];
        return v;
      };
      const double a2 = at(l2) + at(-l2), a3 = at(l3) + at(-l3);
      s2 += a2;
      s3 += a3;
      const double diff = std::abs(a2 - 2 * f0 - (l2 * l2 / (l3 * l3)) * (a3 - 2 * f0));
      if (diff > best) {
        best = diff;
        r.split_axis = i;
      }
    }
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        for (int si : {-1, 1})
          for (int sj : {-1, 1}) {
            x[i] = r.center[i] + si * l4 * r.half[i];
            x[j] = r.center[j] + sj * l4 * r.half[j];
            s4 += f(x);
            x[i] = r.center[i];
            x[j] = r.center[j];
          }
    for (std::size_t m = 0; m < (std::size_t{1} << n_); ++m) {
      for (std::size_t i = 0; i < n_; ++i) x[i] = r.center[i] + (((m >> i) & 1u) ? l5 : -l5) * r.half[i];
      s5 += f(x);
    }
    double vol = 1;
    for (double h : r.half) vol *= 2 * h;
    const double i7 = vol * (w7_[0] * f0 + w7_[1] * s2 + w7_[2] * s3 + w7_[3] * s4 + w7_[4] * s5);
    const double i5 = vol * (w5_[0] * f0 + w5_[1] * s2 + w5_[2] * s3 + w5_[3] * s4);
    r.value = i7;
    r.error = std::abs(i7 - i5);
  }

 private:
  std::size_t n_;
  std::vector<double> w7_, w5_;
};

}  // namespace detail

/// Adaptive Genz-Malik cubature over a box, dimension >= 2, absolute tolerance.
inline QuadratureResult adaptive_cubature(const std::function<double(const std::vector<double>&)>& f,
                                          const std::vector<double>& lower, const std::vector<double>& upper,
                                          double tolerance, std::size_t max_regions) {
  const std::size_t n = lower.size();
  if (n < 2 || upper.size() != n) throw std::invalid_argument("adaptive_cubature: dimension >= 2");
  detail::GenzMalik rule(n);
  detail::GmRegion root;
  for (std::size_t i = 0; i < n; ++i) {
    root.center.push_back((lower[i] + upper[i]) / 2);
    root.half.push_back((upper[i] - lower[i]) / 2);
  }
  rule.apply(f, root);
  std::priority_queue<detail::GmRegion> heap;
  double value = root.value, error = root.error;
  heap.push(std::move(root));
  QuadratureResult out;
  out.evaluations = rule.evaluations_per_region();
  while (error > tolerance) {
    if (heap.size() >= max_regions)
      throw quadrature_error("adaptive_cubature: subdivision limit reached, error " + std::to_string(error), error);
    detail::GmRegion r = heap.top();
    heap.pop();
    value -= r.value;
    error -= r.error;
    const std::size_t ax = r.split_axis;
    r.half[ax] /= 2;
    for (int side : {-1, 1}) {
      detail::GmRegion c;
      c.center = r.center;
      c.half = r.half;
      c.center[ax] += side * r.half[ax];
      rule.apply(f, c);
      value += c.value;
      error += c.error;
      heap.push(std::move(c));
    }
    out.evaluations += 2 * rule.evaluations_per_region();
  }
  // re-sum to shed the drift of the running totals
  out.value = 0;
  out.error = 0;
  out.regions = heap.size();
  while (!heap.empty()) {
    out.value += heap.top().value;
    out.error += heap.top().error;
    heap.pop();
  }
  return out;
}

/**
 * int_{[eps, L]^d} eps / (eps + t_1 + ... + t_d)^{d+1} dt, after t_i = e^{u_i}
 * which spreads the corner peak at t = eps over the u-box.
 */
inline QuadratureResult wheel_integral(const QuadratureConfig& cfg) {
  cfg.validate();
  const double eps = cfg.eps.get_d(), L = cfg.L.get_d();
  const int d = cfg.d;
  const double a = std::log(eps), b = std::log(L);
  if (d == 1) {
    auto g = [eps](double u) {
      const double t = std::exp(u);
      return eps * t / ((eps + t) * (eps + t));
    };
    double err = 0;
    // Boost takes a relative tolerance; the integral is below 1/2
    const double v =
        boost::math::quadrature::gauss_kronrod<double, 15>::integrate(g, a, b, 30, cfg.tolerance, &err);
    if (!(err <= cfg.tolerance))
      throw quadrature_error("wheel_integral: tolerance not reached, error " + std::to_string(err), err);
    return QuadratureResult{v, err, 0, 0};
  }
  auto g = [eps, d](const std::vector<double>& u) {
    double s = eps, jac = 0;
    for (double x : u) {
      s += std::exp(x);
      jac += x;
    }
    return eps * std::exp(jac - (d + 1) * std::log(s));
  };
  return adaptive_cubature(g, std::vector<double>(static_cast<std::size_t>(d), a),
                           std::vector<double>(static_cast<std::size_t>(d), b), cfg.tolerance, cfg.max_regions);
}

/// Closed form for any d: (eps/d!) sum_j C(d,j) (-1)^j / ((d-j+1) eps + j L).
inline rational wheel_integral_exact(int d, const rational& eps, const rational& L) {
  if (d < 1) throw std::invalid_argument("wheel_integral_exact: d >= 1");
  if (eps <= 0 || eps > L) throw std::invalid_argument("wheel_integral_exact: need 0 < eps <= L");
  rational sum = 0, binom = 1, fact = 1;
  for (int j = 1; j <= d; ++j) fact *= j;
  for (int j = 0; j <= d; ++j) {
    rational term = binom / ((d - j + 1) * eps + j * L);
    sum += (j % 2) ? rational(-term) : term;
    binom = binom * (d - j) / (j + 1);
  }
  rational out = eps * sum / fact;
  out.canonicalize();
  return out;
}

/// 1/2 - eps/(eps + L); eps = L gives the empty box.
inline Scalar wheel_integral_exact_d1(const Scalar& eps, const Scalar& L) {
  if (!eps.is_rational() || !L.is_rational()) throw std::invalid_argument("wheel_integral_exact_d1: rational inputs");
  return Scalar(wheel_integral_exact(1, eps.to_rational(), L.to_rational()));
}

struct Extrapolated {
  double coarse = 0;  // f(eps)
  double fine = 0;    // f(eps/2)
  double value = 0;   // 2 f(eps/2) - f(eps)
  double error = 0;   // quadrature error carried through
};

/// Richardson step removing the first-order eps term.
inline Extrapolated wheel_integral_extrapolated(QuadratureConfig cfg) {
  Extrapolated out;
  auto c = wheel_integral(cfg);
  cfg.eps /= 2;
  auto f = wheel_integral(cfg);
  out.coarse = c.value;
  out.fine = f.value;
  out.value = 2 * f.value - c.value;
  out.error = 2 * f.error + c.error;
  return out;
}

}  // namespace hkm
