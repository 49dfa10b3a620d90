#pragma once

#include "hkm/core/scalar.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace hkm {

/**
 * Associative superalgebra on generators whose supercommutators are scalars
 * (Weyl and Clifford algebras).  Words are normal ordered by generator index;
 * the caller picks the index order (e.g. creators before annihilators).
 */
class CanonicalAlgebra {
 public:
  using word = std::vector<int>;
  using element = std::map<word, Scalar>;
  /// [a, b] = ab - (-1)^{|a||b|} ba, a scalar.
  using bracket_fn = std::function<Scalar(int, int)>;

  CanonicalAlgebra(std::vector<bool> odd, bracket_fn bracket) : odd_(std::move(odd)), br_(std::move(bracket)) {}

  std::size_t generators() const { return odd_.size(); }
  bool odd(int g) const { return odd_[static_cast<std::size_t>(g)]; }

  static element unit() { return element{{word{}, Scalar(1)}}; }
  static element gen(int g) { return element{{word{g}, Scalar(1)}}; }

  static void add_to(element& a, const element& b, const Scalar& s = Scalar(1)) {
    for (const auto& [w, c] : b) {
      auto& t = a[w];
      t += s * c;
      if (t.is_zero()) a.erase(w);
    }
  }

  element mul(const element& a, const element& b) const {
    element out;
    for (const auto& [wa, ca] : a)
      for (const auto& [wb, cb] : b) {
        word w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        add_to(out, normal_form(w), ca * cb);
      }
    return out;
  }

  bool parity(const word& w) const {
    bool p = false;
    for (int g : w) p ^= odd(g);
    return p;
  }

  /// Supercommutator of elements with homogeneous terms.
  element supercommutator(const element& a, const element& b) const {
    element out = mul(a, b);
    for (const auto& [wa, ca] : a)
      for (const auto& [wb, cb] : b) {
        Scalar s = (parity(wa) && parity(wb)) ? Scalar(1) : Scalar(-1);
        word w = wb;
        w.insert(w.end(), wa.begin(), wa.end());
        add_to(out, normal_form(w), s * ca * cb);
      }
    return out;
  }

  element normal_form(const word& w) const {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cache_.find(w);
      if (it != cache_.end()) return it->second;
    }
    element out;
    std::size_t i = 0;
    auto ordered = [&](std::size_t j) { return w[j] < w[j + 1] || (w[j] == w[j + 1] && !odd(w[j])); };
    while (i + 1 < w.size() && ordered(i)) ++i;
    if (i + 1 >= w.size()) {
      out[w] = Scalar(1);
    } else if (w[i] == w[i + 1]) {
      // odd a: a a = [a, a] / 2
      Scalar half = br_(w[i], w[i]) / Scalar(2);
      if (!half.is_zero()) {
        word r(w.begin(), w.begin() + static_cast<long>(i));
        r.insert(r.end(), w.begin() + static_cast<long>(i) + 2, w.end());
        add_to(out, normal_form(r), half);
      }
    } else {
      out = swap_at(w, i);
    }
    std::lock_guard<std::mutex> lock(mu_);
    cache_.emplace(w, out);
    return out;
  }

 private:
  std::vector<bool> odd_;
  bracket_fn br_;
  mutable std::mutex mu_;
  mutable std::map<word, element> cache_;

  /// w with w[i] > w[i+1]: ab = (-1)^{|a||b|} ba + [a, b].
  element swap_at(const word& w, std::size_t i) const {
    element out;
    int a = w[i], b = w[i + 1];
    word s = w;
    std::swap(s[i], s[i + 1]);
    add_to(out, normal_form(s), (odd(a) && odd(b)) ? Scalar(-1) : Scalar(1));
    Scalar c = br_(a, b);
    if (!c.is_zero()) {
      word r(w.begin(), w.begin() + static_cast<long>(i));
      r.insert(r.end(), w.begin() + static_cast<long>(i) + 2, w.end());
      add_to(out, normal_form(r), c);
    }
    return out;
  }
};

}  // namespace hkm
