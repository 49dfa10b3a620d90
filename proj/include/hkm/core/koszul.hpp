#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hkm {

/// Throws unless perm is a bijection of {0, ..., n-1}.
inline void require_bijection(const std::vector<int>& perm) {
  std::vector<char> seen(perm.size(), 0);
  for (int p : perm) {
    if (p < 0 || static_cast<std::size_t>(p) >= perm.size() || seen[static_cast<std::size_t>(p)])
      throw std::invalid_argument("koszul_sign: not a permutation");
    seen[static_cast<std::size_t>(p)] = 1;
  }
}

/**
 * Sign picked up by x_0 (x) ... (x) x_{n-1} -> x_{perm[0]} (x) ... (x) x_{perm[n-1]}
 * for homogeneous x_i, where odd(a, b) says whether moving x_a past x_b is odd.
 */
template <class OddPair>
int koszul_sign_with(const std::vector<int>& perm, OddPair odd) {
  require_bijection(perm);
  int s = 1;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j] && odd(perm[i], perm[j])) s = -s;
  return s;
}

/// Koszul sign for integer degrees: each transposition contributes (-1)^{|a||b|}.
inline int koszul_sign(const std::vector<int>& perm, const std::vector<int>& degrees) {
  if (perm.size() != degrees.size()) throw std::invalid_argument("koszul_sign: length mismatch");
  return koszul_sign_with(perm, [&](int a, int b) { return ((degrees[a] * degrees[b]) & 1) != 0; });
}

/// Bigraded rule: (p, q) past (p', q') gives (-1)^{pp' + qq'}.
inline int koszul_sign(const std::vector<int>& perm, const std::vector<std::pair<int, int>>& bidegrees) {
  if (perm.size() != bidegrees.size()) throw std::invalid_argument("koszul_sign: length mismatch");
  return koszul_sign_with(perm, [&](int a, int b) {
    const auto& x = bidegrees[a];
    const auto& y = bidegrees[b];
    return ((x.first * y.first + x.second * y.second) & 1) != 0;
  });
}

inline int permutation_sign(const std::vector<int>& perm) {
  return koszul_sign_with(perm, [](int, int) { return true; });
}

/// Calls f(perm) for every permutation of {0..n-1} in lexicographic order.
template <class Fn>
void for_each_permutation(int n, Fn&& f) {
  std::vector<int> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
  do {
    f(static_cast<const std::vector<int>&>(p));
  } while (std::next_permutation(p.begin(), p.end()));
}

/**
 * Calls f(first, rest) for every (k, n-k) unshuffle: first and rest are
 * increasing index lists partitioning {0..n-1}, with |first| = k.
 */
template <class Fn>
void for_each_unshuffle(int n, int k, Fn&& f) {
  if (k < 0 || k > n) return;
  std::vector<int> first(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) first[static_cast<std::size_t>(i)] = i;
  std::vector<int> rest;
  while (true) {
    rest.clear();
    std::size_t j = 0;
    for (int i = 0; i < n; ++i) {
      if (j < first.size() && first[j] == i)
        ++j;
      else
        rest.push_back(i);
    }
    f(static_cast<const std::vector<int>&>(first), static_cast<const std::vector<int>&>(rest));
    int i = k - 1;
    while (i >= 0 && first[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++first[static_cast<std::size_t>(i)];
    for (int t = i + 1; t < k; ++t) first[static_cast<std::size_t>(t)] = first[static_cast<std::size_t>(t - 1)] + 1;
  }
}

}  // namespace hkm
