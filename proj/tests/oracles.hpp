#pragma once

// Independent reference implementations used only by the tests: permutation
// expansion determinants and direct bitmask loops, sharing no code with the
// library's elimination and split enumeration.

#include "maba/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

using maba::Rational;

inline Rational f(const Rational& a, const Rational& b, const Rational& c) {
  return (a - b + c) / (a - b);
}
inline Rational g(const Rational& a, const Rational& b, const Rational& c) { return c / (a - b); }
inline Rational h(const Rational& a, const Rational& b, const Rational& c) {
  return (a - b + c) / c;
}

inline Rational pf(const std::vector<Rational>& a, const std::vector<Rational>& b,
                   const Rational& c) {
  Rational p(1);
  for (const auto& x : a)
    for (const auto& y : b) p *= f(x, y, c);
  return p;
}

inline Rational pow(Rational x, int k) {
  if (k < 0) {
    x = Rational(1) / x;
    k = -k;
  }
  Rational r(1);
  while (k-- > 0) r *= x;
  return r;
}

/// Leibniz expansion.
inline Rational leibniz(const std::vector<std::vector<Rational>>& a) {
  const std::size_t n = a.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rational total(0);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Rational term(inversions % 2 ? -1 : 1);
    for (std::size_t i = 0; i < n; ++i) term *= a[i][perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline std::vector<Rational> pick(const std::vector<Rational>& xs, std::uint64_t mask,
                                  bool in) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (((mask >> i) & 1) == static_cast<std::uint64_t>(in)) out.push_back(xs[i]);
  return out;
}

/// K^{(z)}(u|v) from the v-side matrix, via Leibniz.
inline Rational izergin(const Rational& z, const std::vector<Rational>& u,
                        const std::vector<Rational>& v, const Rational& c, bool conj = false) {
  const std::size_t m = v.size();
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m));
  for (std::size_t j = 0; j < m; ++j) {
    Rational row(1);
    for (const auto& x : u) row *= conj ? f(v[j], x, c) : f(x, v[j], c);
    for (std::size_t k = 0; k < m; ++k)
      if (k != j) row *= conj ? f(v[k], v[j], c) : f(v[j], v[k], c);
    for (std::size_t k = 0; k < m; ++k) {
      a[j][k] = row / (conj ? h(v[k], v[j], c) : h(v[j], v[k], c));
      if (j == k) a[j][k] -= z;
    }
  }
  return leibniz(a);
}

/// Direct loop over subsets: sum (-z)^{#II} f(u, I) f(I, II).
inline Rational izergin_sum(const Rational& z, const std::vector<Rational>& u,
                            const std::vector<Rational>& v, const Rational& c, bool conj = false) {
  Rational total(0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << v.size()); ++mask) {
    const auto v2 = pick(v, mask, true);
    const auto v1 = pick(v, mask, false);
    const Rational w = pow(-z, static_cast<int>(v2.size()));
    total += conj ? w * pf(v1, u, c) * pf(v2, v1, c) : w * pf(u, v1, c) * pf(v1, v2, c);
  }
  return total;
}

}  // namespace oracle
