#pragma once

// Modified Izergin determinants K^{(z)}_{n,m}(u|v), their conjugates, the
// partition-sum expansions and the summation identities built on them.

#include "maba/errors.hpp"
#include "maba/kernels.hpp"
#include "maba/partition.hpp"
#include "maba/rational.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace maba {

using Params = std::span<const Rational>;

/// Which determinant representation to evaluate.
///  - v_side: the m x m determinant, defined for every z.
///  - u_side: (1 - z)^{m - n} times an n x n determinant; undefined at z = 1, n > m.
enum class IzerginSide { v_side, u_side };

/// K^{(z)}_{n,m}(u|v).
Rational mod_izergin(const Rational& z, Params u, Params v, const Rational& c,
                     IzerginSide side = IzerginSide::v_side);

/// Conjugated determinant, built from its own matrix representation. Equals
/// mod_izergin with c replaced by -c.
Rational conj_mod_izergin(const Rational& z, Params u, Params v, const Rational& c,
                          IzerginSide side = IzerginSide::v_side);

inline Rational mod_izergin(const Rational& z, Params u, Params v, const Rational& c,
                            bool conjugated, IzerginSide side = IzerginSide::v_side) {
  return conjugated ? conj_mod_izergin(z, u, v, c, side) : mod_izergin(z, u, v, c, side);
}

/// Ordinary Izergin determinant K_n(u|v); requires #u == #v.
Rational ordinary_izergin(Params u, Params v, const Rational& c);

enum class PartitionSide { v_partitions, u_partitions };

/// K^{(z)} (or its conjugate) as an explicit sum over 2-splits of v (or u),
/// with the f kernel supplied by the caller.
template <typename FKernel>
Rational izergin_partition_sum_with(FKernel&& fk, const Rational& z, Params u, Params v,
                                    const Rational& c, PartitionSide side, bool conjugated) {
  auto pf = [&](Params a, Params b) {
    Rational p(1);
    for (const auto& x : a)
      for (const auto& y : b) p *= fk(x, y, c);
    return p;
  };
  const Rational minus_z = -z;
  if (side == PartitionSide::v_partitions) {
    const SplitEnumerator e(v.size(), 2);
    return split_sum(e, [&](const Split& s) {
             const auto v1 = select(s[0], v);
             const auto v2 = select(s[1], v);
             const Rational w = ipow(minus_z, static_cast<int>(v2.size()));
             if (w == 0) return Rational(0);
             return conjugated ? w * pf(v1, u) * pf(v2, v1) : w * pf(u, v1) * pf(v1, v2);
           })
        .value;
  }
  const int excess = static_cast<int>(v.size()) - static_cast<int>(u.size());
  const Rational pre = ipow(Rational(1) - z, excess);
  const SplitEnumerator e(u.size(), 2);
  const Rational sum = split_sum(e, [&](const Split& s) {
                         const auto u1 = select(s[0], u);
                         const auto u2 = select(s[1], u);
                         const Rational w = ipow(minus_z, static_cast<int>(u1.size()));
                         if (w == 0) return Rational(0);
                         return conjugated ? w * pf(v, u2) * pf(u2, u1)
                                           : w * pf(u2, v) * pf(u1, u2);
                       }).value;
  return pre * sum;
}

Rational izergin_partition_sum(const Rational& z, Params u, Params v, const Rational& c,
                               PartitionSide side, bool conjugated);

/// Left side of the convolution identity
///   sum_{xi => {I, II}} z2^{#I} K^{(z1)}(u|xi_I) K^{(z2)}(v|xi_II) f(xi_II, xi_I) f(u, xi_II)
/// (or its conjugated mirror). Equals K^{(z1 z2)}({u, v}|xi).
Rational izergin_convolution(const Rational& z1, const Rational& z2, Params u, Params v,
                             Params xi, const Rational& c, bool conjugated);

/// Left side of the shifted z1 = z2 = 1 specialization
///   sum K^{(1)}(u|xi_I + c) K^{(1)}(v|xi_II + c) f(xi_II, xi_I) / f(xi_II, u)
/// (or the conjugated mirror with -c). Equals K^{(1)}({u, v}|xi +- c).
Rational izergin_shifted_convolution(Params u, Params v, Params xi, const Rational& c,
                                     bool conjugated);

/// Left side of
///   sum_{v => {I, II}} z1^{#II} K^{(z2)}(u|v_I) f(v_I, v_II) = K^{(z2 - z1)}(u|v)
/// (or the conjugated mirror).
Rational izergin_deformation_sum(const Rational& z1, const Rational& z2, Params u, Params v,
                                 const Rational& c, bool conjugated);

/// Evaluates K^{(z)}(u | x_S) or its conjugate for many subsets S of a fixed
/// pool x. Pairwise kernel values are tabulated once; each evaluation builds
/// the smaller of the two determinant representations.
class IzerginCache {
 public:
  IzerginCache(Params u, Params pool, const Rational& c, bool conjugated);

  Rational evaluate(const Rational& z, Mask subset) const;

  std::size_t pool_size() const noexcept { return pool_.size(); }

 private:
  Rational v_side(const Rational& z, const std::vector<int>& idx) const;
  Rational u_side(const Rational& z, const std::vector<int>& idx) const;
  const Rational& fux(int i, int j) const;  // f between u_i and x_j in the needed order
  const Rational& fxx(int j, int k) const;

  std::vector<Rational> u_;
  std::vector<Rational> pool_;
  Rational c_;
  bool conjugated_;
  // prod_i f(u_i, x_j) (conjugate: f(x_j, u_i)); nullopt on a pole
  std::vector<std::optional<Rational>> fu_pool_;
  std::vector<std::optional<Rational>> fux_;  // n x p
  std::vector<std::optional<Rational>> fxx_;  // p x p, v-side order
  MatrixQ h_inv_xx_;                          // 1 / h in v-side order
  MatrixQ u_side_z_;                          // f(u_j, u_bar_j) / h(u_j, u_k) (or mirror)
};

/// Interpolant of a univariate rational function, numerator/denominator
/// coefficients lowest degree first, reduced to lowest terms with monic
/// denominator.
class RationalFunction {
 public:
  RationalFunction(std::vector<Rational> numerator, std::vector<Rational> denominator);

  Rational operator()(const Rational& x) const;
  const std::vector<Rational>& numerator() const noexcept { return num_; }
  const std::vector<Rational>& denominator() const noexcept { return den_; }

 private:
  std::vector<Rational> num_;
  std::vector<Rational> den_;
};

/// Exact rational interpolation with numerator and denominator degree at most
/// `degree_bound`. Requires more than 2*degree_bound + 1 samples at distinct
/// points; throws DegenerateError when no such function fits every sample.
RationalFunction rational_interpolate(std::span<const std::pair<Rational, Rational>> samples,
                                      int degree_bound);

struct ResidueCheck {
  Rational limit;
  Rational predicted;
  bool held_out_ok = false;
};

/// Sets u_n = v_m + eps, interpolates eps -> (eps/c) K^{(z)}(u|v) and evaluates
/// at eps = 0 (for the conjugate, eps -> (eps/(-c)) Kbar). Compares with
/// f(u_bar_n, v_m) f(v_m, v_bar_m) K_{n-1,m-1}(u_bar_n|v_bar_m) (conjugate:
/// f(v_m, u_bar_n) f(v_bar_m, v_m) Kbar_{n-1,m-1}). The last element of u is
/// replaced.
ResidueCheck residue_check(const Rational& z, Params u, Params v, const Rational& c,
                           bool conjugated);

}  // namespace maba
