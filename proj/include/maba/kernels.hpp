#pragma once

// Rational kernels g, f, h, products over parameter sets, twist data and
// generic parameter sampling.

#include "maba/errors.hpp"
#include "maba/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace maba {

namespace detail {
template <typename Scalar>
std::string describe(const Scalar& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}
}  // namespace detail

/// g(u, v) = c / (u - v)
template <typename Scalar>
Scalar kernel_g(const Scalar& u, const Scalar& v, const Scalar& c) {
  if (u == v) throw PoleError("g", detail::describe(u), detail::describe(v));
  return c / (u - v);
}

/// f(u, v) = (u - v + c) / (u - v)
template <typename Scalar>
Scalar kernel_f(const Scalar& u, const Scalar& v, const Scalar& c) {
  if (u == v) throw PoleError("f", detail::describe(u), detail::describe(v));
  const Scalar d = u - v;
  return (d + c) / d;
}

/// h(u, v) = (u - v + c) / c, a polynomial, total.
template <typename Scalar>
Scalar kernel_h(const Scalar& u, const Scalar& v, const Scalar& c) {
  return (u - v + c) / c;
}

enum class Kernel { g, f, h };

const char* kernel_name(Kernel k) noexcept;

template <typename Scalar>
Scalar kernel(Kernel k, const Scalar& u, const Scalar& v, const Scalar& c) {
  switch (k) {
    case Kernel::g: return kernel_g(u, v, c);
    case Kernel::f: return kernel_f(u, v, c);
    case Kernel::h: return kernel_h(u, v, c);
  }
  return Scalar(0);
}

/// Ordered finite set of spectral parameters. Order only matters for indexing.
struct SpectralSet {
  std::vector<Rational> values;
  std::string label;

  SpectralSet() = default;
  explicit SpectralSet(std::vector<Rational> v, std::string l = {})
      : values(std::move(v)), label(std::move(l)) {}
  SpectralSet(std::initializer_list<Rational> v) : values(v) {}

  std::size_t size() const noexcept { return values.size(); }
  bool empty() const noexcept { return values.empty(); }
  const Rational& operator[](std::size_t i) const { return values[i]; }
  auto begin() const noexcept { return values.begin(); }
  auto end() const noexcept { return values.end(); }
  std::span<const Rational> view() const noexcept { return values; }

  /// Every element plus `delta`.
  SpectralSet shifted(const Rational& delta) const;
  SpectralSet negated() const;
  /// The complement of element k (the set with u_k removed).
  SpectralSet without(std::size_t k) const;
  /// Concatenation {a, b}.
  static SpectralSet join(const SpectralSet& a, const SpectralSet& b);

  friend bool operator==(const SpectralSet& a, const SpectralSet& b) {
    return a.values == b.values;
  }
};

/// Product of `kind` over all pairs (x, y) with x in left, y in right.
/// Empty on either side gives 1.
Rational set_product(Kernel kind, std::span<const Rational> left,
                     std::span<const Rational> right, const Rational& c);
Rational set_product(Kernel kind, const Rational& left, std::span<const Rational> right,
                     const Rational& c);
Rational set_product(Kernel kind, std::span<const Rational> left, const Rational& right,
                     const Rational& c);

/// prod_{j != k} kind(s_j, s_k) when `element_first` is false (the f(u_bar_k, u_k)
/// convention), prod_{j != k} kind(s_k, s_j) otherwise.
Rational complement_product(Kernel kind, std::span<const Rational> set, std::size_t k,
                            const Rational& c, bool element_first);

// Short forms for the overwhelmingly common f products.
inline Rational prod_f(std::span<const Rational> a, std::span<const Rational> b,
                       const Rational& c) {
  return set_product(Kernel::f, a, b, c);
}
inline Rational prod_g(std::span<const Rational> a, std::span<const Rational> b,
                       const Rational& c) {
  return set_product(Kernel::g, a, b, c);
}

/// First pair in `values` whose difference lies in {0, +c, -c}, if any.
std::optional<std::pair<std::size_t, std::size_t>> find_collision(
    std::span<const Rational> values, const Rational& c);
bool is_generic(std::span<const Rational> values, const Rational& c);

/// The twist data the formulas depend on: beta_1, beta_2 and mu.
struct TwistData {
  Rational beta1;
  Rational beta2;
  Rational mu;

  /// beta_1 <-> beta_2; mu is invariant.
  TwistData swapped() const { return {beta2, beta1, mu}; }
};

/// Twist parameters (rho_1, rho_2, kappa^+, kappa^-) together with c.
class ModelParams {
 public:
  /// Untwisted model (rho_1 = rho_2 = 0, kappa^+ = kappa^- = 1).
  explicit ModelParams(Rational c = Rational(1));
  ModelParams(Rational c, Rational rho1, Rational rho2, Rational kappa_plus,
              Rational kappa_minus);

  const Rational& c() const noexcept { return c_; }
  const Rational& rho1() const noexcept { return rho1_; }
  const Rational& rho2() const noexcept { return rho2_; }
  const Rational& kappa_plus() const noexcept { return kappa_plus_; }
  const Rational& kappa_minus() const noexcept { return kappa_minus_; }

  Rational beta1() const { return rho1_ / kappa_plus_; }
  Rational beta2() const { return rho2_ / kappa_plus_; }
  /// 1 / (1 - rho_1 rho_2 / (kappa^+ kappa^-))
  Rational mu() const;
  TwistData twist() const { return {beta1(), beta2(), mu()}; }

 private:
  Rational c_;
  Rational rho1_{0};
  Rational rho2_{0};
  Rational kappa_plus_{1};
  Rational kappa_minus_{1};
};

/// Uniform rational p/q with |p| <= bound, 1 <= q <= bound.
Rational sample_rational(std::mt19937_64& rng, int bound);

/// Draws `count` rationals with numerators and denominators bounded by `bound`
/// such that the joint set {context, sample} has no pairwise difference in
/// {0, +c, -c}. Deterministic for a given generator state.
SpectralSet sample_generic(std::size_t count, std::span<const Rational> context,
                           const Rational& c, std::mt19937_64& rng, int bound,
                           std::string label = {});
SpectralSet sample_generic(std::size_t count, std::span<const Rational> context,
                           const Rational& c, std::uint64_t seed, int bound,
                           std::string label = {});

}  // namespace maba
