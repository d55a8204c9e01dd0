#pragma once

// Brute-force oracle: the inhomogeneous XXX spin-1/2 chain as exact dense
// linear algebra on (C^2)^{N}. Site N is the most significant tensor factor;
// basis index 0 (all spins up) is the vacuum.

#include "maba/errors.hpp"
#include "maba/kernels.hpp"
#include "maba/rational.hpp"

#include <array>
#include <span>
#include <utility>

namespace maba {

using Matrix2Q = Eigen::Matrix<Rational, 2, 2>;

struct ChainSpec {
  SpectralSet theta;
  Rational c{1};

  ChainSpec() = default;
  /// Throws DomainError unless 1 <= N <= 10 and c != 0.
  ChainSpec(SpectralSet theta, Rational c);

  std::size_t sites() const noexcept { return theta.size(); }
  Eigen::Index dim() const noexcept { return Eigen::Index{1} << theta.size(); }
};

inline constexpr std::size_t kMaxSites = 10;

enum class Family { t, nu };

/// The 2x2 auxiliary-space block decomposition of a monodromy matrix; entries
/// are addressed with the 1-based indices used in the formulas.
struct Monodromy {
  std::array<MatrixQ, 4> entries;

  const MatrixQ& operator()(int i, int j) const { return entries[(i - 1) * 2 + (j - 1)]; }
  MatrixQ& operator()(int i, int j) { return entries[(i - 1) * 2 + (j - 1)]; }
};

/// R(u) = (u/c) I + P on C^2 (x) C^2.
MatrixQ r_matrix(const Rational& u, const Rational& c);
MatrixQ permutation_matrix();

/// Embeds a two-space operator into (C^2)^{(x)3} acting on factors a < b
/// (0 = most significant).
MatrixQ embed_pair(const MatrixQ& op, int a, int b);

/// Embeds a one-space 2x2 operator into (C^2)^{(x)3} at factor `a`.
MatrixQ embed_single(const Matrix2Q& op, int a);

/// T(u) = R_{0N}(u - theta_N) ... R_{01}(u - theta_1).
Monodromy build_monodromy(const ChainSpec& spec, const Rational& u);

/// (lambda_1(u), lambda_2(u)) = (prod h(u, theta), prod (u - theta)/c).
std::pair<Rational, Rational> vacuum_weights(const ChainSpec& spec, const Rational& u);

/// Twist matrices with the sqrt(mu) prefactors removed.
struct TwistPair {
  Matrix2Q a0;
  Matrix2Q b0;
  Rational mu;
};

TwistPair twist_pair(const ModelParams& params);

/// nu(u) = mu * A0 T(u) B0.
Monodromy modified_monodromy(const ChainSpec& spec, const ModelParams& params, const Rational& u);
MatrixQ modified_entry(const ChainSpec& spec, const ModelParams& params, int i, int j,
                       const Rational& u);

/// T(u) for Family::t, nu(u) for Family::nu.
Monodromy monodromy(const ChainSpec& spec, const ModelParams& params, Family family,
                    const Rational& u);

VectorQ vacuum(const ChainSpec& spec);
RowVectorQ dual_vacuum(const ChainSpec& spec);

/// Operator T_a(u) (aux slot 0) or T_b(u) (aux slot 1) on C^2 (x) C^2 (x) H.
MatrixQ aux_embed(const Monodromy& t, int slot);

/// prod_i x_12(v_i) |0>, applied right to left in the given order.
VectorQ bethe_state(const ChainSpec& spec, const ModelParams& params, Family family,
                    std::span<const Rational> v);

/// Applies x_ij(u_k) for every k (rightmost first) to `state`.
VectorQ apply_entries(const ChainSpec& spec, const ModelParams& params, Family family, int i,
                      int j, std::span<const Rational> u, VectorQ state);

/// <0| prod x_21(u) prod x_12(v) |0> by explicit matrix-vector products.
Rational direct_scalar(const ChainSpec& spec, const ModelParams& params, Family left,
                       std::span<const Rational> u, Family right, std::span<const Rational> v);

}  // namespace maba
