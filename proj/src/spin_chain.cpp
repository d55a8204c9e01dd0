#include "maba/spin_chain.hpp"

#include <unsupported/Eigen/KroneckerProduct>

namespace maba {

ChainSpec::ChainSpec(SpectralSet th, Rational cc) : theta(std::move(th)), c(std::move(cc)) {
  if (theta.size() < 1 || theta.size() > kMaxSites)
    throw DomainError("chain needs 1..10 sites, got " + std::to_string(theta.size()));
  if (c == 0) throw DomainError("c must be nonzero");
}

MatrixQ permutation_matrix() {
  MatrixQ p = MatrixQ::Zero(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) p(a * 2 + b, b * 2 + a) = 1;
  return p;
}

MatrixQ r_matrix(const Rational& u, const Rational& c) {
  MatrixQ r = permutation_matrix();
  for (int i = 0; i < 4; ++i) r(i, i) += u / c;
  return r;
}

MatrixQ embed_pair(const MatrixQ& op, int a, int b) {
  MatrixQ out = MatrixQ::Zero(8, 8);
  for (int row = 0; row < 8; ++row) {
    for (int col = 0; col < 8; ++col) {
      auto bit = [](int x, int k) { return (x >> (2 - k)) & 1; };
      const int other = 3 - a - b;
      if (bit(row, other) != bit(col, other)) continue;
      out(row, col) = op(bit(row, a) * 2 + bit(row, b), bit(col, a) * 2 + bit(col, b));
    }
  }
  return out;
}

MatrixQ embed_single(const Matrix2Q& op, int a) {
  MatrixQ out = MatrixQ::Zero(8, 8);
  for (int row = 0; row < 8; ++row) {
    for (int col = 0; col < 8; ++col) {
      bool same = true;
      for (int k = 0; k < 3; ++k)
        if (k != a && ((row >> (2 - k)) & 1) != ((col >> (2 - k)) & 1)) same = false;
      if (same) out(row, col) = op((row >> (2 - a)) & 1, (col >> (2 - a)) & 1);
    }
  }
  return out;
}

Monodromy build_monodromy(const ChainSpec& spec, const Rational& u) {
  const Rational& c = spec.c;
  Monodromy t;
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) t(i, j) = MatrixQ::Identity(1, 1) * Rational(i == j ? 1 : 0);
  for (std::size_t k = 0; k < spec.sites(); ++k) {
    const Rational x = (u - spec.theta[k]) / c;
    // Site Lax blocks: L_ij = x delta_ij + E_ji.
    std::array<Matrix2Q, 4> lax;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Matrix2Q m = Matrix2Q::Zero();
        if (i == j) m(0, 0) = m(1, 1) = x;
        m(j, i) += 1;
        lax[i * 2 + j] = m;
      }
    Monodromy next;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        MatrixQ acc = Eigen::kroneckerProduct(lax[i * 2 + 0], t(1, j + 1)).eval();
        acc += Eigen::kroneckerProduct(lax[i * 2 + 1], t(2, j + 1)).eval();
        next(i + 1, j + 1) = std::move(acc);
      }
    t = std::move(next);
  }
  return t;
}

std::pair<Rational, Rational> vacuum_weights(const ChainSpec& spec, const Rational& u) {
  Rational l1(1), l2(1);
  for (const auto& th : spec.theta) {
    l1 *= kernel_h(u, th, spec.c);
    l2 *= (u - th) / spec.c;
  }
  return {l1, l2};
}

TwistPair twist_pair(const ModelParams& p) {
  TwistPair out;
  out.a0 << Rational(1), p.rho2() / p.kappa_minus(), p.rho1() / p.kappa_plus(), Rational(1);
  out.b0 << Rational(1), p.rho1() / p.kappa_minus(), p.rho2() / p.kappa_plus(), Rational(1);
  out.mu = p.mu();
  return out;
}

namespace {
void require_same_c(const ChainSpec& spec, const ModelParams& params) {
  if (spec.c != params.c())
    throw DomainError("chain c = " + to_string(spec.c) + " differs from model c = " +
                      to_string(params.c()));
}
}  // namespace

Monodromy modified_monodromy(const ChainSpec& spec, const ModelParams& params,
                             const Rational& u) {
  require_same_c(spec, params);
  const Monodromy t = build_monodromy(spec, u);
  const TwistPair tw = twist_pair(params);
  Monodromy out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      MatrixQ acc = MatrixQ::Zero(spec.dim(), spec.dim());
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          const Rational w = tw.a0(i, k) * tw.b0(l, j);
          if (w != 0) acc += w * t(k + 1, l + 1);
        }
      out(i + 1, j + 1) = tw.mu * acc;
    }
  return out;
}

MatrixQ modified_entry(const ChainSpec& spec, const ModelParams& params, int i, int j,
                       const Rational& u) {
  if (i < 1 || i > 2 || j < 1 || j > 2) throw DomainError("entry index out of range");
  return modified_monodromy(spec, params, u)(i, j);
}

Monodromy monodromy(const ChainSpec& spec, const ModelParams& params, Family family,
                    const Rational& u) {
  return family == Family::t ? build_monodromy(spec, u) : modified_monodromy(spec, params, u);
}

VectorQ vacuum(const ChainSpec& spec) {
  VectorQ v = VectorQ::Zero(spec.dim());
  v(0) = 1;
  return v;
}

RowVectorQ dual_vacuum(const ChainSpec& spec) {
  RowVectorQ v = RowVectorQ::Zero(spec.dim());
  v(0) = 1;
  return v;
}

MatrixQ aux_embed(const Monodromy& t, int slot) {
  const Eigen::Index d = t(1, 1).rows();
  MatrixQ out = MatrixQ::Zero(4 * d, 4 * d);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int b2 = 0; b2 < 2; ++b2) {
          const int row = a * 2 + b;
          const int col = a2 * 2 + b2;
          if (slot == 0 && b == b2)
            out.block(row * d, col * d, d, d) = t(a + 1, a2 + 1);
          else if (slot == 1 && a == a2)
            out.block(row * d, col * d, d, d) = t(b + 1, b2 + 1);
        }
  return out;
}

VectorQ apply_entries(const ChainSpec& spec, const ModelParams& params, Family family, int i,
                      int j, std::span<const Rational> u, VectorQ state) {
  for (auto it = u.rbegin(); it != u.rend(); ++it)
    state = monodromy(spec, params, family, *it)(i, j) * state;
  return state;
}

VectorQ bethe_state(const ChainSpec& spec, const ModelParams& params, Family family,
                    std::span<const Rational> v) {
  return apply_entries(spec, params, family, 1, 2, v, vacuum(spec));
}

Rational direct_scalar(const ChainSpec& spec, const ModelParams& params, Family left,
                       std::span<const Rational> u, Family right, std::span<const Rational> v) {
  const VectorQ ket = bethe_state(spec, params, right, v);
  const VectorQ mid = apply_entries(spec, params, left, 2, 1, u, ket);
  return mid(0);
}

}  // namespace maba
