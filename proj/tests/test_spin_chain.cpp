#include "doctest.h"

#include "maba/spin_chain.hpp"

#include <random>

using namespace maba;

namespace {

Rational q(long p, long d = 1) { return Rational(p, d); }

ChainSpec chain(std::size_t n, std::uint64_t seed, const Rational& c = Rational(1)) {
  return ChainSpec(sample_generic(n, {}, c, seed, 30, "theta"), c);
}

Rational draw_away(std::mt19937_64& rng, const ChainSpec& spec) {
  return sample_generic(1, spec.theta.view(), spec.c, rng, 40)[0];
}

}  // namespace

TEST_CASE("R-matrix") {
  CHECK(r_matrix(q(0), q(1)) == permutation_matrix());
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    const Rational c = q(t % 2 ? 1 : 3, 2);
    const Rational u = sample_rational(rng, 20), v = sample_rational(rng, 20),
                   w = sample_rational(rng, 20);
    const MatrixQ lhs = embed_pair(r_matrix(u - v, c), 0, 1) * embed_pair(r_matrix(u - w, c), 0, 2) *
                        embed_pair(r_matrix(v - w, c), 1, 2);
    const MatrixQ rhs = embed_pair(r_matrix(v - w, c), 1, 2) * embed_pair(r_matrix(u - w, c), 0, 2) *
                        embed_pair(r_matrix(u - v, c), 0, 1);
    CHECK(lhs == rhs);
    Matrix2Q k;
    k << sample_rational(rng, 9), sample_rational(rng, 9), sample_rational(rng, 9),
        sample_rational(rng, 9);
    const MatrixQ r = embed_pair(r_matrix(u, c), 0, 1);
    const MatrixQ ka = embed_single(k, 0), kb = embed_single(k, 1);
    CHECK(r * (ka * kb) == (ka * kb) * r);
    CHECK(r * (ka + kb) == (ka + kb) * r);
  }
}

TEST_CASE("monodromy matches the direct R-matrix product") {
  const Rational c(1);
  const ChainSpec one(SpectralSet{q(0)}, c);
  const Rational u(2);
  const MatrixQ r = r_matrix(u - one.theta[0], c);
  const Monodromy t = build_monodromy(one, u);
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) CHECK(t(i, j) == r.block(2 * (i - 1), 2 * (j - 1), 2, 2));
  CHECK(vacuum_weights(one, u) == std::pair{q(3), q(2)});

  // Two sites: T = R_{0,2}(u - theta_2) R_{0,1}(u - theta_1) on aux (x) site2 (x) site1.
  const ChainSpec two(SpectralSet{q(1, 3), q(-5, 2)}, c);
  const Rational x(7, 4);
  const MatrixQ full = embed_pair(r_matrix(x - two.theta[1], c), 0, 1) *
                       embed_pair(r_matrix(x - two.theta[0], c), 0, 2);
  const Monodromy t2 = build_monodromy(two, x);
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) CHECK(t2(i, j) == full.block(4 * (i - 1), 4 * (j - 1), 4, 4));
}

TEST_CASE("highest weight vector") {
  std::mt19937_64 rng(2);
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto spec = chain(n, 10 + n, q(2, 3));
    for (int t = 0; t < 3; ++t) {
      const Rational u = draw_away(rng, spec);
      const auto tm = build_monodromy(spec, u);
      const auto [l1, l2] = vacuum_weights(spec, u);
      const VectorQ vac = vacuum(spec);
      const RowVectorQ dvac = dual_vacuum(spec);
      CHECK(tm(1, 1) * vac == l1 * vac);
      CHECK(tm(2, 2) * vac == l2 * vac);
      CHECK((tm(2, 1) * vac).isZero());
      CHECK(dvac * tm(1, 1) == l1 * dvac);
      CHECK(dvac * tm(2, 2) == l2 * dvac);
      CHECK((dvac * tm(1, 2)).isZero());
      Rational f(1);
      for (const auto& th : spec.theta) f *= kernel_h(u, th, spec.c) / kernel_g(u, th, spec.c);
      CHECK(l1 * l2 == f);
    }
  }
}

TEST_CASE("RTT relation") {
  std::mt19937_64 rng(3);
  const ModelParams params(q(1), q(2), q(-1, 3), q(3), q(5));
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto spec = chain(n, 20 + n);
    const Rational u = draw_away(rng, spec), v = draw_away(rng, spec);
    MatrixQ r = MatrixQ::Zero(4 * spec.dim(), 4 * spec.dim());
    const MatrixQ r4 = r_matrix(u - v, spec.c);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        if (r4(a, b) != 0)
          r.block(a * spec.dim(), b * spec.dim(), spec.dim(), spec.dim()) =
              r4(a, b) * MatrixQ::Identity(spec.dim(), spec.dim());
    for (Family fam : {Family::t, Family::nu}) {
      const MatrixQ ta = aux_embed(monodromy(spec, params, fam, u), 0);
      const MatrixQ tb = aux_embed(monodromy(spec, params, fam, v), 1);
      CHECK(r * ta * tb == tb * ta * r);
    }
  }
}

TEST_CASE("twist pair and modified actions on the vacuum") {
  const TwistPair id = twist_pair(ModelParams(q(1)));
  CHECK(id.a0 == Matrix2Q::Identity());
  CHECK(id.b0 == Matrix2Q::Identity());
  CHECK(id.mu == 1);
  CHECK(twist_pair(ModelParams(q(1), q(1), q(2), q(2), q(3))).mu == q(3, 2));
  const ModelParams params(q(1), q(3, 2), q(-2), q(5, 3), q(7));
  const TwistPair tw = twist_pair(params);
  CHECK(tw.a0.determinant() != 0);
  CHECK(tw.b0.determinant() != 0);

  std::mt19937_64 rng(4);
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto spec = chain(n, 30 + n);
    const Rational u = draw_away(rng, spec);
    const auto nu = modified_monodromy(spec, params, u);
    const auto [l1, l2] = vacuum_weights(spec, u);
    const VectorQ vac = vacuum(spec);
    const VectorQ b = nu(1, 2) * vac;
    const Rational beta1 = params.beta1(), beta2 = params.beta2();
    CHECK(nu(1, 1) * vac == l1 * vac + beta2 * b);
    CHECK(nu(2, 2) * vac == l2 * vac + beta1 * b);
    CHECK(nu(2, 1) * vac == (beta1 * l1 + beta2 * l2) * vac + beta1 * beta2 * b);
    const auto t = build_monodromy(spec, u);
    const auto same = modified_monodromy(spec, ModelParams(q(1)), u);
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j) CHECK(same(i, j) == t(i, j));
    CHECK(modified_entry(spec, params, 2, 1, u) == nu(2, 1));
  }
  CHECK_THROWS_AS(modified_monodromy(chain(1, 1), ModelParams(q(2)), q(5)), DomainError);
}

TEST_CASE("Bethe vectors and direct scalar products") {
  const ModelParams params(q(1), q(1, 2), q(3), q(2), q(-5));
  std::mt19937_64 rng(5);
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto spec = chain(n, 40 + n);
    CHECK(bethe_state(spec, params, Family::t, {}) == vacuum(spec));
    const auto v = sample_generic(3, spec.theta.view(), spec.c, rng, 40);
    std::vector<Rational> perm{v[2], v[0], v[1]};
    for (Family fam : {Family::t, Family::nu})
      CHECK(bethe_state(spec, params, fam, v.view()) == bethe_state(spec, params, fam, perm));
    CHECK(direct_scalar(spec, params, Family::nu, {}, Family::nu, {}) == 1);
  }
  const auto spec = chain(2, 50);
  const Rational u = draw_away(rng, spec);
  const auto [l1, l2] = vacuum_weights(spec, u);
  const Rational vac12 = modified_entry(spec, params, 1, 2, u)(0, 0);
  const std::vector<Rational> us{u};
  CHECK(direct_scalar(spec, params, Family::nu, us, Family::nu, {}) ==
        params.beta1() * l1 + params.beta2() * l2 + params.beta1() * params.beta2() * vac12);
}

TEST_CASE("chain spec validation") {
  CHECK_THROWS_AS(ChainSpec(SpectralSet{}, q(1)), DomainError);
  CHECK_THROWS_AS(ChainSpec(SpectralSet{q(1)}, q(0)), DomainError);
  std::vector<Rational> eleven(11);
  for (int i = 0; i < 11; ++i) eleven[i] = q(3 * i);
  CHECK_THROWS_AS(ChainSpec(SpectralSet(eleven), q(1)), DomainError);
}
