#include "doctest.h"

#include "maba/kernels.hpp"
#include "maba/partition.hpp"

#include <set>

using namespace maba;

namespace {
Rational q(long p, long d = 1) { return Rational(p, d); }

Rational binom(int p, int k) {
  Rational r(1);
  for (int i = 1; i <= k; ++i) r = r * (p - k + i) / i;
  return r;
}
}  // namespace

TEST_CASE("split enumeration counts and order") {
  const auto one = enumerate_splits(1, 2);
  REQUIRE(one.size() == 2);
  CHECK(one[0][0] == 1);
  CHECK(one[0][1] == 0);
  CHECK(one[1][0] == 0);
  CHECK(one[1][1] == 1);

  CHECK(enumerate_splits(4, 2, std::vector<std::size_t>{2, 2}).size() == 6);
  CHECK(enumerate_splits(3, 3).size() == 27);
  CHECK(SplitEnumerator(5, 3, std::vector<std::size_t>{1, 2, 2}).split_count() == 30);
  CHECK(enumerate_splits(0, 2).size() == 1);
  CHECK_THROWS_AS(SplitEnumerator(4, 2, std::vector<std::size_t>{1, 2}), ConstraintError);
  CHECK_THROWS_AS(SplitEnumerator(4, 4), ConstraintError);
  CHECK_THROWS_AS(SplitEnumerator(64, 2), ConstraintError);
}

TEST_CASE("splits cover the ground set exactly once") {
  for (int parts : {2, 3}) {
    for (std::size_t n = 0; n <= 5; ++n) {
      std::set<std::array<Mask, 3>> seen;
      for (const auto& s : enumerate_splits(n, parts)) {
        Mask all = 0;
        for (int i = 0; i < parts; ++i) {
          CHECK((all & s[i]) == 0);
          all |= s[i];
        }
        CHECK(all == full_mask(n));
        seen.insert(s.parts);
      }
      std::size_t expect = 1;
      for (std::size_t i = 0; i < n; ++i) expect *= static_cast<std::size_t>(parts);
      CHECK(seen.size() == expect);
    }
  }
  CHECK(enumerate_splits(6, 3) == enumerate_splits(6, 3));
}

TEST_CASE("split elements and tags") {
  const SpectralSet u(std::vector<Rational>{q(10)}, "u");
  const SpectralSet v(std::vector<Rational>{q(20), q(30)}, "v");
  const std::vector<SpectralSet> spectra{u, v};
  const auto ground = GroundSet::of(spectra);
  REQUIRE(ground.size() == 3);
  CHECK(ground.tag(0) == "u[0]");
  CHECK(ground.tag(2) == "v[1]");
  Split s;
  s.parts = {0b001, 0b110, 0};
  CHECK(split_elements(s, 1, ground, spectra).values == std::vector<Rational>{q(20), q(30)});
  s.parts = {0b111, 0, 0};
  CHECK(split_elements(s, 1, ground, spectra).empty());
  const auto all = split_elements(s, 0, ground, spectra);
  CHECK(all.values == std::vector<Rational>{q(10), q(20), q(30)});
  CHECK(mask_tags(0b110, ground) == std::vector<std::string>{"v[0]", "v[1]"});
}

TEST_CASE("binomial and vanishing sums") {
  for (int p = 0; p <= 8; ++p) {
    const auto x = sample_generic(static_cast<std::size_t>(p), {}, q(1), std::uint64_t(100 + p), 30);
    Rational alternating(0);
    for (int k = 0; k <= p; ++k) {
      const SplitEnumerator e(x.size(), 2,
                              std::vector<std::size_t>{std::size_t(k), std::size_t(p - k)});
      const auto sum = split_sum(e, [&](const Split& s) {
        return prod_f(select(s[1], x.view()), select(s[0], x.view()), q(1));
      });
      CHECK(sum.value == binom(p, k));
      alternating += ((p - k) % 2 ? -1 : 1) * sum.value;
    }
    if (p > 0) CHECK(alternating == 0);
  }
}

TEST_CASE("proof-step sums") {
  const Rational c(2, 3);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto w = sample_generic(5, {}, c, seed, 25);
    const Rational& u = w[2];
    const SplitEnumerator e(w.size(), 2, std::vector<std::size_t>{1, 4});
    const auto g1 = split_sum(e, [&](const Split& s) {
      const auto wi = select(s[0], w.view());
      return prod_f(select(s[1], w.view()), wi, c) / set_product(Kernel::h, u, wi, c);
    });
    CHECK(g1.value == 1);
    const SplitEnumerator e2(w.size(), 2, std::vector<std::size_t>{4, 1});
    // 1/g(w_I, u) is read as the product of (x - u)/c, which vanishes when u is in w_I
    const auto pr2 = split_sum(e2, [&](const Split& s) {
      const auto wi = select(s[0], w.view());
      Rational inv_g(1);
      for (const auto& x : wi) inv_g *= (x - u) / c;
      return prod_g(wi, select(s[1], w.view()), c) * inv_g;
    });
    CHECK(pr2.value == 1);
  }
}

TEST_CASE("parallel sums are identical for every worker count") {
  const auto x = sample_generic(10, {}, q(1), std::uint64_t{5}, 40);
  const SplitEnumerator e(x.size(), 3);
  auto term = [&](const Split& s) {
    return prod_f(select(s[0], x.view()), select(s[2], x.view()), q(1)) -
           Rational(popcount(s[1]));
  };
  const auto base = split_sum(e, term, 1);
  CHECK(base.splits == 59049);
  for (unsigned jobs : {2u, 3u, 4u, 8u}) {
    const auto r = split_sum(e, term, jobs);
    CHECK(r.value == base.value);
    CHECK(r.splits == base.splits);
  }
  const SplitEnumerator bad(3, 2);
  CHECK_THROWS_AS(split_sum(bad, [](const Split& s) -> Rational {
    if (s[0] == 0) throw DomainError("boom");
    return Rational(1);
  }, 2), DomainError);
}

TEST_CASE("coefficient maps") {
  CoefficientMap a, b;
  a.add(3, q(1, 2));
  a.add(3, q(-1, 2));
  CHECK(a.get(3) == 0);
  CHECK(a == b);
  b.add(5, q(2));
  a.merge(b);
  CHECK(a.get(5) == 2);
  CHECK(a.get(7) == 0);
}
