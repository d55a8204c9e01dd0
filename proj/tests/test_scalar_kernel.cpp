#include "doctest.h"

#include "maba/errors.hpp"
#include "maba/kernels.hpp"
#include "maba/rational.hpp"

#include <random>

using namespace maba;

namespace {
Rational q(long p, long d = 1) { return Rational(p, d); }
}  // namespace

TEST_CASE("rational formatting and parsing") {
  CHECK(to_string(q(3, 6)) == "1/2");
  CHECK(to_string(q(-4, 2)) == "-2");
  CHECK(to_string(q(0)) == "0");
  CHECK(parse_rational("-7/21") == q(-1, 3));
  CHECK(parse_rational("12") == q(12));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("integer powers") {
  CHECK(ipow(q(2, 3), 3) == q(8, 27));
  CHECK(ipow(q(2, 3), -2) == q(9, 4));
  CHECK(ipow(q(0), 0) == q(1));
  CHECK(ipow(q(0), 2) == q(0));
  CHECK_THROWS_AS(ipow(q(0), -1), DomainError);
}

TEST_CASE("kernel g") {
  CHECK(kernel_g(q(3), q(1), q(1)) == q(1, 2));
  CHECK_THROWS_AS(kernel_g(q(2), q(2), q(1)), PoleError);
  CHECK(kernel_g(q(0), q(-2), q(2)) == q(1));
  CHECK(kernel_g(q(-1), q(0), q(2)) == kernel_g(q(0), q(1), q(2)));
  try {
    kernel_g(q(2), q(2), q(1));
  } catch (const PoleError& e) {
    CHECK(e.kernel() == "g");
    CHECK(e.left() == "2");
    CHECK(e.right() == "2");
  }
}

TEST_CASE("kernels f and h") {
  CHECK(kernel_f(q(2), q(1), q(1)) == q(2));
  CHECK(kernel_h(q(2), q(1), q(1)) == q(2));
  CHECK(kernel_f(q(3), q(2), q(1)) == q(2));
  CHECK(q(1) / kernel_f(q(1), q(3), q(1)) == q(2));
  CHECK(kernel_h(q(5), q(2), q(1)) * kernel_g(q(5), q(1), q(1)) == q(1));
  CHECK_THROWS_AS(kernel_f(q(4), q(4), q(1)), PoleError);
  CHECK(kernel_h(q(4), q(4), q(3)) == q(1));
}

TEST_CASE("kernel identities on sampled pairs") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 150; ++i) {
    const Rational c = i % 3 == 0 ? q(1) : sample_rational(rng, 9) + q(1, 97);
    const auto s = sample_generic(2, {}, c, rng, 20);
    const Rational& u = s[0];
    const Rational& v = s[1];
    CHECK(kernel_f(u, v, c) == q(1) + kernel_g(u, v, c));
    CHECK(kernel_h(u, v, c) == kernel_f(u, v, c) / kernel_g(u, v, c));
    for (auto k : {Kernel::g, Kernel::f, Kernel::h}) {
      CHECK(kernel(k, -u, -v, c) == kernel(k, v, u, c));
      CHECK(kernel(k, u - c, v, c) == kernel(k, u, v + c, c));
    }
    CHECK(kernel_f(u, v + c, c) == q(1) / kernel_f(v, u, c));
  }
}

TEST_CASE("set products") {
  const std::vector<Rational> empty;
  const std::vector<Rational> a{q(3), q(5)};
  const std::vector<Rational> b{q(0)};
  CHECK(set_product(Kernel::f, q(7), empty, q(1)) == q(1));
  CHECK(set_product(Kernel::f, empty, a, q(1)) == q(1));
  CHECK(set_product(Kernel::f, a, b, q(1)) == q(8, 5));
  const std::vector<Rational> u{q(1), q(2), q(4)};
  CHECK(complement_product(Kernel::f, u, 1, q(1), false) == q(0));
  CHECK(set_product(Kernel::g, q(3), b, q(1)) == kernel_g(q(3), q(0), q(1)));
  const std::vector<Rational> a2{q(5), q(3)};
  const std::vector<Rational> big{q(1, 3), q(-7, 2), q(9)};
  const std::vector<Rational> big2{q(9), q(1, 3), q(-7, 2)};
  CHECK(set_product(Kernel::h, a, big, q(2)) == set_product(Kernel::h, a2, big2, q(2)));
  const std::vector<Rational> clash{q(3)};
  CHECK_THROWS_AS(set_product(Kernel::f, a, clash, q(1)), PoleError);
}

TEST_CASE("generic sampling") {
  CHECK(sample_generic(0, {}, q(1), std::uint64_t{7}, 5).empty());
  const auto a = sample_generic(3, {}, q(1), std::uint64_t{7}, 10);
  const auto b = sample_generic(3, {}, q(1), std::uint64_t{7}, 10);
  CHECK(a == b);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto ctx = sample_generic(4, {}, q(1), rng, 12);
    const auto s = sample_generic(5, ctx.view(), q(1), rng, 12);
    auto joint = ctx.values;
    joint.insert(joint.end(), s.begin(), s.end());
    for (std::size_t i = 0; i < joint.size(); ++i)
      for (std::size_t j = i + 1; j < joint.size(); ++j) {
        const Rational d = joint[i] - joint[j];
        CHECK((d != 0 && d != 1 && d != -1));
      }
  }
  // bound 1 admits only {-1, 0, 1}: at most two of them are generic for c = 1
  CHECK_THROWS_AS(sample_generic(3, {}, q(1), std::uint64_t{1}, 1), ExhaustionError);
  CHECK_THROWS_AS(sample_generic(1, {}, q(1), std::uint64_t{1}, 0), DomainError);
}

TEST_CASE("model parameters") {
  const ModelParams p(q(1), q(2), q(3), q(4), q(5));
  CHECK(p.beta1() == q(1, 2));
  CHECK(p.beta2() == q(3, 4));
  CHECK(p.mu() == q(1) / (q(1) - q(6, 20)));
  CHECK(ModelParams(q(1)).mu() == q(1));
  CHECK_THROWS_AS(ModelParams(q(0)), DomainError);
  CHECK_THROWS_AS(ModelParams(q(1), q(1), q(1), q(0), q(1)), DomainError);
  CHECK_THROWS_AS(ModelParams(q(1), q(2), q(3), q(3), q(2)), DomainError);
}
