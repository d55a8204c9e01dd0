#include "maba/verify.hpp"

#include "maba/errors.hpp"
#include "maba/formulas.hpp"
#include "maba/izergin.hpp"
#include "maba/spin_chain.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <random>
#include <thread>

namespace maba {
namespace {

using Json = nlohmann::ordered_json;
using Values = std::vector<Rational>;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t group_seed(std::uint64_t seed, const std::string& key) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : key) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return splitmix(seed ^ splitmix(h));
}

std::string brief(const Rational& x) {
  std::string s = to_string(x);
  return s.size() > 48 ? s.substr(0, 45) + "..." : s;
}

Values shifted(Values xs, const Rational& d) {
  for (auto& x : xs) x += d;
  return xs;
}

Values negated(Values xs) {
  for (auto& x : xs) x = -x;
  return xs;
}

Values joined(const Values& a, const Values& b) {
  Values out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Rational binomial(int p, int k) {
  Rational r(1);
  for (int i = 1; i <= k; ++i) r = r * (p - k + i) / i;
  return r;
}

// Per-sample state handed to every check.
class Ctx {
 public:
  Ctx(std::uint64_t seed, Rational c, int bound) : rng(seed), c(std::move(c)), bound(bound) {}

  std::mt19937_64 rng;
  Rational c;
  int bound;
  int sample = 0;
  bool pass = true;
  std::string detail;
  Values lhs, rhs, params;

  /// Disjoint jointly generic sets of the given sizes.
  std::vector<Values> sets(std::initializer_list<std::size_t> sizes, Params context = {}) {
    std::size_t total = 0;
    for (auto s : sizes) total += s;
    const auto all = sample_generic(total, context, c, rng, bound);
    params.insert(params.end(), all.begin(), all.end());
    std::vector<Values> out;
    auto it = all.begin();
    for (auto s : sizes) {
      out.emplace_back(it, it + static_cast<std::ptrdiff_t>(s));
      it += static_cast<std::ptrdiff_t>(s);
    }
    return out;
  }

  Rational scalar(int b = 9) {
    Rational x = sample_rational(rng, b);
    params.push_back(x);
    return x;
  }

  Rational nonzero(int b = 9) {
    Rational x;
    do x = sample_rational(rng, b);
    while (x == 0);
    params.push_back(x);
    return x;
  }

  /// z outside {0, 1}.
  Rational deformation() {
    Rational z;
    do z = sample_rational(rng, 7);
    while (z == 0 || z == 1);
    params.push_back(z);
    return z;
  }

  /// Twist with beta_1 beta_2 != 0 and mu finite, nonzero and != 1.
  ModelParams twist() {
    for (;;) {
      const Rational r1 = sample_rational(rng, 6), r2 = sample_rational(rng, 6);
      const Rational kp = sample_rational(rng, 6), km = sample_rational(rng, 6);
      if (r1 == 0 || r2 == 0 || kp == 0 || km == 0 || r1 * r2 == kp * km) continue;
      params.insert(params.end(), {r1, r2, kp, km});
      return ModelParams(c, r1, r2, kp, km);
    }
  }

  std::uint64_t weight_seed() {
    const std::uint64_t s = rng();
    params.push_back(Rational(static_cast<long long>(s >> 2)));
    return s;
  }

  void eq(const Rational& a, const Rational& b) {
    lhs.push_back(a);
    rhs.push_back(b);
    if (a != b) fail("sample " + std::to_string(sample) + ": " + brief(a) + " != " + brief(b));
  }

  template <typename A, typename B>
  void eq(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
      fail("sample " + std::to_string(sample) + ": shape mismatch");
      return;
    }
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j) {
        lhs.push_back(a(i, j));
        rhs.push_back(b(i, j));
      }
    if (a != b) fail("sample " + std::to_string(sample) + ": operator/state entries differ");
  }

  void eq(const CoefficientMap& a, const CoefficientMap& b) {
    Mask top = 0;
    for (const auto& [k, _] : a) top = std::max(top, k);
    for (const auto& [k, _] : b) top = std::max(top, k);
    for (const auto& [k, v] : a) {
      lhs.push_back(v);
      rhs.push_back(b.get(k));
    }
    for (const auto& [k, v] : b) {
      lhs.push_back(a.get(k));
      rhs.push_back(v);
    }
    if (!(a == b)) fail("sample " + std::to_string(sample) + ": coefficient maps differ");
  }

  void expect(bool ok, const std::string& what) {
    if (!ok) fail("sample " + std::to_string(sample) + ": " + what);
  }

  void fail(std::string why) {
    if (pass) detail = std::move(why);
    pass = false;
  }
};

using Check = std::function<void(Ctx&)>;

struct Group {
  std::string identity;
  Json sizes;
  int samples;
  Check check;
};

class Builder {
 public:
  Builder(std::string suite, const RunConfig& cfg) : suite_(std::move(suite)), cfg_(cfg) {
    if (auto it = cfg.sizes.find(suite_); it != cfg.sizes.end()) sizes_ = it->second;
  }

  const std::string& suite() const { return suite_; }
  const RunConfig& config() const { return cfg_; }
  int sites(int def) const { return sizes_.sites.value_or(def); }
  int n(int def) const { return sizes_.n.value_or(def); }
  int m(int def) const { return sizes_.m.value_or(def); }
  int trials(int def) const { return sizes_.trials.value_or(def); }
  bool fault() const { return cfg_.fault == "f-sign"; }

  void add(std::string identity, Json sizes, int samples, Check check) {
    if (!cfg_.only.empty() &&
        std::none_of(cfg_.only.begin(), cfg_.only.end(),
                     [&](const std::string& p) { return identity.rfind(p, 0) == 0; }))
      return;
    groups_.push_back({std::move(identity), std::move(sizes), samples, std::move(check)});
  }

  std::vector<Group>& groups() { return groups_; }

 private:
  std::string suite_;
  const RunConfig& cfg_;
  SuiteSizes sizes_;
  std::vector<Group> groups_;
};

Json nm(int n, int m) { return Json{{"n", n}, {"m", m}}; }
Json nnm(int sites, int n, int m) { return Json{{"N", sites}, {"n", n}, {"m", m}}; }

// ---------------------------------------------------------------- izergin-laws

void izergin_laws(Builder& b) {
  const int cap = b.n(5);
  const int rep = b.trials(20);

  for (int n = 1; n <= b.n(6); ++n)
    for (int m = 1; m <= b.m(6); ++m)
      for (bool conj : {false, true})
        b.add(conj ? "CdefKdef1=CdefKdef2" : "defKdef1=defKdef2", nm(n, m), b.trials(50),
              [=](Ctx& x) {
                const auto s = x.sets({std::size_t(n), std::size_t(m)});
                const Rational zs[] = {x.deformation(), Rational(0), Rational(2)};
                const Rational& z = zs[x.sample % 3];
                x.eq(mod_izergin(z, s[0], s[1], x.c, conj, IzerginSide::v_side),
                     mod_izergin(z, s[0], s[1], x.c, conj, IzerginSide::u_side));
              });

  for (int n = 0; n <= cap; ++n)
    for (int m = 0; m <= b.m(5); ++m) {
      for (bool conj : {false, true}) {
        b.add(conj ? "shiftc-conj" : "shiftc", nm(n, m), rep, [=](Ctx& x) {
          const auto s = x.sets({std::size_t(n), std::size_t(m)});
          const Rational z = x.scalar();
          x.eq(mod_izergin(z, shifted(s[0], -x.c), s[1], x.c, conj),
               mod_izergin(z, s[0], shifted(s[1], x.c), x.c, conj));
        });
        b.add(conj ? "oKz" : "Kz", nm(n, m), rep, [=](Ctx& x) {
          const auto s = x.sets({std::size_t(n), std::size_t(m), 1});
          const Rational z = x.scalar();
          const Rational& w = s[2][0];
          Values u = s[0], v = s[1];
          u.push_back(conj ? w + x.c : w - x.c);
          v.push_back(w);
          x.eq(mod_izergin(z, u, v, x.c, conj), -z * mod_izergin(z, s[0], s[1], x.c, conj));
        });
        b.add(conj ? "oK-sumpart" : "K-sumpart", nm(n, m), rep, [=, neg = b.fault()](Ctx& x) {
          const auto s = x.sets({std::size_t(n), std::size_t(m)});
          const Rational z = x.scalar();
          auto fk = [neg](const Rational& p, const Rational& q, const Rational& c) {
            const Rational f = kernel_f(p, q, c);
            return neg ? Rational(-f) : f;
          };
          const Rational det = mod_izergin(z, s[0], s[1], x.c, conj);
          x.eq(izergin_partition_sum_with(fk, z, s[0], s[1], x.c, PartitionSide::v_partitions,
                                          conj),
               det);
          if (z != 1 || n <= m)
            x.eq(izergin_partition_sum_with(fk, z, s[0], s[1], x.c, PartitionSide::u_partitions,
                                            conj),
                 det);
        });
        b.add(conj ? "cKinv1" : "Kinv1", nm(n, m), rep, [=](Ctx& x) {
          const auto s = x.sets({std::size_t(n), std::size_t(m)});
          const Rational z = x.deformation();
          const Rational pre = ipow(-z, n) * ipow(Rational(1) - z, m - n);
          const Rational lhs = mod_izergin(z, s[0], shifted(s[1], conj ? -x.c : x.c), x.c, conj);
          const Rational den = conj ? prod_f(s[0], s[1], x.c) : prod_f(s[1], s[0], x.c);
          x.eq(lhs, pre * mod_izergin(Rational(1) / z, s[1], s[0], x.c, conj) / den);
        });
      }
      b.add("u-uv-v", nm(n, m), rep, [=](Ctx& x) {
        const auto s = x.sets({std::size_t(n), std::size_t(m)});
        const Rational z = x.scalar();
        x.eq(mod_izergin(z, negated(s[0]), negated(s[1]), x.c),
             conj_mod_izergin(z, s[0], s[1], x.c));
      });
      b.add("CdefKdef1:c->-c", nm(n, m), rep, [=](Ctx& x) {
        const auto s = x.sets({std::size_t(n), std::size_t(m)});
        const Rational z = x.scalar();
        x.eq(conj_mod_izergin(z, s[0], s[1], x.c), mod_izergin(z, s[0], s[1], -x.c));
      });
      b.add("c-c", nm(n, m), rep, [=](Ctx& x) {
        const auto s = x.sets({std::size_t(n), std::size_t(m)});
        const Rational z = x.deformation();
        x.eq(conj_mod_izergin(z, s[0], s[1], x.c),
             ipow(Rational(1) - z, m - n) * mod_izergin(z, s[1], s[0], x.c));
      });
      if (n < m)
        b.add("K10", nm(n, m), rep, [=](Ctx& x) {
          const auto s = x.sets({std::size_t(n), std::size_t(m)});
          x.eq(mod_izergin(Rational(1), s[0], s[1], x.c), Rational(0));
          x.eq(conj_mod_izergin(Rational(1), s[0], s[1], x.c), Rational(0));
        });
      if (n == m)
        b.add("ModI-OrdI", nm(n, m), rep, [=](Ctx& x) {
          const auto s = x.sets({std::size_t(n), std::size_t(m)});
          x.eq(ordinary_izergin(s[0], s[1], x.c), mod_izergin(Rational(1), s[0], s[1], x.c));
        });
    }

  for (int n = 0; n <= cap; ++n)
    b.add("K0", nm(n, 0), rep, [=](Ctx& x) {
      const auto s = x.sets({std::size_t(n)});
      const Rational z = x.scalar();
      x.eq(mod_izergin(z, s[0], Values{}, x.c), Rational(1));
      x.eq(mod_izergin(z, Values{}, s[0], x.c), ipow(Rational(1) - z, n));
      x.eq(conj_mod_izergin(z, s[0], Values{}, x.c), Rational(1));
      x.eq(conj_mod_izergin(z, Values{}, s[0], x.c), ipow(Rational(1) - z, n));
    });
  b.add("K1", nm(1, 1), rep, [](Ctx& x) {
    const auto s = x.sets({1, 1});
    const Rational z = x.scalar();
    const Rational &u = s[0][0], &v = s[1][0];
    x.eq(mod_izergin(z, s[0], s[1], x.c), kernel_f(u, v, x.c) - z);
    x.eq(conj_mod_izergin(z, s[0], s[1], x.c), kernel_f(v, u, x.c) - z);
  });

  // Convolutions on a grid of small cardinalities.
  for (int n = 0; n <= std::min(cap, 2); ++n)
    for (int m = 0; m <= std::min(b.m(2), 2); ++m)
      for (int l = 0; l <= std::min(cap, 5); ++l) {
        Json sz{{"n", n}, {"m", m}, {"l", l}};
        for (bool conj : {false, true}) {
          b.add(conj ? "ML-1-conj" : "ML-1", sz, rep, [=](Ctx& x) {
            const auto s = x.sets({std::size_t(n), std::size_t(m), std::size_t(l)});
            const Rational z1 = x.scalar(), z2 = x.scalar();
            x.eq(izergin_convolution(z1, z2, s[0], s[1], s[2], x.c, conj),
                 mod_izergin(z1 * z2, joined(s[0], s[1]), s[2], x.c, conj));
          });
          b.add(conj ? "CML-2-conj" : "CML-2", sz, rep, [=](Ctx& x) {
            const auto s = x.sets({std::size_t(n), std::size_t(m), std::size_t(l)});
            x.eq(izergin_shifted_convolution(s[0], s[1], s[2], x.c, conj),
                 mod_izergin(Rational(1), joined(s[0], s[1]), shifted(s[2], conj ? -x.c : x.c),
                             x.c, conj));
          });
        }
      }

  for (int n = 0; n <= cap; ++n)
    for (int m = 0; m <= b.m(5); ++m)
      for (bool conj : {false, true})
        b.add(conj ? "sun-Kf-conj" : "sun-Kf", nm(n, m), rep, [=](Ctx& x) {
          const auto s = x.sets({std::size_t(n), std::size_t(m)});
          const Rational z1 = x.scalar(), z2 = x.scalar();
          x.eq(izergin_deformation_sum(z1, z2, s[0], s[1], x.c, conj),
               mod_izergin(z2 - z1, s[0], s[1], x.c, conj));
        });

  for (int p = 0; p <= cap; ++p)
    b.add("sum-binom", Json{{"p", p}}, rep, [=](Ctx& x) {
      const auto s = x.sets({std::size_t(p)});
      for (int k = 0; k <= p; ++k) {
        Rational left(0), right(0);
        const SplitEnumerator e(std::size_t(p), 2, std::vector<std::size_t>{std::size_t(k), std::size_t(p - k)});
        e.for_each([&](const Split& sp) {
          const auto xi = select(sp[0], s[0]), xii = select(sp[1], s[0]);
          left += prod_f(xii, xi, x.c);
          right += prod_f(xi, xii, x.c);
        });
        x.eq(left, binomial(p, k));
        x.eq(right, binomial(p, k));
      }
    });

  for (int n = 1; n <= std::min(cap, 3); ++n)
    for (int m = 1; m <= std::min(b.m(3), 3); ++m)
      for (bool conj : {false, true})
        b.add(conj ? "resK-conj" : "resK", nm(n, m), rep, [=](Ctx& x) {
          const auto s = x.sets({std::size_t(n), std::size_t(m)});
          const Rational z = x.scalar();
          const auto r = residue_check(z, s[0], s[1], x.c, conj);
          x.expect(r.held_out_ok, "interpolant misses held-out points");
          x.eq(r.limit, r.predicted);
        });
}

// ------------------------------------------------------------ yangian-structure

MatrixQ embed_r_blocks(const MatrixQ& r4, Eigen::Index dim) {
  MatrixQ r = MatrixQ::Zero(4 * dim, 4 * dim);
  for (int a = 0; a < 4; ++a)
    for (int c = 0; c < 4; ++c)
      if (r4(a, c) != 0) r.block(a * dim, c * dim, dim, dim) = r4(a, c) * MatrixQ::Identity(dim, dim);
  return r;
}

const char* family_tag(Family f) { return f == Family::t ? "t" : "nu"; }

struct ChainDraw {
  ChainSpec spec;
  ModelParams params;
  std::vector<Values> sets;
};

ChainDraw chain_draw(Ctx& x, int sites, std::initializer_list<std::size_t> sizes, Family fam) {
  std::vector<std::size_t> all{std::size_t(sites)};
  all.insert(all.end(), sizes.begin(), sizes.end());
  std::size_t total = 0;
  for (auto s : all) total += s;
  const auto joint = sample_generic(total, {}, x.c, x.rng, x.bound);
  x.params.insert(x.params.end(), joint.begin(), joint.end());
  std::vector<Values> parts;
  auto it = joint.begin();
  for (auto s : all) {
    parts.emplace_back(it, it + static_cast<std::ptrdiff_t>(s));
    it += static_cast<std::ptrdiff_t>(s);
  }
  ChainDraw d{ChainSpec(SpectralSet(parts[0], "theta"), x.c),
              fam == Family::t ? ModelParams(x.c) : x.twist(),
              std::vector<Values>(parts.begin() + 1, parts.end())};
  return d;
}

MatrixQ product_of(const std::vector<const Monodromy*>& ts, int i, int j, Eigen::Index dim) {
  MatrixQ p = MatrixQ::Identity(dim, dim);
  for (const auto* t : ts) p = p * (*t)(i, j);
  return p;
}

void yangian_structure(Builder& b) {
  const int rep = b.trials(20);
  const int max_sites = b.sites(3);

  b.add("YB", Json::object(), rep, [](Ctx& x) {
    const auto s = x.sets({3});
    const Rational &u = s[0][0], &v = s[0][1], &w = s[0][2];
    x.eq(embed_pair(r_matrix(u - v, x.c), 0, 1) * embed_pair(r_matrix(u - w, x.c), 0, 2) *
             embed_pair(r_matrix(v - w, x.c), 1, 2),
         embed_pair(r_matrix(v - w, x.c), 1, 2) * embed_pair(r_matrix(u - w, x.c), 0, 2) *
             embed_pair(r_matrix(u - v, x.c), 0, 1));
  });
  for (bool sum : {false, true})
    b.add(sum ? "twist-inv-sum" : "twist-inv-product", Json::object(), rep, [=](Ctx& x) {
      const Rational u = x.scalar(30);
      Matrix2Q k;
      k << x.scalar(), x.scalar(), x.scalar(), x.scalar();
      const MatrixQ r = embed_pair(r_matrix(u, x.c), 0, 1);
      const MatrixQ ka = embed_single(k, 0), kb = embed_single(k, 1);
      const MatrixQ op = sum ? MatrixQ(ka + kb) : MatrixQ(ka * kb);
      x.eq(r * op, op * r);
    });

  for (int sites = 1; sites <= max_sites; ++sites)
    for (Family fam : {Family::t, Family::nu}) {
      const std::string ft = family_tag(fam);
      Json sz{{"N", sites}, {"family", ft}};
      b.add("RTT", sz, rep, [=](Ctx& x) {
        const auto d = chain_draw(x, sites, {2}, fam);
        const Rational &u = d.sets[0][0], &v = d.sets[0][1];
        const MatrixQ r = embed_r_blocks(r_matrix(u - v, x.c), d.spec.dim());
        const MatrixQ ta = aux_embed(monodromy(d.spec, d.params, fam, u), 0);
        const MatrixQ tb = aux_embed(monodromy(d.spec, d.params, fam, v), 1);
        x.eq(MatrixQ(r * ta * tb), MatrixQ(tb * ta * r));
      });
      b.add("genCR", sz, rep, [=](Ctx& x) {
        const auto d = chain_draw(x, sites, {2}, fam);
        const Rational &u = d.sets[0][0], &v = d.sets[0][1];
        const Monodromy tu = monodromy(d.spec, d.params, fam, u);
        const Monodromy tv = monodromy(d.spec, d.params, fam, v);
        const Rational g = kernel_g(u, v, x.c);
        for (int i = 1; i <= 2; ++i)
          for (int j = 1; j <= 2; ++j)
            for (int k = 1; k <= 2; ++k)
              for (int l = 1; l <= 2; ++l)
                x.eq(MatrixQ(tu(i, j) * tv(k, l) - tv(k, l) * tu(i, j)),
                     MatrixQ(g * (tv(k, j) * tu(i, l) - tu(k, j) * tv(i, l))));
      });
      b.add("com1", sz, rep, [=](Ctx& x) {
        const auto d = chain_draw(x, sites, {2}, fam);
        const Monodromy tu = monodromy(d.spec, d.params, fam, d.sets[0][0]);
        const Monodromy tv = monodromy(d.spec, d.params, fam, d.sets[0][1]);
        for (int i = 1; i <= 2; ++i)
          for (int j = 1; j <= 2; ++j) x.eq(MatrixQ(tu(i, j) * tv(i, j)), MatrixQ(tv(i, j) * tu(i, j)));
      });
      b.add("coms11/comsl22/comsl2112", sz, rep, [=](Ctx& x) {
        const auto d = chain_draw(x, sites, {2}, fam);
        const Rational &u = d.sets[0][0], &v = d.sets[0][1];
        const Monodromy a = monodromy(d.spec, d.params, fam, u);
        const Monodromy bv = monodromy(d.spec, d.params, fam, v);
        const Rational c = x.c;
        x.eq(MatrixQ(a(1, 1) * bv(1, 2)),
             MatrixQ(kernel_f(v, u, c) * bv(1, 2) * a(1, 1) + kernel_g(u, v, c) * a(1, 2) * bv(1, 1)));
        x.eq(MatrixQ(a(2, 2) * bv(1, 2)),
             MatrixQ(kernel_f(u, v, c) * bv(1, 2) * a(2, 2) + kernel_g(v, u, c) * a(1, 2) * bv(2, 2)));
        x.eq(MatrixQ(a(2, 1) * bv(1, 2) - bv(1, 2) * a(2, 1)),
             MatrixQ(kernel_g(u, v, c) * (bv(1, 1) * a(2, 2) - a(1, 1) * bv(2, 2))));
      });
      for (int n = 0; n <= std::min(b.n(2), 2); ++n)
        for (int m = 0; m <= std::min(b.m(2), 2); ++m)
          for (bool second : {false, true}) {
            Json msz{{"N", sites}, {"family", ft}, {"n", n}, {"m", m}};
            b.add(second ? "MCR1122-22" : "MCR1122-11", msz, rep / 2 > 0 ? rep / 2 : 1,
                  [=](Ctx& x) {
                    const auto d = chain_draw(x, sites, {std::size_t(n), std::size_t(m)}, fam);
                    const Values w = joined(d.sets[0], d.sets[1]);
                    std::vector<Monodromy> mono;
                    for (const auto& p : w) mono.push_back(monodromy(d.spec, d.params, fam, p));
                    const Eigen::Index dim = d.spec.dim();
                    const int diag = second ? 2 : 1;
                    auto ops = [&](Mask mask) {
                      std::vector<const Monodromy*> out;
                      for (std::size_t i = 0; i < w.size(); ++i)
                        if ((mask >> i) & 1) out.push_back(&mono[i]);
                      return out;
                    };
                    const Mask umask = full_mask(n), all = full_mask(n + m);
                    const MatrixQ lhs = product_of(ops(umask), diag, diag, dim) *
                                        product_of(ops(all & ~umask), 1, 2, dim);
                    MatrixQ rhs = MatrixQ::Zero(dim, dim);
                    const SplitEnumerator e(w.size(), 2,
                                            std::vector<std::size_t>{std::size_t(n), std::size_t(m)});
                    e.for_each([&](const Split& sp) {
                      const auto wi = select(sp[0], w), wii = select(sp[1], w);
                      const Rational k =
                          second ? mod_izergin(Rational(1), d.sets[0], shifted(wi, x.c), x.c)
                                 : conj_mod_izergin(Rational(1), d.sets[0], shifted(wi, -x.c), x.c);
                      if (k == 0) return;
                      const Rational coef = ipow(Rational(-1), n) * k *
                                            (second ? prod_f(wi, wii, x.c) : prod_f(wii, wi, x.c));
                      rhs += coef * (product_of(ops(sp[1]), 1, 2, dim) *
                                     product_of(ops(sp[0]), diag, diag, dim));
                    });
                    x.eq(lhs, rhs);
                  });
          }
    }

  for (int sites = 1; sites <= std::max(max_sites, 4); ++sites)
    b.add("HWRG/dHWRG", Json{{"N", sites}}, rep, [=](Ctx& x) {
      const auto d = chain_draw(x, sites, {1}, Family::t);
      const Rational& u = d.sets[0][0];
      const Monodromy t = build_monodromy(d.spec, u);
      const auto [l1, l2] = vacuum_weights(d.spec, u);
      const VectorQ vac = vacuum(d.spec);
      const RowVectorQ dvac = dual_vacuum(d.spec);
      x.eq(VectorQ(t(1, 1) * vac), VectorQ(l1 * vac));
      x.eq(VectorQ(t(2, 2) * vac), VectorQ(l2 * vac));
      x.eq(VectorQ(t(2, 1) * vac), VectorQ(VectorQ::Zero(d.spec.dim())));
      x.eq(RowVectorQ(dvac * t(1, 1)), RowVectorQ(l1 * dvac));
      x.eq(RowVectorQ(dvac * t(2, 2)), RowVectorQ(l2 * dvac));
      x.eq(RowVectorQ(dvac * t(1, 2)), RowVectorQ(RowVectorQ::Zero(d.spec.dim())));
    });
}

// ----------------------------------------------------------------- aba-actions

VectorQ direct_action(const ChainDraw& d, Family fam, int i, int j) {
  const VectorQ ket = bethe_state(d.spec, d.params, fam, d.sets[1]);
  return apply_entries(d.spec, d.params, fam, i, j, d.sets[0], ket);
}

struct KindSpec {
  const char* id;
  ActionKind kind;
  int i, j;
};

void aba_actions(Builder& b) {
  const int rep = b.trials(10);
  const KindSpec kinds[] = {{"MA1122-11", ActionKind::t11, 1, 1},
                            {"MA1122-22", ActionKind::t22, 2, 2},
                            {"MAt21", ActionKind::t21, 2, 1}};
  for (int sites = 1; sites <= b.sites(5); ++sites)
    for (int n = 0; n <= b.n(2); ++n)
      for (int m = 0; m <= b.m(3); ++m)
        for (const auto& k : kinds)
          b.add(k.id, nnm(sites, n, m), rep, [=](Ctx& x) {
            const auto d = chain_draw(x, sites, {std::size_t(n), std::size_t(m)}, Family::t);
            ActionRequest r{k.kind, SpectralSet(d.sets[0], "u"), SpectralSet(d.sets[1], "v"),
                            WeightOracle::fundamental(d.spec), d.params.twist(), x.c};
            x.eq(materialize(eval_action(r), d.spec, d.params), direct_action(d, Family::t, k.i, k.j));
          });

  const int nmax = std::min(b.n(3), b.m(3));
  for (int sites = 1; sites <= b.sites(5); ++sites)
    for (int n = 0; n <= nmax; ++n)
      for (ScalarForm form : {ScalarForm::SCe, ScalarForm::SCbe})
        b.add(std::string(scalar_form_name(form)), nnm(sites, n, n), rep, [=](Ctx& x) {
          const auto d = chain_draw(x, sites, {std::size_t(n), std::size_t(n)}, Family::t);
          ScalarRequest r{form, SpectralSet(d.sets[0]), SpectralSet(d.sets[1]),
                          WeightOracle::fundamental(d.spec), d.params.twist(), x.c};
          x.eq(eval_scalar(r).value,
               direct_scalar(d.spec, d.params, Family::t, d.sets[0], Family::t, d.sets[1]));
        });
  for (int n = 0; n <= nmax; ++n)
    b.add("SCe=SCbe", nm(n, n), rep, [=](Ctx& x) {
      const auto s = x.sets({std::size_t(n), std::size_t(n)});
      ScalarRequest r{ScalarForm::SCe, SpectralSet(s[0]), SpectralSet(s[1]),
                      WeightOracle::random(x.weight_seed()), {Rational(0), Rational(0), Rational(1)}, x.c};
      const Rational sce = eval_scalar(r).value;
      r.form = ScalarForm::SCbe;
      x.eq(sce, eval_scalar(r).value);
    });
}

// ---------------------------------------------------------------- maba-actions

void maba_actions(Builder& b) {
  const int rep = b.trials(10);

  for (int sites = 1; sites <= b.sites(5); ++sites)
    b.add("act-sing", Json{{"N", sites}}, rep, [=](Ctx& x) {
      const auto d = chain_draw(x, sites, {1}, Family::nu);
      const Rational& u = d.sets[0][0];
      const Monodromy nu = modified_monodromy(d.spec, d.params, u);
      const auto [l1, l2] = vacuum_weights(d.spec, u);
      const VectorQ vac = vacuum(d.spec);
      const VectorQ bv = nu(1, 2) * vac;
      const Rational b1 = d.params.beta1(), b2 = d.params.beta2();
      x.eq(VectorQ(nu(1, 1) * vac), VectorQ(l1 * vac + b2 * bv));
      x.eq(VectorQ(nu(2, 2) * vac), VectorQ(l2 * vac + b1 * bv));
      x.eq(VectorQ(nu(2, 1) * vac), VectorQ((b1 * l1 + b2 * l2) * vac + b1 * b2 * bv));
    });

  const KindSpec kinds[] = {{"nvac1112", ActionKind::nu11, 1, 1},
                            {"nvac2212", ActionKind::nu22, 2, 2},
                            {"nvac2112", ActionKind::nu21, 2, 1}};
  for (int sites = 1; sites <= b.sites(5); ++sites)
    for (int n = 0; n <= b.n(2); ++n)
      for (int m = 0; m <= b.m(3); ++m)
        for (const auto& k : kinds)
          b.add(k.id, nnm(sites, n, m), rep, [=](Ctx& x) {
            const auto d = chain_draw(x, sites, {std::size_t(n), std::size_t(m)}, Family::nu);
            ActionRequest r{k.kind, SpectralSet(d.sets[0], "u"), SpectralSet(d.sets[1], "v"),
                            WeightOracle::fundamental(d.spec), d.params.twist(), x.c};
            x.eq(materialize(eval_action(r), d.spec, d.params),
                 direct_action(d, Family::nu, k.i, k.j));
          });

  // Coefficients of subsets with more than n elements removed from the ground vanish.
  for (int n = 0; n <= b.n(2); ++n)
    for (int m = 0; m <= b.m(3); ++m) {
      for (auto [id, kind] : {std::pair{"mulii-restriction-11", ActionKind::nu11},
                              std::pair{"mulii-restriction-22", ActionKind::nu22}})
        b.add(id, nm(n, m), rep, [=, kind = kind](Ctx& x) {
          const auto s = x.sets({std::size_t(n), std::size_t(m)});
          const Rational b1 = x.nonzero(), b2 = x.nonzero();
          ActionRequest r{kind, SpectralSet(s[0]), SpectralSet(s[1]),
                          WeightOracle::random(x.weight_seed()), {b1, b2, Rational(1)}, x.c};
          const auto res = eval_action(r);
          const Mask all = full_mask(std::size_t(n + m));
          for (const auto& [key, coeff] : res.coefficients)
            if (popcount(all & ~key) > n) x.eq(coeff, Rational(0));
        });
      b.add("mul21-restriction", nm(n, m), rep, [=](Ctx& x) {
        // K^{(1)}_{n,l}(u | X + c) and its conjugate vanish for every l > n.
        const auto s = x.sets({std::size_t(n), std::size_t(m)});
        const Values w = joined(s[0], s[1]);
        const IzerginCache plain(s[0], shifted(w, x.c), x.c, false);
        const IzerginCache conj(s[0], shifted(w, -x.c), x.c, true);
        for (Mask sub = 0; sub <= full_mask(w.size()); ++sub) {
          if (popcount(sub) <= n) continue;
          x.eq(plain.evaluate(Rational(1), sub), Rational(0));
          x.eq(conj.evaluate(Rational(1), sub), Rational(0));
        }
      });
    }

  const int tuples[][3] = {{2, 1, 2}, {2, 2, 2}, {3, 1, 2}, {3, 2, 2}};
  for (const auto& t : tuples) {
    const int sites = t[0], n = t[1], m = t[2];
    b.add("mact1212e", nnm(sites, n, m), rep, [=](Ctx& x) {
      const auto d = chain_draw(x, sites, {std::size_t(n), std::size_t(m)}, Family::nu);
      ActionRequest r{ActionKind::nu12, SpectralSet(d.sets[0], "u"), SpectralSet(d.sets[1], "v"),
                      WeightOracle::fundamental(d.spec), d.params.twist(), x.c};
      x.eq(materialize(eval_action(r), d.spec, d.params), direct_action(d, Family::nu, 1, 2));
    });
  }
}

// ------------------------------------------------------------- scalar-products

void scalar_products(Builder& b) {
  const int rep = b.trials(10);
  const int total = b.n(5);
  for (int sites = 1; sites <= b.sites(5); ++sites)
    for (int n = 0; n <= total; ++n)
      for (int m = 0; n + m <= total && m <= b.m(5); ++m)
        b.add("SP-fin", nnm(sites, n, m), rep, [=](Ctx& x) {
          const auto d = chain_draw(x, sites, {std::size_t(n), std::size_t(m)}, Family::nu);
          ScalarRequest r{ScalarForm::SPfin, SpectralSet(d.sets[0]), SpectralSet(d.sets[1]),
                          WeightOracle::fundamental(d.spec), d.params.twist(), x.c};
          x.eq(eval_scalar(r).value,
               direct_scalar(d.spec, d.params, Family::nu, d.sets[0], Family::nu, d.sets[1]));
        });

  for (int n = 0; n <= total; ++n)
    for (int m = 0; n + m <= total && m <= b.m(5); ++m)
      b.add("SP-fin-IK", nm(n, m), rep, [=](Ctx& x) {
        const auto s = x.sets({std::size_t(n), std::size_t(m)});
        const Rational b1 = x.nonzero(), b2 = x.nonzero();
        const Rational mu = x.deformation();
        ScalarRequest r{ScalarForm::SPfin, SpectralSet(s[0]), SpectralSet(s[1]),
                        WeightOracle::random(x.weight_seed()), {b1, b2, mu}, x.c};
        const Rational fin = eval_scalar(r).value;
        r.form = ScalarForm::SPfinIK;
        x.eq(eval_scalar(r).value, fin);
      });

  for (int sites = 1; sites <= b.sites(5); ++sites)
    for (int p = 0; p <= std::min(total, 4); ++p)
      b.add("Aver12-0", Json{{"N", sites}, {"p", p}}, rep, [=](Ctx& x) {
        const auto d = chain_draw(x, sites, {std::size_t(p)}, Family::nu);
        x.eq(eval_vacuum_average(d.sets[0], WeightOracle::fundamental(d.spec), d.params.twist(), x.c),
             Rational(bethe_state(d.spec, d.params, Family::nu, d.sets[0])(0)));
      });

  for (int n = 0; n <= std::min(total, 3); ++n)
    b.add("SP-fin00", nm(n, n), rep, [=](Ctx& x) {
      const auto s = x.sets({std::size_t(n), std::size_t(n)});
      const Rational b1 = x.scalar(), b2 = x.scalar();
      const auto w = WeightOracle::random(x.weight_seed());
      ScalarRequest r{ScalarForm::SPfin, SpectralSet(s[0]), SpectralSet(s[1]), w,
                      {b1, b2, Rational(1)}, x.c};
      const Rational fin = eval_scalar(r).value;
      r.form = ScalarForm::SCe;
      x.eq(fin, eval_scalar(r).value);
    });
}

// ---------------------------------------------------------------- phi-symmetry

void phi_symmetry(Builder& b) {
  const int rep = b.trials(10);
  struct Case {
    const char* id;
    ActionKind kind;
  };
  const Case cases[] = {{"nvac2212<-nvac1112", ActionKind::nu22},
                        {"MA1122-22<-MA1122-11", ActionKind::t22},
                        {"nvac2112<-nvac2112", ActionKind::nu21}};
  for (int n = 0; n <= b.n(2); ++n)
    for (int m = 0; m <= b.m(2); ++m) {
      for (const auto& cs : cases)
        b.add(cs.id, nm(n, m), rep, [=](Ctx& x) {
          const auto s = x.sets({std::size_t(n), std::size_t(m)});
          const bool twisted = action_family(cs.kind) == Family::nu;
          const Rational b1 = twisted ? x.nonzero() : Rational(0);
          const Rational b2 = twisted ? x.nonzero() : Rational(0);
          const Rational mu = twisted ? x.nonzero() : Rational(1);
          ActionRequest r{cs.kind, SpectralSet(s[0], "u"), SpectralSet(s[1], "v"),
                          WeightOracle::random(x.weight_seed()), {b1, b2, mu}, x.c};
          x.eq(eval_action(phi_transform(r)).coefficients, eval_action(r).coefficients);
        });
      b.add("auto-mor-involution", nm(n, m), rep, [=](Ctx& x) {
        const auto s = x.sets({std::size_t(n), std::size_t(m)});
        ActionRequest r{ActionKind::nu11, SpectralSet(s[0], "u"), SpectralSet(s[1], "v"),
                        WeightOracle::random(x.weight_seed()), {x.nonzero(), x.nonzero(), Rational(1)},
                        x.c};
        const auto back = phi_transform(phi_transform(r));
        x.expect(back.kind == r.kind && back.u == r.u && back.v == r.v, "request not restored");
        x.eq(eval_action(back).coefficients, eval_action(r).coefficients);
      });
    }
}

// ----------------------------------------------------------------- proof-steps

void proof_steps(Builder& b) {
  const int rep = b.trials(20);
  const int cap = b.n(8);
  for (int p = 1; p <= cap; ++p) {
    b.add("G1/CI-01", Json{{"p", p}}, rep, [=](Ctx& x) {
      const auto s = x.sets({std::size_t(p)});
      const Rational& u = s[0][x.rng() % std::size_t(p)];
      Rational g(0);
      for (std::size_t i = 0; i < s[0].size(); ++i) {
        Rational term = Rational(1) / kernel_h(u, s[0][i], x.c);
        for (std::size_t j = 0; j < s[0].size(); ++j)
          if (j != i) term *= kernel_f(s[0][j], s[0][i], x.c);
        g += term;
      }
      x.eq(g, Rational(1));
    });
    b.add("PR-2", Json{{"p", p}}, rep, [=](Ctx& x) {
      const auto s = x.sets({std::size_t(p), 1});
      const Values& w0 = s[0];
      const Rational& y = s[1][0];
      const Rational& un = w0[x.rng() % std::size_t(p)];
      // generic point: sum g(w_I, w_II) g(w_II, y) = g(w0, y)
      Rational open(0), limit(0);
      for (std::size_t i = 0; i < w0.size(); ++i) {
        Rational gg = kernel_g(w0[i], y, x.c);
        // 1/g(w_I, u_n) as a polynomial, vanishing when u_n lies in w_I
        Rational inv(1);
        for (std::size_t j = 0; j < w0.size(); ++j) {
          if (j == i) continue;
          gg *= kernel_g(w0[j], w0[i], x.c);
          inv *= (w0[j] - un) / x.c;
        }
        open += gg;
        Rational lim = inv;
        for (std::size_t j = 0; j < w0.size(); ++j)
          if (j != i) lim *= kernel_g(w0[j], w0[i], x.c);
        limit += lim;
      }
      x.eq(open, prod_g(w0, Values{y}, x.c));
      x.eq(limit, Rational(1));
    });
  }
  for (int p = 0; p <= cap; ++p)
    b.add("sum-binom", Json{{"p", p}}, rep, [=](Ctx& x) {
      const auto s = x.sets({std::size_t(p)});
      std::vector<Rational> by_k(std::size_t(p) + 1);
      SplitEnumerator(std::size_t(p), 2).for_each([&](const Split& sp) {
        by_k[std::size_t(popcount(sp[0]))] += prod_f(select(sp[1], s[0]), select(sp[0], s[0]), x.c);
      });
      for (int k = 0; k <= p; ++k) x.eq(by_k[std::size_t(k)], binomial(p, k));
    });
  for (int p = 1; p <= cap; ++p)
    b.add("sum-nul", Json{{"p", p}}, rep, [=](Ctx& x) {
      const auto s = x.sets({std::size_t(p)});
      Rational total(0);
      SplitEnumerator(std::size_t(p), 2).for_each([&](const Split& sp) {
        const Rational f = prod_f(select(sp[1], s[0]), select(sp[0], s[0]), x.c);
        total += (popcount(sp[1]) % 2) ? Rational(-f) : f;
      });
      x.eq(total, Rational(0));
    });
}

using SuiteFn = void (*)(Builder&);

SuiteFn suite_fn(const std::string& name) {
  if (name == "izergin-laws") return izergin_laws;
  if (name == "yangian-structure") return yangian_structure;
  if (name == "aba-actions") return aba_actions;
  if (name == "maba-actions") return maba_actions;
  if (name == "scalar-products") return scalar_products;
  if (name == "phi-symmetry") return phi_symmetry;
  if (name == "proof-steps") return proof_steps;
  throw ConfigError("unknown suite '" + name + "'");
}

CheckRecord run_group(const std::string& suite, const Group& g, const RunConfig& cfg) {
  CheckRecord rec;
  rec.suite = suite;
  rec.identity = g.identity;
  rec.sizes = g.sizes;
  rec.seed = group_seed(cfg.seed, suite + "/" + g.identity + "/" + g.sizes.dump());
  const auto start = std::chrono::steady_clock::now();
  Ctx x(rec.seed, cfg.c, cfg.bound);
  for (x.sample = 0; x.sample < g.samples; ++x.sample) {
    try {
      g.check(x);
    } catch (const std::exception& e) {
      x.fail("sample " + std::to_string(x.sample) + ": " + e.what());
      ++x.sample;
      break;
    }
  }
  rec.samples = x.sample;
  rec.pass = x.pass;
  rec.detail = x.detail;
  rec.param_digest = digest(x.params);
  rec.lhs = render(x.lhs);
  rec.rhs = render(x.rhs);
  rec.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                       .count();
  return rec;
}

}  // namespace

std::vector<CheckRecord> run_suite(const std::string& name, const RunConfig& cfg) {
  Builder b(name, cfg);
  suite_fn(name)(b);
  auto& groups = b.groups();
  std::vector<CheckRecord> out(groups.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < groups.size(); i = next++) out[i] = run_group(name, groups[i], cfg);
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(groups.size())));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const CheckRecord& a, const CheckRecord& b) { return a.identity < b.identity; });
  return out;
}

Report run_verify(const RunConfig& cfg) {
  validate_config(cfg);
  Report report{cfg, {}};
  for (const auto& name : suite_names()) {
    if (!cfg.suites.empty() && std::find(cfg.suites.begin(), cfg.suites.end(), name) == cfg.suites.end())
      continue;
    auto recs = run_suite(name, cfg);
    report.records.insert(report.records.end(), std::make_move_iterator(recs.begin()),
                          std::make_move_iterator(recs.end()));
  }
  return report;
}

}  // namespace maba
