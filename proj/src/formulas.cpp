#include "maba/formulas.hpp"

#include <cmath>

namespace maba {

// ---------------------------------------------------------------------------
// WeightOracle

Rational WeightOracle::lambda1_of(std::span<const Rational> xs) const {
  Rational p(1);
  for (const auto& x : xs) p *= lambda1(x);
  return p;
}

Rational WeightOracle::lambda2_of(std::span<const Rational> xs) const {
  Rational p(1);
  for (const auto& x : xs) p *= lambda2(x);
  return p;
}

WeightOracle WeightOracle::fundamental(const ChainSpec& spec) {
  WeightOracle o;
  o.lambda1 = [spec](const Rational& x) { return vacuum_weights(spec, x).first; };
  o.lambda2 = [spec](const Rational& x) { return vacuum_weights(spec, x).second; };
  o.F = [spec](const Rational& x) {
    Rational p(1);
    for (const auto& th : spec.theta) p *= kernel_h(x, th, spec.c) / kernel_g(x, th, spec.c);
    return p;
  };
  o.S = static_cast<int>(spec.sites());
  for (int k = 1; k <= 3; ++k) {
    const Rational x = spec.theta[0] + Rational(k, 7) + Rational(1, 1000003);
    if (o.F(x) != o.lambda1(x) * o.lambda2(x))
      throw DomainError("F(u) != lambda_1(u) lambda_2(u) for the fundamental representation");
  }
  return o;
}

namespace {

std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 1469598103934665603ULL) {
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rational hashed_weight(std::uint64_t seed, int which, const Rational& x, int bound) {
  const std::uint64_t h = splitmix(fnv1a(to_string(x)) ^ splitmix(seed * 2 + which));
  const auto b = static_cast<std::uint64_t>(bound);
  const auto p = static_cast<long>(h % b) + 1;
  const auto q = static_cast<long>((h >> 20) % b) + 1;
  return Rational((h >> 63) ? -p : p, q);
}

}  // namespace

WeightOracle WeightOracle::random(std::uint64_t seed, int bound) {
  if (bound < 1) throw DomainError("weight bound must be >= 1");
  WeightOracle o;
  o.lambda1 = [seed, bound](const Rational& x) { return hashed_weight(seed, 1, x, bound); };
  o.lambda2 = [seed, bound](const Rational& x) { return hashed_weight(seed, 2, x, bound); };
  return o;
}

WeightOracle WeightOracle::constant(Rational a, Rational b) {
  WeightOracle o;
  o.lambda1 = [a](const Rational&) { return a; };
  o.lambda2 = [b](const Rational&) { return b; };
  return o;
}

WeightOracle WeightOracle::phi() const {
  WeightOracle o;
  o.lambda1 = [l2 = lambda2](const Rational& x) { return l2(-x); };
  o.lambda2 = [l1 = lambda1](const Rational& x) { return l1(-x); };
  if (F) o.F = [f = F](const Rational& x) { return f(-x); };
  o.S = S;
  return o;
}

// ---------------------------------------------------------------------------
// Names

std::string_view action_name(ActionKind k) noexcept {
  switch (k) {
    case ActionKind::t11: return "t11";
    case ActionKind::t22: return "t22";
    case ActionKind::t21: return "t21";
    case ActionKind::nu11: return "nu11";
    case ActionKind::nu22: return "nu22";
    case ActionKind::nu21: return "nu21";
    case ActionKind::nu12: return "nu12";
  }
  return "?";
}

Family action_family(ActionKind k) noexcept {
  switch (k) {
    case ActionKind::t11:
    case ActionKind::t22:
    case ActionKind::t21: return Family::t;
    default: return Family::nu;
  }
}

std::string_view scalar_form_name(ScalarForm f) noexcept {
  switch (f) {
    case ScalarForm::SCe: return "SCe";
    case ScalarForm::SCbe: return "SCbe";
    case ScalarForm::SPfin: return "SPfin";
    case ScalarForm::SPfinIK: return "SPfinIK";
  }
  return "?";
}

std::optional<ScalarForm> parse_scalar_form(std::string_view name) noexcept {
  for (auto f : {ScalarForm::SCe, ScalarForm::SCbe, ScalarForm::SPfin, ScalarForm::SPfinIK})
    if (scalar_form_name(f) == name) return f;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Shared tables over a ground set

namespace {

class Ground {
 public:
  Ground(std::span<const Rational> values, const Rational& c, const WeightOracle& oracle)
      : w_(values.begin(), values.end()), c_(c) {
    const std::size_t p = w_.size();
    f_.resize(p * p);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j)
        if (i != j) f_[i * p + j] = kernel_f(w_[i], w_[j], c);
    if (oracle.lambda1 && oracle.lambda2) {
      for (const auto& x : w_) {
        l1_.push_back(oracle.lambda1(x));
        l2_.push_back(oracle.lambda2(x));
      }
    }
  }

  std::size_t size() const { return w_.size(); }
  std::span<const Rational> values() const { return w_; }

  /// f(w_A, w_B) for disjoint masks.
  Rational f(Mask a, Mask b) const {
    Rational p(1);
    const std::size_t n = w_.size();
    for (Mask x = a; x; x &= x - 1) {
      const auto i = static_cast<std::size_t>(std::countr_zero(x));
      for (Mask y = b; y; y &= y - 1) p *= f_[i * n + static_cast<std::size_t>(std::countr_zero(y))];
    }
    return p;
  }

  Rational l1(Mask a) const { return prod(l1_, a); }
  Rational l2(Mask a) const { return prod(l2_, a); }

  std::vector<Rational> shifted(const Rational& d) const {
    std::vector<Rational> out(w_);
    for (auto& x : out) x += d;
    return out;
  }

 private:
  static Rational prod(const std::vector<Rational>& t, Mask a) {
    Rational p(1);
    for (Mask x = a; x; x &= x - 1) p *= t[static_cast<std::size_t>(std::countr_zero(x))];
    return p;
  }

  std::vector<Rational> w_;
  Rational c_;
  std::vector<Rational> f_;
  std::vector<Rational> l1_, l2_;
};

std::vector<Rational> joined(const SpectralSet& u, const SpectralSet& v) {
  std::vector<Rational> w(u.begin(), u.end());
  w.insert(w.end(), v.begin(), v.end());
  return w;
}

Rational sign_pow(int k) { return k % 2 ? Rational(-1) : Rational(1); }

void require_oracle(const WeightOracle& o) {
  if (!o.lambda1 || !o.lambda2) throw CapabilityError("weight oracle lacks lambda_1/lambda_2");
}

}  // namespace

// ---------------------------------------------------------------------------
// Actions

ActionResult eval_action(const ActionRequest& r) {
  require_oracle(r.oracle);
  const auto n = static_cast<int>(r.u.size());
  const auto m = static_cast<int>(r.v.size());
  const std::size_t p = r.u.size() + r.v.size();
  const auto w = joined(r.u, r.v);
  const Ground g(w, r.c, r.oracle);

  ActionResult out;
  out.ground = GroundSet::of(r.u, r.v);
  out.values = w;
  out.family = action_family(r.kind);
  const auto count = [&](const Split&) { ++out.splits; };
  const Rational one(1);
  const auto& b1 = r.twist.beta1;
  const auto& b2 = r.twist.beta2;

  switch (r.kind) {
    case ActionKind::t11:
    case ActionKind::nu11: {
      const IzerginCache kbar(r.u.view(), g.shifted(-r.c), r.c, true);
      const bool t = r.kind == ActionKind::t11;
      std::optional<std::vector<std::size_t>> cards;
      if (t) cards = std::vector<std::size_t>{std::size_t(n), std::size_t(m)};
      SplitEnumerator(p, 2, cards).for_each([&](const Split& s) {
        count(s);
        const int l = popcount(s[0]);
        const Rational k = kbar.evaluate(one, s[0]);
        if (k == 0) return;
        const Rational pre = t ? sign_pow(n) : sign_pow(l) * ipow(b2, n - l);
        out.coefficients.add(s[1], pre * g.l1(s[0]) * k * g.f(s[1], s[0]));
      });
      break;
    }
    case ActionKind::t22:
    case ActionKind::nu22: {
      const IzerginCache kc(r.u.view(), g.shifted(r.c), r.c, false);
      const bool t = r.kind == ActionKind::t22;
      std::optional<std::vector<std::size_t>> cards;
      if (t) cards = std::vector<std::size_t>{std::size_t(n), std::size_t(m)};
      SplitEnumerator(p, 2, cards).for_each([&](const Split& s) {
        count(s);
        const int l = popcount(s[0]);
        const Rational k = kc.evaluate(one, s[0]);
        if (k == 0) return;
        const Rational pre = t ? sign_pow(n) : sign_pow(l) * ipow(b1, n - l);
        out.coefficients.add(s[1], pre * g.l2(s[0]) * k * g.f(s[0], s[1]));
      });
      break;
    }
    case ActionKind::t21:
    case ActionKind::nu21: {
      const IzerginCache kc(r.u.view(), g.shifted(r.c), r.c, false);
      const IzerginCache kbar(r.u.view(), g.shifted(-r.c), r.c, true);
      const bool t = r.kind == ActionKind::t21;
      if (t && m < n) break;  // no admissible split: the state is annihilated
      std::optional<std::vector<std::size_t>> cards;
      if (t) cards = std::vector<std::size_t>{std::size_t(n), std::size_t(n), std::size_t(m - n)};
      SplitEnumerator(p, 3, cards).for_each([&](const Split& s) {
        count(s);
        const Rational k = kc.evaluate(one, s[0]);
        if (k == 0) return;
        const Rational kb = kbar.evaluate(one, s[1]);
        if (kb == 0) return;
        Rational pre(1);
        if (!t) {
          pre = ipow(-b1, n - popcount(s[0])) * ipow(-b2, n - popcount(s[1]));
        }
        out.coefficients.add(s[2], pre * g.l2(s[0]) * g.l1(s[1]) * k * kb * g.f(s[0], s[1]) *
                                       g.f(s[0], s[2]) * g.f(s[2], s[1]));
      });
      break;
    }
    case ActionKind::nu12: {
      if (!r.oracle.has_nu12_data())
        throw CapabilityError("nu12 action needs the oracle's F and S");
      const int S = *r.oracle.S;
      const int excess = static_cast<int>(p) - S;
      if (excess < 0)
        throw DomainError("nu12 action needs m + n >= S (m + n = " + std::to_string(p) +
                          ", S = " + std::to_string(S) + ")");
      if (b1 * b2 == 0) throw DomainError("nu12 action needs beta_1 beta_2 != 0");
      const Rational base = (r.twist.mu - 1) * (b1 + b2) / (b1 * b2);
      const Rational pre = ipow(base, excess);
      std::vector<Rational> fw;
      for (const auto& x : w) fw.push_back(r.oracle.F(x));
      SplitEnumerator(p, 2, std::vector<std::size_t>{std::size_t(excess), std::size_t(S)})
          .for_each([&](const Split& s) {
            count(s);
            Rational term = pre;
            for (Mask x = s[0]; x; x &= x - 1) {
              const auto i = static_cast<std::size_t>(std::countr_zero(x));
              term *= fw[i];
              for (Mask y = s[1]; y; y &= y - 1)
                term *= kernel_g(w[i], w[static_cast<std::size_t>(std::countr_zero(y))], r.c);
            }
            out.coefficients.add(s[1], term);
          });
      break;
    }
  }
  return out;
}

VectorQ materialize(const ActionResult& result, const ChainSpec& spec,
                    const ModelParams& params) {
  std::vector<MatrixQ> creators;
  creators.reserve(result.values.size());
  for (const auto& x : result.values)
    creators.push_back(monodromy(spec, params, result.family, x)(1, 2));
  VectorQ total = VectorQ::Zero(spec.dim());
  for (const auto& [key, coeff] : result.coefficients) {
    if (coeff == 0) continue;
    VectorQ state = vacuum(spec);
    for (Mask x = key; x; x &= x - 1) state = creators[std::countr_zero(x)] * state;
    total += coeff * state;
  }
  return total;
}

ActionRequest phi_transform(const ActionRequest& r) {
  ActionRequest out;
  switch (r.kind) {
    case ActionKind::t11: out.kind = ActionKind::t22; break;
    case ActionKind::t22: out.kind = ActionKind::t11; break;
    case ActionKind::nu11: out.kind = ActionKind::nu22; break;
    case ActionKind::nu22: out.kind = ActionKind::nu11; break;
    default: out.kind = r.kind; break;
  }
  out.u = r.u.negated();
  out.v = r.v.negated();
  out.oracle = r.oracle.phi();
  out.twist = r.twist.swapped();
  out.c = r.c;
  return out;
}

// ---------------------------------------------------------------------------
// Scalar products

namespace {

SplitSum scalar_sce(const ScalarRequest& r, unsigned jobs) {
  const std::size_t n = r.u.size();
  if (r.v.size() != n)
    throw CardinalityError("this scalar-product form needs #u == #v");
  const auto w = joined(r.u, r.v);
  const Ground g(w, r.c, r.oracle);
  const IzerginCache kc(r.u.view(), g.shifted(r.c), r.c, false);
  const IzerginCache kbar(r.u.view(), g.shifted(-r.c), r.c, true);
  const Rational one(1);
  const SplitEnumerator e(w.size(), 2, std::vector<std::size_t>{n, n});
  return split_sum(e, [&](const Split& s) {
    const Rational k = kc.evaluate(one, s[0]);
    if (k == 0) return Rational(0);
    return g.l2(s[0]) * g.l1(s[1]) * k * kbar.evaluate(one, s[1]) * g.f(s[0], s[1]);
  }, jobs);
}

// Independent splits of u and v; `term(uI, uII, vI, vII)` on masks local to
// each set.
template <typename Term>
SplitSum double_split_sum(std::size_t n, std::size_t m, bool equal_cards, Term&& term) {
  SplitSum out;
  const auto us = enumerate_splits(n, 2);
  const auto vs = enumerate_splits(m, 2);
  for (const auto& su : us)
    for (const auto& sv : vs) {
      if (equal_cards && popcount(su[0]) != popcount(sv[0])) continue;
      ++out.splits;
      out.value += term(su[0], su[1], sv[0], sv[1]);
    }
  return out;
}

SplitSum scalar_scbe(const ScalarRequest& r) {
  const std::size_t n = r.u.size();
  if (r.v.size() != n)
    throw CardinalityError("this scalar-product form needs #u == #v");
  const Ground gu(r.u.view(), r.c, r.oracle);
  const Ground gv(r.v.view(), r.c, r.oracle);
  const Rational one(1);
  return double_split_sum(n, n, true, [&](Mask u1, Mask u2, Mask v1, Mask v2) {
    const auto uu1 = select(u1, r.u.view());
    const auto uu2 = select(u2, r.u.view());
    const auto vv1 = select(v1, r.v.view());
    const auto vv2 = select(v2, r.v.view());
    const Rational k = mod_izergin(one, vv2, uu2, r.c);
    if (k == 0) return Rational(0);
    return gu.l2(u1) * gv.l2(v2) * gu.l1(u2) * gv.l1(v1) * k *
           conj_mod_izergin(one, vv1, uu1, r.c) * gu.f(u1, u2) * gv.f(v2, v1);
  });
}

SplitSum scalar_spfin(const ScalarRequest& r, unsigned jobs) {
  const int n = static_cast<int>(r.u.size());
  const auto w = joined(r.u, r.v);
  const Ground g(w, r.c, r.oracle);
  const IzerginCache kc(r.u.view(), g.shifted(r.c), r.c, false);
  const IzerginCache kbar(r.u.view(), g.shifted(-r.c), r.c, true);
  const Rational& mu = r.twist.mu;
  const Rational mb1 = -r.twist.beta1;
  const Rational mb2 = -r.twist.beta2;
  const SplitEnumerator e(w.size(), 2);
  return split_sum(e, [&](const Split& s) {
    const Rational k = kc.evaluate(mu, s[0]);
    if (k == 0) return Rational(0);
    const Rational kb = kbar.evaluate(mu, s[1]);
    if (kb == 0) return Rational(0);
    return ipow(mb1, n - popcount(s[0])) * ipow(mb2, n - popcount(s[1])) * g.l2(s[0]) *
           g.l1(s[1]) * g.f(s[0], s[1]) * k * kb;
  }, jobs);
}

SplitSum scalar_spfin_ik(const ScalarRequest& r) {
  const int n = static_cast<int>(r.u.size());
  const int m = static_cast<int>(r.v.size());
  const Rational& mu = r.twist.mu;
  if (mu == 0) throw DomainError("mu must be nonzero");
  if (mu == 1 && m != n)
    throw DomainError("modified Izergin-Korepin form needs mu != 1 when m != n: the prefactor "
                      "(1 - mu)^(m - n) is singular or zero; use SPfin instead");
  const Ground gu(r.u.view(), r.c, r.oracle);
  const Ground gv(r.v.view(), r.c, r.oracle);
  const Rational zinv = Rational(1) / mu;
  const Rational mb1 = -r.twist.beta1;
  const Rational mb2 = -r.twist.beta2;
  auto out = double_split_sum(r.u.size(), r.v.size(), false,
                              [&](Mask u1, Mask u2, Mask v1, Mask v2) {
    const auto uu1 = select(u1, r.u.view());
    const auto uu2 = select(u2, r.u.view());
    const auto vv1 = select(v1, r.v.view());
    const auto vv2 = select(v2, r.v.view());
    const Rational k = mod_izergin(zinv, vv2, uu2, r.c);
    if (k == 0) return Rational(0);
    const Rational kb = conj_mod_izergin(zinv, vv1, uu1, r.c);
    if (kb == 0) return Rational(0);
    const int n1 = popcount(u1), n2 = popcount(u2), m1 = popcount(v1), m2 = popcount(v2);
    return ipow(mb1, n2 - m2) * ipow(mb2, n1 - m1) * gu.l2(u1) * gv.l2(v2) * gu.l1(u2) *
           gv.l1(v1) * gu.f(u1, u2) * gv.f(v2, v1) * k * kb;
  });
  out.value *= ipow(mu, 2 * n) * ipow(Rational(1) - mu, m - n);
  return out;
}

}  // namespace

SplitSum eval_scalar(const ScalarRequest& r, unsigned jobs) {
  require_oracle(r.oracle);
  switch (r.form) {
    case ScalarForm::SCe: return scalar_sce(r, jobs);
    case ScalarForm::SCbe: return scalar_scbe(r);
    case ScalarForm::SPfin: return scalar_spfin(r, jobs);
    case ScalarForm::SPfinIK: return scalar_spfin_ik(r);
  }
  throw DomainError("unknown scalar-product form");
}

Rational eval_vacuum_average(std::span<const Rational> w, const WeightOracle& oracle,
                             const TwistData& twist, const Rational& c) {
  require_oracle(oracle);
  if (w.empty()) return Rational(1);
  if (twist.beta1 * twist.beta2 == 0)
    throw DomainError("vacuum average formula needs beta_1 beta_2 != 0");
  const Ground g(w, c, oracle);
  const Rational mb1 = -twist.beta1;
  const Rational mb2 = -twist.beta2;
  const SplitEnumerator e(w.size(), 2);
  const auto sum = split_sum(e, [&](const Split& s) {
    return ipow(mb2, -popcount(s[1])) * ipow(mb1, -popcount(s[0])) * g.l2(s[0]) * g.l1(s[1]) *
           g.f(s[0], s[1]);
  });
  return ipow(Rational(1) - twist.mu, static_cast<int>(w.size())) * sum.value;
}

}  // namespace maba
