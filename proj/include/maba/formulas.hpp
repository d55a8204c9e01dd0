#pragma once

// Right-hand sides of the multiple-action and scalar-product formulas as
// exact partition sums. Actions return coefficient maps keyed by the
// surviving subset; materialize() turns them into chain states.

#include "maba/izergin.hpp"
#include "maba/kernels.hpp"
#include "maba/partition.hpp"
#include "maba/spin_chain.hpp"

#include <functional>
#include <optional>
#include <string_view>

namespace maba {

/// Representation data: vacuum eigenvalues and, optionally, the (F, S) pair
/// needed by the nu12 action. All functions must be pure.
struct WeightOracle {
  using Fn = std::function<Rational(const Rational&)>;

  Fn lambda1;
  Fn lambda2;
  Fn F;
  std::optional<int> S;

  Rational lambda1_of(std::span<const Rational> xs) const;
  Rational lambda2_of(std::span<const Rational> xs) const;
  bool has_nu12_data() const { return static_cast<bool>(F) && S.has_value(); }

  /// Fundamental representation of the chain: lambda_1 = prod h(u, theta),
  /// lambda_2 = prod (u - theta)/c, F = prod h/g, S = N. Checks F = lambda_1 lambda_2.
  static WeightOracle fundamental(const ChainSpec& spec);

  /// Independent pseudo-random nonzero rational weights, a pure function of
  /// (seed, argument). No F/S.
  static WeightOracle random(std::uint64_t seed, int bound = 50);

  /// lambda_1 = a, lambda_2 = b everywhere.
  static WeightOracle constant(Rational a, Rational b);

  /// lambda_1'(x) = lambda_2(-x), lambda_2'(x) = lambda_1(-x), F'(x) = F(-x).
  WeightOracle phi() const;
};

enum class ActionKind { t11, t22, t21, nu11, nu22, nu21, nu12 };

std::string_view action_name(ActionKind k) noexcept;
Family action_family(ActionKind k) noexcept;

struct ActionRequest {
  ActionKind kind = ActionKind::t11;
  SpectralSet u;
  SpectralSet v;
  WeightOracle oracle;
  TwistData twist{Rational(0), Rational(0), Rational(1)};
  Rational c{1};
};

struct ActionResult {
  CoefficientMap coefficients;
  GroundSet ground;
  std::vector<Rational> values;  // ground element values, u then v
  Family family = Family::t;
  std::uint64_t splits = 0;
};

ActionResult eval_action(const ActionRequest& request);

/// sum over keys of coefficient * x_12(w_key)|0>.
VectorQ materialize(const ActionResult& result, const ChainSpec& spec,
                    const ModelParams& params);

/// Yangian automorphism lifted to requests: kinds 11 <-> 22, spectral sets
/// negated, weights mapped by WeightOracle::phi, beta_1 <-> beta_2. An involution.
ActionRequest phi_transform(const ActionRequest& request);

enum class ScalarForm { SCe, SCbe, SPfin, SPfinIK };

std::string_view scalar_form_name(ScalarForm f) noexcept;
std::optional<ScalarForm> parse_scalar_form(std::string_view name) noexcept;

struct ScalarRequest {
  ScalarForm form = ScalarForm::SPfin;
  SpectralSet u;
  SpectralSet v;
  WeightOracle oracle;
  TwistData twist{Rational(0), Rational(0), Rational(1)};
  Rational c{1};
};

/// Value and number of enumerated splits (pairs of splits for SCbe/SPfinIK).
SplitSum eval_scalar(const ScalarRequest& request, unsigned jobs = 1);

/// <0| nu_12(w) |0> from the partition-sum formula.
Rational eval_vacuum_average(std::span<const Rational> w, const WeightOracle& oracle,
                             const TwistData& twist, const Rational& c);

}  // namespace maba
