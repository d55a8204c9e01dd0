#include "maba/kernels.hpp"

namespace maba {

const char* kernel_name(Kernel k) noexcept {
  switch (k) {
    case Kernel::g: return "g";
    case Kernel::f: return "f";
    case Kernel::h: return "h";
  }
  return "?";
}

SpectralSet SpectralSet::shifted(const Rational& delta) const {
  SpectralSet out;
  out.label = label;
  out.values.reserve(values.size());
  for (const auto& x : values) out.values.push_back(x + delta);
  return out;
}

SpectralSet SpectralSet::negated() const {
  SpectralSet out;
  out.label = label;
  out.values.reserve(values.size());
  for (const auto& x : values) out.values.push_back(-x);
  return out;
}

SpectralSet SpectralSet::without(std::size_t k) const {
  SpectralSet out;
  out.label = label;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (i != k) out.values.push_back(values[i]);
  return out;
}

SpectralSet SpectralSet::join(const SpectralSet& a, const SpectralSet& b) {
  SpectralSet out;
  out.values = a.values;
  out.values.insert(out.values.end(), b.values.begin(), b.values.end());
  return out;
}

Rational set_product(Kernel kind, std::span<const Rational> left,
                     std::span<const Rational> right, const Rational& c) {
  Rational p(1);
  for (const auto& x : left)
    for (const auto& y : right) p *= kernel(kind, x, y, c);
  return p;
}

Rational set_product(Kernel kind, const Rational& left, std::span<const Rational> right,
                     const Rational& c) {
  return set_product(kind, std::span<const Rational>(&left, 1), right, c);
}

Rational set_product(Kernel kind, std::span<const Rational> left, const Rational& right,
                     const Rational& c) {
  return set_product(kind, left, std::span<const Rational>(&right, 1), c);
}

Rational complement_product(Kernel kind, std::span<const Rational> set, std::size_t k,
                            const Rational& c, bool element_first) {
  Rational p(1);
  for (std::size_t j = 0; j < set.size(); ++j) {
    if (j == k) continue;
    p *= element_first ? kernel(kind, set[k], set[j], c) : kernel(kind, set[j], set[k], c);
  }
  return p;
}

std::optional<std::pair<std::size_t, std::size_t>> find_collision(
    std::span<const Rational> values, const Rational& c) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      const Rational d = values[i] - values[j];
      if (d == 0 || d == c || d == -c) return std::pair{i, j};
    }
  }
  return std::nullopt;
}

bool is_generic(std::span<const Rational> values, const Rational& c) {
  return !find_collision(values, c).has_value();
}

ModelParams::ModelParams(Rational c) : c_(std::move(c)) {
  if (c_ == 0) throw DomainError("c must be nonzero");
}

ModelParams::ModelParams(Rational c, Rational rho1, Rational rho2, Rational kappa_plus,
                         Rational kappa_minus)
    : c_(std::move(c)),
      rho1_(std::move(rho1)),
      rho2_(std::move(rho2)),
      kappa_plus_(std::move(kappa_plus)),
      kappa_minus_(std::move(kappa_minus)) {
  if (c_ == 0) throw DomainError("c must be nonzero");
  if (kappa_plus_ == 0 || kappa_minus_ == 0)
    throw DomainError("kappa^+ and kappa^- must be nonzero");
  if (rho1_ * rho2_ == kappa_plus_ * kappa_minus_)
    throw DomainError("rho1*rho2 = kappa^+*kappa^-: mu is infinite");
}

Rational ModelParams::mu() const {
  return Rational(1) / (Rational(1) - rho1_ * rho2_ / (kappa_plus_ * kappa_minus_));
}

Rational sample_rational(std::mt19937_64& rng, int bound) {
  if (bound < 1) throw DomainError("sampling bound must be >= 1");
  std::uniform_int_distribution<int> num(-bound, bound);
  std::uniform_int_distribution<int> den(1, bound);
  const int p = num(rng);
  const int q = den(rng);
  return Rational(p, q);
}

SpectralSet sample_generic(std::size_t count, std::span<const Rational> context,
                           const Rational& c, std::mt19937_64& rng, int bound,
                           std::string label) {
  if (bound < 1) throw DomainError("sampling bound must be >= 1");
  constexpr int kRetriesPerElement = 2000;
  std::vector<Rational> joint(context.begin(), context.end());
  SpectralSet out;
  out.label = std::move(label);
  for (std::size_t k = 0; k < count; ++k) {
    bool placed = false;
    for (int attempt = 0; attempt < kRetriesPerElement && !placed; ++attempt) {
      Rational x = sample_rational(rng, bound);
      bool ok = true;
      for (const auto& y : joint) {
        const Rational d = x - y;
        if (d == 0 || d == c || d == -c) {
          ok = false;
          break;
        }
      }
      if (ok) {
        joint.push_back(x);
        out.values.push_back(std::move(x));
        placed = true;
      }
    }
    if (!placed)
      throw ExhaustionError("could not place generic parameter " + std::to_string(k) +
                            " with bound " + std::to_string(bound));
  }
  return out;
}

SpectralSet sample_generic(std::size_t count, std::span<const Rational> context,
                           const Rational& c, std::uint64_t seed, int bound,
                           std::string label) {
  std::mt19937_64 rng(seed);
  return sample_generic(count, context, c, rng, bound, std::move(label));
}

}  // namespace maba
