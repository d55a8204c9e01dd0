#include "maba/partition.hpp"

#include <numeric>

namespace maba {

std::string GroundSet::tag(std::size_t i) const {
  const auto& o = origin.at(i);
  return o.source + "[" + std::to_string(o.source_index) + "]";
}

GroundSet GroundSet::of(std::span<const SpectralSet> sets) {
  GroundSet g;
  for (std::size_t k = 0; k < sets.size(); ++k) {
    const std::string name = sets[k].label.empty() ? "s" + std::to_string(k) : sets[k].label;
    for (std::size_t i = 0; i < sets[k].size(); ++i) g.origin.push_back({name, i, k});
  }
  if (g.size() > kMaxGround) throw ConstraintError("ground set larger than 63 elements");
  return g;
}

GroundSet GroundSet::of(const SpectralSet& a, const SpectralSet& b) {
  const std::array<SpectralSet, 2> sets{a, b};
  return of(std::span<const SpectralSet>(sets));
}

SplitEnumerator::SplitEnumerator(std::size_t n, int parts,
                                 std::optional<std::vector<std::size_t>> cards)
    : n_(n), parts_(parts), cards_(std::move(cards)), codes_(1) {
  if (parts != 2 && parts != 3) throw ConstraintError("split part count must be 2 or 3");
  if (n > kMaxGround) throw ConstraintError("ground set larger than 63 elements");
  if (cards_) {
    if (cards_->size() != static_cast<std::size_t>(parts))
      throw ConstraintError("one cardinality per part is required");
    if (std::accumulate(cards_->begin(), cards_->end(), std::size_t{0}) != n)
      throw ConstraintError("cardinalities do not sum to the ground set size");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (codes_ > (~std::uint64_t{0}) / static_cast<std::uint64_t>(parts))
      throw ConstraintError("split code space exceeds 64 bits");
    codes_ *= static_cast<std::uint64_t>(parts);
  }
}

std::uint64_t SplitEnumerator::split_count() const {
  if (!cards_) return codes_;
  // multinomial(n; k_1, ..., k_p) via successive binomials
  std::uint64_t total = 1;
  std::size_t remaining = n_;
  for (std::size_t k : *cards_) {
    std::uint64_t b = 1;
    for (std::size_t i = 1; i <= k; ++i) b = b * (remaining - k + i) / i;
    total *= b;
    remaining -= k;
  }
  return total;
}

bool SplitEnumerator::decode(std::uint64_t code, Split& out) const {
  out.count = parts_;
  out.parts = {0, 0, 0};
  if (parts_ == 2) {
    out.parts[1] = code;
    out.parts[0] = full_mask(n_) & ~code;
  } else {
    for (std::size_t i = 0; i < n_; ++i) {
      out.parts[code % 3] |= Mask{1} << i;
      code /= 3;
    }
  }
  if (cards_) {
    for (int p = 0; p < parts_; ++p)
      if (static_cast<std::size_t>(popcount(out.parts[p])) != (*cards_)[p]) return false;
  }
  return true;
}

std::vector<Split> SplitEnumerator::materialize() const {
  std::vector<Split> out;
  for_each([&](const Split& s) { out.push_back(s); });
  return out;
}

std::vector<Split> enumerate_splits(std::size_t n, int parts,
                                    std::optional<std::vector<std::size_t>> cards) {
  return SplitEnumerator(n, parts, std::move(cards)).materialize();
}

std::vector<Rational> select(Mask mask, std::span<const Rational> values) {
  std::vector<Rational> out;
  out.reserve(popcount(mask));
  while (mask) {
    const int i = std::countr_zero(mask);
    out.push_back(values[i]);
    mask &= mask - 1;
  }
  return out;
}

SpectralSet split_elements(const Split& split, std::size_t part, const GroundSet& ground,
                           std::span<const SpectralSet> spectra) {
  if (part >= static_cast<std::size_t>(split.count))
    throw ConstraintError("part index out of range");
  SpectralSet out;
  Mask m = split.parts[part];
  while (m) {
    const int i = std::countr_zero(m);
    const auto& o = ground.origin.at(i);
    out.values.push_back(spectra[o.set_index][o.source_index]);
    m &= m - 1;
  }
  return out;
}

std::vector<std::string> mask_tags(Mask mask, const GroundSet& ground) {
  std::vector<std::string> out;
  while (mask) {
    const int i = std::countr_zero(mask);
    out.push_back(ground.tag(i));
    mask &= mask - 1;
  }
  return out;
}

void CoefficientMap::add(Mask key, const Rational& value) {
  auto [it, inserted] = terms_.try_emplace(key, value);
  if (!inserted) it->second += value;
}

Rational CoefficientMap::get(Mask key) const {
  const auto it = terms_.find(key);
  return it == terms_.end() ? Rational(0) : it->second;
}

void CoefficientMap::merge(const CoefficientMap& other) {
  for (const auto& [k, v] : other.terms_) add(k, v);
}

bool operator==(const CoefficientMap& a, const CoefficientMap& b) {
  for (const auto& [k, v] : a.terms_)
    if (b.get(k) != v) return false;
  for (const auto& [k, v] : b.terms_)
    if (a.get(k) != v) return false;
  return true;
}

}  // namespace maba
