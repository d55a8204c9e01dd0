#pragma once

// Ordered splits of an index set {0, ..., n-1} into 2 or 3 labeled parts,
// encoded as bitmasks, and exact (order-independent) sums over them.

#include "maba/errors.hpp"
#include "maba/kernels.hpp"
#include "maba/rational.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <exception>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace maba {

using Mask = std::uint64_t;

inline constexpr std::size_t kMaxGround = 63;

inline Mask full_mask(std::size_t n) { return n == 0 ? 0 : (~Mask{0} >> (64 - n)); }
inline int popcount(Mask m) { return std::popcount(m); }

/// Indices of the composite parameter set, tagged with where each came from.
struct GroundSet {
  struct Origin {
    std::string source;
    std::size_t source_index = 0;
    std::size_t set_index = 0;  // which of the input sets
  };
  std::vector<Origin> origin;

  std::size_t size() const noexcept { return origin.size(); }
  std::string tag(std::size_t i) const;

  /// Ground set of the concatenation of `sets`, in order. Each element is
  /// tagged "<label>[i]"; unlabeled sets get "s<k>".
  static GroundSet of(std::span<const SpectralSet> sets);
  static GroundSet of(const SpectralSet& a, const SpectralSet& b);
};

struct Split {
  std::array<Mask, 3> parts{};
  int count = 2;

  Mask operator[](std::size_t i) const { return parts[i]; }
  friend bool operator==(const Split&, const Split&) = default;
};

/// Enumerates splits in ascending order of the assignment code
/// sum_i label(i) * k^i (label 0 = first part). For two parts the code is the
/// mask of the second part. Optional cardinality constraints filter the stream.
class SplitEnumerator {
 public:
  SplitEnumerator(std::size_t n, int parts,
                  std::optional<std::vector<std::size_t>> cards = std::nullopt);

  std::size_t ground_size() const noexcept { return n_; }
  int parts() const noexcept { return parts_; }
  /// Size of the code space, k^n.
  std::uint64_t code_count() const noexcept { return codes_; }
  /// Number of splits the stream yields (k^n or the multinomial).
  std::uint64_t split_count() const;

  /// Decodes `code`; false if the split violates the cardinality constraints.
  bool decode(std::uint64_t code, Split& out) const;

  template <typename Fn>
  void for_each_in_range(std::uint64_t begin, std::uint64_t end, Fn&& fn) const {
    Split s;
    for (std::uint64_t code = begin; code < end; ++code)
      if (decode(code, s)) fn(s);
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for_each_in_range(0, codes_, fn);
  }

  std::vector<Split> materialize() const;

 private:
  std::size_t n_;
  int parts_;
  std::optional<std::vector<std::size_t>> cards_;
  std::uint64_t codes_;
};

std::vector<Split> enumerate_splits(std::size_t n, int parts,
                                    std::optional<std::vector<std::size_t>> cards =
                                        std::nullopt);

/// Values of the ground elements selected by `mask`, in ground order.
std::vector<Rational> select(Mask mask, std::span<const Rational> values);

/// Resolves one part of a split back to parameter values via the origin tags.
SpectralSet split_elements(const Split& split, std::size_t part, const GroundSet& ground,
                           std::span<const SpectralSet> spectra);

/// Sorted origin tags of a subset, e.g. ["u[0]", "v[2]"].
std::vector<std::string> mask_tags(Mask mask, const GroundSet& ground);

struct SplitSum {
  Rational value;
  std::uint64_t splits = 0;
};

/// Exact sum of `term(split)` over the stream. The code space is cut into
/// `jobs` contiguous ranges, one worker each; partial sums are combined in
/// range order, so the result is identical for every worker count.
template <typename Fn>
SplitSum split_sum(const SplitEnumerator& e, Fn&& term, unsigned jobs = 1) {
  jobs = std::max(1u, jobs);
  const std::uint64_t codes = e.code_count();
  if (jobs == 1 || codes < 2 * jobs) {
    SplitSum out;
    e.for_each([&](const Split& s) {
      out.value += term(s);
      ++out.splits;
    });
    return out;
  }
  std::vector<SplitSum> partial(jobs);
  std::vector<std::exception_ptr> failures(jobs);
  {
    std::vector<std::jthread> workers;
    workers.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) {
      const std::uint64_t begin = codes * w / jobs;
      const std::uint64_t end = codes * (w + 1) / jobs;
      workers.emplace_back([&, w, begin, end] {
        try {
          e.for_each_in_range(begin, end, [&](const Split& s) {
            partial[w].value += term(s);
            ++partial[w].splits;
          });
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);
  SplitSum out;
  for (auto& p : partial) {
    out.value += p.value;
    out.splits += p.splits;
  }
  return out;
}

/// Linear combination keyed by the surviving subset. Absent keys are zero.
class CoefficientMap {
 public:
  void add(Mask key, const Rational& value);
  Rational get(Mask key) const;
  void merge(const CoefficientMap& other);

  std::size_t size() const noexcept { return terms_.size(); }
  auto begin() const noexcept { return terms_.begin(); }
  auto end() const noexcept { return terms_.end(); }

  /// Equality with absent keys read as zero.
  friend bool operator==(const CoefficientMap& a, const CoefficientMap& b);

 private:
  std::map<Mask, Rational> terms_;
};

}  // namespace maba
