#pragma once

// Batch verification harness: seeded identity suites, JSON run configuration
// and reports.

#include "maba/rational.hpp"

#include "json.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace maba {

struct SuiteSizes {
  std::optional<int> sites;
  std::optional<int> n;
  std::optional<int> m;
  std::optional<int> trials;
};

struct RunConfig {
  std::vector<std::string> suites;  // empty: every registered suite
  std::vector<std::string> only;    // identity-id prefixes; empty: all
  std::uint64_t seed = 1;
  Rational c{1};
  int bound = 40;
  std::map<std::string, SuiteSizes> sizes;
  unsigned jobs = 1;
  std::string report_path;
  bool timing = true;
  std::string fault;  // test hook: "f-sign" corrupts the f kernel in one expansion
};

/// Registered suite names, in report order.
const std::vector<std::string>& suite_names();

/// Parses a JSON object mirroring RunConfig. Throws ConfigError.
RunConfig config_from_json(const nlohmann::json& j);
nlohmann::ordered_json config_to_json(const RunConfig& config);
/// Throws ConfigError on unknown suites, trials < 1, c = 0, bound < 1, jobs < 1.
void validate_config(const RunConfig& config);

struct CheckRecord {
  std::string suite;
  std::string identity;
  nlohmann::ordered_json sizes = nlohmann::ordered_json::object();
  std::uint64_t seed = 0;
  int samples = 0;
  std::string param_digest;
  bool pass = true;
  std::string lhs;
  std::string rhs;
  std::string detail;
  double elapsed_ms = 0;
};

struct Report {
  RunConfig config;
  std::vector<CheckRecord> records;

  std::size_t passed() const;
  std::size_t failed() const;
  bool ok() const { return failed() == 0; }
  nlohmann::ordered_json to_json() const;
  std::string dump() const;
};

/// Records of one suite, sorted by (identity, creation order).
std::vector<CheckRecord> run_suite(const std::string& name, const RunConfig& config);

Report run_verify(const RunConfig& config);

/// FNV-1a 64 over the canonical "p/q" strings joined by ';', as "fnv1a:<16 hex>".
std::string digest(std::span<const Rational> values);
/// A value rendered for a report: the value itself when short, else its digest.
std::string render(std::span<const Rational> values);

}  // namespace maba
