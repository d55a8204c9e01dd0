// maba: verify / scalar / bench front end.

#include "maba/errors.hpp"
#include "maba/formulas.hpp"
#include "maba/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace maba;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

Rational rational_arg(const std::string& text, const char* name) {
  try {
    return parse_rational(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("--") + name + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write report to '" + path + "'");
  out << text;
}

struct VerifyArgs {
  std::string config_path;
  std::vector<std::string> suites, only;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> c;
  std::optional<int> bound;
  std::optional<unsigned> jobs;
  std::optional<std::string> report;
  bool no_timing = false;
  bool quiet = false;
  std::string fault;
};

int cmd_verify(const VerifyArgs& a) {
  RunConfig cfg;
  if (!a.config_path.empty()) {
    std::ifstream in(a.config_path);
    if (!in) throw ConfigError("cannot read config '" + a.config_path + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    cfg = config_from_json(j);
  }
  if (!a.suites.empty()) cfg.suites = a.suites;
  if (!a.only.empty()) cfg.only = a.only;
  if (a.seed) cfg.seed = *a.seed;
  if (a.c) cfg.c = rational_arg(*a.c, "c");
  if (a.bound) cfg.bound = *a.bound;
  if (a.jobs) cfg.jobs = *a.jobs;
  if (a.report) cfg.report_path = *a.report;
  if (a.no_timing) cfg.timing = false;
  cfg.fault = a.fault;
  validate_config(cfg);

  const Report report = run_verify(cfg);
  if (!cfg.report_path.empty()) write_text(cfg.report_path, report.dump());
  if (!a.quiet) {
    for (const auto& r : report.records)
      if (!r.pass)
        std::cerr << "FAIL " << r.suite << " " << r.identity << " " << r.sizes.dump() << ": "
                  << r.detail << "\n";
    std::cerr << report.passed() << " passed, " << report.failed() << " failed ("
              << report.records.size() << " records)\n";
  }
  if (cfg.report_path.empty()) std::cout << report.dump();
  return report.ok() ? 0 : kExitFail;
}

struct ScalarArgs {
  int n = 0, m = 0, sites = 2;
  std::string form = "SPfin";
  std::string rho1 = "1", rho2 = "2", kp = "3", km = "5";
  std::uint64_t seed = 1;
  std::string c = "1";
  int bound = 40;
};

int cmd_scalar(const ScalarArgs& a) {
  const auto form = parse_scalar_form(a.form);
  if (!form) throw ConfigError("unknown --form '" + a.form + "' (SCe, SCbe, SPfin, SPfinIK)");
  if (a.n < 0 || a.m < 0) throw ConfigError("--n and --m must be non-negative");
  if (a.sites < 1 || a.sites > static_cast<int>(kMaxSites))
    throw ConfigError("--sites must be in 1..10");
  const Rational c = rational_arg(a.c, "c");
  if (c == 0) throw ConfigError("--c must be nonzero");
  const bool twisted = *form == ScalarForm::SPfin || *form == ScalarForm::SPfinIK;
  ModelParams params(c);
  if (twisted) {
    const Rational kp = rational_arg(a.kp, "kp"), km = rational_arg(a.km, "km");
    const Rational r1 = rational_arg(a.rho1, "rho1"), r2 = rational_arg(a.rho2, "rho2");
    if (kp == 0 || km == 0) throw DomainError("kappa^+ and kappa^- must be nonzero");
    if (r1 * r2 == kp * km)
      throw DomainError("rho1*rho2 = kappa^+*kappa^- makes mu infinite");
    params = ModelParams(c, r1, r2, kp, km);
  }
  std::mt19937_64 rng(a.seed);
  const auto all = sample_generic(std::size_t(a.sites + a.n + a.m), {}, c, rng, a.bound);
  const auto first = all.values.begin();
  const ChainSpec spec(SpectralSet(std::vector<Rational>(first, first + a.sites), "theta"), c);
  const SpectralSet u(std::vector<Rational>(first + a.sites, first + a.sites + a.n), "u");
  const SpectralSet v(std::vector<Rational>(first + a.sites + a.n, all.values.end()), "v");

  ScalarRequest r{*form, u, v, WeightOracle::fundamental(spec), params.twist(), c};
  const Rational formula = eval_scalar(r).value;
  const Family fam = twisted ? Family::nu : Family::t;
  const Rational oracle = direct_scalar(spec, params, fam, u.view(), fam, v.view());
  const bool ok = formula == oracle;
  std::cout << to_string(formula) << " = " << to_string(oracle) << ", " << (ok ? "PASS" : "FAIL")
            << "\n";
  return ok ? 0 : kExitFail;
}

struct BenchArgs {
  int min_size = 10, max_size = 16;
  std::vector<unsigned> jobs{1, 2, 4, 8};
  std::uint64_t seed = 1;
  std::string report;
};

int cmd_bench(const BenchArgs& a) {
  if (a.min_size < 0 || a.max_size < a.min_size || a.max_size > 24)
    throw ConfigError("sizes must satisfy 0 <= min-size <= max-size <= 24");
  if (a.jobs.empty()) throw ConfigError("--jobs needs at least one worker count");
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  bool ok = true;
  const Rational c(1);
  for (int size = a.min_size; size <= a.max_size; ++size) {
    const int n = size / 2, m = size - n;
    std::mt19937_64 rng(a.seed + static_cast<std::uint64_t>(size));
    const auto all = sample_generic(std::size_t(size), {}, c, rng, 60);
    ScalarRequest r{ScalarForm::SPfin,
                    SpectralSet(std::vector<Rational>(all.begin(), all.begin() + n), "u"),
                    SpectralSet(std::vector<Rational>(all.begin() + n, all.end()), "v"),
                    WeightOracle::random(a.seed), {Rational(3, 2), Rational(-2), Rational(5, 7)}, c};
    std::optional<Rational> reference;
    double base = 0;
    for (unsigned j : a.jobs) {
      const auto t0 = std::chrono::steady_clock::now();
      const SplitSum s = eval_scalar(r, j);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      const bool count_ok = s.splits == (std::uint64_t{1} << size);
      const bool same = !reference || *reference == s.value;
      if (!reference) {
        reference = s.value;
        base = secs;
      }
      ok = ok && count_ok && same;
      const Rational v[] = {s.value};
      rows.push_back({{"size", size},
                      {"n", n},
                      {"m", m},
                      {"jobs", j},
                      {"splits", s.splits},
                      {"splits_expected", std::uint64_t{1} << size},
                      {"seconds", secs},
                      {"splits_per_second", secs > 0 ? double(s.splits) / secs : 0.0},
                      {"speedup", secs > 0 ? base / secs : 0.0},
                      {"value_digest", digest(v)},
                      {"identical", same}});
      std::cerr << "size " << size << " jobs " << j << ": " << s.splits << " splits, " << secs
                << " s" << (same ? "" : "  VALUE MISMATCH") << "\n";
    }
  }
  nlohmann::ordered_json out{{"form", "SPfin"},
                             {"hardware_threads", std::thread::hardware_concurrency()},
                             {"results", rows},
                             {"status", ok ? "pass" : "fail"}};
  write_text(a.report, out.dump(2) + "\n");
  return ok ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of modified algebraic Bethe ansatz formulas"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run identity suites and write a JSON report");
  verify->add_option("--config", va.config_path, "JSON run configuration");
  verify->add_option("--suite", va.suites, "Suite to run (repeatable)");
  verify->add_option("--only", va.only, "Identity-id prefix filter (repeatable)");
  verify->add_option("--seed", va.seed, "64-bit seed");
  verify->add_option("--c", va.c, "Constant c as p/q");
  verify->add_option("--bound", va.bound, "Numerator/denominator bound for sampling");
  verify->add_option("--jobs", va.jobs, "Worker threads");
  verify->add_option("--report", va.report, "Report path ('-' for stdout)");
  verify->add_flag("--no-timing", va.no_timing, "Omit elapsed times from the report");
  verify->add_flag("--quiet", va.quiet, "No summary on stderr");
  verify->add_option("--inject-fault", va.fault)->group("");

  ScalarArgs sa;
  auto* scalar = app.add_subcommand("scalar", "Scalar product by formula and by the chain oracle");
  scalar->add_option("--n", sa.n, "#u");
  scalar->add_option("--m", sa.m, "#v");
  scalar->add_option("--sites", sa.sites, "Chain length N");
  scalar->add_option("--form", sa.form, "SCe | SCbe | SPfin | SPfinIK");
  scalar->add_option("--rho1", sa.rho1);
  scalar->add_option("--rho2", sa.rho2);
  scalar->add_option("--kp", sa.kp, "kappa^+");
  scalar->add_option("--km", sa.km, "kappa^-");
  scalar->add_option("--seed", sa.seed);
  scalar->add_option("--c", sa.c);
  scalar->add_option("--bound", sa.bound);

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Time the twisted scalar-product sum");
  bench->add_option("--min-size", ba.min_size, "Smallest n+m");
  bench->add_option("--max-size", ba.max_size, "Largest n+m");
  bench->add_option("--jobs", ba.jobs, "Worker counts to sweep")->delimiter(',');
  bench->add_option("--seed", ba.seed);
  bench->add_option("--report", ba.report, "JSON output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*verify) return cmd_verify(va);
    if (*scalar) return cmd_scalar(sa);
    if (*bench) return cmd_bench(ba);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const CardinalityError& e) {
    std::cerr << "cardinality error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return 0;
}
