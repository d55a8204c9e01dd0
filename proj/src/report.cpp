#include "maba/errors.hpp"
#include "maba/verify.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

namespace maba {

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "izergin-laws", "yangian-structure", "aba-actions",  "maba-actions",
      "scalar-products", "phi-symmetry",   "proof-steps"};
  return names;
}

namespace {

std::uint64_t fnv1a(std::string_view s, std::uint64_t h) {
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

int get_int(const nlohmann::json& j, const char* key) {
  if (!j.is_number_integer()) throw ConfigError(std::string(key) + " must be an integer");
  return j.get<int>();
}

}  // namespace

std::string digest(std::span<const Rational> values) {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) h = fnv1a(";", h);
    h = fnv1a(to_string(values[i]), h);
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string render(std::span<const Rational> values) {
  if (values.size() == 1) {
    std::string s = to_string(values[0]);
    if (s.size() <= 64) return s;
  }
  return digest(values);
}

RunConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known{"suites", "only",   "seed",        "c",
                                           "bound",  "sizes",  "parallelism", "jobs",
                                           "report_path", "timing"};
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) throw ConfigError("unknown config field '" + key + "'");
  RunConfig cfg;
  auto strings = [](const nlohmann::json& v, const char* key) {
    if (!v.is_array()) throw ConfigError(std::string(key) + " must be an array of strings");
    std::vector<std::string> out;
    for (const auto& s : v) {
      if (!s.is_string()) throw ConfigError(std::string(key) + " must be an array of strings");
      out.push_back(s.get<std::string>());
    }
    return out;
  };
  if (j.contains("suites")) cfg.suites = strings(j["suites"], "suites");
  if (j.contains("only")) cfg.only = strings(j["only"], "only");
  if (j.contains("seed")) {
    const auto& s = j["seed"];
    if (s.is_number_unsigned() || (s.is_number_integer() && s.get<long long>() >= 0))
      cfg.seed = s.get<std::uint64_t>();
    else if (s.is_string()) {
      try {
        std::size_t pos = 0;
        cfg.seed = std::stoull(s.get<std::string>(), &pos);
        if (pos != s.get<std::string>().size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ConfigError("seed must be a non-negative 64-bit integer");
      }
    } else {
      throw ConfigError("seed must be a non-negative 64-bit integer");
    }
  }
  if (j.contains("c")) {
    const auto& c = j["c"];
    try {
      if (c.is_string()) cfg.c = parse_rational(c.get<std::string>());
      else if (c.is_number_integer()) cfg.c = Rational(c.get<long long>());
      else throw ConfigError("c must be a rational string such as \"1\" or \"3/2\"");
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("c: ") + e.what());
    }
  }
  if (j.contains("bound")) cfg.bound = get_int(j["bound"], "bound");
  for (const char* key : {"parallelism", "jobs"}) {
    if (!j.contains(key)) continue;
    const int v = get_int(j[key], key);
    if (v < 1) throw ConfigError(std::string(key) + " must be >= 1");
    cfg.jobs = static_cast<unsigned>(v);
  }
  if (j.contains("report_path")) {
    if (!j["report_path"].is_string()) throw ConfigError("report_path must be a string");
    cfg.report_path = j["report_path"].get<std::string>();
  }
  if (j.contains("timing")) {
    if (!j["timing"].is_boolean()) throw ConfigError("timing must be a boolean");
    cfg.timing = j["timing"].get<bool>();
  }
  if (j.contains("sizes")) {
    const auto& s = j["sizes"];
    if (!s.is_object()) throw ConfigError("sizes must map suite names to objects");
    for (const auto& [suite, obj] : s.items()) {
      if (!obj.is_object()) throw ConfigError("sizes." + suite + " must be an object");
      SuiteSizes sz;
      for (const auto& [key, v] : obj.items()) {
        const std::string where = "sizes." + suite + "." + key;
        if (key == "N") sz.sites = get_int(v, where.c_str());
        else if (key == "n") sz.n = get_int(v, where.c_str());
        else if (key == "m") sz.m = get_int(v, where.c_str());
        else if (key == "trials") sz.trials = get_int(v, where.c_str());
        else throw ConfigError("unknown size field '" + where + "'");
      }
      cfg.sizes[suite] = sz;
    }
  }
  validate_config(cfg);
  return cfg;
}

void validate_config(const RunConfig& cfg) {
  const auto& names = suite_names();
  auto known = [&](const std::string& s) {
    return std::find(names.begin(), names.end(), s) != names.end();
  };
  for (const auto& s : cfg.suites)
    if (!known(s)) throw ConfigError("unknown suite '" + s + "'");
  for (const auto& [s, sz] : cfg.sizes) {
    if (!known(s)) throw ConfigError("sizes given for unknown suite '" + s + "'");
    if (sz.trials && *sz.trials < 1) throw ConfigError("sizes." + s + ".trials must be >= 1");
    if (sz.sites && (*sz.sites < 1 || *sz.sites > 10))
      throw ConfigError("sizes." + s + ".N must be in 1..10");
    if (sz.n && *sz.n < 0) throw ConfigError("sizes." + s + ".n must be >= 0");
    if (sz.m && *sz.m < 0) throw ConfigError("sizes." + s + ".m must be >= 0");
  }
  if (cfg.c == 0) throw ConfigError("c must be nonzero");
  if (cfg.bound < 1) throw ConfigError("bound must be >= 1");
  if (cfg.jobs < 1) throw ConfigError("jobs must be >= 1");
  if (!cfg.fault.empty() && cfg.fault != "f-sign")
    throw ConfigError("unknown fault '" + cfg.fault + "'");
}

nlohmann::ordered_json config_to_json(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["suites"] = cfg.suites.empty() ? suite_names() : cfg.suites;
  if (!cfg.only.empty()) j["only"] = cfg.only;
  j["seed"] = cfg.seed;
  j["c"] = to_string(cfg.c);
  j["bound"] = cfg.bound;
  nlohmann::ordered_json sizes = nlohmann::ordered_json::object();
  for (const auto& [s, sz] : cfg.sizes) {
    nlohmann::ordered_json o = nlohmann::ordered_json::object();
    if (sz.sites) o["N"] = *sz.sites;
    if (sz.n) o["n"] = *sz.n;
    if (sz.m) o["m"] = *sz.m;
    if (sz.trials) o["trials"] = *sz.trials;
    sizes[s] = o;
  }
  j["sizes"] = sizes;
  j["parallelism"] = cfg.jobs;
  j["timing"] = cfg.timing;
  if (!cfg.fault.empty()) j["fault"] = cfg.fault;
  return j;
}

std::size_t Report::passed() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const auto& r) { return r.pass; }));
}

std::size_t Report::failed() const { return records.size() - passed(); }

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json out;
  out["config"] = config_to_json(config);
  nlohmann::ordered_json recs = nlohmann::ordered_json::array();
  nlohmann::ordered_json per_suite = nlohmann::ordered_json::object();
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    j["identity"] = r.identity;
    j["sizes"] = r.sizes;
    j["seed"] = r.seed;
    j["samples"] = r.samples;
    j["param_digest"] = r.param_digest;
    j["status"] = r.pass ? "pass" : "fail";
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    if (!r.detail.empty()) j["detail"] = r.detail;
    if (config.timing) j["elapsed_ms"] = r.elapsed_ms;
    recs.push_back(std::move(j));
    auto& s = per_suite[r.suite];
    if (s.is_null()) s = {{"passed", 0}, {"failed", 0}};
    s[r.pass ? "passed" : "failed"] = s[r.pass ? "passed" : "failed"].get<int>() + 1;
  }
  out["records"] = std::move(recs);
  out["summary"] = {{"records", records.size()},
                    {"passed", passed()},
                    {"failed", failed()},
                    {"status", ok() ? "pass" : "fail"},
                    {"suites", per_suite}};
  return out;
}

std::string Report::dump() const { return to_json().dump(2) + "\n"; }

}  // namespace maba
