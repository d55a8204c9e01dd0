#include "doctest.h"

#include "maba/errors.hpp"
#include "maba/verify.hpp"

using namespace maba;

TEST_CASE("config parsing") {
  const auto cfg = config_from_json(nlohmann::json::parse(R"({
    "suites": ["proof-steps"], "seed": "18446744073709551615", "c": "3/2", "bound": 12,
    "sizes": {"proof-steps": {"n": 4, "trials": 3}}, "parallelism": 2, "report_path": "r.json"
  })"));
  CHECK(cfg.suites == std::vector<std::string>{"proof-steps"});
  CHECK(cfg.seed == 18446744073709551615ULL);
  CHECK(cfg.c == Rational(3, 2));
  CHECK(cfg.bound == 12);
  CHECK(cfg.jobs == 2);
  CHECK(cfg.sizes.at("proof-steps").n == 4);
  CHECK(cfg.sizes.at("proof-steps").trials == 3);
  CHECK_FALSE(cfg.sizes.at("proof-steps").sites.has_value());
  CHECK(cfg.report_path == "r.json");

  for (const char* bad : {R"({"suites": ["nope"]})", R"({"sizes": {"proof-steps": {"trials": 0}}})",
                          R"({"c": "0"})", R"({"c": "1/0"})", R"({"seed": -3})", R"({"colour": 1})",
                          R"({"bound": 0})", R"({"parallelism": 0})", R"([1, 2])",
                          R"({"sizes": {"proof-steps": {"k": 1}}})"})
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(bad)), ConfigError);
}

TEST_CASE("digests and rendering") {
  const std::vector<Rational> a{Rational(1, 2), Rational(-3)};
  CHECK(digest(a).rfind("fnv1a:", 0) == 0);
  CHECK(digest(a).size() == 22);
  CHECK(digest(a) != digest(std::vector<Rational>{Rational(-3), Rational(1, 2)}));
  CHECK(render(std::vector<Rational>{Rational(-7, 3)}) == "-7/3");
  CHECK(render(a) == digest(a));
}

TEST_CASE("suites are deterministic and independent of the worker count") {
  RunConfig cfg;
  cfg.sizes["proof-steps"] = SuiteSizes{std::nullopt, 5, std::nullopt, 4};
  cfg.timing = false;
  const auto one = run_suite("proof-steps", cfg);
  cfg.jobs = 3;
  const auto three = run_suite("proof-steps", cfg);
  REQUIRE(one.size() == three.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].identity == three[i].identity);
    CHECK(one[i].sizes == three[i].sizes);
    CHECK(one[i].lhs == three[i].lhs);
    CHECK(one[i].param_digest == three[i].param_digest);
    CHECK(one[i].samples == 4);
    CHECK(one[i].pass);
  }
  cfg.seed = 2;
  CHECK(run_suite("proof-steps", cfg).front().param_digest != one.front().param_digest);
}

TEST_CASE("identity filter, size caps and report layout") {
  RunConfig cfg;
  cfg.suites = {"izergin-laws"};
  cfg.only = {"K1"};
  cfg.sizes["izergin-laws"] = SuiteSizes{std::nullopt, 2, 2, 2};
  const Report rep = run_verify(cfg);
  REQUIRE_FALSE(rep.records.empty());
  for (const auto& r : rep.records) {
    CHECK(r.identity.rfind("K1", 0) == 0);
    CHECK(r.sizes["n"].get<int>() <= 2);
  }
  const auto j = rep.to_json();
  CHECK(j["summary"]["failed"] == 0);
  CHECK(j["summary"]["records"] == rep.records.size());
  CHECK(j["records"][0].contains("elapsed_ms"));
  CHECK(j["config"]["c"] == "1");
  cfg.timing = false;
  CHECK_FALSE(run_verify(cfg).to_json()["records"][0].contains("elapsed_ms"));
}

TEST_CASE("a corrupted kernel is caught and named") {
  RunConfig cfg;
  cfg.suites = {"izergin-laws"};
  cfg.only = {"K-sumpart"};
  cfg.sizes["izergin-laws"] = SuiteSizes{std::nullopt, 2, 2, 3};
  CHECK(run_verify(cfg).ok());
  cfg.fault = "f-sign";
  const Report rep = run_verify(cfg);
  CHECK_FALSE(rep.ok());
  for (const auto& r : rep.records)
    if (!r.pass) CHECK(r.identity == "K-sumpart");
  cfg.fault = "other";
  CHECK_THROWS_AS(run_verify(cfg), ConfigError);
}
