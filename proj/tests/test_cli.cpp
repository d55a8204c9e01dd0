#include "doctest.h"

#include "json.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(MABA_CLI) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, p)) out += buf;
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch() {
  const fs::path d = fs::temp_directory_path() / ("maba-cli-" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("verify: exit codes and reproducible reports") {
  const fs::path dir = scratch();
  const std::string a = (dir / "a.json").string(), b = (dir / "b.json").string();
  CHECK(run("verify --suite izergin-laws --seed 1 --no-timing --quiet --report " + a).code == 0);
  CHECK(run("verify --suite izergin-laws --seed 1 --no-timing --quiet --report " + b).code == 0);
  CHECK(slurp(a) == slurp(b));
  const auto report = nlohmann::json::parse(slurp(a));
  CHECK(report["summary"]["status"] == "pass");
  CHECK(report["records"].size() > 100);

  CHECK(run("verify --suite nonsense").code == 2);
  CHECK(run("verify --c 0").code == 2);
  CHECK(run("verify --jobs 0").code == 2);
  CHECK(run("verify --config " + (dir / "missing.json").string()).code == 2);
  std::ofstream(dir / "bad.json") << "{\"sizes\": {\"proof-steps\": {\"trials\": 0}}}";
  CHECK(run("verify --config " + (dir / "bad.json").string()).code == 2);
  std::ofstream(dir / "junk.json") << "{not json";
  CHECK(run("verify --config " + (dir / "junk.json").string()).code == 2);
  fs::remove_all(dir);
}

TEST_CASE("verify: config file with flag overrides") {
  const fs::path dir = scratch();
  std::ofstream(dir / "cfg.json") << R"({"suites": ["proof-steps"], "seed": 5,
      "sizes": {"proof-steps": {"n": 3, "trials": 2}}})";
  const std::string out = (dir / "r.json").string();
  CHECK(run("verify --config " + (dir / "cfg.json").string() + " --seed 9 --quiet --report " + out)
            .code == 0);
  const auto report = nlohmann::json::parse(slurp(out));
  CHECK(report["config"]["seed"] == 9);
  CHECK(report["config"]["suites"] == nlohmann::json::array({"proof-steps"}));
  for (const auto& r : report["records"]) CHECK(r["samples"] == 2);
  fs::remove_all(dir);
}

TEST_CASE("verify: injected kernel fault fails the named identity") {
  const fs::path dir = scratch();
  const std::string out = (dir / "f.json").string();
  const Run r = run("verify --suite izergin-laws --only K-sumpart --inject-fault f-sign --report " + out);
  CHECK(r.code == 1);
  CHECK(r.out.find("K-sumpart") != std::string::npos);
  const auto report = nlohmann::json::parse(slurp(out));
  CHECK(report["summary"]["failed"].get<int>() > 0);
  fs::remove_all(dir);
}

TEST_CASE("scalar subcommand") {
  Run r = run("scalar --n 0 --m 0");
  CHECK(r.code == 0);
  CHECK(r.out == "1 = 1, PASS\n");
  r = run("scalar --n 1 --m 1 --sites 2 --seed 3");
  CHECK(r.code == 0);
  CHECK(r.out.find(", PASS") != std::string::npos);
  for (const char* form : {"SCe", "SCbe", "SPfin", "SPfinIK"})
    CHECK(run(std::string("scalar --n 2 --m 2 --sites 3 --form ") + form).code == 0);
  r = run("scalar --n 1 --m 2 --sites 2 --form SPfinIK --rho1 0");
  CHECK(r.code == 2);
  CHECK(r.out.find("mu") != std::string::npos);
  CHECK(run("scalar --form nope").code == 2);
  CHECK(run("scalar --n 1 --m 2 --form SCe").code == 2);
}

TEST_CASE("bench subcommand") {
  const Run r = run("bench --min-size 6 --max-size 7 --jobs 1,3");
  CHECK(r.code == 0);
  const auto pos = r.out.find('{');
  REQUIRE(pos != std::string::npos);
  const auto j = nlohmann::json::parse(r.out.substr(pos));
  CHECK(j["status"] == "pass");
  REQUIRE(j["results"].size() == 4);
  CHECK(j["results"][0]["splits"] == 64);
  CHECK(j["results"][0]["value_digest"] == j["results"][1]["value_digest"]);
  CHECK(j["results"][2]["splits"] == 128);
}
