// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "maba/formulas.hpp"
#include "maba/verify.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <thread>

using namespace maba;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;
};

using Clock = std::chrono::steady_clock;

RunConfig base_config() {
  RunConfig cfg;
  cfg.seed = 20240601;
  cfg.jobs = std::max(1u, std::thread::hardware_concurrency());
  cfg.timing = false;
  return cfg;
}

/// Runs one suite (optionally filtered) and checks every required identity
/// appears with at least `min_samples` samples per record and passes.
Outcome suite_outcome(const std::string& suite, std::vector<std::string> only,
                      const std::vector<std::string>& required, int min_samples) {
  RunConfig cfg = base_config();
  cfg.suites = {suite};
  cfg.only = std::move(only);
  const auto recs = run_suite(suite, cfg);
  Outcome out;
  std::set<std::string> seen;
  std::size_t passed = 0;
  for (const auto& r : recs) {
    seen.insert(r.identity);
    if (r.pass) ++passed;
    else if (out.ok) {
      out.ok = false;
      out.note = r.identity + " " + r.sizes.dump() + ": " + r.detail;
    }
    if (r.samples < min_samples && out.ok) {
      out.ok = false;
      out.note = r.identity + " ran only " + std::to_string(r.samples) + " samples";
    }
  }
  for (const auto& id : required)
    if (!seen.count(id) && out.ok) {
      out.ok = false;
      out.note = "missing identity " + id;
    }
  if (out.ok)
    out.note = std::to_string(passed) + "/" + std::to_string(recs.size()) + " records";
  return out;
}

Outcome bench_outcome(double limit_s) {
  const Rational c(1);
  const auto all = sample_generic(16, {}, c, std::uint64_t{16}, 60);
  ScalarRequest r{ScalarForm::SPfin,
                  SpectralSet(std::vector<Rational>(all.begin(), all.begin() + 8), "u"),
                  SpectralSet(std::vector<Rational>(all.begin() + 8, all.end()), "v"),
                  WeightOracle::random(7), {Rational(3, 2), Rational(-2), Rational(5, 7)}, c};
  Outcome out;
  std::optional<Rational> ref;
  std::string times;
  for (unsigned jobs : {1u, 2u, 4u, 8u}) {
    const auto t0 = Clock::now();
    const SplitSum s = eval_scalar(r, jobs);
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    char buf[48];
    std::snprintf(buf, sizeof buf, "%sj%u %.1fs", times.empty() ? "" : ", ", jobs, secs);
    times += buf;
    if (s.splits != 65536) {
      out.ok = false;
      out.note = "enumerated " + std::to_string(s.splits) + " splits";
      return out;
    }
    if (ref && *ref != s.value) {
      out.ok = false;
      out.note = "value differs at " + std::to_string(jobs) + " workers";
      return out;
    }
    ref = s.value;
    if (secs >= limit_s) {
      out.ok = false;
      out.note = "evaluation took " + std::to_string(secs) + " s";
      return out;
    }
  }
  out.note = "65536 splits, identical values; " + times;
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "Izergin representation equivalence", 30,
       [] {
         return suite_outcome("izergin-laws", {"defKdef1=defKdef2", "CdefKdef1=CdefKdef2"},
                              {"defKdef1=defKdef2", "CdefKdef1=CdefKdef2"}, 50);
       }},
      {2, "Izergin law suite and residues", 120,
       [] {
         return suite_outcome(
             "izergin-laws",
             {"shiftc", "u-uv-v", "K0", "K1", "Kz", "oKz", "K10", "ModI-OrdI", "K-sumpart",
              "oK-sumpart", "c-c", "Kinv1", "cKinv1", "ML-1", "CML-2", "sun-Kf", "sum-binom",
              "resK", "CdefKdef1:"},
             {"shiftc", "shiftc-conj", "u-uv-v", "K0", "K1", "Kz", "oKz", "K10", "ModI-OrdI",
              "K-sumpart", "oK-sumpart", "c-c", "Kinv1", "cKinv1", "ML-1", "ML-1-conj", "CML-2",
              "CML-2-conj", "sun-Kf", "sun-Kf-conj", "sum-binom", "resK", "resK-conj"},
             20);
       }},
      {3, "Yangian structure", 120,
       [] {
         return suite_outcome("yangian-structure", {},
                              {"YB", "twist-inv-product", "twist-inv-sum", "RTT", "genCR", "com1",
                               "coms11/comsl22/comsl2112", "MCR1122-11", "MCR1122-22",
                               "HWRG/dHWRG"},
                              10);
       }},
      {4, "Multiple actions and scalar products of Bethe vectors", 180,
       [] {
         return suite_outcome("aba-actions", {},
                              {"MA1122-11", "MA1122-22", "MAt21", "SCe", "SCbe", "SCe=SCbe"}, 10);
       }},
      {5, "Modified operators on modified Bethe vectors", 300,
       [] {
         return suite_outcome("maba-actions", {},
                              {"act-sing", "nvac1112", "nvac2212", "nvac2112",
                               "mulii-restriction-11", "mulii-restriction-22", "mul21-restriction",
                               "mact1212e"},
                              10);
       }},
      {6, "Modified scalar products", 300,
       [] {
         return suite_outcome("scalar-products", {}, {"SP-fin", "SP-fin-IK", "Aver12-0", "SP-fin00"},
                              10);
       }},
      {7, "Automorphism symmetry", 30,
       [] {
         return suite_outcome("phi-symmetry", {},
                              {"nvac2212<-nvac1112", "MA1122-22<-MA1122-11", "nvac2112<-nvac2112",
                               "auto-mor-involution"},
                              10);
       }},
      {8, "Proof-step sums", 0,
       [] { return suite_outcome("proof-steps", {}, {"G1/CI-01", "PR-2", "sum-binom", "sum-nul"}, 20); }},
      {9, "Parallel determinism at n+m = 16", 0, [] { return bench_outcome(60); }},
  };

  bool all_ok = true;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (c.limit_s > 0 && secs >= c.limit_s) {
      o.ok = false;
      o.note += " (over the " + std::to_string(int(c.limit_s)) + " s limit)";
    }
    all_ok = all_ok && o.ok;
    std::printf("criterion %d %-55s %s  %.1f s  %s\n", c.id, c.title, o.ok ? "PASS" : "FAIL", secs,
                o.note.c_str());
    std::fflush(stdout);
  }
  return all_ok ? 0 : 1;
}
