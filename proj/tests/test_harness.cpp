#include <doctest.h>

#include <pace/bounds.hpp>
#include <pace/config.hpp>
#include <pace/harness.hpp>

#include <json.hpp>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

using namespace pace;
using nlohmann::json;

namespace {

std::string tmp_path(const std::string& stem) {
  return std::string("/tmp/pace_test_") + stem;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::trunc);
  f << text;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config files: comments, blank lines, and bad keys") {
  const std::string path = tmp_path("good.cfg");
  write_file(path,
             "# experiment setup\n"
             "\n"
             "algorithm.kind = da\n"
             "geometry = entropy-simplex\n"
             "schedule.kind = self_confident\n"
             "scenario.kind = best_expert_low\n"
             "scenario.jstar = 2\n"
             "scenario.p = 0.25\n"
             "n = 4\n"
             "T = 64\n"
             "seed = 99\n"
             "checks = theorem_bound, corollary_bounds\n");
  RunConfig cfg = load_config(path);
  CHECK(cfg.algorithm == "da");
  CHECK(cfg.schedule == "self_confident");
  CHECK(cfg.scenario == "best_expert_low");
  CHECK(cfg.jstar == 2);
  CHECK(cfg.p == 0.25);
  CHECK(cfg.n == 4);
  CHECK(cfg.T == 64);
  CHECK(cfg.seed == 99);
  REQUIRE(cfg.checks.size() == 2);
  CHECK(cfg.checks[0] == "theorem_bound");
  CHECK(cfg.checks[1] == "corollary_bounds");
  CHECK_NOTHROW(cfg.validate());

  const std::string bad = tmp_path("bad.cfg");
  write_file(bad, "n = 2\nwhatever = 3\n");
  try {
    (void)load_config(bad);
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    // the message pins the offending line
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }

  write_file(bad, "n = 2\njust words\n");
  CHECK_THROWS_AS((void)load_config(bad), ConfigError);
  CHECK_THROWS_AS((void)load_config(tmp_path("missing.cfg")), ConfigError);
}

TEST_CASE("overrides parse key=value and reject anything else") {
  RunConfig cfg;
  apply_override(cfg, "T=500");
  CHECK(cfg.T == 500);
  apply_override(cfg, "schedule.kind=doubling");
  CHECK(cfg.schedule == "doubling");
  apply_override(cfg, "scenario.p = 0.5");
  CHECK(cfg.p == 0.5);
  CHECK_THROWS_AS(apply_override(cfg, "no_equals_sign"), ConfigError);
  CHECK_THROWS_AS(apply_override(cfg, "unknown.key=1"), ConfigError);
  CHECK_THROWS_AS(apply_override(cfg, "T=abc"), ConfigError);
}

TEST_CASE("validation: combinations that make no sense are refused") {
  auto reject = [](const char* msg_part,
                   const std::vector<std::string>& overrides) {
    RunConfig cfg;
    for (const auto& kv : overrides) apply_override(cfg, kv);
    try {
      cfg.validate();
      FAIL("expected rejection for: " << msg_part);
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find(msg_part) != std::string::npos);
    }
  };

  reject("needs algorithm.psi", {"algorithm.kind=composite_ds_omd"});
  reject("only wired for euclidean-free",
         {"algorithm.kind=composite_ds_omd", "algorithm.psi=l1"});
  reject("only meaningful for composite", {"algorithm.psi=l1",
                                           "geometry=euclidean-free",
                                           "scenario.kind=quadratic"});
  reject("two-expert stream", {"scenario.kind=alternating_lower_bound", "n=3"});
  reject("exceeds the alternating stream",
         {"scenario.kind=alternating_lower_bound", "T=2000", "scenario.T=1000"});
  reject("convex in its second argument",
         {"algorithm.kind=ps_omd", "geometry=euclidean-simplex"});
  reject("doubling schedule restarts",
         {"schedule.kind=doubling", "checks=theorem_bound"});
  reject("only at a constant rate", {"algorithm.kind=omd", "checks=theorem_bound"});
  reject("prox check applies", {"geometry=euclidean-free",
                                "scenario.kind=quadratic", "checks=prox"});
  reject("prox check applies", {"algorithm.kind=ps_omd", "checks=prox"});
  reject("minform check needs", {"geometry=euclidean-free",
                                 "scenario.kind=quadratic", "checks=minform"});
  reject("simplex geometry", {"geometry=euclidean-free"});  // linear stream
  reject("wired for euclidean", {"scenario.kind=quadratic"});
  reject("unknown check", {"checks=magic"});

  // the explicit flag lifts the primal-stabilized restriction
  RunConfig ps;
  apply_override(ps, "algorithm.kind=ps_omd");
  apply_override(ps, "geometry=euclidean-simplex");
  apply_override(ps, "algorithm.assume_second_arg_convex=true");
  CHECK_NOTHROW(ps.validate());

  // vanilla update at a flat rate is inside the guarantee
  RunConfig omd;
  apply_override(omd, "algorithm.kind=omd");
  apply_override(omd, "schedule.kind=constant");
  apply_override(omd, "schedule.eta0=0.5");
  apply_override(omd, "checks=theorem_bound");
  CHECK_NOTHROW(omd.validate());

  // averaged runs on the free set do satisfy the closed form
  RunConfig da;
  apply_override(da, "algorithm.kind=da");
  apply_override(da, "geometry=euclidean-free");
  apply_override(da, "scenario.kind=quadratic");
  apply_override(da, "checks=minform");
  CHECK_NOTHROW(da.validate());
}

TEST_CASE("worker pool size comes from the environment") {
  setenv("PACE_THREADS", "3", 1);
  CHECK(worker_count() == 3);
  setenv("PACE_THREADS", "abc", 1);
  CHECK_THROWS_AS((void)worker_count(), ConfigError);
  setenv("PACE_THREADS", "0", 1);
  CHECK_THROWS_AS((void)worker_count(), ConfigError);
  unsetenv("PACE_THREADS");
  CHECK(worker_count() >= 1);
}

TEST_CASE("parallel map covers every index once and surfaces exceptions") {
  setenv("PACE_THREADS", "4", 1);
  std::atomic<std::int64_t> sum{0};
  std::atomic<std::int64_t> calls{0};
  parallel_for(1000, [&](std::int64_t i) {
    sum += i;
    ++calls;
  });
  CHECK(sum.load() == 499500);
  CHECK(calls.load() == 1000);

  CHECK_THROWS_AS(parallel_for(100,
                               [&](std::int64_t i) {
                                 if (i == 37) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
  unsetenv("PACE_THREADS");
}

TEST_CASE("run command: summary, files, and reruns that match byte for byte") {
  RunConfig cfg;
  apply_override(cfg, "seed=7");
  apply_override(cfg, "T=100");
  apply_override(cfg, "checks=theorem_bound,corollary_bounds");
  cfg.output = tmp_path("run_a.csv");

  std::ostringstream out, err;
  CHECK(run_command(cfg, out, err) == 0);
  CHECK(err.str().empty());

  json summary = json::parse(out.str());
  CHECK(summary["algorithm"] == "ds_omd");
  CHECK(summary["schedule"] == "anytime");
  CHECK(summary["theorem_applicable"] == true);
  CHECK(summary["checks"]["theorem_bound"]["status"] == "PASS");
  CHECK(summary["checks"]["corollary_bounds"]["status"] == "PASS");
  CHECK(summary["csv"] == cfg.output);
  CHECK(summary["regret"].get<double>() <= summary["theorem_rhs"].get<double>());

  const std::string first = read_file(cfg.output);
  REQUIRE(!first.empty());
  CHECK(first.rfind("t,loss,cum_loss,best_cum_loss,regret,eta,gamma,"
                    "bound_theorem,bound_corollary,slack\n", 0) == 0);

  // identical run, second file: identical bytes
  cfg.output = tmp_path("run_b.csv");
  std::ostringstream out2, err2;
  CHECK(run_command(cfg, out2, err2) == 0);
  CHECK(read_file(cfg.output) == first);
}

TEST_CASE("run command csv: parsed fields reproduce the in-memory doubles") {
  RunConfig cfg;
  apply_override(cfg, "seed=11");
  apply_override(cfg, "n=3");
  apply_override(cfg, "T=40");
  cfg.output = tmp_path("roundtrip.csv");
  std::ostringstream out, err;
  REQUIRE(run_command(cfg, out, err) == 0);

  RunTrace trace = run(cfg.algorithm_kind(), cfg.make_geom(), cfg.make_schedule(),
                       cfg.make_oracle(), cfg.T);
  BoundReport rep = corollary_bounds(trace);

  std::ifstream f(cfg.output);
  std::string line;
  std::getline(f, line);  // header
  double cum = 0.0;
  for (std::int64_t t = 1; t <= cfg.T; ++t) {
    REQUIRE(std::getline(f, line));
    std::stringstream row(line);
    std::string cell;
    std::vector<double> v;
    while (std::getline(row, cell, ',')) v.push_back(std::strtod(cell.c_str(), nullptr));
    REQUIRE(v.size() == 10);
    const StepRecord& rec = trace.steps[std::size_t(t - 1)];
    cum += rec.loss;
    CHECK(v[0] == double(t));
    CHECK(v[1] == rec.loss);          // 17 digits round-trip bitwise
    CHECK(v[2] == cum);
    CHECK(v[4] == rep.regret[std::size_t(t - 1)]);
    CHECK(v[3] == cum - rep.regret[std::size_t(t - 1)]);
    CHECK(v[5] == rec.eta);
    CHECK(v[6] == rec.gamma);
    CHECK(v[7] == rep.theorem_rhs[std::size_t(t - 1)]);
    CHECK(v[9] == rep.slack[std::size_t(t - 1)]);
  }
  CHECK_FALSE(std::getline(f, line));
}

TEST_CASE("run command: a failing residual check reports round and exits 1") {
  RunConfig cfg;
  apply_override(cfg, "algorithm.kind=omd");
  apply_override(cfg, "scenario.kind=alternating_lower_bound");
  apply_override(cfg, "T=1000");
  apply_override(cfg, "checks=minform");
  std::ostringstream out, err;
  CHECK(run_command(cfg, out, err) == 1);
  CHECK(err.str().find("minform check failed at round") != std::string::npos);
  json summary = json::parse(out.str());
  CHECK(summary["checks"]["minform"]["status"] == "FAIL");
  CHECK(summary["checks"]["minform"]["max_residual"].get<double>() > 1e-3);
}

TEST_CASE("compare command: shared stream required, one column per learner") {
  RunConfig a;
  apply_override(a, "seed=3");
  apply_override(a, "T=50");
  // a check list that the omd clone could never run is irrelevant here:
  // compare only produces regret columns
  apply_override(a, "checks=theorem_bound,prox");
  RunConfig b = a;
  apply_override(b, "algorithm.kind=da");
  RunConfig c = a;
  apply_override(c, "algorithm.kind=omd");
  a.output = tmp_path("compare.csv");

  std::ostringstream out, err;
  CHECK(compare_command({a, b, c}, out, err) == 0);
  json summary = json::parse(out.str());
  REQUIRE(summary["final_regret"].size() == 3);
  CHECK(summary["per_learner_streams"] == false);

  std::ifstream f(a.output);
  std::string header;
  std::getline(f, header);
  CHECK(header == "t,regret_ds_omd,regret_da,regret_omd");

  RunConfig drift = b;
  apply_override(drift, "seed=4");
  std::ostringstream out2, err2;
  CHECK(compare_command({a, drift}, out2, err2) == 2);
  CHECK(err2.str().find("identical scenario") != std::string::npos);
}

TEST_CASE("equivalence command: agreement exits 0, an abort exits 1") {
  RunConfig cfg;
  apply_override(cfg, "T=200");
  std::ostringstream out, err;
  CHECK(equivalence_command(cfg, "ds_omd", "da", 1e-8, out, err) == 0);
  json summary = json::parse(out.str());
  CHECK(summary["aborted"] == false);
  CHECK(summary["max_gap"].get<double>() <= 1e-10);

  RunConfig sw;
  apply_override(sw, "scenario.kind=alternating_lower_bound");
  apply_override(sw, "T=1000");
  std::ostringstream out2, err2;
  CHECK(equivalence_command(sw, "omd", "da", 1e-6, out2, err2) == 1);
  json s2 = json::parse(out2.str());
  CHECK(s2["aborted"] == true);
}

TEST_CASE("lower-bound table: frozen values and the exit contract") {
  LowerBoundRow row = da_lower_bound_row(1000);
  CHECK(row.T == 1000);
  CHECK(row.tau == 781);
  CHECK(row.expert2_cost_at_tau == 390.0);
  CHECK(row.regret == doctest::Approx(23.310211952258214).epsilon(1e-12));
  CHECK(row.ratio == doctest::Approx(0.8853877153825976).epsilon(1e-12));

  const std::string csv = tmp_path("lb.csv");
  std::ostringstream out, err;
  CHECK(lowerbound_command(1000, csv, 0.0, out, err) == 0);
  CHECK(read_file(csv).rfind("T,tau,regret,ratio\n", 0) == 0);
  CHECK_THROWS_AS((void)lowerbound_command(999, "", 0.0, out, err), ConfigError);
}
