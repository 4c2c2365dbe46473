#include <CLI11.hpp>
#include <iostream>
#include <limits>

#include "pace/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"pace: online mirror-descent experiment harness"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "one learner on one stream, with bound checks");
  std::string run_config;
  std::vector<std::string> run_sets;
  run_cmd->add_option("--config", run_config, "key = value config file");
  run_cmd->add_option("--set", run_sets, "override one key, key=value (repeatable)");

  auto* cmp_cmd = app.add_subcommand("compare", "several learners on one shared stream");
  std::vector<std::string> cmp_configs;
  std::vector<std::string> cmp_algorithms;
  std::vector<std::string> cmp_sets;
  cmp_cmd->add_option("--config", cmp_configs, "config file (repeatable)");
  cmp_cmd->add_option("--algorithm", cmp_algorithms,
                      "clone the single config per algorithm kind (repeatable)");
  cmp_cmd->add_option("--set", cmp_sets, "override applied to every config (repeatable)");

  auto* eq_cmd = app.add_subcommand("equivalence", "drive two learners in lockstep");
  std::string eq_config, eq_a = "ds_omd", eq_b = "da";
  std::vector<std::string> eq_sets;
  double abort_tol = std::numeric_limits<double>::infinity();
  eq_cmd->add_option("--config", eq_config, "key = value config file");
  eq_cmd->add_option("--a", eq_a, "first algorithm kind");
  eq_cmd->add_option("--b", eq_b, "second algorithm kind");
  eq_cmd->add_option("--abort-tol", abort_tol, "stop once the iterate gap exceeds this");
  eq_cmd->add_option("--set", eq_sets, "override one key, key=value (repeatable)");

  auto* lb_cmd = app.add_subcommand("lowerbound", "alternating-stream regret study");
  std::int64_t lb_T = 1000000;
  std::string lb_output;
  double lb_log_base = 0.0;
  lb_cmd->add_option("--T", lb_T, "largest horizon (>= 1000)");
  lb_cmd->add_option("--output", lb_output, "CSV path for the T,tau,regret,ratio table");
  lb_cmd->add_option("--log-base", lb_log_base,
                     "log base in the switch-round formula (default: natural)");

  auto* sc_cmd = app.add_subcommand("selfcheck", "randomized property suites");
  std::uint64_t sc_seed = 1;
  std::int64_t sc_cases = 1000;
  sc_cmd->add_option("--seed", sc_seed, "master seed");
  sc_cmd->add_option("--cases", sc_cases, "cases per property");

  try {
    app.parse(argc, argv);

    if (*run_cmd) {
      pace::RunConfig cfg =
          run_config.empty() ? pace::RunConfig{} : pace::load_config(run_config);
      for (const std::string& s : run_sets) pace::apply_override(cfg, s);
      return pace::run_command(cfg, std::cout, std::cerr);
    }
    if (*cmp_cmd) {
      std::vector<pace::RunConfig> cfgs;
      if (!cmp_algorithms.empty()) {
        if (cmp_configs.size() > 1)
          throw pace::ConfigError("--algorithm expansion needs at most one --config");
        pace::RunConfig base = cmp_configs.empty() ? pace::RunConfig{}
                                                   : pace::load_config(cmp_configs[0]);
        for (const std::string& a : cmp_algorithms) {
          pace::RunConfig cfg = base;
          cfg.algorithm = a;
          cfgs.push_back(std::move(cfg));
        }
      } else {
        for (const std::string& path : cmp_configs)
          cfgs.push_back(pace::load_config(path));
      }
      for (pace::RunConfig& cfg : cfgs)
        for (const std::string& s : cmp_sets) pace::apply_override(cfg, s);
      return pace::compare_command(cfgs, std::cout, std::cerr);
    }
    if (*eq_cmd) {
      pace::RunConfig cfg =
          eq_config.empty() ? pace::RunConfig{} : pace::load_config(eq_config);
      for (const std::string& s : eq_sets) pace::apply_override(cfg, s);
      return pace::equivalence_command(cfg, eq_a, eq_b, abort_tol, std::cout, std::cerr);
    }
    if (*lb_cmd)
      return pace::lowerbound_command(lb_T, lb_output, lb_log_base, std::cout, std::cerr);
    if (*sc_cmd)
      return pace::selfcheck_command(sc_seed, sc_cases, std::cout, std::cerr);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const pace::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const pace::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
