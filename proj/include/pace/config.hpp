#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pace/geometry.hpp"
#include "pace/learner.hpp"
#include "pace/oracle.hpp"
#include "pace/schedule.hpp"

namespace pace {

/* One run, described by a flat key=value file plus command-line overrides.
 * Grammar: one `key = value` pair per line; blank lines and lines starting
 * with '#' are skipped; keys are validated before anything runs. */
struct RunConfig {
  std::string algorithm = "ds_omd";
  std::string psi = "none";            // none | l1 | simplex_indicator
  double psi_lambda = 0.0;
  bool assume_second_arg_convex = false;

  std::string geometry = "entropy-simplex";
  std::string schedule = "anytime";
  double eta0 = 1.0;                   // constant schedule
  int schedule_n = 0;                  // 0: use n

  std::string scenario = "iid_uniform";
  std::uint64_t seed = 1;
  int jstar = 1;                       // 1-based expert index
  double p = 0.0;
  std::int64_t scenario_T = 0;         // 0: use T (alternating stream length)
  double tau_log_base = 0.0;           // 0: natural log

  int n = 2;
  std::int64_t T = 100;
  std::string output;                  // base path; empty = no files
  std::vector<std::string> checks;     // theorem_bound | corollary_bounds | prox | minform

  void set(const std::string& key, const std::string& value);
  void validate() const;               // throws ConfigError

  AlgorithmKind algorithm_kind() const;
  MirrorGeometry make_geom() const;
  Schedule make_schedule() const;
  CostOracle make_oracle() const;
  std::optional<CompositeRegularizer> make_psi() const;
};

RunConfig load_config(const std::string& path);
void apply_override(RunConfig& cfg, const std::string& key_equals_value);

}  // namespace pace
