#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "pace/bounds.hpp"
#include "pace/config.hpp"
#include "pace/equivalence.hpp"

namespace pace {

/* Worker count for fan-out: PACE_THREADS when set (must parse as a positive
 * integer), hardware concurrency otherwise. */
int worker_count();

/* Runs fn(0..count-1) across the worker pool; rethrows the first exception. */
void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& fn);

/* One row of the alternating-stream study: the averaged learner on the
 * two-expert flip sequence at horizon T, with regret measured against the
 * best fixed expert and normalized by sqrt(T log 2). Computed streaming, so
 * T = 10^6 costs memory O(1). */
struct LowerBoundRow {
  std::int64_t T = 0;
  std::int64_t tau = 0;
  double regret = 0.0;
  double ratio = 0.0;
  double expert2_cost_at_tau = 0.0;  // must equal (tau-1)/2
};

LowerBoundRow da_lower_bound_row(std::int64_t T, double log_base = 0.0);

/* Same run with the full trace kept; meant for short horizons. */
RunTrace da_lower_bound_trace(std::int64_t T, double log_base = 0.0);

/* Subcommand bodies. Each returns the process exit code: 0 success,
 * 1 check failure, 2 config error (the CLI maps thrown ConfigError to 2). */
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int compare_command(const std::vector<RunConfig>& cfgs, std::ostream& out,
                    std::ostream& err);
int equivalence_command(const RunConfig& cfg, const std::string& kind_a,
                        const std::string& kind_b, double abort_tol,
                        std::ostream& out, std::ostream& err);
int lowerbound_command(std::int64_t T_max, const std::string& output,
                       double log_base, std::ostream& out, std::ostream& err);
int selfcheck_command(std::uint64_t seed, std::int64_t cases, std::ostream& out,
                      std::ostream& err);

}  // namespace pace
