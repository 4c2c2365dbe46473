#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pace/trace.hpp"

namespace pace {

/* Per-prefix bound evaluation for one run. `regret` is measured against the
 * prefix-best comparator (the strongest choice the guarantees must cover);
 * `theorem_rhs` is the trajectory-evaluated guarantee at the same comparator,
 * `slack` their difference. Corollary curves appear under their names when
 * the run satisfies that corollary's preconditions. */
struct BoundReport {
  std::vector<double> regret;
  std::vector<double> theorem_rhs;
  std::vector<double> slack;
  bool theorem_applicable = false;
  std::map<std::string, std::vector<double>> corollaries;
  std::vector<std::string> not_applicable;  // corollaries whose preconditions failed

  double min_slack = 0.0;
  std::int64_t argmin_slack = 0;
};

/* Cost of round `rec` at comparator z (quadratic costs recover the center
 * from x - ghat; composite traces add the regularizer). */
double cost_at(const RunTrace& trace, const StepRecord& rec, const Vec& z);

/* Cumulative regret against a fixed comparator, one entry per prefix. */
std::vector<double> regret_curve(const RunTrace& trace, const Vec& z);

/* Best fixed comparator for the whole trace: the lowest-index minimizing
 * corner for linear costs on the simplex, the closed-form minimizer for
 * quadratic costs on the free set (soft-thresholded mean under an l1 term). */
Vec best_comparator(const RunTrace& trace);

/* Whether the one-step guarantee covers this trace: stabilization weights are
 * the exact learning-rate quotients, and the recorded update kind is one the
 * guarantee speaks about (omd qualifies only when gamma is identically 1). */
bool theorem_applies(const RunTrace& trace);

/* Trajectory-evaluated right-hand side of the one-step regret guarantee at
 * comparator z, per prefix. Throws MissingIntermediate if the trace lacks the
 * dual caches, NotApplicableError if theorem_applies() is false. */
std::vector<double> theorem_bound(const RunTrace& trace, const Vec& z);

BoundReport corollary_bounds(const RunTrace& trace);

/* First-order guarantee constants: the checked form is
 * 2 sqrt(log(n) L*) + 8 log(n); the sharper proof-side additive constant
 * sqrt(log n) + 2 (log n)^{3/4} sqrt(...) route is recorded alongside. */
double first_order_rhs(double log_n, double lstar);
double first_order_rhs_proof_form(double log_n, double lstar);

/* Randomized checks of the scalar facts the guarantees lean on. */
struct ScalarCheckItem {
  std::string name;
  std::int64_t cases = 0;
  bool pass = true;
  std::string counterexample;
};

struct ScalarCheckReport {
  std::vector<ScalarCheckItem> items;
  bool all_pass = true;
};

ScalarCheckReport scalar_checks(std::uint64_t seed, std::int64_t cases_per_item = 1000);

}  // namespace pace
