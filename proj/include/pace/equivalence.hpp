#pragma once

#include <cstdint>
#include <vector>

#include "pace/learner.hpp"

namespace pace {

/* Result of driving two learners in lockstep on one stream. The oracle is
 * queried at learner A's iterate and the same (loss, ghat) pair is fed to
 * both, which is exactly the regime in which the equivalences are claimed;
 * if the iterates drift past abort_tol the lockstep contract is void, so the
 * drive stops and reports where. */
struct EquivalenceReport {
  double max_gap = 0.0;           // max over rounds of |x_A - x_B|_inf
  std::int64_t argmax_round = 0;
  bool aborted = false;
  std::int64_t abort_round = 0;
  std::int64_t rounds = 0;
  std::vector<double> gaps;       // per-round iterate gaps (after the update)
};

EquivalenceReport iterate_equivalence(Learner& a, Learner& b, CostOracle& oracle,
                                      std::int64_t T, double abort_tol);

/* l2 norm of the stationarity residual of round t's stabilized proximal
 * objective at x_{t+1}, with the gradient projected onto the simplex tangent
 * space. Entropy/simplex traces only; rounds are 1-based. */
double prox_residual(const RunTrace& trace, std::int64_t t);

/* l-inf distance between x_{t+1} and the closed-form minimizer of the
 * averaged objective (softmax of xhat1 - eta_{t+1} * cumulative gradient on
 * the simplex; the dual point itself on the free Euclidean set). */
double minform_residual(const RunTrace& trace, std::int64_t t);

/* All rounds at once (index i holds round i+1). */
std::vector<double> prox_residuals(const RunTrace& trace);
std::vector<double> minform_residuals(const RunTrace& trace);

}  // namespace pace
