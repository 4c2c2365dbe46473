#pragma once

#include <functional>
#include <optional>

#include "pace/trace.hpp"

namespace pace {

/* One online learner instance: a mirror-descent template (eager, dual- or
 * primal-stabilized, lazy/averaged, or composite) over a fixed geometry and
 * schedule. Internal state lives in dual coordinates for the entropy map so
 * long horizons never push exp() out of range; ps_omd is the exception and
 * carries primal state, which its uniform mix keeps off the boundary. */
class Learner {
 public:
  Learner(AlgorithmKind kind, const MirrorGeometry& geom, Schedule sched,
          std::optional<Vec> x1 = std::nullopt,
          std::optional<CompositeRegularizer> psi = std::nullopt);

  /* Pays `loss` at the current iterate, applies the update for round t.
   * When rec != nullptr the round's intermediates are copied into it. */
  void step(const Vec& ghat, double loss, StepRecord* rec = nullptr);

  const Vec& iterate() const { return x_; }
  std::int64_t round() const { return t_; }
  const Vec& x1() const { return x1_; }
  const Vec& xhat1() const { return xhat1_; }
  const Vec& cumulative_grad() const;  // da only
  const MirrorGeometry& geometry() const { return geom_; }
  const Schedule& schedule() const { return sched_; }
  AlgorithmKind kind() const { return kind_; }
  const std::optional<CompositeRegularizer>& psi() const { return psi_; }

 private:
  AlgorithmKind kind_;
  MirrorGeometry geom_;
  Schedule sched_;
  std::optional<CompositeRegularizer> psi_;
  std::int64_t t_ = 1;
  Vec x1_, xhat1_;
  Vec x_, xhat_;
  Vec yhat_;      // da lazy state
  Vec cumgrad_;   // da
  Vec what_, yhat_next_, buf_;  // step workspaces
};

using StepSink = std::function<void(const StepRecord&)>;

/* Runs T rounds against the oracle. The sink form keeps one reused record. */
RunTrace run(AlgorithmKind kind, const MirrorGeometry& geom, Schedule sched,
             CostOracle oracle, std::int64_t T,
             std::optional<Vec> x1 = std::nullopt,
             std::optional<CompositeRegularizer> psi = std::nullopt);
void run_stream(Learner& learner, CostOracle& oracle, std::int64_t T,
                const StepSink& sink);

}  // namespace pace
