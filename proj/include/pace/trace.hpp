#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pace/geometry.hpp"
#include "pace/oracle.hpp"
#include "pace/schedule.hpp"
#include "pace/types.hpp"

namespace pace {

enum class AlgorithmKind { omd, ds_omd, ps_omd, da, composite_ds_omd };

AlgorithmKind algorithm_kind_from(const std::string& name);
std::string algorithm_kind_name(AlgorithmKind k);

/* Everything one round produced, including the dual-space intermediates the
 * bound and residual checkers need. `what` is the post-gradient, pre-
 * stabilization point in dual coordinates (for da it comes from the lazy
 * state); `yhat_next` is the stabilized pre-projection dual point. `y_next`
 * is only filled by ps_omd (its projected point before the primal mix). */
struct StepRecord {
  std::int64_t t = 0;
  double loss = 0.0;
  double eta = 0.0;
  double eta_next = 0.0;
  double gamma = 0.0;
  Vec x;          // iterate the loss was paid at
  Vec xhat;       // dual coordinates of x
  Vec ghat;
  Vec what;       // dual coordinates of w_{t+1}
  Vec w;          // primal w_{t+1}
  Vec yhat_next;
  Vec y_next;
  Vec x_next;
};

struct RunTrace {
  MirrorGeometry geometry;
  AlgorithmKind kind = AlgorithmKind::ds_omd;
  ScheduleKind schedule_kind = ScheduleKind::constant;
  CostKind cost_kind = CostKind::linear;
  std::optional<CompositeRegularizer> psi;
  Vec x1;
  Vec xhat1;
  std::vector<StepRecord> steps;

  std::int64_t T() const { return std::int64_t(steps.size()); }
};

}  // namespace pace
