#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pace/types.hpp"

namespace pace {

enum class ScheduleKind { constant, anytime, self_confident, doubling, da_lower_bound };

ScheduleKind schedule_kind_from(const std::string& name);
std::string schedule_kind_name(ScheduleKind k);

/* Learning-rate schedule eta_t with its paired stabilization weight gamma_t.
 * For every kind except doubling, gamma_t is the exact floating-point quotient
 * eta(t+1)/eta(t); doubling restarts instead: gamma_t = 0 iff t+1 is a power
 * of two. The self-confident kind adapts to observed losses, so eta(t) is only
 * defined once losses 1..t-1 have been fed to observe(). */
class Schedule {
 public:
  static Schedule constant(double eta0);
  static Schedule anytime(int n);
  static Schedule self_confident(int n);
  static Schedule doubling();
  static Schedule da_lower_bound(int n);

  double eta(std::int64_t t) const;
  double gamma(std::int64_t t) const;
  void observe(double loss);

  ScheduleKind kind() const { return kind_; }
  std::int64_t rounds_observed() const { return observed_; }
  double cumulative_loss() const { return cum_.back(); }

 private:
  Schedule(ScheduleKind k, double eta0, int n);

  ScheduleKind kind_;
  double eta0_ = 0.0;
  double log_n_ = 0.0;
  std::int64_t observed_ = 0;
  std::vector<double> cum_;  // cum_[k] = A_k; only grown for self_confident
};

}  // namespace pace
