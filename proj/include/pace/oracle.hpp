#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "pace/types.hpp"

namespace pace {

enum class CostKind { linear, quadratic };

/* The alternating two-expert stream that forces sqrt(T log 2)-scale regret:
 * costs flip between (1,0) and (0,1) until the switch round tau, then stay at
 * (1,0). tau = floor(T - log(T) sqrt(T)), decremented to odd; the log base is
 * configurable (natural by default). */
struct LowerBoundSequence {
  std::int64_t T_total = 0;
  std::int64_t tau = 0;

  explicit LowerBoundSequence(std::int64_t T_total, double log_base = 0.0);
  void cost_at(std::int64_t t, Vec& ghat) const;  // ghat resized to 2
};

/* First-order oracle for one cost stream. cost() must be called with t
 * strictly increasing from 1 (the adaptive kinds depend on the query point, so
 * replay means re-running from a fresh instance with the same parameters). */
class CostOracle {
 public:
  static CostOracle iid_uniform(int n, std::uint64_t seed);
  /* expert jstar (0-based) pays exactly p every round, everyone else U[0,1] */
  static CostOracle best_expert_low(int n, std::uint64_t seed, int jstar, double p);
  static CostOracle alternating_lower_bound(std::int64_t T_total, double log_base = 0.0);
  /* cost 1 on the heaviest coordinate of the query point, ties to lowest index */
  static CostOracle greedy_adaptive(int n);
  /* f_t(x) = 0.5 |x - c_t|^2 with centers c_t ~ U[-1,1]^n */
  static CostOracle quadratic(int n, std::uint64_t seed);

  /* Evaluates round t at query point x: fills ghat, returns f_t(x). */
  double cost(std::int64_t t, const Vec& x, Vec& ghat);

  CostKind cost_kind() const { return cost_kind_; }
  int n() const { return n_; }
  std::int64_t next_round() const { return next_t_; }
  std::int64_t tau() const;  // alternating kind only
  const std::string& name() const { return name_; }

 private:
  enum class Kind { iid_uniform, best_expert_low, alternating, greedy, quadratic };

  CostOracle(Kind k, int n, std::uint64_t seed);

  Kind kind_;
  CostKind cost_kind_ = CostKind::linear;
  std::string name_;
  int n_ = 0;
  std::int64_t next_t_ = 1;
  std::mt19937_64 rng_;
  int jstar_ = 0;
  double p_ = 0.0;
  std::int64_t T_total_ = 0;
  std::int64_t tau_ = 0;
};

}  // namespace pace
