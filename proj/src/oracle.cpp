#include "pace/oracle.hpp"

#include <cmath>

#include "pace/numerics.hpp"

namespace pace {

LowerBoundSequence::LowerBoundSequence(std::int64_t T, double log_base) : T_total(T) {
  if (T < 4) throw ValueError("lower-bound stream needs T >= 4");
  double logT = std::log(double(T));
  if (log_base > 0.0) logT /= std::log(log_base);
  tau = std::int64_t(std::floor(double(T) - logT * std::sqrt(double(T))));
  if (tau % 2 == 0) --tau;
  if (tau <= 1) throw ValueError("lower-bound switch round collapsed to tau <= 1");
}

void LowerBoundSequence::cost_at(std::int64_t t, Vec& ghat) const {
  if (t < 1 || t > T_total) throw ValueError("lower-bound stream round out of range");
  ghat.resize(2);
  const bool expert1 = t >= tau || (t % 2 == 1);
  ghat[0] = expert1 ? 1.0 : 0.0;
  ghat[1] = expert1 ? 0.0 : 1.0;
}

CostOracle::CostOracle(Kind k, int n, std::uint64_t seed)
    : kind_(k), n_(n), rng_(seed) {
  if (n < 1) throw ValueError("oracle dimension must be >= 1");
}

CostOracle CostOracle::iid_uniform(int n, std::uint64_t seed) {
  CostOracle o(Kind::iid_uniform, n, seed);
  o.name_ = "iid_uniform";
  return o;
}

CostOracle CostOracle::best_expert_low(int n, std::uint64_t seed, int jstar, double p) {
  if (jstar < 0 || jstar >= n) throw ValueError("best_expert_low: jstar out of range");
  if (p < 0.0 || p > 1.0) throw ValueError("best_expert_low: p must lie in [0,1]");
  CostOracle o(Kind::best_expert_low, n, seed);
  o.jstar_ = jstar;
  o.p_ = p;
  o.name_ = "best_expert_low";
  return o;
}

CostOracle CostOracle::alternating_lower_bound(std::int64_t T_total, double log_base) {
  LowerBoundSequence seq(T_total, log_base);  // validates and computes tau
  CostOracle o(Kind::alternating, 2, 0);
  o.T_total_ = T_total;
  o.tau_ = seq.tau;
  o.name_ = "alternating_lower_bound";
  return o;
}

CostOracle CostOracle::greedy_adaptive(int n) {
  CostOracle o(Kind::greedy, n, 0);
  o.name_ = "greedy_adaptive";
  return o;
}

CostOracle CostOracle::quadratic(int n, std::uint64_t seed) {
  CostOracle o(Kind::quadratic, n, seed);
  o.cost_kind_ = CostKind::quadratic;
  o.name_ = "quadratic";
  return o;
}

std::int64_t CostOracle::tau() const {
  if (kind_ != Kind::alternating)
    throw StateError("tau only exists for the alternating lower-bound stream");
  return tau_;
}

double CostOracle::cost(std::int64_t t, const Vec& x, Vec& ghat) {
  if (t != next_t_)
    throw OrderError("oracle rounds must be queried in order starting at 1");
  if (x.size() != n_) throw ValueError("oracle query point has wrong dimension");
  ++next_t_;
  switch (kind_) {
    case Kind::iid_uniform: {
      ghat.resize(n_);
      for (int i = 0; i < n_; ++i) ghat[i] = uniform01(rng_);
      return ghat.dot(x);
    }
    case Kind::best_expert_low: {
      ghat.resize(n_);
      for (int i = 0; i < n_; ++i) ghat[i] = uniform01(rng_);
      ghat[jstar_] = p_;
      return ghat.dot(x);
    }
    case Kind::alternating: {
      if (t > T_total_) throw ValueError("lower-bound stream round out of range");
      ghat.resize(2);
      const bool expert1 = t >= tau_ || (t % 2 == 1);
      ghat[0] = expert1 ? 1.0 : 0.0;
      ghat[1] = expert1 ? 0.0 : 1.0;
      return ghat.dot(x);
    }
    case Kind::greedy: {
      Eigen::Index imax = 0;
      x.maxCoeff(&imax);  // Eigen returns the first maximal index on ties
      ghat = Vec::Zero(n_);
      ghat[imax] = 1.0;
      return x[imax];
    }
    case Kind::quadratic: {
      Vec c(n_);
      for (int i = 0; i < n_; ++i) c[i] = 2.0 * uniform01(rng_) - 1.0;
      ghat = x - c;
      return 0.5 * ghat.squaredNorm();
    }
  }
  throw StateError("unreachable oracle kind");
}

}  // namespace pace
