#include "pace/equivalence.hpp"

#include <cmath>

#include "pace/numerics.hpp"

namespace pace {

EquivalenceReport iterate_equivalence(Learner& a, Learner& b, CostOracle& oracle,
                                      std::int64_t T, double abort_tol) {
  if (T < 1) throw ValueError("lockstep drive needs T >= 1");
  if (a.geometry().n != b.geometry().n)
    throw ValueError("learners must share a dimension");
  EquivalenceReport report;
  report.gaps.reserve(std::size_t(T));
  Vec ghat;
  for (std::int64_t t = 1; t <= T; ++t) {
    const double loss = oracle.cost(t, a.iterate(), ghat);
    a.step(ghat, loss);
    b.step(ghat, loss);
    const double gap = (a.iterate() - b.iterate()).lpNorm<Eigen::Infinity>();
    report.gaps.push_back(gap);
    report.rounds = t;
    if (gap > report.max_gap) {
      report.max_gap = gap;
      report.argmax_round = t;
    }
    if (gap > abort_tol) {
      report.aborted = true;
      report.abort_round = t;
      break;
    }
  }
  return report;
}

namespace {

const StepRecord& residual_rec(const RunTrace& trace, std::int64_t t) {
  if (t < 1 || t > trace.T()) throw ValueError("round out of range");
  const StepRecord& rec = trace.steps[std::size_t(t) - 1];
  if (rec.xhat.size() == 0 || rec.yhat_next.size() == 0 || rec.x_next.size() == 0)
    throw MissingIntermediate("trace lacks the dual intermediates for round " +
                              std::to_string(t));
  return rec;
}

void require_entropy_simplex(const RunTrace& trace, const char* what) {
  const MirrorGeometry& g = trace.geometry;
  if (g.map != MirrorMap::entropy || g.feasible != FeasibleSet::simplex)
    throw UnsupportedCombination(std::string(what) +
                                 " is defined on the entropy/simplex pairing");
}

}  // namespace

double prox_residual(const RunTrace& trace, std::int64_t t) {
  require_entropy_simplex(trace, "prox residual");
  const StepRecord& rec = residual_rec(trace, t);
  for (Eigen::Index i = 0; i < rec.x_next.size(); ++i)
    if (!(rec.x_next[i] >= kZeroClamp))
      throw DomainError("iterate touches the simplex boundary; gradient undefined");

  /* gradient of gamma*(eta <ghat, .> + D(., x_t)) + (1-gamma) D(., x1) at
   * x_{t+1}; equals xhat_{t+1} - yhat_{t+1}, but evaluate it from the parts */
  const Vec xhat_next = (rec.x_next.array().log() + 1.0).matrix();
  Vec grad_obj = rec.gamma * (rec.eta * rec.ghat + xhat_next - rec.xhat) +
                 (1.0 - rec.gamma) * (xhat_next - trace.xhat1);
  /* stationarity on the simplex ignores the all-ones direction */
  grad_obj.array() -= grad_obj.mean();
  return grad_obj.norm();
}

double minform_residual(const RunTrace& trace, std::int64_t t) {
  const MirrorGeometry& g = trace.geometry;
  const StepRecord& rec = residual_rec(trace, t);
  Vec cum = Vec::Zero(g.n);
  for (std::int64_t i = 0; i < t; ++i) cum += trace.steps[std::size_t(i)].ghat;
  const Vec target_hat = trace.xhat1 - rec.eta_next * cum;

  if (g.map == MirrorMap::euclidean && g.feasible == FeasibleSet::all_space)
    return (rec.x_next - target_hat).lpNorm<Eigen::Infinity>();

  require_entropy_simplex(trace, "min-form residual");
  const Vec minimizer = (target_hat.array() - log_sum_exp(target_hat)).exp().matrix();
  return (rec.x_next - minimizer).lpNorm<Eigen::Infinity>();
}

std::vector<double> prox_residuals(const RunTrace& trace) {
  std::vector<double> out;
  out.reserve(trace.steps.size());
  for (std::int64_t t = 1; t <= trace.T(); ++t) out.push_back(prox_residual(trace, t));
  return out;
}

std::vector<double> minform_residuals(const RunTrace& trace) {
  require_entropy_simplex(trace, "min-form residual sweep");
  std::vector<double> out;
  out.reserve(trace.steps.size());
  Vec cum = Vec::Zero(trace.geometry.n);
  for (std::int64_t t = 1; t <= trace.T(); ++t) {
    const StepRecord& rec = residual_rec(trace, t);
    cum += rec.ghat;
    const Vec target_hat = trace.xhat1 - rec.eta_next * cum;
    const Vec minimizer = (target_hat.array() - log_sum_exp(target_hat)).exp().matrix();
    out.push_back((rec.x_next - minimizer).lpNorm<Eigen::Infinity>());
  }
  return out;
}

}  // namespace pace
