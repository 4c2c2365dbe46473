#include "pace/learner.hpp"

#include <cmath>

#include "pace/numerics.hpp"

namespace pace {

AlgorithmKind algorithm_kind_from(const std::string& name) {
  if (name == "omd") return AlgorithmKind::omd;
  if (name == "ds_omd") return AlgorithmKind::ds_omd;
  if (name == "ps_omd") return AlgorithmKind::ps_omd;
  if (name == "da") return AlgorithmKind::da;
  if (name == "composite_ds_omd") return AlgorithmKind::composite_ds_omd;
  throw ConfigError("unknown algorithm kind: " + name);
}

std::string algorithm_kind_name(AlgorithmKind k) {
  switch (k) {
    case AlgorithmKind::omd: return "omd";
    case AlgorithmKind::ds_omd: return "ds_omd";
    case AlgorithmKind::ps_omd: return "ps_omd";
    case AlgorithmKind::da: return "da";
    case AlgorithmKind::composite_ds_omd: return "composite_ds_omd";
  }
  return "?";
}

namespace {

Vec default_start(const MirrorGeometry& g, AlgorithmKind kind,
                  const std::optional<CompositeRegularizer>& psi) {
  if (kind == AlgorithmKind::composite_ds_omd && psi && psi->kind == PsiKind::l1_norm)
    return Vec::Zero(g.n);
  if (g.feasible == FeasibleSet::simplex) return Vec::Constant(g.n, 1.0 / double(g.n));
  return Vec::Zero(g.n);
}

void check_start(const MirrorGeometry& g, const Vec& x1) {
  if (x1.size() != g.n) throw InitError("start point has wrong dimension");
  if (!x1.allFinite()) throw InitError("start point has non-finite coordinates");
  if (g.map == MirrorMap::entropy) {
    for (int i = 0; i < g.n; ++i)
      if (!(x1[i] >= kZeroClamp))
        throw InitError("entropy geometry needs a strictly positive start point");
  }
  if (g.feasible == FeasibleSet::simplex) {
    if (std::abs(x1.sum() - 1.0) > 1e-9 || x1.minCoeff() < -1e-12)
      throw InitError("start point must lie on the probability simplex");
  }
}

}  // namespace

Learner::Learner(AlgorithmKind kind, const MirrorGeometry& geom, Schedule sched,
                 std::optional<Vec> x1, std::optional<CompositeRegularizer> psi)
    : kind_(kind), geom_(geom), sched_(std::move(sched)), psi_(std::move(psi)) {
  if (kind == AlgorithmKind::composite_ds_omd) {
    if (!psi_) throw InitError("composite learner needs a regularizer");
    if (psi_->kind == PsiKind::l1_norm &&
        (geom.map != MirrorMap::euclidean || geom.feasible != FeasibleSet::all_space))
      throw UnsupportedCombination("l1 regularizer is only wired for euclidean-free");
    if (psi_->kind == PsiKind::simplex_indicator && geom.feasible != FeasibleSet::simplex)
      throw UnsupportedCombination("indicator regularizer needs a simplex feasible set");
  } else if (psi_) {
    throw InitError("only the composite learner takes a regularizer");
  }

  x1_ = x1 ? std::move(*x1) : default_start(geom_, kind_, psi_);
  check_start(geom_, x1_);
  if (kind_ == AlgorithmKind::composite_ds_omd && psi_->kind == PsiKind::l1_norm &&
      x1_.lpNorm<Eigen::Infinity>() > 1e-9)
    throw InitError("composite start point must minimize the regularizer (zero vector)");

  xhat1_ = grad_vec(geom_, x1_);
  x_ = x1_;
  xhat_ = xhat1_;
  if (kind_ == AlgorithmKind::da) {
    yhat_ = xhat1_;
    cumgrad_ = Vec::Zero(geom_.n);
  }
}

const Vec& Learner::cumulative_grad() const {
  if (kind_ != AlgorithmKind::da)
    throw StateError("cumulative gradient state only exists for da");
  return cumgrad_;
}

void Learner::step(const Vec& ghat, double loss, StepRecord* rec) {
  if (ghat.size() != geom_.n) throw ValueError("subgradient has wrong dimension");
  if (!ghat.allFinite()) throw ValueError("subgradient has non-finite coordinates");
  const double eta = sched_.eta(t_);

  if (rec) {
    rec->t = t_;
    rec->loss = loss;
    rec->eta = eta;
    rec->x = x_;
    rec->xhat = xhat_;
    rec->ghat = ghat;
  }

  /* losses are fed to the schedule before gamma is read: the self-confident
   * weight for round t already includes round t's loss */
  sched_.observe(loss);
  const double gamma = sched_.gamma(t_);

  const Vec& base = (kind_ == AlgorithmKind::da) ? yhat_ : xhat_;
  what_ = base - eta * ghat;

  switch (kind_) {
    case AlgorithmKind::omd:
      yhat_next_ = what_;
      project_dual(geom_, yhat_next_, xhat_);
      primal_of_dual(geom_, xhat_, x_);
      break;
    case AlgorithmKind::ds_omd:
    case AlgorithmKind::da:
      /* gamma == 1 must leave the dual point bit-identical, so skip the mix */
      if (gamma == 1.0) yhat_next_ = what_;
      else yhat_next_ = gamma * what_ + (1.0 - gamma) * xhat1_;
      project_dual(geom_, yhat_next_, xhat_);
      primal_of_dual(geom_, xhat_, x_);
      if (kind_ == AlgorithmKind::da) {
        yhat_ = yhat_next_;
        cumgrad_ += ghat;
      }
      break;
    case AlgorithmKind::ps_omd: {
      project_dual(geom_, what_, buf_);
      primal_of_dual(geom_, buf_, yhat_next_);  // yhat_next_ buffers primal y here
      if (rec) rec->y_next = yhat_next_;
      if (gamma == 1.0) x_ = yhat_next_;
      else x_ = gamma * yhat_next_ + (1.0 - gamma) * x1_;
      xhat_ = grad_vec(geom_, x_);
      yhat_next_ = buf_;  // dual of the projected point, for the record
      break;
    }
    case AlgorithmKind::composite_ds_omd: {
      if (gamma == 1.0) yhat_next_ = what_;
      else yhat_next_ = gamma * what_ + (1.0 - gamma) * xhat1_;
      if (psi_->kind == PsiKind::simplex_indicator) {
        project_dual(geom_, yhat_next_, xhat_);
        primal_of_dual(geom_, xhat_, x_);
      } else {
        /* euclidean-free: dual == primal, soft-threshold at eta*gamma*lambda */
        const double thr = eta * gamma * psi_->lambda;
        x_.resize(geom_.n);
        for (int i = 0; i < geom_.n; ++i) x_[i] = soft_threshold(yhat_next_[i], thr);
        xhat_ = x_;
      }
      break;
    }
  }

  if (rec) {
    rec->gamma = gamma;
    rec->eta_next = sched_.eta(t_ + 1);
    rec->what = what_;
    primal_of_dual(geom_, what_, rec->w);
    rec->yhat_next = yhat_next_;
    rec->x_next = x_;
  }
  ++t_;
}

RunTrace run(AlgorithmKind kind, const MirrorGeometry& geom, Schedule sched,
             CostOracle oracle, std::int64_t T, std::optional<Vec> x1,
             std::optional<CompositeRegularizer> psi) {
  if (T < 1) throw ValueError("run needs T >= 1");
  Learner learner(kind, geom, std::move(sched), std::move(x1), psi);
  RunTrace trace;
  trace.geometry = geom;
  trace.kind = kind;
  trace.schedule_kind = learner.schedule().kind();
  trace.cost_kind = oracle.cost_kind();
  trace.psi = psi;
  trace.x1 = learner.x1();
  trace.xhat1 = learner.xhat1();
  trace.steps.reserve(std::size_t(T));
  run_stream(learner, oracle, T,
             [&](const StepRecord& rec) { trace.steps.push_back(rec); });
  return trace;
}

void run_stream(Learner& learner, CostOracle& oracle, std::int64_t T,
                const StepSink& sink) {
  if (T < 1) throw ValueError("run needs T >= 1");
  StepRecord rec;
  Vec ghat;
  for (std::int64_t t = 1; t <= T; ++t) {
    const double loss = oracle.cost(t, learner.iterate(), ghat);
    learner.step(ghat, loss, sink ? &rec : nullptr);
    if (sink) sink(rec);
  }
}

}  // namespace pace
