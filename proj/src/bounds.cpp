#include "pace/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <iterator>
#include <limits>
#include <random>

#include "pace/numerics.hpp"

namespace pace {

namespace {

const StepRecord& checked_rec(const RunTrace& trace, std::size_t i) {
  const StepRecord& rec = trace.steps[i];
  if (rec.x.size() == 0 || rec.xhat.size() == 0 || rec.what.size() == 0 ||
      rec.x_next.size() == 0)
    throw MissingIntermediate("trace record " + std::to_string(i) +
                              " lacks the dual-space intermediates");
  return rec;
}

double psi_of(const RunTrace& trace, const Vec& v) {
  return trace.psi ? trace.psi->value(v) : 0.0;
}

/* one gap term of the guarantee, already divided by eta */
double gap_term(const RunTrace& trace, const StepRecord& rec) {
  const MirrorGeometry& g = trace.geometry;
  switch (trace.kind) {
    case AlgorithmKind::omd:
    case AlgorithmKind::ds_omd:
    case AlgorithmKind::composite_ds_omd:
      return gap_vec(g, rec.x, rec.x_next, rec.what) / rec.eta;
    case AlgorithmKind::ps_omd: {
      if (rec.y_next.size() == 0)
        throw MissingIntermediate("ps_omd record lacks its projected point");
      return gap_vec(g, rec.x, rec.y_next, rec.what) / rec.eta;
    }
    case AlgorithmKind::da: {
      const Vec chat = rec.xhat - rec.eta * rec.ghat;
      return gap_vec(g, rec.x, rec.x_next, chat) / rec.eta;
    }
  }
  throw StateError("unreachable algorithm kind");
}

bool costs_in_unit_box(const RunTrace& trace) {
  for (const StepRecord& rec : trace.steps)
    if (rec.ghat.minCoeff() < 0.0 || rec.ghat.maxCoeff() > 1.0) return false;
  return true;
}

bool start_is_uniform(const RunTrace& trace) {
  const double u = 1.0 / double(trace.geometry.n);
  return (trace.x1.array() - u).abs().maxCoeff() <= 1e-15;
}

/* prefix-best comparator bookkeeping shared by the report builders */
struct PrefixComparator {
  const RunTrace& trace;
  Vec cum_grad;     // linear: per-coordinate cumulative cost
  Vec center_sum;   // quadratic: sum of centers
  double center_sq = 0.0;
  double lambda = 0.0;

  explicit PrefixComparator(const RunTrace& tr) : trace(tr) {
    const int n = tr.geometry.n;
    if (tr.cost_kind == CostKind::linear) {
      if (tr.geometry.feasible != FeasibleSet::simplex)
        throw UnsupportedCost("linear costs need the simplex to have a best comparator");
      cum_grad = Vec::Zero(n);
    } else {
      if (tr.geometry.feasible != FeasibleSet::all_space)
        throw UnsupportedCost("quadratic comparator is only closed-form on the free set");
      center_sum = Vec::Zero(n);
      if (tr.psi && tr.psi->kind == PsiKind::l1_norm) lambda = tr.psi->lambda;
    }
  }

  void absorb(const StepRecord& rec) {
    if (trace.cost_kind == CostKind::linear) {
      cum_grad += rec.ghat;
    } else {
      const Vec c = rec.x - rec.ghat;
      center_sum += c;
      center_sq += c.squaredNorm();
    }
  }

  /* lowest-index minimizing corner / soft-thresholded running mean */
  Vec best(std::int64_t prefix) const {
    if (trace.cost_kind == CostKind::linear) {
      Eigen::Index j = 0;
      cum_grad.minCoeff(&j);
      Vec z = Vec::Zero(cum_grad.size());
      z[j] = 1.0;
      return z;
    }
    Vec mean = center_sum / double(prefix);
    if (lambda > 0.0)
      for (Eigen::Index i = 0; i < mean.size(); ++i)
        mean[i] = soft_threshold(mean[i], lambda);
    return mean;
  }

  /* total comparator cost over the prefix, regularizer included */
  double cost(const Vec& z, std::int64_t prefix) const {
    if (trace.cost_kind == CostKind::linear) return cum_grad.dot(z);
    double quad = 0.5 * (double(prefix) * z.squaredNorm() -
                         2.0 * z.dot(center_sum) + center_sq);
    return quad + double(prefix) * psi_of(trace, z);
  }
};

}  // namespace

double cost_at(const RunTrace& trace, const StepRecord& rec, const Vec& z) {
  if (z.size() != trace.geometry.n)
    throw ValueError("comparator has wrong dimension");
  double base;
  if (trace.cost_kind == CostKind::linear) {
    base = rec.ghat.dot(z);
  } else {
    if (rec.x.size() == 0)
      throw MissingIntermediate("quadratic cost evaluation needs the iterate");
    base = 0.5 * (z - (rec.x - rec.ghat)).squaredNorm();
  }
  return base + psi_of(trace, z);
}

std::vector<double> regret_curve(const RunTrace& trace, const Vec& z) {
  std::vector<double> out;
  out.reserve(trace.steps.size());
  double cum = 0.0;
  for (const StepRecord& rec : trace.steps) {
    cum += rec.loss + psi_of(trace, rec.x) - cost_at(trace, rec, z);
    out.push_back(cum);
  }
  return out;
}

Vec best_comparator(const RunTrace& trace) {
  if (trace.steps.empty()) throw ValueError("empty trace has no comparator");
  PrefixComparator pc(trace);
  for (const StepRecord& rec : trace.steps) pc.absorb(rec);
  return pc.best(trace.T());
}

bool theorem_applies(const RunTrace& trace) {
  for (const StepRecord& rec : trace.steps) {
    if (rec.gamma != rec.eta_next / rec.eta) return false;
    if (trace.kind == AlgorithmKind::omd && rec.gamma != 1.0) return false;
  }
  return true;
}

std::vector<double> theorem_bound(const RunTrace& trace, const Vec& z) {
  if (!theorem_applies(trace))
    throw NotApplicableError(
        "guarantee needs stabilization weights equal to the rate quotients");
  const double div_start = bregman_vec(trace.geometry, z, trace.x1);
  std::vector<double> out;
  out.reserve(trace.steps.size());
  double gaps = 0.0;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const StepRecord& rec = checked_rec(trace, i);
    gaps += gap_term(trace, rec);
    out.push_back(gaps + div_start / rec.eta_next);
  }
  return out;
}

double first_order_rhs(double log_n, double lstar) {
  return 2.0 * std::sqrt(log_n * lstar) + 8.0 * log_n;
}

double first_order_rhs_proof_form(double log_n, double lstar) {
  return 2.0 * std::sqrt(log_n * lstar) + std::sqrt(log_n) +
         2.0 * std::pow(log_n, 0.75) + 4.0 * log_n;
}

BoundReport corollary_bounds(const RunTrace& trace) {
  if (trace.steps.empty()) throw ValueError("empty trace has no bounds to report");
  BoundReport report;
  const MirrorGeometry& g = trace.geometry;
  const std::size_t T = trace.steps.size();
  const double log_n = std::log(double(g.n));

  report.theorem_applicable = theorem_applies(trace);

  const bool entropy_simplex =
      g.map == MirrorMap::entropy && g.feasible == FeasibleSet::simplex;
  const bool unit_costs = costs_in_unit_box(trace);
  const bool uniform_start = start_is_uniform(trace);

  const bool want_nesterov = report.theorem_applicable;
  const bool want_lambda = entropy_simplex && uniform_start && report.theorem_applicable;
  const bool want_anytime = entropy_simplex && uniform_start && unit_costs &&
                            trace.schedule_kind == ScheduleKind::anytime;
  const bool want_first_order = entropy_simplex && uniform_start && unit_costs &&
                                trace.schedule_kind == ScheduleKind::self_confident;

  if (!want_nesterov) report.not_applicable.push_back("rate_norm");
  if (!want_lambda) report.not_applicable.push_back("entropy_gap");
  if (!want_anytime) report.not_applicable.push_back("anytime_experts");
  if (!want_first_order) {
    report.not_applicable.push_back("first_order");
    report.not_applicable.push_back("first_order_proof_form");
  }

  auto& nesterov = report.corollaries["rate_norm"];
  auto& lam = report.corollaries["entropy_gap"];
  auto& anyt = report.corollaries["anytime_experts"];
  auto& fo = report.corollaries["first_order"];
  auto& fopf = report.corollaries["first_order_proof_form"];

  PrefixComparator pc(trace);
  double cum_loss = 0.0, gaps = 0.0, norm_sum = 0.0, lambda_sum = 0.0;
  report.min_slack = std::numeric_limits<double>::infinity();

  for (std::size_t i = 0; i < T; ++i) {
    const StepRecord& rec = checked_rec(trace, i);
    const std::int64_t prefix = std::int64_t(i) + 1;
    pc.absorb(rec);
    cum_loss += rec.loss + psi_of(trace, rec.x);

    const Vec z = pc.best(prefix);
    const double regret = cum_loss - pc.cost(z, prefix);
    report.regret.push_back(regret);

    const double div_start = bregman_vec(g, z, trace.x1);

    if (report.theorem_applicable) {
      gaps += gap_term(trace, rec);
      const double rhs = gaps + div_start / rec.eta_next;
      report.theorem_rhs.push_back(rhs);
      const double slack = rhs - regret;
      report.slack.push_back(slack);
      if (slack < report.min_slack) {
        report.min_slack = slack;
        report.argmin_slack = prefix;
      }
    }

    if (want_nesterov) {
      const double dn = dual_norm(g, rec.ghat);
      norm_sum += rec.eta * dn * dn / (2.0 * g.rho);
      nesterov.push_back(norm_sum + div_start / rec.eta_next);
    }
    if (want_lambda) {
      /* Lambda(x_t, x_t .* exp(-eta ghat)) = eta <ghat, x_t> + log sum of the
       * reweighted mass; written directly so crushed coordinates cost nothing */
      double mass = 0.0;
      for (Eigen::Index j = 0; j < rec.x.size(); ++j)
        mass += rec.x[j] * std::exp(-rec.eta * rec.ghat[j]);
      lambda_sum += (rec.eta * rec.ghat.dot(rec.x) + std::log(mass)) / rec.eta;
      lam.push_back(lambda_sum + log_n / rec.eta_next);
    }
    if (want_anytime) anyt.push_back(std::sqrt(double(prefix) * log_n));
    if (want_first_order) {
      const double lstar = pc.cost(z, prefix);
      fo.push_back(first_order_rhs(log_n, lstar));
      fopf.push_back(first_order_rhs_proof_form(log_n, lstar));
    }
  }

  for (auto it = report.corollaries.begin(); it != report.corollaries.end();)
    it = it->second.empty() ? report.corollaries.erase(it) : std::next(it);
  if (!report.theorem_applicable) {
    report.min_slack = std::numeric_limits<double>::quiet_NaN();
    report.argmin_slack = 0;
  }
  return report;
}

/* ---- scalar fact checks ------------------------------------------------- */

namespace {

struct CaseHarness {
  ScalarCheckItem item;
  void fail(const std::string& why) {
    if (item.pass) {
      item.pass = false;
      item.counterexample = why;
    }
  }
};

std::string num(double v) {
  char bufc[64];
  std::snprintf(bufc, sizeof bufc, "%.17g", v);
  return bufc;
}

}  // namespace

ScalarCheckReport scalar_checks(std::uint64_t seed, std::int64_t cases_per_item) {
  ScalarCheckReport report;
  std::mt19937_64 rng(seed);
  const double tol = 1e-12;

  {
    CaseHarness h{{"quadratic_peak", cases_per_item, true, ""}};
    for (std::int64_t c = 0; c < cases_per_item; ++c) {
      const double a = 1e-3 + 10.0 * uniform01(rng);
      const double b = 20.0 * uniform01(rng) - 10.0;
      const double peak = b * b / (4.0 * a);
      const double xs[] = {20.0 * uniform01(rng) - 10.0, b / (2.0 * a)};
      for (double x : xs)
        if (-a * x * x + b * x > peak + tol)
          h.fail("a=" + num(a) + " b=" + num(b) + " x=" + num(x));
    }
    report.items.push_back(h.item);
  }

  {
    CaseHarness h{{"exp_second_order", cases_per_item, true, ""}};
    for (std::int64_t c = 0; c < cases_per_item; ++c) {
      const double x = (c == 0) ? 0.0 : 30.0 * uniform01(rng);
      if (std::exp(-x) > 1.0 - x + 0.5 * x * x + tol) h.fail("x=" + num(x));
    }
    report.items.push_back(h.item);
  }

  {
    /* deterministic sweep; every t up to 1e6 is a case */
    CaseHarness h{{"inverse_sqrt_sum", 1000000, true, ""}};
    double s = 0.0;
    for (std::int64_t t = 1; t <= 1000000; ++t) {
      s += 1.0 / std::sqrt(double(t));
      if (s > 2.0 * std::sqrt(double(t)) - 1.0 + 1e-9) {
        h.fail("t=" + std::to_string(t));
        break;
      }
    }
    report.items.push_back(h.item);
  }

  {
    CaseHarness h{{"log_linearization", cases_per_item, true, ""}};
    for (std::int64_t c = 0; c < cases_per_item; ++c) {
      const double x = (c == 0) ? 0.0 : (c == 1 ? 1.0 : 50.0 * uniform01(rng));
      const double lhs = x < kZeroClamp ? -std::numeric_limits<double>::infinity()
                                        : std::log(x);
      if (lhs > x - 1.0 + tol) h.fail("x=" + num(x));
    }
    report.items.push_back(h.item);
  }

  {
    CaseHarness h{{"adaptive_step_sum", cases_per_item, true, ""}};
    for (std::int64_t c = 0; c < cases_per_item; ++c) {
      const std::int64_t T = 1 + std::int64_t(uniform01(rng) * 200);
      const double u = 1e-6 + 5.0 * uniform01(rng);
      double acc = 0.0, lhs = 0.0;
      for (std::int64_t t = 0; t < T; ++t) {
        const double a = u * uniform01(rng);
        lhs += a / std::sqrt(u + acc);
        acc += a;
      }
      if (lhs > 2.0 * std::sqrt(acc) + tol)
        h.fail("T=" + std::to_string(T) + " u=" + num(u) + " lhs=" + num(lhs));
    }
    report.items.push_back(h.item);
  }

  {
    CaseHarness h{{"shifted_root_transfer", cases_per_item, true, ""}};
    for (std::int64_t c = 0; c < cases_per_item; ++c) {
      const double alpha = 1e-3 + 5.0 * uniform01(rng);
      const double beta = 5.0 * uniform01(rng);
      const double y = 20.0 * uniform01(rng);
      /* largest x satisfying the hypothesis x - y <= alpha sqrt(x) + beta */
      const double root = 0.5 * (alpha + std::sqrt(alpha * alpha + 4.0 * (y + beta)));
      const double x = uniform01(rng) * root * root;
      if (x - y <= alpha * std::sqrt(x) + beta) {
        const double rhs =
            alpha * std::sqrt(y) + beta + alpha * std::sqrt(beta) + alpha * alpha;
        if (x - y > rhs + tol)
          h.fail("x=" + num(x) + " y=" + num(y) + " alpha=" + num(alpha) +
                 " beta=" + num(beta));
      }
    }
    report.items.push_back(h.item);
  }

  for (const ScalarCheckItem& item : report.items)
    if (!item.pass) report.all_pass = false;
  return report;
}

}  // namespace pace
