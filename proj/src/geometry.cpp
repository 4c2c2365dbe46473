#include "pace/geometry.hpp"

#include <cmath>

#include "pace/numerics.hpp"

namespace pace {

namespace {

/* exp argument above this overflows double */
constexpr double kExpOverflow = 709.0;

void check_finite(const Vec& v, const char* what) {
  if (!v.allFinite()) throw DomainError(std::string(what) + ": non-finite coordinate");
}

void check_positive(const Vec& v, const char* what) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!(v[i] >= kZeroClamp))
      throw DomainError(std::string(what) + ": coordinate " + std::to_string(i) +
                        " not strictly positive");
}

void check_nonneg(const Vec& v, const char* what) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v[i] < 0.0)
      throw DomainError(std::string(what) + ": coordinate " + std::to_string(i) +
                        " negative");
}

double xlogx(double v) { return v < kZeroClamp ? 0.0 : v * std::log(v); }

}  // namespace

std::string MirrorGeometry::key() const {
  std::string m = map == MirrorMap::entropy ? "entropy" : "euclidean";
  std::string f = feasible == FeasibleSet::simplex ? "simplex"
                : feasible == FeasibleSet::all_space ? "free" : "box";
  return m + "-" + f;
}

MirrorGeometry make_geometry(const std::string& key, int n) {
  if (n < 1) throw ValueError("geometry dimension must be >= 1");
  MirrorGeometry g;
  g.n = n;
  if (key == "entropy-simplex") {
    g.map = MirrorMap::entropy;
    g.feasible = FeasibleSet::simplex;
    g.norm = NormKind::l1;
  } else if (key == "euclidean-free") {
    g.map = MirrorMap::euclidean;
    g.feasible = FeasibleSet::all_space;
    g.norm = NormKind::l2;
  } else if (key == "euclidean-simplex") {
    g.map = MirrorMap::euclidean;
    g.feasible = FeasibleSet::simplex;
    g.norm = NormKind::l2;
  } else {
    throw UnsupportedCombination("unknown geometry key: " + key);
  }
  g.rho = 1.0;
  return g;
}

double CompositeRegularizer::value(const Vec& x) const {
  if (kind == PsiKind::l1_norm) return lambda * x.lpNorm<1>();
  return 0.0;  // indicator: callers only evaluate at feasible points
}

double phi_value(const MirrorGeometry& g, const Vec& x) {
  if (g.map == MirrorMap::euclidean) return 0.5 * x.squaredNorm();
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += xlogx(x[i]);
  return s;
}

Vec grad_vec(const MirrorGeometry& g, const Vec& x) {
  check_finite(x, "grad");
  if (g.map == MirrorMap::euclidean) return x;
  check_positive(x, "grad");
  return (x.array().log() + 1.0).matrix();
}

Vec grad_conjugate_vec(const MirrorGeometry& g, const Vec& xhat) {
  check_finite(xhat, "grad_conjugate");
  if (g.map == MirrorMap::euclidean) return xhat;
  if ((xhat.array() - 1.0).maxCoeff() > kExpOverflow)
    throw OverflowError("grad_conjugate: exp argument exceeds double range");
  return (xhat.array() - 1.0).exp().matrix();
}

DualPoint grad(const MirrorGeometry& g, const PrimalPoint& x) {
  return DualPoint(grad_vec(g, x.coords));
}

PrimalPoint grad_conjugate(const MirrorGeometry& g, const DualPoint& xhat) {
  return PrimalPoint(grad_conjugate_vec(g, xhat.coords), SpaceTag::open_domain);
}

double bregman_vec(const MirrorGeometry& g, const Vec& x, const Vec& y) {
  check_finite(x, "bregman");
  check_finite(y, "bregman");
  if (g.map == MirrorMap::euclidean) return 0.5 * (x - y).squaredNorm();
  check_nonneg(x, "bregman");
  check_positive(y, "bregman second argument");
  /* generalized KL: sum x log(x/y) - |x|_1 + |y|_1, with 0 log 0 = 0 */
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] >= kZeroClamp) s += x[i] * std::log(x[i] / y[i]) - x[i];
    s += y[i];
  }
  return s;
}

double bregman(const MirrorGeometry& g, const PrimalPoint& x, const PrimalPoint& y) {
  return bregman_vec(g, x.coords, y.coords);
}

double gap_vec(const MirrorGeometry& g, const Vec& a, const Vec& b, const Vec& chat) {
  check_finite(chat, "gap");
  return phi_value(g, a) - phi_value(g, b) - chat.dot(a - b);
}

double gap(const MirrorGeometry& g, const BregmanGap& pair, const PrimalPoint& c) {
  if (g.map == MirrorMap::entropy) {
    check_nonneg(pair.a.coords, "gap");
    check_nonneg(pair.b.coords, "gap");
  }
  return gap_vec(g, pair.a.coords, pair.b.coords, grad_vec(g, c.coords));
}

void project_dual(const MirrorGeometry& g, const Vec& yhat, Vec& out) {
  switch (g.feasible) {
    case FeasibleSet::simplex:
      if (g.map == MirrorMap::entropy) {
        out = yhat.array() - (log_sum_exp(yhat) - 1.0);
      } else {
        out = project_simplex_l2(yhat);
      }
      return;
    case FeasibleSet::all_space:
      if (g.map == MirrorMap::euclidean) {
        out = yhat;
        return;
      }
      break;
    case FeasibleSet::box:
      break;
  }
  throw UnsupportedCombination("no projection rule for " + g.key());
}

void primal_of_dual(const MirrorGeometry& g, const Vec& xhat, Vec& out) {
  if (g.map == MirrorMap::euclidean) {
    out = xhat;
  } else {
    out = (xhat.array() - 1.0).exp();
  }
}

PrimalPoint project(const MirrorGeometry& g, const PrimalPoint& y) {
  check_finite(y.coords, "project");
  if (g.map == MirrorMap::entropy) check_positive(y.coords, "project");
  Vec xhat;
  project_dual(g, grad_vec(g, y.coords), xhat);
  Vec x;
  primal_of_dual(g, xhat, x);
  return PrimalPoint(std::move(x), SpaceTag::open_domain);
}

PrimalPoint composite_project(const MirrorGeometry& g, const PrimalPoint& y,
                              double alpha, const CompositeRegularizer& psi) {
  if (!(alpha >= 0.0)) throw ValueError("composite_project: alpha must be >= 0");
  if (psi.kind == PsiKind::simplex_indicator) return project(g, y);
  if (g.map != MirrorMap::euclidean || g.feasible != FeasibleSet::all_space)
    throw UnsupportedCombination(
        "l1 composite step has a closed form only for euclidean-free");
  check_finite(y.coords, "composite_project");
  const double thr = alpha * psi.lambda;
  Vec x(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) x[i] = soft_threshold(y.coords[i], thr);
  return PrimalPoint(std::move(x), SpaceTag::open_domain);
}

double lambda_vec(const Vec& a, const Vec& b) {
  check_finite(a, "lambda_fn");
  check_nonneg(a, "lambda_fn");
  check_positive(b, "lambda_fn second argument");
  const double sum_a = a.sum();
  if (std::abs(sum_a - 1.0) > 1e-9)
    throw DomainError("lambda_fn: first argument must lie in the simplex");
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a[i] >= kZeroClamp) s += a[i] * std::log(a[i] / b[i]);
  return s + std::log(b.sum());
}

double lambda_fn(const PrimalPoint& a, const PrimalPoint& b) {
  return lambda_vec(a.coords, b.coords);
}

double dual_norm(const MirrorGeometry& g, const Vec& v) {
  return g.norm == NormKind::l1 ? v.lpNorm<Eigen::Infinity>() : v.norm();
}

}  // namespace pace
