#pragma once

#include <optional>
#include <string>

#include "pace/types.hpp"

namespace pace {

enum class MirrorMap { entropy, euclidean };
enum class FeasibleSet { simplex, all_space, box };
enum class NormKind { l1, l2 };

/* A mirror map of Legendre type paired with a feasible set and the norm in
 * which the map is 1-strongly convex (entropy/l1 on the simplex, half squared
 * l2 everywhere). Immutable once built; safe to share across threads. */
struct MirrorGeometry {
  int n = 0;
  MirrorMap map = MirrorMap::entropy;
  FeasibleSet feasible = FeasibleSet::simplex;
  double rho = 1.0;        // strong-convexity modulus w.r.t. `norm`
  NormKind norm = NormKind::l1;

  std::string key() const;
};

/* Geometry keys understood by the harness: "entropy-simplex",
 * "euclidean-free", "euclidean-simplex". */
MirrorGeometry make_geometry(const std::string& key, int n);

/* The pair of points a Bregman-gap evaluation compares. */
struct BregmanGap {
  PrimalPoint a;  // closure is fine
  PrimalPoint b;
};

enum class PsiKind { l1_norm, simplex_indicator };

struct CompositeRegularizer {
  PsiKind kind = PsiKind::simplex_indicator;
  double lambda = 0.0;  // scale for the l1 kind

  double value(const Vec& x) const;  // +inf never returned; callers keep iterates feasible
};

double phi_value(const MirrorGeometry& g, const Vec& x);

DualPoint grad(const MirrorGeometry& g, const PrimalPoint& x);
PrimalPoint grad_conjugate(const MirrorGeometry& g, const DualPoint& xhat);

double bregman(const MirrorGeometry& g, const PrimalPoint& x, const PrimalPoint& y);

/* Three-slot gap: phi(a) - phi(b) - <grad phi(c), a - b>, evaluated by this
 * one formula regardless of how a, b, c relate, so bound terms never go
 * through a difference-of-divergences expression that cancels badly. */
double gap(const MirrorGeometry& g, const BregmanGap& pair, const PrimalPoint& c);

PrimalPoint project(const MirrorGeometry& g, const PrimalPoint& y);

/* Composite step x = argmin_x alpha*psi(x) + D(x, y). */
PrimalPoint composite_project(const MirrorGeometry& g, const PrimalPoint& y,
                              double alpha, const CompositeRegularizer& psi);

/* Normalized-entropy gap bound Lambda(a,b) = sum_i a_i log(a_i/b_i) + log|b|_1
 * for a in the simplex, b positive. */
double lambda_fn(const PrimalPoint& a, const PrimalPoint& b);

double dual_norm(const MirrorGeometry& g, const Vec& v);

/* ---- raw-vector kernels used on learner hot paths ------------------------ */

/* Dual coordinates of grad phi / primal of grad phi*, skipping the typed
 * wrappers. Same domain rules as the public entry points. */
Vec grad_vec(const MirrorGeometry& g, const Vec& x);
Vec grad_conjugate_vec(const MirrorGeometry& g, const Vec& xhat);

double bregman_vec(const MirrorGeometry& g, const Vec& x, const Vec& y);
double gap_vec(const MirrorGeometry& g, const Vec& a, const Vec& b, const Vec& chat);
double lambda_vec(const Vec& a, const Vec& b);

/* Bregman projection onto the feasible set expressed in dual coordinates:
 * takes grad phi(y) and returns grad phi of the projected point. For the
 * entropy/simplex pair this is a log-sum-exp recentering, which is what keeps
 * long-horizon runs clear of exp over/underflow. */
void project_dual(const MirrorGeometry& g, const Vec& yhat, Vec& out);

/* Primal coordinates of the point whose dual coordinates are xhat, without
 * overflow checks (projected duals are always in the safe range). */
void primal_of_dual(const MirrorGeometry& g, const Vec& xhat, Vec& out);

}  // namespace pace
