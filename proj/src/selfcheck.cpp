#include "pace/selfcheck.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "pace/learner.hpp"
#include "pace/numerics.hpp"

namespace pace {

namespace {

std::string num(double v) {
  char bufc[64];
  std::snprintf(bufc, sizeof bufc, "%.17g", v);
  return bufc;
}

struct Item {
  ScalarCheckItem it;
  explicit Item(std::string name, std::int64_t cases) : it{std::move(name), cases, true, ""} {}
  void fail(const std::string& why) {
    if (it.pass) {
      it.pass = false;
      it.counterexample = why;
    }
  }
};

double unif(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

Vec rand_box(std::mt19937_64& rng, int n, double lo, double hi) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = unif(rng, lo, hi);
  return v;
}

Vec rand_pos(std::mt19937_64& rng, int n, double lo = -3.0, double hi = 3.0) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = std::exp(unif(rng, lo, hi));
  return v;
}

Vec rand_simplex(std::mt19937_64& rng, int n) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = 1e-12 - std::log1p(-uniform01(rng));
  return v / v.sum();
}

/* simplex closure point with a chance of exact zeros */
Vec rand_simplex_closure(std::mt19937_64& rng, int n) {
  Vec v(n);
  bool any = false;
  for (int i = 0; i < n; ++i) {
    if (uniform01(rng) < 0.2 && any) v[i] = 0.0;
    else { v[i] = 1e-12 - std::log1p(-uniform01(rng)); any = true; }
  }
  return v / v.sum();
}

MirrorGeometry pick_geometry(std::mt19937_64& rng, int n) {
  const char* keys[] = {"entropy-simplex", "euclidean-free", "euclidean-simplex"};
  return make_geometry(keys[rng() % 3], n);
}

Vec open_point(std::mt19937_64& rng, const MirrorGeometry& g) {
  return g.map == MirrorMap::entropy ? rand_pos(rng, g.n) : rand_box(rng, g.n, -5, 5);
}

Vec feasible_point(std::mt19937_64& rng, const MirrorGeometry& g) {
  if (g.feasible == FeasibleSet::simplex) return rand_simplex(rng, g.n);
  return rand_box(rng, g.n, -5, 5);
}

}  // namespace

ScalarCheckReport geometry_property_suite(std::uint64_t seed, std::int64_t cases) {
  ScalarCheckReport report;
  std::mt19937_64 rng(seed);

  {
    Item h("grad_roundtrip", cases);
    for (std::int64_t c = 0; c < cases; ++c) {
      const MirrorGeometry g = pick_geometry(rng, 2 + int(rng() % 7));
      const Vec x = open_point(rng, g);
      const Vec back = grad_conjugate(g, grad(g, PrimalPoint(x))).coords;
      if ((back - x).lpNorm<Eigen::Infinity>() > 1e-12)
        h.fail(g.key() + " x0=" + num(x[0]));
    }
    report.items.push_back(h.it);
  }

  {
    Item h("three_point_identity", cases);
    for (std::int64_t c = 0; c < cases; ++c) {
      const MirrorGeometry g = pick_geometry(rng, 2 + int(rng() % 7));
      const Vec a = open_point(rng, g), b = open_point(rng, g), d = open_point(rng, g);
      const double lhs = bregman_vec(g, a, d) - bregman_vec(g, b, d) + bregman_vec(g, b, a);
      const double rhs = (grad_vec(g, a) - grad_vec(g, d)).dot(a - b);
      if (std::abs(lhs - rhs) > 1e-10) h.fail(g.key() + " lhs=" + num(lhs) + " rhs=" + num(rhs));
    }
    report.items.push_back(h.it);
  }

  {
    Item h("gap_mix_linearity", cases);
    for (std::int64_t c = 0; c < cases; ++c) {
      const MirrorGeometry g = pick_geometry(rng, 2 + int(rng() % 7));
      const Vec a = open_point(rng, g), b = open_point(rng, g);
      const double w = uniform01(rng);
      const Vec mix_hat = w * grad_vec(g, a) + (1.0 - w) * grad_vec(g, b);
      const PrimalPoint cpt = grad_conjugate(g, DualPoint(mix_hat));
      const Vec u = g.map == MirrorMap::entropy ? rand_simplex_closure(rng, g.n)
                                                : rand_box(rng, g.n, -5, 5);
      const Vec v = g.map == MirrorMap::entropy ? rand_simplex_closure(rng, g.n)
                                                : rand_box(rng, g.n, -5, 5);
      const BregmanGap pair{PrimalPoint(u, SpaceTag::closure),
                            PrimalPoint(v, SpaceTag::closure)};
      const double lhs = w * gap(g, pair, PrimalPoint(a)) +
                         (1.0 - w) * gap(g, pair, PrimalPoint(b));
      const double rhs = gap(g, pair, cpt);
      if (std::abs(lhs - rhs) > 1e-10) h.fail(g.key() + " lhs=" + num(lhs) + " rhs=" + num(rhs));
    }
    report.items.push_back(h.it);
  }

  {
    Item h("projection_pythagorean", cases);
    for (std::int64_t c = 0; c < cases; ++c) {
      const MirrorGeometry g = pick_geometry(rng, 2 + int(rng() % 7));
      const Vec y = open_point(rng, g);
      const PrimalPoint proj = project(g, PrimalPoint(y));
      const Vec z = feasible_point(rng, g);
      const BregmanGap pair{PrimalPoint(z, SpaceTag::closure), proj};
      const double lhs = gap(g, pair, PrimalPoint(y));
      const double rhs = bregman_vec(g, z, proj.coords);
      if (lhs < rhs - 1e-10) h.fail(g.key() + " lhs=" + num(lhs) + " rhs=" + num(rhs));
    }
    report.items.push_back(h.it);
  }

  {
    Item h("generalized_projection", cases);
    for (std::int64_t c = 0; c < cases; ++c) {
      const MirrorGeometry g = pick_geometry(rng, 2 + int(rng() % 7));
      const Vec p = open_point(rng, g);
      const Vec qhat = rand_box(rng, g.n, -2, 2);
      const PrimalPoint proj = project(g, PrimalPoint(p));
      const Vec v = feasible_point(rng, g);
      const BregmanGap pair{PrimalPoint(v, SpaceTag::closure), proj};
      const double lhs =
          gap(g, pair, grad_conjugate(g, DualPoint(grad_vec(g, p) - qhat)));
      const double rhs = gap(
          g, pair, grad_conjugate(g, DualPoint(grad_vec(g, proj.coords) - qhat)));
      if (lhs < rhs - 1e-10) h.fail(g.key() + " lhs=" + num(lhs) + " rhs=" + num(rhs));
    }
    report.items.push_back(h.it);
  }

  {
    Item h("strong_convexity_move", cases);
    for (std::int64_t c = 0; c < cases; ++c) {
      const MirrorGeometry g = pick_geometry(rng, 2 + int(rng() % 7));
      const Vec x = g.feasible == FeasibleSet::simplex ? rand_simplex(rng, g.n)
                                                       : rand_box(rng, g.n, -5, 5);
      const Vec x2 = feasible_point(rng, g);
      const Vec qhat = rand_box(rng, g.n, -2, 2);
      const BregmanGap pair{PrimalPoint(x), PrimalPoint(x2, SpaceTag::closure)};
      const double lhs =
          gap(g, pair, grad_conjugate(g, DualPoint(grad_vec(g, x) - qhat)));
      const double dn = dual_norm(g, qhat);
      if (lhs > dn * dn / (2.0 * g.rho) + 1e-10)
        h.fail(g.key() + " lhs=" + num(lhs) + " qn=" + num(dn));
    }
    report.items.push_back(h.it);
  }

  {
    Item h("entropy_gap_bound_basics", cases);
    for (std::int64_t c = 0; c < cases; ++c) {
      const int n = 2 + int(rng() % 7);
      const Vec a = rand_simplex(rng, n);
      const Vec b = rand_pos(rng, n);
      const double lam = lambda_vec(a, b);
      if (lam < -1e-12) { h.fail("negative at a0=" + num(a[0])); continue; }
      const double scale = std::exp(unif(rng, -3, 3));
      if (std::abs(lambda_vec(a, Vec(scale * b)) - lam) > 1e-10) {
        h.fail("scale dependence at s=" + num(scale));
        continue;
      }
      const MirrorGeometry g = make_geometry("entropy-simplex", n);
      const Vec a2 = rand_simplex_closure(rng, n);
      const BregmanGap pair{PrimalPoint(a, SpaceTag::closure),
                            PrimalPoint(a2, SpaceTag::closure)};
      if (gap(g, pair, PrimalPoint(b)) > lam + 1e-10)
        h.fail("gap exceeds bound, lam=" + num(lam));
    }
    report.items.push_back(h.it);
  }

  {
    Item h("entropy_gap_second_order", cases);
    for (std::int64_t c = 0; c < cases; ++c) {
      const int n = 2 + int(rng() % 7);
      const Vec a = rand_simplex(rng, n);
      const Vec q = rand_box(rng, n, 0, 1);
      const double eta = unif(rng, 1e-3, 2.0);
      const Vec b = (a.array() * (-eta * q.array()).exp()).matrix();
      const double lam = lambda_vec(a, b);
      if (lam > 0.5 * eta * eta * a.dot(q) + 1e-10)
        h.fail("eta=" + num(eta) + " lam=" + num(lam));
      if (lam > eta * eta / 8.0 + 1e-10)
        h.fail("averaged bound: eta=" + num(eta) + " lam=" + num(lam));
    }
    report.items.push_back(h.it);
  }

  {
    Item h("composite_step_optimality", cases);
    for (std::int64_t c = 0; c < cases; ++c) {
      if (rng() % 2 == 0) {
        const int n = 2 + int(rng() % 7);
        const MirrorGeometry g = make_geometry("euclidean-free", n);
        CompositeRegularizer psi{PsiKind::l1_norm, unif(rng, 0.0, 1.0)};
        const double alpha = unif(rng, 0.0, 2.0);
        const Vec y = rand_box(rng, n, -3, 3);
        const Vec bar = composite_project(g, PrimalPoint(y), alpha, psi).coords;
        const Vec x = rand_box(rng, n, -3, 3);
        const double lhs = bregman_vec(g, x, bar) + bregman_vec(g, bar, y);
        const double rhs = bregman_vec(g, x, y) +
                           alpha * (psi.value(x) - psi.value(bar));
        if (lhs > rhs + 1e-10) h.fail("l1 case lhs=" + num(lhs) + " rhs=" + num(rhs));
      } else {
        const int n = 2 + int(rng() % 7);
        const MirrorGeometry g = make_geometry("entropy-simplex", n);
        CompositeRegularizer psi{PsiKind::simplex_indicator, 0.0};
        const Vec y = rand_pos(rng, n);
        const Vec bar = composite_project(g, PrimalPoint(y), unif(rng, 0, 2), psi).coords;
        const Vec x = rand_simplex(rng, n);
        const double lhs = bregman_vec(g, x, bar) + bregman_vec(g, bar, y);
        if (lhs > bregman_vec(g, x, y) + 1e-10)
          h.fail("indicator case lhs=" + num(lhs));
      }
    }
    report.items.push_back(h.it);
  }

  for (const auto& item : report.items)
    if (!item.pass) report.all_pass = false;
  return report;
}

ScalarCheckReport schedule_property_suite(std::uint64_t seed, std::int64_t cases) {
  ScalarCheckReport report;
  std::mt19937_64 rng(seed);

  auto make = [&](int pick, int n) {
    switch (pick) {
      case 0: return Schedule::constant(unif(rng, 0.05, 2.0));
      case 1: return Schedule::anytime(n);
      case 2: return Schedule::self_confident(n);
      case 3: return Schedule::da_lower_bound(n);
      default: return Schedule::doubling();
    }
  };

  {
    Item h("rate_nonincreasing", cases);
    for (std::int64_t c = 0; c < cases; ++c) {
      Schedule s = make(int(rng() % 5), 2 + int(rng() % 99));
      const std::int64_t T = 1 + std::int64_t(rng() % 200);
      for (std::int64_t t = 1; t <= T; ++t) {
        const double e1 = s.eta(t);
        s.observe(uniform01(rng));
        if (e1 < s.eta(t + 1) - 0.0) { h.fail("t=" + std::to_string(t)); break; }
      }
    }
    report.items.push_back(h.it);
  }

  {
    Item h("stabilization_exact_quotient", cases);
    for (std::int64_t c = 0; c < cases; ++c) {
      Schedule s = make(int(rng() % 4), 2 + int(rng() % 99));  // ratio kinds only
      const std::int64_t T = 1 + std::int64_t(rng() % 200);
      for (std::int64_t t = 1; t <= T; ++t) {
        s.observe(uniform01(rng));
        const double g = s.gamma(t);
        if (g != s.eta(t + 1) / s.eta(t) || !(g > 0.0) || g > 1.0) {
          h.fail("t=" + std::to_string(t) + " gamma=" + num(g));
          break;
        }
      }
    }
    report.items.push_back(h.it);
  }

  {
    Item h("doubling_restart_pattern", cases);
    for (std::int64_t c = 0; c < cases; ++c) {
      Schedule s = Schedule::doubling();
      const std::int64_t T = 2 + std::int64_t(rng() % 510);
      for (std::int64_t t = 1; t <= T; ++t) {
        s.observe(uniform01(rng));
        const double want_eta = std::pow(2.0, -0.5 * floor_log2(std::uint64_t(t)));
        if (std::abs(s.eta(t) - want_eta) > 1e-15 * want_eta) {
          h.fail("eta mismatch at t=" + std::to_string(t));
          break;
        }
        const bool restart = is_power_of_two(std::uint64_t(t) + 1);
        if (s.gamma(t) != (restart ? 0.0 : 1.0)) {
          h.fail("gamma mismatch at t=" + std::to_string(t));
          break;
        }
      }
      if (s.eta(5) != 0.5) h.fail("eta(5) != 1/2");
    }
    report.items.push_back(h.it);
  }

  for (const auto& item : report.items)
    if (!item.pass) report.all_pass = false;
  return report;
}

ScalarCheckReport algorithm_property_suite(std::uint64_t seed, std::int64_t cases) {
  ScalarCheckReport report;
  std::mt19937_64 rng(seed);

  auto schedule_for = [&](int pick, int n) {
    switch (pick) {
      case 0: return Schedule::constant(unif(rng, 0.05, 1.5));
      case 1: return Schedule::anytime(n);
      case 2: return Schedule::self_confident(n);
      default: return Schedule::doubling();
    }
  };

  {
    Item h("iterates_stay_feasible", cases);
    for (std::int64_t c = 0; c < cases; ++c) {
      const MirrorGeometry g = pick_geometry(rng, 2 + int(rng() % 7));
      AlgorithmKind kinds[] = {AlgorithmKind::omd, AlgorithmKind::ds_omd,
                               AlgorithmKind::ps_omd, AlgorithmKind::da,
                               AlgorithmKind::composite_ds_omd};
      const AlgorithmKind kind = kinds[rng() % 5];
      std::optional<CompositeRegularizer> psi;
      if (kind == AlgorithmKind::composite_ds_omd)
        psi = g.feasible == FeasibleSet::simplex
                  ? CompositeRegularizer{PsiKind::simplex_indicator, 0.0}
                  : CompositeRegularizer{PsiKind::l1_norm, unif(rng, 0, 0.5)};
      CostOracle oracle = g.feasible == FeasibleSet::simplex
                              ? CostOracle::iid_uniform(g.n, rng())
                              : CostOracle::quadratic(g.n, rng());
      const RunTrace trace =
          run(kind, g, schedule_for(int(rng() % 4), g.n), oracle, 30, std::nullopt, psi);
      for (const StepRecord& rec : trace.steps) {
        if (!rec.x_next.allFinite()) { h.fail("non-finite iterate"); break; }
        if (g.feasible == FeasibleSet::simplex) {
          if (std::abs(rec.x_next.sum() - 1.0) > 1e-12 || rec.x_next.minCoeff() < -1e-12) {
            h.fail(g.key() + " " + algorithm_kind_name(kind) + " t=" +
                   std::to_string(rec.t));
            break;
          }
          if (g.map == MirrorMap::entropy && rec.x_next.minCoeff() < 0.0) {
            h.fail("entropy iterate left the positive orthant");
            break;
          }
        }
      }
    }
    report.items.push_back(h.it);
  }

  {
    Item h("lazy_closed_form", cases);
    for (std::int64_t c = 0; c < cases; ++c) {
      const bool entropy = rng() % 2 == 0;
      const MirrorGeometry g =
          make_geometry(entropy ? "entropy-simplex" : "euclidean-free", 2 + int(rng() % 7));
      CostOracle oracle = entropy ? CostOracle::iid_uniform(g.n, rng())
                                  : CostOracle::quadratic(g.n, rng());
      const RunTrace trace =
          run(AlgorithmKind::da, g, schedule_for(int(rng() % 3), g.n), oracle, 30);
      Vec cum = Vec::Zero(g.n);
      for (const StepRecord& rec : trace.steps) {
        cum += rec.ghat;
        const Vec want = trace.xhat1 - rec.eta_next * cum;
        if ((rec.yhat_next - want).lpNorm<Eigen::Infinity>() > 1e-10) {
          h.fail(g.key() + " t=" + std::to_string(rec.t));
          break;
        }
      }
    }
    report.items.push_back(h.it);
  }

  {
    Item h("constant_rate_collapse", cases);
    for (std::int64_t c = 0; c < cases; ++c) {
      const int n = 2 + int(rng() % 7);
      const MirrorGeometry g = make_geometry("entropy-simplex", n);
      const double eta0 = unif(rng, 0.05, 1.5);
      const std::uint64_t s = rng();
      AlgorithmKind kinds[] = {AlgorithmKind::omd, AlgorithmKind::ds_omd,
                               AlgorithmKind::ps_omd, AlgorithmKind::da,
                               AlgorithmKind::composite_ds_omd};
      std::vector<RunTrace> traces;
      for (AlgorithmKind kind : kinds) {
        std::optional<CompositeRegularizer> psi;
        if (kind == AlgorithmKind::composite_ds_omd)
          psi = CompositeRegularizer{PsiKind::simplex_indicator, 0.0};
        traces.push_back(run(kind, g, Schedule::constant(eta0),
                             CostOracle::iid_uniform(n, s), 20, std::nullopt, psi));
      }
      for (std::size_t t = 0; t < 20; ++t) {
        for (std::size_t k = 1; k < traces.size(); ++k) {
          const double d = (traces[k].steps[t].x_next - traces[0].steps[t].x_next)
                               .lpNorm<Eigen::Infinity>();
          if (d > 1e-10) h.fail("kind " + std::to_string(k) + " drifted " + num(d));
        }
        /* the dual-stabilized template with weight 1 must be bit-identical */
        if ((traces[1].steps[t].x_next - traces[0].steps[t].x_next)
                .lpNorm<Eigen::Infinity>() != 0.0)
          h.fail("stabilized/vanilla collapse is not exact at t=" + std::to_string(t + 1));
      }
    }
    report.items.push_back(h.it);
  }

  {
    Item h("doubling_blocks_replay", cases);
    for (std::int64_t c = 0; c < cases; ++c) {
      const int n = 2 + int(rng() % 5);
      const MirrorGeometry g = make_geometry("entropy-simplex", n);
      const RunTrace trace = run(AlgorithmKind::ds_omd, g, Schedule::doubling(),
                                 CostOracle::iid_uniform(n, rng()), 64);
      for (int block = 0; (std::int64_t(1) << block) <= 64; ++block) {
        const std::int64_t lo = std::int64_t(1) << block;
        const std::int64_t hi = std::min<std::int64_t>(64, (lo << 1) - 1);
        if (lo > trace.T()) break;
        Learner ref(AlgorithmKind::omd, g,
                    Schedule::constant(1.0 / std::sqrt(double(lo))));
        for (std::int64_t t = lo; t <= hi; ++t) {
          const StepRecord& rec = trace.steps[std::size_t(t) - 1];
          ref.step(rec.ghat, rec.loss);
          /* the replayed block must reproduce every iterate except the final
           * restart round, whose stabilized iterate snaps back to x1 */
          const bool restart = is_power_of_two(std::uint64_t(t) + 1);
          const Vec& want = restart ? trace.x1 : rec.x_next;
          if ((ref.iterate() - want).lpNorm<Eigen::Infinity>() > 1e-10 && !restart) {
            h.fail("block " + std::to_string(block) + " t=" + std::to_string(t));
            break;
          }
          if (restart && (rec.x_next - trace.x1).lpNorm<Eigen::Infinity>() > 1e-10) {
            h.fail("restart round did not return to the start point");
            break;
          }
        }
      }
    }
    report.items.push_back(h.it);
  }

  {
    Item h("order_blind_averaging", cases);
    double max_vanilla_gap = 0.0;
    for (std::int64_t c = 0; c < cases; ++c) {
      const int n = 2 + int(rng() % 3);
      const MirrorGeometry g = make_geometry("entropy-simplex", n);
      const int m = 20;
      std::vector<Vec> costs;
      for (int i = 0; i < m; ++i) costs.push_back(rand_box(rng, n, 0, 1));
      std::vector<int> perm(m);
      for (int i = 0; i < m; ++i) perm[i] = i;
      std::shuffle(perm.begin(), perm.end(), rng);

      auto final_iterate = [&](AlgorithmKind kind, bool shuffled) {
        Learner l(kind, g, Schedule::anytime(n));
        for (int i = 0; i < m; ++i) {
          const Vec& ghat = costs[std::size_t(shuffled ? perm[i] : i)];
          l.step(ghat, ghat.dot(l.iterate()));
        }
        return l.iterate();
      };

      const double da_gap =
          (final_iterate(AlgorithmKind::da, false) - final_iterate(AlgorithmKind::da, true))
              .lpNorm<Eigen::Infinity>();
      if (da_gap > 1e-10) h.fail("averaged iterate moved " + num(da_gap));
      const double om_gap =
          (final_iterate(AlgorithmKind::omd, false) - final_iterate(AlgorithmKind::omd, true))
              .lpNorm<Eigen::Infinity>();
      max_vanilla_gap = std::max(max_vanilla_gap, om_gap);
    }
    if (max_vanilla_gap <= 1e-3)
      h.fail("no permutation moved the vanilla iterate; max gap " + num(max_vanilla_gap));
    report.items.push_back(h.it);
  }

  for (const auto& item : report.items)
    if (!item.pass) report.all_pass = false;
  return report;
}

ScalarCheckReport bounds_property_suite(std::uint64_t seed, std::int64_t cases) {
  ScalarCheckReport report;
  std::mt19937_64 rng(seed);

  {
    Item h("one_step_guarantee_slack", cases);
    for (std::int64_t c = 0; c < cases; ++c) {
      const int combo = int(c % 12);
      const std::uint64_t s = rng();
      const int n = 2 + int(rng() % 7);
      const std::int64_t T = 20;
      RunTrace trace;
      switch (combo) {
        case 0:
          trace = run(AlgorithmKind::ds_omd, make_geometry("entropy-simplex", n),
                      Schedule::anytime(n), CostOracle::iid_uniform(n, s), T);
          break;
        case 1:
          trace = run(AlgorithmKind::ds_omd, make_geometry("entropy-simplex", n),
                      Schedule::self_confident(n), CostOracle::iid_uniform(n, s), T);
          break;
        case 2:
          trace = run(AlgorithmKind::da, make_geometry("entropy-simplex", n),
                      Schedule::anytime(n),
                      CostOracle::best_expert_low(n, s, int(rng() % n), 0.1), T);
          break;
        case 3:
          trace = run(AlgorithmKind::ps_omd, make_geometry("entropy-simplex", n),
                      Schedule::anytime(n), CostOracle::iid_uniform(n, s), T);
          break;
        case 4:
          trace = run(AlgorithmKind::omd, make_geometry("entropy-simplex", n),
                      Schedule::constant(unif(rng, 0.05, 1.5)),
                      CostOracle::iid_uniform(n, s), T);
          break;
        case 5:
          trace = run(AlgorithmKind::ds_omd, make_geometry("euclidean-simplex", n),
                      Schedule::anytime(n), CostOracle::iid_uniform(n, s), T);
          break;
        case 6:
          trace = run(AlgorithmKind::da, make_geometry("euclidean-free", n),
                      Schedule::anytime(n), CostOracle::quadratic(n, s), T);
          break;
        case 7:
          trace = run(AlgorithmKind::ds_omd, make_geometry("euclidean-free", n),
                      Schedule::self_confident(n), CostOracle::quadratic(n, s), T);
          break;
        case 8:
          trace = run(AlgorithmKind::ps_omd, make_geometry("euclidean-free", n),
                      Schedule::anytime(n), CostOracle::quadratic(n, s), T);
          break;
        case 9:
          trace = run(AlgorithmKind::composite_ds_omd, make_geometry("euclidean-free", n),
                      Schedule::anytime(n), CostOracle::quadratic(n, s), T, std::nullopt,
                      CompositeRegularizer{PsiKind::l1_norm, unif(rng, 0.0, 0.5)});
          break;
        case 10:
          trace = run(AlgorithmKind::composite_ds_omd, make_geometry("entropy-simplex", n),
                      Schedule::anytime(n), CostOracle::iid_uniform(n, s), T, std::nullopt,
                      CompositeRegularizer{PsiKind::simplex_indicator, 0.0});
          break;
        default:
          trace = run(AlgorithmKind::da, make_geometry("entropy-simplex", 2),
                      Schedule::da_lower_bound(2),
                      CostOracle::alternating_lower_bound(T), T);
          break;
      }
      const BoundReport b = corollary_bounds(trace);
      if (!b.theorem_applicable) { h.fail("guarantee unexpectedly inapplicable, combo " + std::to_string(combo)); continue; }
      if (!(b.min_slack >= -1e-9))
        h.fail("combo " + std::to_string(combo) + " slack " + num(b.min_slack) +
               " at prefix " + std::to_string(b.argmin_slack));
      for (const auto& [name, rhs] : b.corollaries)
        for (std::size_t i = 0; i < rhs.size(); ++i)
          if (b.regret[i] > rhs[i] + 1e-9)
            h.fail("combo " + std::to_string(combo) + " " + name + " violated at prefix " +
                   std::to_string(i + 1) + " by " + num(b.regret[i] - rhs[i]));
    }
    report.items.push_back(h.it);
  }

  {
    Item h("entropy_gap_dominates", cases);
    for (std::int64_t c = 0; c < cases; ++c) {
      const int n = 2 + int(rng() % 5);
      AlgorithmKind kinds[] = {AlgorithmKind::ds_omd, AlgorithmKind::da, AlgorithmKind::ps_omd};
      const MirrorGeometry g = make_geometry("entropy-simplex", n);
      Schedule sched = rng() % 2 == 0 ? Schedule::anytime(n) : Schedule::self_confident(n);
      const RunTrace trace =
          run(kinds[c % 3], g, std::move(sched), CostOracle::iid_uniform(n, rng()), 20);
      const BoundReport b = corollary_bounds(trace);
      const auto it = b.corollaries.find("entropy_gap");
      if (it == b.corollaries.end()) { h.fail("entropy_gap missing"); continue; }
      for (std::size_t i = 0; i < it->second.size(); ++i)
        if (it->second[i] < b.theorem_rhs[i] - 1e-9) {
          h.fail("looser form undercut the trajectory form at prefix " +
                 std::to_string(i + 1) + " by " + num(b.theorem_rhs[i] - it->second[i]));
          break;
        }
    }
    report.items.push_back(h.it);
  }

  {
    Item h("anytime_root_regret", cases);
    const int ns[] = {2, 10, 100};
    AlgorithmKind kinds[] = {AlgorithmKind::ds_omd, AlgorithmKind::ps_omd, AlgorithmKind::da};
    for (std::int64_t c = 0; c < cases; ++c) {
      const int n = ns[c % 3];
      const AlgorithmKind kind = kinds[(c / 3) % 3];
      const MirrorGeometry g = make_geometry("entropy-simplex", n);
      const RunTrace trace =
          run(kind, g, Schedule::anytime(n), CostOracle::iid_uniform(n, rng()), 150);
      const BoundReport b = corollary_bounds(trace);
      for (std::size_t i = 0; i < b.regret.size(); ++i)
        if (b.regret[i] > std::sqrt(double(i + 1) * std::log(double(n))) + 1e-9) {
          h.fail(algorithm_kind_name(kind) + " n=" + std::to_string(n) +
                 " prefix " + std::to_string(i + 1) + " regret " + num(b.regret[i]));
          break;
        }
    }
    report.items.push_back(h.it);
  }

  {
    Item h("small_loss_regret", cases);
    AlgorithmKind kinds[] = {AlgorithmKind::ds_omd, AlgorithmKind::ps_omd, AlgorithmKind::da};
    for (std::int64_t c = 0; c < cases; ++c) {
      const int n = c % 2 == 0 ? 2 : 10;
      const std::uint64_t s = rng();
      CostOracle oracle = [&]() {
        switch (c % 3) {
          case 0: return CostOracle::iid_uniform(n, s);
          case 1: return CostOracle::best_expert_low(n, s, int(rng() % n), 0.0);
          default: return CostOracle::best_expert_low(n, s, int(rng() % n), 0.1);
        }
      }();
      const MirrorGeometry g = make_geometry("entropy-simplex", n);
      const RunTrace trace =
          run(kinds[(c / 3) % 3], g, Schedule::self_confident(n), std::move(oracle), 150);
      const BoundReport b = corollary_bounds(trace);
      const auto it = b.corollaries.find("first_order");
      if (it == b.corollaries.end()) { h.fail("first_order missing"); continue; }
      for (std::size_t i = 0; i < it->second.size(); ++i)
        if (b.regret[i] > it->second[i] + 1e-9) {
          h.fail("prefix " + std::to_string(i + 1) + " regret " + num(b.regret[i]) +
                 " rhs " + num(it->second[i]));
          break;
        }
    }
    report.items.push_back(h.it);
  }

  for (const auto& item : report.items)
    if (!item.pass) report.all_pass = false;
  return report;
}

}  // namespace pace
