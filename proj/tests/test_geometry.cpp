#include <doctest.h>

#include <cmath>
#include <random>

#include "pace/geometry.hpp"
#include "pace/numerics.hpp"

using namespace pace;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("geometry keys build the advertised map/set/norm triples") {
  const MirrorGeometry ent = make_geometry("entropy-simplex", 3);
  CHECK(ent.map == MirrorMap::entropy);
  CHECK(ent.feasible == FeasibleSet::simplex);
  CHECK(ent.norm == NormKind::l1);
  CHECK(ent.rho == 1.0);
  CHECK(ent.key() == "entropy-simplex");

  CHECK(make_geometry("euclidean-free", 2).feasible == FeasibleSet::all_space);
  CHECK(make_geometry("euclidean-simplex", 2).norm == NormKind::l2);
  CHECK_THROWS_AS(make_geometry("entropy-box", 2), UnsupportedCombination);
  CHECK_THROWS_AS(make_geometry("entropy-simplex", 0), ValueError);
}

TEST_CASE("entropy gradient and inverse at hand-computed points") {
  const MirrorGeometry g = make_geometry("entropy-simplex", 2);
  const Vec xhat = grad_vec(g, v2(0.5, 0.5));
  CHECK(xhat[0] == doctest::Approx(0.30685281944005469).epsilon(1e-15));
  CHECK(xhat[1] == xhat[0]);

  const Vec back = grad_conjugate(g, DualPoint(xhat)).coords;
  CHECK(back[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(back[1] == doctest::Approx(0.5).epsilon(1e-14));

  // grad phi*(0) = exp(-1) coordinatewise
  const Vec at_zero = grad_conjugate_vec(g, Vec::Zero(2));
  CHECK(at_zero[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));

  // euclidean maps are the identity in both directions
  const MirrorGeometry e = make_geometry("euclidean-free", 2);
  const Vec p = v2(-1.5, 2.25);
  CHECK((grad_vec(e, p) - p).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK((grad_conjugate_vec(e, p) - p).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("divergence values: corner vs uniform is log 2, self-distance is zero") {
  const MirrorGeometry g = make_geometry("entropy-simplex", 2);
  const double d = bregman(g, PrimalPoint(v2(1.0, 0.0), SpaceTag::closure),
                           PrimalPoint(v2(0.5, 0.5)));
  CHECK(d == doctest::Approx(0.69314718055994531).epsilon(1e-15));
  CHECK(bregman_vec(g, v2(0.3, 0.7), v2(0.3, 0.7)) == doctest::Approx(0.0));

  const MirrorGeometry e = make_geometry("euclidean-free", 2);
  const Vec a = v2(1.0, -2.0), b = v2(0.25, 0.5);
  CHECK(bregman_vec(e, a, b) ==
        doctest::Approx(0.5 * (a - b).squaredNorm()).epsilon(1e-15));
}

TEST_CASE("three-slot gap matches its defining expression") {
  std::mt19937_64 rng(7);
  for (const char* key : {"entropy-simplex", "euclidean-free"}) {
    const MirrorGeometry g = make_geometry(key, 4);
    for (int c = 0; c < 50; ++c) {
      Vec a(4), b(4), cc(4);
      for (int i = 0; i < 4; ++i) {
        const double u = uniform01(rng), v = uniform01(rng), w = uniform01(rng);
        a[i] = g.map == MirrorMap::entropy ? 0.05 + u : 4.0 * u - 2.0;
        b[i] = g.map == MirrorMap::entropy ? 0.05 + v : 4.0 * v - 2.0;
        cc[i] = g.map == MirrorMap::entropy ? 0.05 + w : 4.0 * w - 2.0;
      }
      const Vec chat = grad_vec(g, cc);
      const double want = phi_value(g, a) - phi_value(g, b) - chat.dot(a - b);
      CHECK(gap_vec(g, a, b, chat) == doctest::Approx(want).epsilon(1e-12));
      // and it is exactly the difference of divergences around c
      const double diff = bregman_vec(g, a, cc) - bregman_vec(g, b, cc);
      CHECK(gap_vec(g, a, b, chat) == doctest::Approx(diff).epsilon(1e-10));
    }
  }
}

TEST_CASE("reweighting penalty: hand values, nonnegativity, scale freedom") {
  const Vec a = v2(0.5, 0.5);
  CHECK(lambda_vec(a, v2(0.25, 0.75)) ==
        doctest::Approx(0.14384103622589046).epsilon(1e-15));
  CHECK(std::abs(lambda_vec(a, a)) <= 1e-15);

  // one multiplicative-update move at rate 1: penalty 0.1201... <= 1/8
  const Vec moved = v2(0.5 * std::exp(-1.0), 0.5);
  const double lam = lambda_vec(a, moved);
  CHECK(lam == doctest::Approx(0.12011450695827752).epsilon(1e-15));
  CHECK(lam <= 1.0 / 8.0);

  CHECK(lambda_vec(a, Vec(100.0 * moved)) == doctest::Approx(lam).epsilon(1e-12));
  CHECK_THROWS_AS(lambda_vec(v2(0.2, 0.2), a), DomainError);
  CHECK_THROWS_AS(lambda_vec(a, v2(0.5, 0.0)), DomainError);
}

TEST_CASE("simplex projections: normalization for entropy, threshold rule for l2") {
  const MirrorGeometry g = make_geometry("entropy-simplex", 2);
  const Vec p = project(g, PrimalPoint(v2(2.0, 2.0))).coords;
  CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-15));
  const Vec q = project(g, PrimalPoint(v2(0.2, 0.6))).coords;
  CHECK(q[0] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(q[1] == doctest::Approx(0.75).epsilon(1e-14));

  // dual-space route survives huge offsets (no exp overflow)
  Vec big(2), out(2), prim(2);
  big << 1000.0, 1000.0 + std::log(3.0);
  project_dual(g, big, out);
  primal_of_dual(g, out, prim);
  CHECK(prim[0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(prim[1] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(prim.sum() == doctest::Approx(1.0).epsilon(1e-12));

  const MirrorGeometry e = make_geometry("euclidean-simplex", 2);
  const Vec r = project(e, PrimalPoint(v2(1.2, -0.2), SpaceTag::closure)).coords;
  CHECK(r[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r[1] == doctest::Approx(0.0));
  const Vec s = project(e, PrimalPoint(v2(2.0, 2.0))).coords;
  CHECK(s[0] == doctest::Approx(0.5).epsilon(1e-15));

  Vec t3(3);
  t3 << 0.3, 0.3, 0.3;
  const Vec t = project_simplex_l2(t3);
  CHECK(t.sum() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(t[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("l2 simplex projection agrees with a brute-force grid search") {
  std::mt19937_64 rng(11);
  for (int c = 0; c < 20; ++c) {
    const Vec y = v2(4.0 * uniform01(rng) - 2.0, 4.0 * uniform01(rng) - 2.0);
    const Vec p = project_simplex_l2(y);
    double best = 1e300, best_a = 0.0;
    for (int i = 0; i <= 20000; ++i) {
      const double a = double(i) / 20000.0;
      const double d = (y[0] - a) * (y[0] - a) + (y[1] - (1.0 - a)) * (y[1] - (1.0 - a));
      if (d < best) { best = d; best_a = a; }
    }
    CHECK(p[0] == doctest::Approx(best_a).epsilon(1e-3));
    CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(p.minCoeff() >= 0.0);
  }
}

TEST_CASE("soft threshold: closed form and a dense grid search agree") {
  CHECK(soft_threshold(3.0, 0.5) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(soft_threshold(-1.0, 0.5) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(soft_threshold(0.2, 0.5) == 0.0);
  CHECK(soft_threshold(0.2, 0.0) == 0.2);

  std::mt19937_64 rng(3);
  for (int c = 0; c < 20; ++c) {
    const double yv = 6.0 * uniform01(rng) - 3.0;
    const double lam = 1.5 * uniform01(rng);
    double best = 1e300, best_x = 0.0;
    for (int i = -40000; i <= 40000; ++i) {
      const double x = double(i) / 10000.0;
      const double obj = 0.5 * (x - yv) * (x - yv) + lam * std::abs(x);
      if (obj < best) { best = obj; best_x = x; }
    }
    CHECK(soft_threshold(yv, lam) == doctest::Approx(best_x).epsilon(2e-4));
  }
}

TEST_CASE("composite projection: l1 shrinks on the free set, indicator normalizes") {
  const MirrorGeometry e = make_geometry("euclidean-free", 2);
  const CompositeRegularizer l1{PsiKind::l1_norm, 0.4};
  const Vec x = composite_project(e, PrimalPoint(v2(2.0, -0.1)), 1.0, l1).coords;
  CHECK(x[0] == doctest::Approx(1.6).epsilon(1e-15));
  CHECK(x[1] == doctest::Approx(0.0));
  CHECK(l1.value(v2(1.0, -2.0)) == doctest::Approx(1.2).epsilon(1e-15));

  const MirrorGeometry g = make_geometry("entropy-simplex", 2);
  const CompositeRegularizer ind{PsiKind::simplex_indicator, 0.0};
  const Vec z = composite_project(g, PrimalPoint(v2(0.1, 0.3)), 2.0, ind).coords;
  CHECK(z[0] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(ind.value(z) == 0.0);

  CHECK_THROWS_AS(composite_project(g, PrimalPoint(v2(0.5, 0.5)), 1.0, l1),
                  UnsupportedCombination);
  CHECK_THROWS_AS(composite_project(e, PrimalPoint(v2(0.5, 0.5)), -1.0, l1),
                  ValueError);
}

TEST_CASE("domain violations are rejected with typed errors") {
  const MirrorGeometry g = make_geometry("entropy-simplex", 2);
  CHECK_THROWS_AS(grad_vec(g, v2(-0.1, 1.1)), DomainError);
  CHECK_THROWS_AS(grad_conjugate_vec(g, v2(800.0, 0.0)), OverflowError);
  CHECK_THROWS_AS(bregman_vec(g, v2(0.5, 0.5), v2(0.5, 0.0)), DomainError);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(grad_vec(g, v2(inf, 0.5)), DomainError);

  MirrorGeometry box = make_geometry("entropy-simplex", 2);
  box.feasible = FeasibleSet::box;
  Vec out(2);
  CHECK_THROWS_AS(project_dual(box, v2(0.0, 0.0), out), UnsupportedCombination);
}

TEST_CASE("dual norms pair l1 with max and l2 with itself") {
  const MirrorGeometry g = make_geometry("entropy-simplex", 2);
  const MirrorGeometry e = make_geometry("euclidean-free", 2);
  const Vec v = v2(3.0, -4.0);
  CHECK(dual_norm(g, v) == 4.0);
  CHECK(dual_norm(e, v) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("log-sum-exp is exact on small inputs and immune to large shifts") {
  Vec v = v2(0.0, 0.0);
  CHECK(log_sum_exp(v) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  Vec w = v2(1000.0, 1000.0);
  CHECK(log_sum_exp(w) == doctest::Approx(1000.0 + std::log(2.0)).epsilon(1e-15));
  Vec u = v2(-1.0e5, 3.0);
  CHECK(log_sum_exp(u) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("power-of-two helpers used by the restart schedule") {
  CHECK(is_power_of_two(1));
  CHECK(is_power_of_two(64));
  CHECK(!is_power_of_two(0));
  CHECK(!is_power_of_two(6));
  CHECK(floor_log2(1) == 0);
  CHECK(floor_log2(5) == 2);
  CHECK(floor_log2(64) == 6);
  CHECK(floor_log2(65) == 6);
}
