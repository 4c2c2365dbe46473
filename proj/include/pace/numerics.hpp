#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

/* Low-level kernels shared by the geometry and the learners. Templated on the
 * Eigen expression so they stay allocation-free on mapped/segmented inputs. */

namespace pace {

/* log(sum_i exp(v_i)), recentered by the max so it never overflows and loses
 * as little as possible to cancellation. */
template <typename Derived>
typename Derived::Scalar log_sum_exp(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  const Scalar m = v.maxCoeff();
  if (!(m > -std::numeric_limits<Scalar>::infinity())) return m;
  return m + std::log((v.array() - m).exp().sum());
}

template <typename Scalar>
Scalar soft_threshold(Scalar v, Scalar thr) {
  if (v > thr) return v - thr;
  if (v < -thr) return v + thr;
  return Scalar(0);
}

/* Euclidean projection onto the probability simplex via the descending
 * cumulative-sum threshold rule. */
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> project_simplex_l2(
    const Eigen::MatrixBase<Derived>& y) {
  using Scalar = typename Derived::Scalar;
  using V = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index n = y.size();
  V u = y;
  std::sort(u.data(), u.data() + n, std::greater<Scalar>());
  Scalar css = 0;
  Scalar theta = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    css += u[j];
    const Scalar cand = (Scalar(1) - css) / Scalar(j + 1);
    if (u[j] + cand > Scalar(0)) theta = cand;
  }
  V x = (y.array() + theta).cwiseMax(Scalar(0));
  return x;
}

inline bool is_power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

/* floor(log2(t)) for t >= 1 */
inline int floor_log2(std::uint64_t t) {
  int k = -1;
  while (t) { t >>= 1; ++k; }
  return k;
}

/* Uniform double in [0,1) from the top 53 bits of the generator output; avoids
 * std::uniform_real_distribution so streams are stable across library builds. */
template <typename Rng>
double uniform01(Rng& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

}  // namespace pace
