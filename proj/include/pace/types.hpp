#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>

namespace pace {

using Vec = Eigen::VectorXd;

/* Coordinates this small are treated as exact zeros when entropy terms or
 * boundary checks are involved; keeps 0*log(0) conventions consistent. */
inline constexpr double kZeroClamp = 1e-300;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : Error { using Error::Error; };          // point outside the map's domain
struct OverflowError : Error { using Error::Error; };        // exp would overflow
struct UnsupportedCombination : Error { using Error::Error; };
struct OrderError : Error { using Error::Error; };           // out-of-order schedule/oracle use
struct ValueError : Error { using Error::Error; };
struct StateError : Error { using Error::Error; };
struct InitError : Error { using Error::Error; };
struct MissingIntermediate : Error { using Error::Error; };
struct NotApplicableError : Error { using Error::Error; };
struct UnsupportedCost : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

enum class SpaceTag { open_domain, closure };

/* A point in the primal space, tagged with whether it is promised to lie in
 * the open domain of the mirror map or merely in its closure. */
struct PrimalPoint {
  Vec coords;
  SpaceTag tag = SpaceTag::open_domain;

  PrimalPoint() = default;
  explicit PrimalPoint(Vec c, SpaceTag t = SpaceTag::open_domain)
      : coords(std::move(c)), tag(t) {}
  Eigen::Index size() const { return coords.size(); }
};

struct DualPoint {
  Vec coords;

  DualPoint() = default;
  explicit DualPoint(Vec c) : coords(std::move(c)) {}
  Eigen::Index size() const { return coords.size(); }
};

}  // namespace pace
