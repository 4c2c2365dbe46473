#pragma once

#include "pace/bounds.hpp"

namespace pace {

/* Randomized property suites. Each returns one item per property with the
 * case count it ran and the first counterexample if one was found. The same
 * suites back the `selfcheck` subcommand, the unit tests, and the acceptance
 * run, so a failure reproduces identically from all three. */

ScalarCheckReport geometry_property_suite(std::uint64_t seed, std::int64_t cases);
ScalarCheckReport schedule_property_suite(std::uint64_t seed, std::int64_t cases);
ScalarCheckReport algorithm_property_suite(std::uint64_t seed, std::int64_t cases);
ScalarCheckReport bounds_property_suite(std::uint64_t seed, std::int64_t cases);

}  // namespace pace
