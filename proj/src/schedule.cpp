#include "pace/schedule.hpp"

#include <cmath>

#include "pace/numerics.hpp"

namespace pace {

ScheduleKind schedule_kind_from(const std::string& name) {
  if (name == "constant") return ScheduleKind::constant;
  if (name == "anytime") return ScheduleKind::anytime;
  if (name == "self_confident") return ScheduleKind::self_confident;
  if (name == "doubling") return ScheduleKind::doubling;
  if (name == "da_lower_bound") return ScheduleKind::da_lower_bound;
  throw ConfigError("unknown schedule kind: " + name);
}

std::string schedule_kind_name(ScheduleKind k) {
  switch (k) {
    case ScheduleKind::constant: return "constant";
    case ScheduleKind::anytime: return "anytime";
    case ScheduleKind::self_confident: return "self_confident";
    case ScheduleKind::doubling: return "doubling";
    case ScheduleKind::da_lower_bound: return "da_lower_bound";
  }
  return "?";
}

Schedule::Schedule(ScheduleKind k, double eta0, int n) : kind_(k), eta0_(eta0) {
  if (k != ScheduleKind::constant && k != ScheduleKind::doubling) {
    if (n < 2) throw ValueError("schedule needs n >= 2 so that log(n) > 0");
    log_n_ = std::log(double(n));
  }
  cum_.push_back(0.0);
}

Schedule Schedule::constant(double eta0) {
  if (!(eta0 > 0.0) || !std::isfinite(eta0))
    throw ValueError("constant schedule needs eta0 > 0");
  return Schedule(ScheduleKind::constant, eta0, 0);
}

Schedule Schedule::anytime(int n) { return Schedule(ScheduleKind::anytime, 0.0, n); }

Schedule Schedule::self_confident(int n) {
  return Schedule(ScheduleKind::self_confident, 0.0, n);
}

Schedule Schedule::doubling() { return Schedule(ScheduleKind::doubling, 0.0, 0); }

Schedule Schedule::da_lower_bound(int n) {
  return Schedule(ScheduleKind::da_lower_bound, 0.0, n);
}

double Schedule::eta(std::int64_t t) const {
  if (t < 1) throw ValueError("eta is defined for rounds t >= 1");
  switch (kind_) {
    case ScheduleKind::constant:
      return eta0_;
    case ScheduleKind::anytime:
      return 2.0 * std::sqrt(log_n_ / double(t));
    case ScheduleKind::da_lower_bound:
      return std::sqrt(4.0 * log_n_ / double(t));
    case ScheduleKind::doubling:
      return 1.0 / std::sqrt(double(std::uint64_t(1) << floor_log2(std::uint64_t(t))));
    case ScheduleKind::self_confident: {
      if (t > observed_ + 1)
        throw OrderError("self_confident eta(t) needs losses 1..t-1 observed first");
      return std::sqrt(log_n_ / (1.0 + cum_[std::size_t(t) - 1]));
    }
  }
  throw StateError("unreachable schedule kind");
}

double Schedule::gamma(std::int64_t t) const {
  if (t < 1) throw ValueError("gamma is defined for rounds t >= 1");
  if (kind_ == ScheduleKind::doubling)
    return is_power_of_two(std::uint64_t(t) + 1) ? 0.0 : 1.0;
  if (kind_ == ScheduleKind::self_confident && t > observed_)
    throw OrderError("self_confident gamma(t) needs losses 1..t observed first");
  return eta(t + 1) / eta(t);
}

void Schedule::observe(double loss) {
  if (!std::isfinite(loss) || loss < 0.0)
    throw ValueError("observed loss must be finite and >= 0");
  ++observed_;
  if (kind_ == ScheduleKind::self_confident) cum_.push_back(cum_.back() + loss);
  else cum_.back() += loss;
}

}  // namespace pace
