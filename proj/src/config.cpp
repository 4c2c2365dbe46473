#include "pace/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace pace {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  }
}

std::int64_t parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long i = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected an integer, got '" + v + "'");
  }
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const unsigned long long i = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected an unsigned integer, got '" + v + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key + ": expected a boolean, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

bool is_linear_scenario(const std::string& s) {
  return s == "iid_uniform" || s == "best_expert_low" ||
         s == "alternating_lower_bound" || s == "greedy_adaptive";
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
  if (key == "algorithm.kind") algorithm = value;
  else if (key == "algorithm.psi") psi = value;
  else if (key == "algorithm.psi_lambda") psi_lambda = parse_double(key, value);
  else if (key == "algorithm.assume_second_arg_convex")
    assume_second_arg_convex = parse_bool(key, value);
  else if (key == "geometry") geometry = value;
  else if (key == "schedule.kind") schedule = value;
  else if (key == "schedule.eta0") eta0 = parse_double(key, value);
  else if (key == "schedule.n") schedule_n = int(parse_int(key, value));
  else if (key == "scenario.kind") scenario = value;
  else if (key == "scenario.jstar") jstar = int(parse_int(key, value));
  else if (key == "scenario.p") p = parse_double(key, value);
  else if (key == "scenario.T") scenario_T = parse_int(key, value);
  else if (key == "scenario.tau_log_base") tau_log_base = parse_double(key, value);
  else if (key == "seed") seed = parse_uint(key, value);
  else if (key == "n") n = int(parse_int(key, value));
  else if (key == "T") T = parse_int(key, value);
  else if (key == "output") output = value;
  else if (key == "checks") checks = split_list(value);
  else throw ConfigError("unknown config key: " + key);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected 'key = value'");
    try {
      cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

void apply_override(RunConfig& cfg, const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override must look like key=value: " + kv);
  cfg.set(trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
}

void RunConfig::validate() const {
  const AlgorithmKind kind = algorithm_kind();       // throws on unknown
  const MirrorGeometry geom = make_geom();           // throws on unknown key
  schedule_kind_from(schedule);

  if (n < 1) throw ConfigError("n must be >= 1");
  if (T < 1) throw ConfigError("T must be >= 1");

  if (psi != "none" && psi != "l1" && psi != "simplex_indicator")
    throw ConfigError("algorithm.psi must be none, l1, or simplex_indicator");
  if (kind == AlgorithmKind::composite_ds_omd) {
    if (psi == "none")
      throw ConfigError("composite_ds_omd needs algorithm.psi");
    if (psi == "l1" && geometry != "euclidean-free")
      throw ConfigError("the l1 regularizer is only wired for euclidean-free");
    if (psi == "l1" && !(psi_lambda >= 0.0))
      throw ConfigError("algorithm.psi_lambda must be >= 0");
    if (psi == "simplex_indicator" && geom.feasible != FeasibleSet::simplex)
      throw ConfigError("the simplex indicator needs a simplex geometry");
  } else if (psi != "none") {
    throw ConfigError("algorithm.psi is only meaningful for composite_ds_omd");
  }

  if (kind == AlgorithmKind::ps_omd && geom.map == MirrorMap::euclidean &&
      !assume_second_arg_convex)
    throw ConfigError(
        "ps_omd relies on the divergence being convex in its second argument; "
        "this holds for the entropy map, for " + geometry +
        " assert it explicitly with algorithm.assume_second_arg_convex = true");

  const ScheduleKind sk = schedule_kind_from(schedule);
  if (sk == ScheduleKind::constant && !(eta0 > 0.0))
    throw ConfigError("constant schedule needs schedule.eta0 > 0");
  if (sk != ScheduleKind::constant && sk != ScheduleKind::doubling &&
      (schedule_n == 0 ? n : schedule_n) < 2)
    throw ConfigError("schedule needs n >= 2 so that log(n) > 0");

  if (!is_linear_scenario(scenario) && scenario != "quadratic")
    throw ConfigError("unknown scenario kind: " + scenario);
  if (is_linear_scenario(scenario) && geom.feasible != FeasibleSet::simplex)
    throw ConfigError("linear cost streams need a simplex geometry (comparator)");
  if (scenario == "quadratic" && geometry == "entropy-simplex")
    throw ConfigError("the quadratic stream is wired for euclidean geometries");
  if (scenario == "alternating_lower_bound") {
    if (n != 2) throw ConfigError("the alternating stream is a two-expert stream");
    LowerBoundSequence probe(scenario_T == 0 ? T : scenario_T, tau_log_base);
    if (T > probe.T_total)
      throw ConfigError("T exceeds the alternating stream's length");
  }
  if (scenario == "best_expert_low") {
    if (jstar < 1 || jstar > n)
      throw ConfigError("scenario.jstar must name an expert in 1..n");
    if (p < 0.0 || p > 1.0) throw ConfigError("scenario.p must lie in [0,1]");
  }

  for (const std::string& c : checks) {
    if (c == "theorem_bound") {
      if (sk == ScheduleKind::doubling)
        throw ConfigError(
            "theorem_bound needs stabilization weights equal to the rate "
            "quotients; the doubling schedule restarts instead");
      if (kind == AlgorithmKind::omd && sk != ScheduleKind::constant)
        throw ConfigError(
            "theorem_bound covers the vanilla update only at a constant rate");
    } else if (c == "prox") {
      if (geometry != "entropy-simplex" || kind == AlgorithmKind::ps_omd)
        throw ConfigError(
            "the prox check applies to dual-stabilized runs on entropy-simplex");
    } else if (c == "minform") {
      if (geometry != "entropy-simplex" &&
          !(geometry == "euclidean-free" && kind == AlgorithmKind::da))
        throw ConfigError(
            "the minform check needs entropy-simplex, or euclidean-free with da");
    } else if (c != "corollary_bounds") {
      throw ConfigError("unknown check: " + c);
    }
  }
}

AlgorithmKind RunConfig::algorithm_kind() const {
  try {
    return algorithm_kind_from(algorithm);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

MirrorGeometry RunConfig::make_geom() const {
  try {
    return make_geometry(geometry, n);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

Schedule RunConfig::make_schedule() const {
  const int sn = schedule_n == 0 ? n : schedule_n;
  switch (schedule_kind_from(schedule)) {
    case ScheduleKind::constant: return Schedule::constant(eta0);
    case ScheduleKind::anytime: return Schedule::anytime(sn);
    case ScheduleKind::self_confident: return Schedule::self_confident(sn);
    case ScheduleKind::doubling: return Schedule::doubling();
    case ScheduleKind::da_lower_bound: return Schedule::da_lower_bound(sn);
  }
  throw ConfigError("unknown schedule kind: " + schedule);
}

CostOracle RunConfig::make_oracle() const {
  if (scenario == "iid_uniform") return CostOracle::iid_uniform(n, seed);
  if (scenario == "best_expert_low")
    return CostOracle::best_expert_low(n, seed, jstar - 1, p);
  if (scenario == "alternating_lower_bound")
    return CostOracle::alternating_lower_bound(scenario_T == 0 ? T : scenario_T,
                                               tau_log_base);
  if (scenario == "greedy_adaptive") return CostOracle::greedy_adaptive(n);
  if (scenario == "quadratic") return CostOracle::quadratic(n, seed);
  throw ConfigError("unknown scenario kind: " + scenario);
}

std::optional<CompositeRegularizer> RunConfig::make_psi() const {
  if (psi == "none") return std::nullopt;
  CompositeRegularizer reg;
  if (psi == "l1") {
    reg.kind = PsiKind::l1_norm;
    reg.lambda = psi_lambda;
  } else {
    reg.kind = PsiKind::simplex_indicator;
  }
  return reg;
}

}  // namespace pace
