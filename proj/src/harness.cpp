#include "pace/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "pace/selfcheck.hpp"

namespace pace {

using json = nlohmann::json;

namespace {

std::string fmt17(double v) {
  char bufc[64];
  std::snprintf(bufc, sizeof bufc, "%.17g", v);
  return bufc;
}

double nan_() { return std::numeric_limits<double>::quiet_NaN(); }

}  // namespace

int worker_count() {
  if (const char* env = std::getenv("PACE_THREADS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 4096)
      throw ConfigError(std::string("PACE_THREADS must be a positive integer, got '") +
                        env + "'");
    return int(v);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? int(hc) : 1;
}

void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& fn) {
  if (count <= 0) return;
  const int workers = int(std::min<std::int64_t>(worker_count(), count));
  if (workers <= 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr first_error;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  pool.reserve(std::size_t(workers));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      while (true) {
        const std::int64_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

/* ---- alternating-stream study ------------------------------------------- */

LowerBoundRow da_lower_bound_row(std::int64_t T, double log_base) {
  LowerBoundRow row;
  row.T = T;
  const MirrorGeometry g = make_geometry("entropy-simplex", 2);
  Learner learner(AlgorithmKind::da, g, Schedule::da_lower_bound(2));
  CostOracle oracle = CostOracle::alternating_lower_bound(T, log_base);
  row.tau = oracle.tau();
  double cum_loss = 0.0, cost0 = 0.0, cost1 = 0.0;
  run_stream(learner, oracle, T, [&](const StepRecord& rec) {
    cum_loss += rec.loss;
    cost0 += rec.ghat[0];
    cost1 += rec.ghat[1];
    if (rec.t == row.tau) row.expert2_cost_at_tau = cost1;
  });
  row.regret = cum_loss - std::min(cost0, cost1);
  row.ratio = row.regret / std::sqrt(double(T) * std::log(2.0));
  return row;
}

RunTrace da_lower_bound_trace(std::int64_t T, double log_base) {
  return run(AlgorithmKind::da, make_geometry("entropy-simplex", 2),
             Schedule::da_lower_bound(2),
             CostOracle::alternating_lower_bound(T, log_base), T);
}

/* ---- run ----------------------------------------------------------------- */

namespace {

double psi_term(const RunTrace& trace, const Vec& x) {
  return trace.psi ? trace.psi->value(x) : 0.0;
}

void write_run_csv(const std::string& path, const RunTrace& trace,
                   const BoundReport& rep) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ConfigError("cannot open output file '" + path + "'");
  f << "t,loss,cum_loss,best_cum_loss,regret,eta,gamma,bound_theorem,"
       "bound_corollary,slack\n";
  double cum_loss = 0.0;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const StepRecord& rec = trace.steps[i];
    cum_loss += rec.loss + psi_term(trace, rec.x);
    const double regret = rep.regret[i];
    double corollary = nan_();
    for (const auto& [name, rhs] : rep.corollaries)
      if (!(rhs[i] >= corollary)) corollary = rhs[i];  // min; NaN seeds the first
    const double theorem = rep.theorem_applicable ? rep.theorem_rhs[i] : nan_();
    const double slack = rep.theorem_applicable ? rep.slack[i] : nan_();
    f << rec.t << ',' << fmt17(rec.loss) << ',' << fmt17(cum_loss) << ','
      << fmt17(cum_loss - regret) << ',' << fmt17(regret) << ',' << fmt17(rec.eta)
      << ',' << fmt17(rec.gamma) << ',' << fmt17(theorem) << ','
      << fmt17(corollary) << ',' << fmt17(slack) << '\n';
  }
}

}  // namespace

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  cfg.validate();
  const RunTrace trace = run(cfg.algorithm_kind(), cfg.make_geom(), cfg.make_schedule(),
                             cfg.make_oracle(), cfg.T, std::nullopt, cfg.make_psi());
  const BoundReport rep = corollary_bounds(trace);

  if (!cfg.output.empty()) write_run_csv(cfg.output, trace, rep);

  json checks = json::object();
  bool any_fail = false;
  for (const std::string& check : cfg.checks) {
    json entry;
    if (check == "theorem_bound") {
      if (!rep.theorem_applicable) {
        entry["status"] = "NOT_APPLICABLE";
      } else {
        entry["min_slack"] = rep.min_slack;
        entry["argmin_round"] = rep.argmin_slack;
        if (rep.min_slack >= -1e-9) {
          entry["status"] = "PASS";
        } else {
          entry["status"] = "FAIL";
          any_fail = true;
          err << "theorem_bound check failed at round " << rep.argmin_slack
              << " with slack " << fmt17(rep.min_slack) << "\n";
        }
      }
    } else if (check == "corollary_bounds") {
      if (rep.corollaries.empty()) {
        entry["status"] = "NOT_APPLICABLE";
        entry["not_applicable"] = rep.not_applicable;
      } else {
        entry["status"] = "PASS";
        for (const auto& [name, rhs] : rep.corollaries) {
          double min_slack = std::numeric_limits<double>::infinity();
          std::int64_t argmin = 0;
          for (std::size_t i = 0; i < rhs.size(); ++i)
            if (rhs[i] - rep.regret[i] < min_slack) {
              min_slack = rhs[i] - rep.regret[i];
              argmin = std::int64_t(i) + 1;
            }
          entry[name]["min_slack"] = min_slack;
          entry[name]["argmin_round"] = argmin;
          if (min_slack < -1e-9) {
            entry["status"] = "FAIL";
            any_fail = true;
            err << "corollary_bounds check (" << name << ") failed at round "
                << argmin << " with slack " << fmt17(min_slack) << "\n";
          }
        }
        entry["not_applicable"] = rep.not_applicable;
      }
    } else if (check == "prox" || check == "minform") {
      const bool prox = check == "prox";
      const std::vector<double> res =
          prox ? prox_residuals(trace) : minform_residuals(trace);
      double mx = 0.0;
      std::int64_t argmax = res.empty() ? 0 : 1;
      for (std::size_t i = 0; i < res.size(); ++i)
        if (res[i] > mx) { mx = res[i]; argmax = std::int64_t(i) + 1; }
      const double tol = prox ? 1e-8 : 1e-10;
      entry["max_residual"] = mx;
      entry["argmax_round"] = argmax;
      entry["tolerance"] = tol;
      if (mx <= tol) {
        entry["status"] = "PASS";
      } else {
        entry["status"] = "FAIL";
        any_fail = true;
        err << check << " check failed at round " << argmax << " with residual "
            << fmt17(mx) << " (tolerance " << fmt17(tol) << ")\n";
      }
    }
    checks[check] = std::move(entry);
  }

  json summary;
  summary["algorithm"] = cfg.algorithm;
  summary["geometry"] = cfg.geometry;
  summary["schedule"] = cfg.schedule;
  summary["scenario"] = cfg.scenario;
  summary["n"] = cfg.n;
  summary["T"] = cfg.T;
  summary["seed"] = cfg.seed;
  summary["regret"] = rep.regret.back();
  summary["theorem_applicable"] = rep.theorem_applicable;
  summary["theorem_rhs"] = rep.theorem_applicable ? json(rep.theorem_rhs.back()) : json();
  summary["min_slack"] = rep.theorem_applicable ? json(rep.min_slack) : json();
  json cors = json::object();
  for (const auto& [name, rhs] : rep.corollaries) cors[name] = rhs.back();
  summary["corollaries"] = std::move(cors);
  summary["not_applicable"] = rep.not_applicable;
  summary["checks"] = std::move(checks);
  summary["csv"] = cfg.output.empty() ? json() : json(cfg.output);
  out << summary.dump(2) << "\n";
  return any_fail ? 1 : 0;
}

/* ---- compare -------------------------------------------------------------- */

int compare_command(const std::vector<RunConfig>& cfgs, std::ostream& out,
                    std::ostream& err) {
  if (cfgs.empty()) throw ConfigError("compare needs at least one config");
  /* compare only produces regret columns; a `checks` list in a shared config
   * must not veto learners it would never run against */
  for (const RunConfig& cfg : cfgs) {
    RunConfig probe = cfg;
    probe.checks.clear();
    probe.validate();
  }
  const RunConfig& base = cfgs.front();
  for (const RunConfig& cfg : cfgs) {
    const bool shared = cfg.scenario == base.scenario && cfg.seed == base.seed &&
                        cfg.n == base.n && cfg.T == base.T && cfg.jstar == base.jstar &&
                        cfg.p == base.p && cfg.scenario_T == base.scenario_T &&
                        cfg.tau_log_base == base.tau_log_base;
    if (!shared) {
      err << "compare requires identical scenario, seed, n, and T across configs\n";
      return 2;
    }
  }

  std::vector<std::string> columns;
  for (const RunConfig& cfg : cfgs) {
    std::string name = "regret_" + cfg.algorithm;
    int dup = 1;
    for (const std::string& c : columns)
      if (c == name || c.rfind(name + "_", 0) == 0) ++dup;
    if (dup > 1) name += "_" + std::to_string(dup);
    columns.push_back(name);
  }

  std::vector<std::vector<double>> regrets(cfgs.size());
  parallel_for(std::int64_t(cfgs.size()), [&](std::int64_t i) {
    const RunConfig& cfg = cfgs[std::size_t(i)];
    const RunTrace trace =
        run(cfg.algorithm_kind(), cfg.make_geom(), cfg.make_schedule(),
            cfg.make_oracle(), cfg.T, std::nullopt, cfg.make_psi());
    regrets[std::size_t(i)] = corollary_bounds(trace).regret;
  });

  if (!base.output.empty()) {
    std::ofstream f(base.output, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot open output file '" + base.output + "'");
    f << "t";
    for (const std::string& c : columns) f << ',' << c;
    f << '\n';
    for (std::int64_t t = 1; t <= base.T; ++t) {
      f << t;
      for (const auto& r : regrets) f << ',' << fmt17(r[std::size_t(t) - 1]);
      f << '\n';
    }
  }

  json summary;
  summary["scenario"] = base.scenario;
  summary["seed"] = base.seed;
  summary["n"] = base.n;
  summary["T"] = base.T;
  summary["per_learner_streams"] = base.scenario == "greedy_adaptive";
  json final_regret = json::object();
  for (std::size_t i = 0; i < cfgs.size(); ++i)
    final_regret[columns[i]] = regrets[i].back();
  summary["final_regret"] = std::move(final_regret);
  summary["csv"] = base.output.empty() ? json() : json(base.output);
  out << summary.dump(2) << "\n";
  return 0;
}

/* ---- equivalence ---------------------------------------------------------- */

namespace {

json residual_block(const RunConfig& cfg, AlgorithmKind kind) {
  json block = json::object();
  const MirrorGeometry g = cfg.make_geom();
  const bool entropy = g.map == MirrorMap::entropy && g.feasible == FeasibleSet::simplex;
  const bool free_da =
      g.feasible == FeasibleSet::all_space && kind == AlgorithmKind::da;
  const bool prox_ok = entropy && kind != AlgorithmKind::ps_omd &&
                       kind != AlgorithmKind::composite_ds_omd;
  const bool minform_ok = prox_ok || free_da;
  if (!prox_ok && !minform_ok) return block;
  const RunTrace trace = run(kind, g, cfg.make_schedule(), cfg.make_oracle(), cfg.T,
                             std::nullopt, cfg.make_psi());
  if (prox_ok) {
    double mx = 0.0;
    for (double r : prox_residuals(trace)) mx = std::max(mx, r);
    block["prox_max"] = mx;
  }
  if (minform_ok) {
    double mx = 0.0;
    for (double r : minform_residuals(trace)) mx = std::max(mx, r);
    block["minform_max"] = mx;
  }
  return block;
}

}  // namespace

int equivalence_command(const RunConfig& cfg, const std::string& kind_a,
                        const std::string& kind_b, double abort_tol,
                        std::ostream& out, std::ostream& err) {
  RunConfig cfg_a = cfg, cfg_b = cfg;
  cfg_a.algorithm = kind_a;
  cfg_b.algorithm = kind_b;
  cfg_a.validate();
  cfg_b.validate();

  const MirrorGeometry g = cfg.make_geom();
  Learner a(cfg_a.algorithm_kind(), g, cfg_a.make_schedule(), std::nullopt,
            cfg_a.make_psi());
  Learner b(cfg_b.algorithm_kind(), g, cfg_b.make_schedule(), std::nullopt,
            cfg_b.make_psi());
  CostOracle oracle = cfg.make_oracle();
  const EquivalenceReport rep = iterate_equivalence(a, b, oracle, cfg.T, abort_tol);

  json summary;
  summary["algorithm_a"] = kind_a;
  summary["algorithm_b"] = kind_b;
  summary["geometry"] = cfg.geometry;
  summary["schedule"] = cfg.schedule;
  summary["scenario"] = cfg.scenario;
  summary["T"] = cfg.T;
  summary["rounds"] = rep.rounds;
  summary["max_gap"] = rep.max_gap;
  summary["argmax_round"] = rep.argmax_round;
  summary["aborted"] = rep.aborted;
  if (rep.aborted) {
    summary["abort_round"] = rep.abort_round;
    err << "lockstep aborted at round " << rep.abort_round << ": iterate gap "
        << fmt17(rep.max_gap) << " exceeds " << fmt17(abort_tol) << "\n";
  }
  summary["residuals"]["a"] = residual_block(cfg_a, cfg_a.algorithm_kind());
  summary["residuals"]["b"] = residual_block(cfg_b, cfg_b.algorithm_kind());
  out << summary.dump(2) << "\n";
  return rep.aborted ? 1 : 0;
}

/* ---- lowerbound ----------------------------------------------------------- */

int lowerbound_command(std::int64_t T_max, const std::string& output,
                       double log_base, std::ostream& out, std::ostream& err) {
  if (T_max < 1000) throw ConfigError("lowerbound requires T >= 1000");
  std::vector<std::int64_t> horizons = {1000, 10000, 100000, T_max};
  std::sort(horizons.begin(), horizons.end());
  horizons.erase(std::unique(horizons.begin(), horizons.end()), horizons.end());
  while (horizons.back() > T_max) horizons.pop_back();

  std::vector<LowerBoundRow> rows(horizons.size());
  parallel_for(std::int64_t(horizons.size()), [&](std::int64_t i) {
    rows[std::size_t(i)] = da_lower_bound_row(horizons[std::size_t(i)], log_base);
  });

  bool fail = false;
  for (const LowerBoundRow& row : rows) {
    const double want = double(row.tau - 1) / 2.0;
    if (row.expert2_cost_at_tau != want) {
      fail = true;
      err << "at T=" << row.T << " the better expert's cost at the switch round is "
          << fmt17(row.expert2_cost_at_tau) << ", expected " << fmt17(want) << "\n";
    }
  }
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (!(rows[i].ratio > rows[i - 1].ratio)) {
      fail = true;
      err << "normalized regret did not increase from T=" << rows[i - 1].T << " ("
          << fmt17(rows[i - 1].ratio) << ") to T=" << rows[i].T << " ("
          << fmt17(rows[i].ratio) << ")\n";
    }

  if (!output.empty()) {
    std::ofstream f(output, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot open output file '" + output + "'");
    f << "T,tau,regret,ratio\n";
    for (const LowerBoundRow& row : rows)
      f << row.T << ',' << row.tau << ',' << fmt17(row.regret) << ','
        << fmt17(row.ratio) << '\n';
  }

  json summary;
  json jrows = json::array();
  for (const LowerBoundRow& row : rows) {
    json r;
    r["T"] = row.T;
    r["tau"] = row.tau;
    r["regret"] = row.regret;
    r["ratio"] = row.ratio;
    jrows.push_back(std::move(r));
  }
  summary["rows"] = std::move(jrows);
  summary["strictly_increasing"] = !fail;
  summary["csv"] = output.empty() ? json() : json(output);
  out << summary.dump(2) << "\n";
  return fail ? 1 : 0;
}

/* ---- selfcheck ------------------------------------------------------------ */

int selfcheck_command(std::uint64_t seed, std::int64_t cases, std::ostream& out,
                      std::ostream& err) {
  const char* names[] = {"scalar", "geometry", "schedule", "algorithm", "bounds"};
  std::vector<ScalarCheckReport> reports(5);
  parallel_for(5, [&](std::int64_t i) {
    switch (i) {
      case 0: reports[0] = scalar_checks(seed, cases); break;
      case 1: reports[1] = geometry_property_suite(seed + 1, cases); break;
      case 2: reports[2] = schedule_property_suite(seed + 2, cases); break;
      case 3: reports[3] = algorithm_property_suite(seed + 3, cases); break;
      default: reports[4] = bounds_property_suite(seed + 4, cases); break;
    }
  });

  bool all_pass = true;
  for (int s = 0; s < 5; ++s)
    for (const ScalarCheckItem& item : reports[std::size_t(s)].items) {
      out << (item.pass ? "[PASS] " : "[FAIL] ") << names[s] << '.' << item.name
          << " (" << item.cases << " cases)";
      if (!item.pass) {
        out << " counterexample: " << item.counterexample;
        all_pass = false;
        err << "selfcheck failure in " << names[s] << '.' << item.name << ": "
            << item.counterexample << "\n";
      }
      out << "\n";
    }
  return all_pass ? 0 : 1;
}

}  // namespace pace
