#ifndef MEMKINETICS_TOOLS_APP_HPP
#define MEMKINETICS_TOOLS_APP_HPP

// The memkinetics command line: simulate, compare, convergence, specfun, verify.
//
// Exit codes: 0 success, 1 a threshold or order check failed, 2 usage or
// configuration error, 3 numerical error.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "cli/config.hpp"

namespace memkinetics::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kNumerical = 3 };

/// Diagnostics on stderr, gated by MEMKINETICS_LOG (error, warn, info, debug).
class Log {
 public:
  enum Level { error = 0, warn = 1, info = 2, debug = 3 };

  explicit Log(std::ostream& err) : err_(err) {
    const char* env = std::getenv("MEMKINETICS_LOG");
    const std::string v = env ? env : "";
    if (v == "error") level_ = error;
    else if (v == "info") level_ = info;
    else if (v == "debug") level_ = debug;
  }

  void operator()(Level lvl, const std::string& msg) const {
    static constexpr const char* tags[] = {"error", "warn", "info", "debug"};
    if (lvl <= level_) err_ << "memkinetics [" << tags[lvl] << "] " << msg << '\n';
  }

 private:
  std::ostream& err_;
  Level level_ = warn;
};

struct ComparisonRow {
  double t, analytic, abm, abs_err, rel_err;
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;
  double max_rel_err = 0.0;
  double mean_rel_err = 0.0;
  double max_abs_err = 0.0;
  double threshold = 1e-3;
  bool pass = true;
};

inline ComparisonReport compare_trajectories(const Trajectory& analytic, const Trajectory& abm,
                                             double threshold) {
  ComparisonReport rep;
  rep.threshold = threshold;
  double sum = 0.0;
  for (std::size_t j = 0; j < analytic.values.size(); ++j) {
    const double a = analytic.values[j];
    const double b = abm.values[j];
    const double abs_err = std::fabs(a - b);
    const double rel_err = abs_err == 0.0 ? 0.0 : abs_err / std::fabs(a);
    rep.rows.push_back({analytic.grid.t(j), a, b, abs_err, rel_err});
    rep.max_rel_err = std::max(rep.max_rel_err, rel_err);
    rep.max_abs_err = std::max(rep.max_abs_err, abs_err);
    sum += rel_err;
  }
  rep.mean_rel_err = sum / static_cast<double>(rep.rows.size());
  rep.pass = rep.max_rel_err <= threshold;
  return rep;
}

inline std::string comparison_csv(const ComparisonReport& rep) {
  std::string s = "t,analytic,abm,abs_err,rel_err\n";
  for (const auto& r : rep.rows) {
    s += format_double(r.t) + ',' + format_double(r.analytic) + ',' + format_double(r.abm) + ',' +
         format_double(r.abs_err) + ',' + format_double(r.rel_err) + '\n';
  }
  return s;
}

inline Json comparison_summary(const ComparisonReport& rep, const RunConfig& cfg) {
  Json j;
  j["scenario"] = scenario_name(cfg.scenario);
  j["rows"] = rep.rows.size();
  j["max_rel_err"] = rep.max_rel_err;
  j["mean_rel_err"] = rep.mean_rel_err;
  j["max_abs_err"] = rep.max_abs_err;
  j["threshold"] = rep.threshold;
  j["status"] = rep.pass ? "pass" : "fail";
  return j;
}

inline Trajectory run_method(Method m, const CauchyProblem& prob, const RunConfig& cfg) {
  return m == Method::analytic ? solve_analytic(prob, cfg.grid, cfg.series_control)
                               : solve_abm(prob, cfg.grid);
}

inline std::string trajectories_csv(const std::vector<Trajectory>& trajs) {
  std::string s = "t,value,method\n";
  for (const auto& tr : trajs) {
    for (std::size_t j = 0; j < tr.values.size(); ++j) {
      s += format_double(tr.grid.t(j)) + ',' + format_double(tr.values[j]) + ',' +
           to_string(tr.method) + '\n';
    }
  }
  return s;
}

inline std::string trajectories_json(const std::vector<Trajectory>& trajs, const RunConfig& cfg) {
  Json j;
  j["scenario"] = scenario_name(cfg.scenario);
  Json t = Json::array();
  for (std::size_t k = 0; k < cfg.grid.size(); ++k) t.push_back(cfg.grid.t(k));
  j["t"] = t;
  for (const auto& tr : trajs) j[to_string(tr.method)] = detail::numbers_json(tr.values);
  return j.dump(2) + '\n';
}

/// Residual of the equation on the closed-form trajectory, evaluated with the
/// discrete Caputo operator.
struct ResidualLevel {
  double h;
  double max_residual;
};

struct ResidualStudy {
  std::vector<ResidualLevel> levels;
  double window_start = 0.0;
  double expected_order = 0.0;
  double order = 0.0;
  bool pass = false;
};

/// Max |D^alpha Y - mu D^beta Y - (A + lam t^p Y)| over t >= 5 h_0 for the
/// grid's N, 2N and 4N, and the log-log slope of those maxima.
inline ResidualStudy residual_study(const CauchyProblem& prob, const TrajectoryGrid& grid,
                                    const SeriesControl& ctl, double order_tol) {
  ResidualStudy out;
  out.window_start = 5.0 * grid.h();
  out.expected_order = 2.0 - prob.ord.alpha();
  std::vector<double> lx, ly;
  for (int level = 0; level < 3; ++level) {
    const TrajectoryGrid g{grid.T, grid.N << level};
    const double h = g.h();
    const auto y = solve_analytic(prob, g, ctl);
    const auto d = caputo_derivative_all(y.values, h, prob.ord);
    std::vector<double> db;
    if (prob.secondary_ord) db = caputo_derivative_all(y.values, h, *prob.secondary_ord);
    double worst = 0.0;
    for (std::size_t j = 1; j < g.size(); ++j) {
      const double t = g.t(j);
      if (t < out.window_start * (1.0 - 1e-12)) continue;
      double rhs = prob.forcing_const + prob.lam * std::pow(t, prob.price_exponent) * y.values[j];
      if (prob.secondary_ord) rhs += prob.mu * db[j];
      worst = std::max(worst, std::fabs(d[j] - rhs));
    }
    out.levels.push_back({h, worst});
    lx.push_back(std::log(h));
    ly.push_back(std::log(std::max(worst, 1e-300)));
  }
  out.order = memkinetics::detail::least_squares_slope(lx, ly);
  // Residuals already at rounding level cannot show an order.
  const bool negligible = std::all_of(out.levels.begin(), out.levels.end(),
                                      [](const ResidualLevel& l) { return l.max_residual <= 1e-10; });
  out.pass = negligible || out.order >= out.expected_order - order_tol;
  return out;
}

namespace detail {

inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_file_atomic(path, text);
  }
}

}  // namespace detail

/// Parses arguments and runs one subcommand. Never throws.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fractional growth-with-memory models: closed forms, ABM oracle, special functions",
               "memkinetics"};
  app.require_subcommand(1);

  std::string config_path, out_path, summary_path;
  double threshold = 1e-3;
  double order_tol = 0.3;
  std::optional<double> rtol, expect_order;
  std::optional<int> max_terms;
  std::vector<int> steps;
  bool dump = false;
  std::vector<std::string> fn_args;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Scenario config (JSON)")->required();
    sub->add_option("--out", out_path, "Output file (default: config output.path, else stdout)");
    sub->add_option("--rtol", rtol, "Series relative tolerance override");
    sub->add_option("--max-terms", max_terms, "Series term cap override");
    sub->add_flag("--dump-config", dump, "Print the parsed configuration as JSON and exit");
  };

  auto* simulate = app.add_subcommand("simulate", "Write trajectories as CSV (t,value,method)");
  common(simulate);
  auto* compare = app.add_subcommand("compare", "Closed form against ABM; exit 1 above threshold");
  common(compare);
  compare->add_option("--threshold", threshold, "Max relative error allowed (default 1e-3)");
  compare->add_option("--summary", summary_path, "Also write the summary JSON here");
  auto* convergence = app.add_subcommand("convergence", "Observed ABM order against the closed form");
  common(convergence);
  convergence->add_option("--steps", steps, "Step counts, each double the previous")->delimiter(',');
  convergence->add_option("--expect-order", expect_order, "Exit 1 unless the order is this +- tolerance");
  convergence->add_option("--order-tol", order_tol, "Order tolerance (default 0.3)");
  auto* verify = app.add_subcommand("verify", "Residual of the closed form under the discrete Caputo operator");
  common(verify);
  verify->add_option("--order-tol", order_tol, "Allowed shortfall below order 2 - alpha (default 0.3)");
  auto* specfun = app.add_subcommand(
      "specfun", "Evaluate mittag_leffler a b z | kilbas_saigo a b c z | fox_wright a A b B z");
  specfun->add_option("args", fn_args, "Function name then parameters")->required();
  specfun->add_option("--rtol", rtol, "Series relative tolerance");
  specfun->add_option("--max-terms", max_terms, "Series term cap");
  specfun->allow_extras(false);
  specfun->positionals_at_end(false);

  const Log log(err);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  SeriesControl ctl;
  if (rtol) ctl.rtol = *rtol;
  if (max_terms) ctl.max_terms = *max_terms;

  if (specfun->parsed()) {
    std::vector<double> v;
    std::string name = fn_args.front();
    std::size_t first = 1;
    if (name == "eval" && fn_args.size() > 1) {
      name = fn_args[1];
      first = 2;
    }
    for (std::size_t i = first; i < fn_args.size(); ++i) {
      double x = 0.0;
      const auto& s = fn_args[i];
      const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
      if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        err << "error: specfun: '" << s << "' is not a number\n";
        return kUsage;
      }
      v.push_back(x);
    }
    const std::size_t want = name == "mittag_leffler" ? 3 : name == "kilbas_saigo" ? 4
                             : name == "fox_wright"   ? 5 : 0;
    if (want == 0) {
      err << "error: specfun: unknown function '" << name
          << "' (mittag_leffler, kilbas_saigo, fox_wright)\n";
      return kUsage;
    }
    if (v.size() != want) {
      err << "error: specfun: " << name << " takes " << want << " numbers, got " << v.size() << '\n';
      return kUsage;
    }
    try {
      ctl.validate();
    } catch (const std::exception& e) {
      err << "error: specfun: " << e.what() << '\n';
      return kUsage;
    }
    try {
      double r = 0.0;
      if (name == "mittag_leffler") r = mittag_leffler(v[0], v[1], v[2], ctl);
      else if (name == "kilbas_saigo") r = kilbas_saigo({v[0], v[1], v[2]}, v[3], ctl);
      else r = fox_wright_psi11({v[0], v[1], v[2], v[3]}, v[4], ctl);
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.15g", r);
      out << buf << '\n';
      return kOk;
    } catch (const std::exception& e) {
      err << "error: specfun: " << e.what() << '\n';
      return kNumerical;
    }
  }

  RunConfig cfg;
  CauchyProblem prob;
  try {
    cfg = load_config(config_path);
    if (rtol) cfg.series_control.rtol = *rtol;
    if (max_terms) cfg.series_control.max_terms = *max_terms;
    cfg.series_control.validate();
    if (!out_path.empty()) cfg.output_path = out_path;
    if (!steps.empty()) cfg.convergence_steps = steps;
    prob = compile(cfg.scenario);
    if (convergence->parsed()) {
      const auto& st = cfg.convergence_steps;
      if (st.size() < 3) throw ValidationError("convergence: need at least 3 step counts");
      for (std::size_t i = 0; i < st.size(); ++i) {
        if (st[i] < 2 || (i > 0 && st[i] != 2 * st[i - 1])) {
          throw ValidationError("convergence: step counts must be >= 2 and each double the previous");
        }
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  if (dump) {
    out << config_to_json(cfg).dump(2) << '\n';
    return kOk;
  }
  log(Log::info, std::string("scenario ") + scenario_name(cfg.scenario) + ", T = " +
                     format_double(cfg.grid.T) + ", N = " + std::to_string(cfg.grid.N));

  // Configuration is settled; anything failing from here on is numerical.
  const char* stage = "";
  try {
    if (simulate->parsed()) {
      stage = "simulate";
      std::vector<Trajectory> trajs;
      for (Method m : cfg.methods) {
        log(Log::debug, std::string("running ") + to_string(m));
        trajs.push_back(run_method(m, prob, cfg));
      }
      const std::string text =
          cfg.output_format == "json" ? trajectories_json(trajs, cfg) : trajectories_csv(trajs);
      detail::emit(text, cfg.output_path, out);
      return kOk;
    }

    if (compare->parsed()) {
      stage = "compare";
      const auto analytic = solve_analytic(prob, cfg.grid, cfg.series_control);
      const auto abm = solve_abm(prob, cfg.grid);
      const auto rep = compare_trajectories(analytic, abm, threshold);
      const std::string summary = comparison_summary(rep, cfg).dump(2) + '\n';
      if (!cfg.output_path.empty()) {
        write_file_atomic(cfg.output_path, comparison_csv(rep));
        out << summary;
      } else {
        out << comparison_csv(rep);
        err << summary;
      }
      if (!summary_path.empty()) write_file_atomic(summary_path, summary);
      if (!rep.pass) {
        log(Log::warn, "max_rel_err " + format_double(rep.max_rel_err) + " exceeds threshold " +
                           format_double(threshold));
      }
      return rep.pass ? kOk : kCheckFailed;
    }

    if (convergence->parsed()) {
      stage = "convergence";
      const auto study = empirical_convergence_order(prob, cfg.grid.T, cfg.convergence_steps,
                                                     cfg.series_control);
      Json j;
      j["scenario"] = scenario_name(cfg.scenario);
      j["alpha"] = prob.ord.alpha();
      j["expected_order"] = std::min(2.0, 1.0 + prob.ord.alpha());
      j["exact"] = study.exact;
      if (study.exact) {
        j["order"] = nullptr;
      } else {
        j["order"] = study.order;
      }
      Json pairwise = Json::array();
      for (std::size_t i = 1; i < study.h.size(); ++i) {
        const double a = study.max_errors[i - 1], b = study.max_errors[i];
        if (a > 0.0 && b > 0.0) pairwise.push_back(std::log(a / b) / std::log(study.h[i - 1] / study.h[i]));
        else pairwise.push_back(nullptr);
      }
      j["orders"] = pairwise;
      Json errs = Json::array();
      for (std::size_t i = 0; i < study.h.size(); ++i) {
        errs.push_back({{"N", study.steps[i]}, {"h", study.h[i]}, {"max_error", study.max_errors[i]}});
      }
      j["errors"] = errs;
      bool pass = true;
      if (expect_order) {
        pass = study.exact || std::fabs(study.order - *expect_order) <= order_tol;
        j["status"] = pass ? "pass" : "fail";
      }
      detail::emit(j.dump(2) + '\n', cfg.output_path, out);
      return pass ? kOk : kCheckFailed;
    }

    stage = "verify";
    const auto study = residual_study(prob, cfg.grid, cfg.series_control, order_tol);
    Json j;
    j["scenario"] = scenario_name(cfg.scenario);
    j["window_start"] = study.window_start;
    j["expected_order"] = study.expected_order;
    j["order"] = study.order;
    Json levels = Json::array();
    for (const auto& l : study.levels) levels.push_back({{"h", l.h}, {"max_residual", l.max_residual}});
    j["levels"] = levels;
    j["status"] = study.pass ? "pass" : "fail";
    detail::emit(j.dump(2) + '\n', cfg.output_path, out);
    return study.pass ? kOk : kCheckFailed;
  } catch (const std::exception& e) {
    err << "error: " << stage << ": " << e.what() << '\n';
    return kNumerical;
  }
}

}  // namespace memkinetics::cli

#endif  // MEMKINETICS_TOOLS_APP_HPP
