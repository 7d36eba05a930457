#ifndef MEMKINETICS_TOOLS_CONFIG_HPP
#define MEMKINETICS_TOOLS_CONFIG_HPP

// Run configuration files: one scenario per JSON document.

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "memkinetics/memkinetics.hpp"

namespace memkinetics::cli {

using Json = nlohmann::ordered_json;

struct RunConfig {
  ScenarioSpec scenario = Growth{};
  TrajectoryGrid grid{1.0, 100};
  std::vector<Method> methods{Method::analytic, Method::abm};
  SeriesControl series_control;
  std::string output_path;  ///< empty: standard output
  std::string output_format = "csv";
  std::vector<int> convergence_steps{20, 40, 80, 160, 320};

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Shortest decimal text that reads back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace detail {

/// Reads fields out of one JSON object, collecting every problem instead of
/// stopping at the first.
class Reader {
 public:
  Reader(const Json& obj, std::string where, std::vector<std::string>& errors)
      : obj_(obj), where_(std::move(where)), errors_(errors) {
    if (!obj_.is_object()) errors_.push_back(where_ + ": expected an object");
  }

  bool has(const char* key) const { return obj_.is_object() && obj_.contains(key); }

  void number(const char* key, double& out, bool required = true) {
    const Json* v = find(key, required);
    if (!v) return;
    if (!v->is_number()) return fail(key, "must be a number");
    out = v->get<double>();
  }

  void integer(const char* key, int& out, bool required = true) {
    const Json* v = find(key, required);
    if (!v) return;
    if (!v->is_number_integer()) return fail(key, "must be an integer");
    out = v->get<int>();
  }

  void numbers(const char* key, std::vector<double>& out, bool required = true) {
    const Json* v = find(key, required);
    if (!v) return;
    if (!v->is_array()) return fail(key, "must be an array of numbers");
    std::vector<double> tmp;
    for (const auto& e : *v) {
      if (!e.is_number()) return fail(key, "must be an array of numbers");
      tmp.push_back(e.get<double>());
    }
    out = std::move(tmp);
  }

  void integers(const char* key, std::vector<int>& out, bool required = true) {
    const Json* v = find(key, required);
    if (!v) return;
    if (!v->is_array()) return fail(key, "must be an array of integers");
    std::vector<int> tmp;
    for (const auto& e : *v) {
      if (!e.is_number_integer()) return fail(key, "must be an array of integers");
      tmp.push_back(e.get<int>());
    }
    out = std::move(tmp);
  }

  void string(const char* key, std::string& out, bool required = true) {
    const Json* v = find(key, required);
    if (!v) return;
    if (!v->is_string()) return fail(key, "must be a string");
    out = v->get<std::string>();
  }

  const Json* object(const char* key, bool required = true) {
    const Json* v = find(key, required);
    if (v && !v->is_object()) {
      fail(key, "must be an object");
      return nullptr;
    }
    return v;
  }

  /// Flags keys outside `allowed` (typos would otherwise be silently ignored).
  void only(std::initializer_list<const char*> allowed) {
    if (!obj_.is_object()) return;
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& item : obj_.items()) {
      if (!ok.count(item.key())) errors_.push_back(where_ + "." + item.key() + ": unknown field");
    }
  }

 private:
  const Json* find(const char* key, bool required) {
    if (!obj_.is_object()) return nullptr;
    const auto it = obj_.find(key);
    if (it == obj_.end()) {
      if (required) errors_.push_back(where_ + "." + key + ": missing");
      return nullptr;
    }
    return &*it;
  }

  void fail(const char* key, const char* why) { errors_.push_back(where_ + "." + key + ": " + why); }

  const Json& obj_;
  std::string where_;
  std::vector<std::string>& errors_;
};

inline ScenarioSpec read_scenario(const Json& j, std::vector<std::string>& errors) {
  Reader r(j, "scenario", errors);
  std::string type;
  r.string("type", type);
  if (type == "growth") {
    Growth s;
    r.only({"type", "alpha", "m", "P", "L", "initial_values"});
    r.number("alpha", s.alpha);
    r.number("m", s.m);
    r.number("P", s.P);
    r.number("L", s.L);
    r.numbers("initial_values", s.initial_values);
    return s;
  }
  if (type == "power_price") {
    PowerPrice s;
    r.only({"type", "alpha", "beta", "m", "p", "L", "initial_values"});
    r.number("alpha", s.alpha);
    r.number("beta", s.beta);
    r.number("m", s.m);
    r.number("p", s.p);
    r.number("L", s.L);
    r.numbers("initial_values", s.initial_values);
    return s;
  }
  if (type == "two_param_memory") {
    TwoParamMemory s;
    r.only({"type", "alpha", "beta", "mu", "lam", "initial_values"});
    r.number("alpha", s.alpha);
    r.number("beta", s.beta);
    r.number("mu", s.mu);
    r.number("lam", s.lam);
    r.numbers("initial_values", s.initial_values);
    return s;
  }
  if (type == "inflation") {
    Inflation s;
    r.only({"type", "alpha", "R", "initial_prices"});
    r.number("alpha", s.alpha);
    r.number("R", s.R);
    r.numbers("initial_prices", s.initial_prices);
    return s;
  }
  if (type == "fixed_assets") {
    FixedAssets s;
    r.only({"type", "alpha", "A", "B", "initial_assets"});
    r.number("alpha", s.alpha);
    r.number("A", s.A);
    r.number("B", s.B);
    r.numbers("initial_assets", s.initial_assets);
    return s;
  }
  if (!type.empty()) {
    errors.push_back("scenario.type: unknown scenario '" + type +
                     "' (growth, power_price, two_param_memory, inflation, fixed_assets)");
  }
  return Growth{};
}

inline Json numbers_json(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

inline Json scenario_json(const ScenarioSpec& spec) {
  Json j;
  j["type"] = scenario_name(spec);
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        j["alpha"] = s.alpha;
        if constexpr (std::is_same_v<S, Growth>) {
          j["m"] = s.m;
          j["P"] = s.P;
          j["L"] = s.L;
          j["initial_values"] = numbers_json(s.initial_values);
        } else if constexpr (std::is_same_v<S, PowerPrice>) {
          j["beta"] = s.beta;
          j["m"] = s.m;
          j["p"] = s.p;
          j["L"] = s.L;
          j["initial_values"] = numbers_json(s.initial_values);
        } else if constexpr (std::is_same_v<S, TwoParamMemory>) {
          j["beta"] = s.beta;
          j["mu"] = s.mu;
          j["lam"] = s.lam;
          j["initial_values"] = numbers_json(s.initial_values);
        } else if constexpr (std::is_same_v<S, Inflation>) {
          j["R"] = s.R;
          j["initial_prices"] = numbers_json(s.initial_prices);
        } else {
          j["A"] = s.A;
          j["B"] = s.B;
          j["initial_assets"] = numbers_json(s.initial_assets);
        }
      },
      spec);
  return j;
}

}  // namespace detail

/// Builds a RunConfig from a parsed document; throws ValidationError naming
/// every problem, including violated scenario invariants.
inline RunConfig config_from_json(const Json& doc) {
  std::vector<std::string> errors;
  RunConfig cfg;
  detail::Reader top(doc, "config", errors);
  top.only({"scenario", "grid", "methods", "series_control", "output", "convergence_steps"});

  bool scenario_read = false;
  if (const Json* s = top.object("scenario")) {
    const auto before = errors.size();
    cfg.scenario = detail::read_scenario(*s, errors);
    scenario_read = errors.size() == before;
  }

  if (const Json* g = top.object("grid")) {
    detail::Reader r(*g, "grid", errors);
    r.only({"T", "N"});
    r.number("T", cfg.grid.T);
    r.integer("N", cfg.grid.N);
    if (!(cfg.grid.T > 0.0) || !std::isfinite(cfg.grid.T)) errors.push_back("grid.T: must be finite and > 0");
    if (cfg.grid.N < 2) errors.push_back("grid.N: must be >= 2");
  }

  if (top.has("methods")) {
    const Json& m = doc["methods"];
    cfg.methods.clear();
    if (!m.is_array()) {
      errors.push_back("config.methods: must be an array");
    } else {
      for (const auto& e : m) {
        const std::string name = e.is_string() ? e.get<std::string>() : "";
        Method method;
        if (name == "analytic") {
          method = Method::analytic;
        } else if (name == "abm") {
          method = Method::abm;
        } else {
          errors.push_back("config.methods: entries must be \"analytic\" or \"abm\"");
          continue;
        }
        if (std::find(cfg.methods.begin(), cfg.methods.end(), method) == cfg.methods.end()) {
          cfg.methods.push_back(method);
        }
      }
      if (cfg.methods.empty()) errors.push_back("config.methods: must not be empty");
    }
  }

  if (const Json* sc = top.object("series_control", false)) {
    detail::Reader r(*sc, "series_control", errors);
    r.only({"rtol", "max_terms", "consecutive_small"});
    r.number("rtol", cfg.series_control.rtol, false);
    r.integer("max_terms", cfg.series_control.max_terms, false);
    r.integer("consecutive_small", cfg.series_control.consecutive_small, false);
    try {
      cfg.series_control.validate();
    } catch (const DomainError& e) {
      errors.push_back(e.what());
    }
  }

  if (const Json* out = top.object("output", false)) {
    detail::Reader r(*out, "output", errors);
    r.only({"path", "format"});
    r.string("path", cfg.output_path, false);
    r.string("format", cfg.output_format, false);
    if (cfg.output_format != "csv" && cfg.output_format != "json") {
      errors.push_back("output.format: must be \"csv\" or \"json\"");
    }
  }

  top.integers("convergence_steps", cfg.convergence_steps, false);

  if (scenario_read) {
    try {
      (void)compile(cfg.scenario);
    } catch (const ValidationError& e) {
      for (const auto& v : e.violations()) errors.push_back(std::string("scenario: ") + v);
    }
  }
  if (!errors.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw ValidationError(msg, errors);
  }
  return cfg;
}

inline Json config_to_json(const RunConfig& cfg) {
  Json j;
  j["scenario"] = detail::scenario_json(cfg.scenario);
  j["grid"] = {{"T", cfg.grid.T}, {"N", cfg.grid.N}};
  Json methods = Json::array();
  for (Method m : cfg.methods) methods.push_back(to_string(m));
  j["methods"] = methods;
  j["series_control"] = {{"rtol", cfg.series_control.rtol},
                         {"max_terms", cfg.series_control.max_terms},
                         {"consecutive_small", cfg.series_control.consecutive_small}};
  Json out;
  if (!cfg.output_path.empty()) out["path"] = cfg.output_path;
  out["format"] = cfg.output_format;
  j["output"] = out;
  j["convergence_steps"] = cfg.convergence_steps;
  return j;
}

inline RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file " + path.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError("config file " + path.string() + " is not valid JSON: " + e.what());
  }
  return config_from_json(doc);
}

/// Writes the whole file or nothing: the text goes to a sibling temporary
/// that is renamed over the target.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot move output into place at " + path.string());
  }
}

}  // namespace memkinetics::cli

#endif  // MEMKINETICS_TOOLS_CONFIG_HPP
