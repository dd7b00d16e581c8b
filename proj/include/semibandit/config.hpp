#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "semibandit/env.hpp"
#include "semibandit/grid.hpp"
#include "semibandit/harness.hpp"
#include "semibandit/oracle.hpp"

namespace semibandit {

// Raised for malformed or invalid experiment configs; line <= 0 means the
// problem is not tied to a specific line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& msg)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg
                                    : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Flat key-value experiment description, one "key = value" pair per line.
// '#' starts a comment; blank lines are ignored.
//
// Keys:
//   kind        kpath | grid | explicit          (required)
//   L, K, delta                                  (kpath)
//   m, sigma                                     (grid)
//   feasible_file, means_file                    (explicit)
//   horizon     steps per run                    (required, >= 1)
//   runs        independent episodes             (default 10)
//   seed        64-bit master seed               (default 1)
//   checkpoints explicit list "100 1000 ..."     (optional)
//   checkpoint_schedule geometric | linear       (default geometric)
//   checkpoint_points   count for the schedule   (default 20)
//   output_dir  where the CSVs go                (default ".")
struct ParsedConfig {
  std::map<std::string, std::string> values;
  std::map<std::string, int> lines;

  bool has(const std::string& key) const { return values.count(key) > 0; }

  int line_of(const std::string& key) const {
    auto it = lines.find(key);
    return it == lines.end() ? 0 : it->second;
  }
};

inline ParsedConfig parse_config_stream(std::istream& in) {
  ParsedConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(line_no, "expected \"key = value\"");
    }
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "missing key");
    if (value.empty()) throw ConfigError(line_no, "missing value for \"" + key + "\"");
    if (cfg.values.count(key)) {
      throw ConfigError(line_no, "duplicate key \"" + key + "\"");
    }
    cfg.values[key] = value;
    cfg.lines[key] = line_no;
  }
  return cfg;
}

inline ParsedConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot open config file " + path);
  return parse_config_stream(in);
}

namespace detail {

inline const std::string& require(const ParsedConfig& cfg,
                                  const std::string& key) {
  auto it = cfg.values.find(key);
  if (it == cfg.values.end()) {
    throw ConfigError(0, "missing required key \"" + key + "\"");
  }
  return it->second;
}

template <typename T>
T parse_number(const ParsedConfig& cfg, const std::string& key,
               const std::string& value) {
  std::istringstream ss(value);
  T out;
  ss >> out;
  if (!ss || !(ss >> std::ws).eof()) {
    throw ConfigError(cfg.line_of(key), "cannot parse \"" + value +
                                            "\" as a number for \"" + key + "\"");
  }
  return out;
}

template <typename T>
T get_number(const ParsedConfig& cfg, const std::string& key) {
  return parse_number<T>(cfg, key, require(cfg, key));
}

template <typename T>
T get_number_or(const ParsedConfig& cfg, const std::string& key, T fallback) {
  auto it = cfg.values.find(key);
  if (it == cfg.values.end()) return fallback;
  return parse_number<T>(cfg, key, it->second);
}

}  // namespace detail

// A fully constructed experiment: environment, matching oracle, and run
// parameters, ready for the harness.
struct Experiment {
  std::unique_ptr<Environment> env;
  std::unique_ptr<Oracle> oracle;
  RunConfig run;
  std::string output_dir = ".";
  std::string kind;
};

inline Experiment build_experiment(const ParsedConfig& cfg) {
  static const std::vector<std::string> known = {
      "kind",          "L",     "K",             "delta",
      "m",             "sigma", "feasible_file", "means_file",
      "horizon",       "runs",  "seed",          "checkpoints",
      "checkpoint_schedule",    "checkpoint_points", "output_dir"};
  for (const auto& [key, value] : cfg.values) {
    bool ok = false;
    for (const auto& k : known) ok = ok || k == key;
    if (!ok) throw ConfigError(cfg.line_of(key), "unknown key \"" + key + "\"");
  }

  Experiment exp;
  exp.kind = detail::require(cfg, "kind");
  if (exp.kind == "kpath") {
    auto L = detail::get_number<std::size_t>(cfg, "L");
    auto K = detail::get_number<std::size_t>(cfg, "K");
    auto delta = detail::get_number<double>(cfg, "delta");
    exp.env = std::make_unique<KPathEnv>(L, K, delta);
    exp.oracle = std::make_unique<KPathOracle>(L, K);
  } else if (exp.kind == "grid") {
    auto m = detail::get_number<std::size_t>(cfg, "m");
    auto sigma = detail::get_number<double>(cfg, "sigma");
    exp.env = std::make_unique<GridEnv>(m, sigma);
    exp.oracle = std::make_unique<GridOracle>(GridSpec(m));
  } else if (exp.kind == "explicit") {
    auto oracle = std::make_unique<ExplicitFeasibleSetOracle>(
        ExplicitFeasibleSetOracle::load(detail::require(cfg, "feasible_file")));
    const std::string means_path = detail::require(cfg, "means_file");
    std::ifstream in(means_path);
    if (!in) throw ConfigError(0, "cannot open means file " + means_path);
    WeightVector means;
    double v;
    while (in >> v) means.push_back(v);
    if (!in.eof()) throw ConfigError(0, "malformed means file " + means_path);
    if (means.size() != oracle->ground_size()) {
      throw ConfigError(0, "means file has " + std::to_string(means.size()) +
                               " entries, expected " +
                               std::to_string(oracle->ground_size()));
    }
    exp.env = std::make_unique<BernoulliEnv>(std::move(means));
    exp.oracle = std::move(oracle);
  } else {
    throw ConfigError(cfg.line_of("kind"),
                      "unknown kind \"" + exp.kind + "\" (kpath|grid|explicit)");
  }

  exp.run.horizon = detail::get_number<std::uint64_t>(cfg, "horizon");
  if (exp.run.horizon < 1) {
    throw ConfigError(cfg.line_of("horizon"), "horizon must be >= 1");
  }
  exp.run.num_runs = detail::get_number_or<std::size_t>(cfg, "runs", 10);
  if (exp.run.num_runs < 1) {
    throw ConfigError(cfg.line_of("runs"), "runs must be >= 1");
  }
  exp.run.master_seed = detail::get_number_or<std::uint64_t>(cfg, "seed", 1);
  exp.output_dir = cfg.has("output_dir") ? cfg.values.at("output_dir") : ".";

  if (cfg.has("checkpoints")) {
    if (cfg.has("checkpoint_schedule") || cfg.has("checkpoint_points")) {
      throw ConfigError(cfg.line_of("checkpoints"),
                        "checkpoints and checkpoint_schedule are exclusive");
    }
    std::istringstream ss(cfg.values.at("checkpoints"));
    std::uint64_t c;
    while (ss >> c) exp.run.checkpoints.push_back(c);
    if (!ss.eof() || exp.run.checkpoints.empty()) {
      throw ConfigError(cfg.line_of("checkpoints"),
                        "checkpoints must be a space-separated integer list");
    }
  } else {
    auto points = detail::get_number_or<std::size_t>(cfg, "checkpoint_points", 20);
    std::string schedule = cfg.has("checkpoint_schedule")
                               ? cfg.values.at("checkpoint_schedule")
                               : "geometric";
    if (schedule == "geometric") {
      exp.run.checkpoints = geometric_checkpoints(
          std::min<std::uint64_t>(100, exp.run.horizon), exp.run.horizon,
          points);
    } else if (schedule == "linear") {
      exp.run.checkpoints = linear_checkpoints(exp.run.horizon, points);
    } else {
      throw ConfigError(cfg.line_of("checkpoint_schedule"),
                        "checkpoint_schedule must be geometric or linear");
    }
  }

  // Surface bad numeric combinations now, before any run starts.
  try {
    (void)exp.run.resolved_checkpoints();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(0, e.what());
  }
  return exp;
}

}  // namespace semibandit
