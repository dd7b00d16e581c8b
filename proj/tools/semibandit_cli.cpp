// Command-line front end: run configured experiments, sweep the benchmark
// instances, print regret-bound tables, and run the fast verification
// suite. Exit codes: 0 success, 1 runtime or check failure, 2 usage or
// config error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "semibandit/semibandit.hpp"

namespace {

using namespace semibandit;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::uint64_t effective_seed(std::uint64_t configured) {
  if (const char* env = std::getenv("SEMIBANDIT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ConfigError(0, std::string("SEMIBANDIT_SEED is not an integer: ") + env);
    }
  }
  return configured;
}

ProblemParams instance_params(const Experiment& exp, const GapSummary& bench,
                              std::uint64_t n) {
  ProblemParams p;
  p.L = exp.oracle->ground_size();
  p.K = exp.oracle->max_solution_size();
  p.n = n;
  p.item_gaps = bench.suboptimal_gaps();
  return p;
}

// Bound envelope used in the aggregate CSV: the general gap-dependent
// form with the instance's true per-item gaps. +inf when no finite
// envelope exists: a single-solution feasible set has no suboptimal
// items, and a tied optimum yields zero gaps.
double envelope_at(const ProblemParams& base, std::uint64_t t) {
  if (!base.item_gaps || base.item_gaps->empty()) {
    return std::numeric_limits<double>::infinity();
  }
  for (double g : *base.item_gaps) {
    if (!(g > 0.0)) return std::numeric_limits<double>::infinity();
  }
  ProblemParams p = base;
  p.n = t;
  return gap_bound_k(p);
}

int cmd_run(const std::string& config_path, unsigned jobs,
            const std::optional<std::string>& output_dir_override) {
  Experiment exp = build_experiment(parse_config_file(config_path));
  exp.run.master_seed = effective_seed(exp.run.master_seed);
  if (output_dir_override) exp.output_dir = *output_dir_override;

  const GapSummary bench = gap_summary(*exp.env, *exp.oracle);
  if (!bench.unique_optimum) {
    std::cout << "warning: optimum is not unique (second best within 1e-12); "
                 "gaps are relative to the oracle's maximizer\n";
  }

  const auto traces = run_all(*exp.env, *exp.oracle, exp.run, jobs);
  const auto agg = aggregate(traces);
  const ProblemParams base =
      instance_params(exp, bench, exp.run.horizon);
  const auto cmp = compare_to_bound(
      agg, [&](std::uint64_t t) { return envelope_at(base, t); });

  std::filesystem::create_directories(exp.output_dir);
  const auto runs_path = std::filesystem::path(exp.output_dir) / "runs.csv";
  const auto agg_path = std::filesystem::path(exp.output_dir) / "aggregate.csv";
  write_runs_csv(runs_path, traces);
  write_aggregate_csv(agg_path, agg, cmp);

  std::cout << "kind=" << exp.kind << " L=" << exp.oracle->ground_size()
            << " K=" << exp.oracle->max_solution_size()
            << " n=" << exp.run.horizon << " runs=" << exp.run.num_runs
            << " seed=" << exp.run.master_seed << "\n";
  std::printf("final pseudo-regret: mean=%.6g std=%.6g bound=%.6g ratio=%.4g\n",
              agg.mean.back(), agg.stddev.back(), cmp.bound.back(),
              cmp.ratio.back());
  if (cmp.any_exceeded) {
    std::cout << "warning: mean pseudo-regret exceeded the bound at some "
                 "checkpoint\n";
  }
  std::cout << "wrote " << runs_path.string() << " and " << agg_path.string()
            << "\n";
  return kExitOk;
}

struct SweepRow {
  std::string prefix;  // instance columns, already comma-joined
  double final_mean = 0.0;
  double final_std = 0.0;
  double bound = 0.0;
};

void write_sweep_csv(const std::string& path, const std::string& header,
                     const std::vector<SweepRow>& rows) {
  std::string out = header + "\n";
  for (const SweepRow& r : rows) {
    out += r.prefix + "," + format_double(r.final_mean) + "," +
           format_double(r.final_std) + "," + format_double(r.bound) + "\n";
  }
  write_file_atomic(path, out);
}

int cmd_sweep_grid(const std::vector<std::size_t>& ms,
                   const std::vector<double>& sigmas, std::uint64_t horizon,
                   std::size_t runs, std::uint64_t seed, unsigned jobs,
                   const std::string& output) {
  std::vector<SweepRow> rows;
  for (std::size_t m : ms) {
    for (double sigma : sigmas) {
      GridEnv env(m, sigma);
      GridOracle oracle{GridSpec(m)};
      RunConfig cfg;
      cfg.horizon = horizon;
      cfg.num_runs = runs;
      cfg.master_seed = seed;
      const GapSummary bench = gap_summary(env, oracle);
      const auto agg = run_many(env, oracle, cfg, jobs);
      ProblemParams p;
      p.L = oracle.ground_size();
      p.K = oracle.max_solution_size();
      p.n = horizon;
      p.item_gaps = bench.suboptimal_gaps();
      SweepRow row;
      row.prefix = std::to_string(m) + "," + format_double(sigma) + "," +
                   std::to_string(oracle.ground_size());
      row.final_mean = agg.mean.back();
      row.final_std = agg.stddev.back();
      row.bound = gap_bound_k(p);
      rows.push_back(row);
      std::printf("m=%zu sigma=%g L=%zu: mean=%.6g std=%.6g bound=%.6g\n", m,
                  sigma, oracle.ground_size(), row.final_mean, row.final_std,
                  row.bound);
    }
  }
  write_sweep_csv(output, "m,sigma,L,final_mean_regret,final_std,bound", rows);
  std::cout << "wrote " << output << "\n";
  return kExitOk;
}

int cmd_sweep_kpath(const std::vector<std::size_t>& ls, std::size_t K,
                    const std::vector<double>& deltas, std::uint64_t horizon,
                    std::size_t runs, std::uint64_t seed, unsigned jobs,
                    const std::string& output) {
  std::vector<SweepRow> rows;
  for (std::size_t L : ls) {
    for (double delta : deltas) {
      KPathEnv env(L, K, delta);
      KPathOracle oracle(L, K);
      RunConfig cfg;
      cfg.horizon = horizon;
      cfg.num_runs = runs;
      cfg.master_seed = seed;
      const auto agg = run_many(env, oracle, cfg, jobs);
      ProblemParams p;
      p.L = L;
      p.K = K;
      p.n = horizon;
      p.delta = delta;
      SweepRow row;
      row.prefix = std::to_string(L) + "," + std::to_string(K) + "," +
                   format_double(delta);
      row.final_mean = agg.mean.back();
      row.final_std = agg.stddev.back();
      row.bound = gap_bound_k_uniform(p);
      rows.push_back(row);
      std::printf("L=%zu K=%zu delta=%g: mean=%.6g std=%.6g bound=%.6g\n", L,
                  K, delta, row.final_mean, row.final_std, row.bound);
    }
  }
  write_sweep_csv(output, "L,K,delta,final_mean_regret,final_std,bound", rows);
  std::cout << "wrote " << output << "\n";
  return kExitOk;
}

int cmd_bounds(std::size_t K, std::size_t L, std::uint64_t n,
               const std::optional<double>& delta,
               const std::optional<std::string>& gaps_file, bool csv) {
  std::optional<std::vector<double>> gaps;
  if (gaps_file) {
    std::ifstream in(*gaps_file);
    if (!in) throw ConfigError(0, "cannot open gaps file " + *gaps_file);
    std::vector<double> parsed;
    double v;
    while (in >> v) parsed.push_back(v);
    if (!in.eof() || parsed.empty()) {
      throw ConfigError(0, "gaps file must hold one or more reals");
    }
    gaps = std::move(parsed);
  }
  if (!delta && !gaps) {
    throw ConfigError(0, "bounds: provide --delta or --gaps-file");
  }

  ProblemParams p;
  p.L = L;
  p.K = K;
  p.n = n;
  p.delta = delta;
  p.item_gaps = gaps;

  struct Row {
    std::string label;
    double value;
    std::string note;
  };
  std::vector<Row> rows;
  if (delta) {
    rows.push_back({"Theorem 2", gap_bound_k43_uniform(p),
                    "gap-dependent upper bound, uniform gap, K^{4/3} form"});
    rows.push_back({"Theorem 4", gap_bound_k_uniform(p),
                    "gap-dependent upper bound, uniform gap, K form"});
  }
  if (gaps) {
    rows.push_back({"Theorem 3", gap_bound_k43(p),
                    "gap-dependent upper bound, per-item gaps, K^{4/3} form"});
    rows.push_back({"Theorem 5", gap_bound_k(p),
                    "gap-dependent upper bound, per-item gaps, K form"});
  }
  if (n >= 2) {
    rows.push_back({"Theorem 6", gap_free_bound(p), "gap-free upper bound"});
  }
  if (L % K == 0) {
    if (delta && *delta / static_cast<double>(K) < 0.5) {
      rows.push_back({"Proposition 1", lower_bound_gap(p),
                      "asymptotic lower bound: coefficient of log n"});
    }
    rows.push_back({"Proposition 2", lower_bound_gap_free(p),
                    "gap-free lower bound"});
  }

  if (csv) {
    std::cout << "label,value\n";
    for (const Row& r : rows) {
      std::cout << r.label << "," << format_double(r.value) << "\n";
    }
  } else {
    std::printf("bounds for L=%zu K=%zu n=%llu", L, K,
                static_cast<unsigned long long>(n));
    if (delta) std::printf(" delta=%g", *delta);
    if (gaps) std::printf(" (%zu per-item gaps)", gaps->size());
    std::printf("\n");
    for (const Row& r : rows) {
      std::printf("%s: %.6g  [%s]\n", r.label.c_str(), r.value,
                  r.note.c_str());
    }
  }
  return kExitOk;
}

int cmd_verify() {
  bool all = true;
  for (const CheckResult& check : run_verification_suite()) {
    std::printf("[%s] %s: %s\n", check.passed ? "PASS" : "FAIL",
                check.name.c_str(), check.detail.c_str());
    all = all && check.passed;
  }
  return all ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CombUCB1 semi-bandit experiments and regret bounds"};
  app.require_subcommand(1);

  // run
  std::string config_path;
  unsigned jobs = 1;
  std::optional<std::string> output_dir_override;
  auto* run_cmd = app.add_subcommand("run", "run the experiment in a config file");
  run_cmd->add_option("config", config_path, "config file path")->required();
  run_cmd->add_option("--jobs", jobs, "worker threads for parallel runs");
  std::string outdir_tmp;
  auto* outdir_opt =
      run_cmd->add_option("--output-dir", outdir_tmp, "override output_dir");

  // sweep-grid
  std::vector<std::size_t> ms{2, 4, 6};
  std::vector<double> sigmas{0.2, 0.4, 0.8};
  std::uint64_t horizon = 100000;
  std::size_t runs = 10;
  std::uint64_t seed = 1;
  unsigned sweep_jobs = 1;
  std::string sweep_out = "sweep_grid.csv";
  auto* sweep_grid = app.add_subcommand(
      "sweep-grid", "run the grid instance over a (m, sigma) product");
  sweep_grid->add_option("--m", ms, "grid sizes")->delimiter(',');
  sweep_grid->add_option("--sigma", sigmas, "gap scales in (0,1)")->delimiter(',');
  sweep_grid->add_option("--horizon", horizon, "steps per run");
  sweep_grid->add_option("--runs", runs, "independent runs per cell");
  sweep_grid->add_option("--seed", seed, "master seed");
  sweep_grid->add_option("--jobs", sweep_jobs, "worker threads");
  sweep_grid->add_option("--output", sweep_out, "output CSV path");

  // sweep-kpath
  std::vector<std::size_t> ls{8, 16, 24};
  std::size_t kpath_k = 2;
  std::vector<double> deltas{0.2, 0.4, 0.8};
  std::string kpath_out = "sweep_kpath.csv";
  auto* sweep_kpath = app.add_subcommand(
      "sweep-kpath", "run the K-path instance over a (L, delta) product");
  sweep_kpath->add_option("--L", ls, "ground-set sizes (multiples of K)")
      ->delimiter(',');
  sweep_kpath->add_option("--K", kpath_k, "items per path");
  sweep_kpath->add_option("--delta", deltas, "gaps (0 < delta/K < 0.5)")
      ->delimiter(',');
  sweep_kpath->add_option("--horizon", horizon, "steps per run");
  sweep_kpath->add_option("--runs", runs, "independent runs per cell");
  sweep_kpath->add_option("--seed", seed, "master seed");
  sweep_kpath->add_option("--jobs", sweep_jobs, "worker threads");
  sweep_kpath->add_option("--output", kpath_out, "output CSV path");

  // bounds
  std::size_t bounds_k = 0, bounds_l = 0;
  std::uint64_t bounds_n = 0;
  double delta_tmp = 0.0;
  std::string gaps_file_tmp;
  bool bounds_csv = false;
  auto* bounds_cmd =
      app.add_subcommand("bounds", "print all applicable regret bounds");
  bounds_cmd->add_option("--K", bounds_k, "maximum solution size")->required();
  bounds_cmd->add_option("--L", bounds_l, "number of ground items")->required();
  bounds_cmd->add_option("--n", bounds_n, "horizon")->required();
  auto* delta_opt = bounds_cmd->add_option("--delta", delta_tmp, "uniform gap");
  auto* gaps_opt = bounds_cmd->add_option("--gaps-file", gaps_file_tmp,
                                          "file of per-item minimum gaps");
  bounds_cmd->add_flag("--csv", bounds_csv, "emit label,value CSV");

  // verify
  auto* verify_cmd =
      app.add_subcommand("verify", "run the fast verification suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run_cmd->parsed()) {
      if (*outdir_opt) output_dir_override = outdir_tmp;
      return cmd_run(config_path, jobs, output_dir_override);
    }
    if (sweep_grid->parsed()) {
      return cmd_sweep_grid(ms, sigmas, horizon, runs, seed, sweep_jobs,
                            sweep_out);
    }
    if (sweep_kpath->parsed()) {
      return cmd_sweep_kpath(ls, kpath_k, deltas, horizon, runs, seed,
                             sweep_jobs, kpath_out);
    }
    if (bounds_cmd->parsed()) {
      std::optional<double> delta;
      if (*delta_opt) delta = delta_tmp;
      std::optional<std::string> gaps_file;
      if (*gaps_opt) gaps_file = gaps_file_tmp;
      return cmd_bounds(bounds_k, bounds_l, bounds_n, delta, gaps_file,
                        bounds_csv);
    }
    if (verify_cmd->parsed()) {
      return cmd_verify();
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
