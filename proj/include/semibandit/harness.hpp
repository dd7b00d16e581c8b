#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include "semibandit/agent.hpp"
#include "semibandit/env.hpp"
#include "semibandit/oracle.hpp"
#include "semibandit/rng.hpp"

namespace semibandit {

// Geometric checkpoint schedule: `points` values from lo to hi with a
// constant ratio, rounded and deduplicated. Degenerates gracefully when
// hi <= lo.
inline std::vector<std::uint64_t> geometric_checkpoints(std::uint64_t lo,
                                                        std::uint64_t hi,
                                                        std::size_t points) {
  if (lo < 1 || points < 1) {
    throw std::invalid_argument("geometric_checkpoints: need lo, points >= 1");
  }
  if (hi <= lo) return {hi};
  std::vector<std::uint64_t> cps;
  const double ratio = static_cast<double>(hi) / static_cast<double>(lo);
  for (std::size_t i = 0; i < points; ++i) {
    double frac = points == 1 ? 1.0
                              : static_cast<double>(i) /
                                    static_cast<double>(points - 1);
    auto c = static_cast<std::uint64_t>(
        std::llround(static_cast<double>(lo) * std::pow(ratio, frac)));
    c = std::min(c, hi);
    if (cps.empty() || c > cps.back()) cps.push_back(c);
  }
  if (cps.back() != hi) cps.push_back(hi);
  return cps;
}

inline std::vector<std::uint64_t> linear_checkpoints(std::uint64_t hi,
                                                     std::size_t points) {
  if (hi < 1 || points < 1) {
    throw std::invalid_argument("linear_checkpoints: need hi, points >= 1");
  }
  std::vector<std::uint64_t> cps;
  for (std::size_t i = 1; i <= points; ++i) {
    auto c = static_cast<std::uint64_t>(std::llround(
        static_cast<double>(hi) * static_cast<double>(i) /
        static_cast<double>(points)));
    if (c >= 1 && (cps.empty() || c > cps.back())) cps.push_back(c);
  }
  cps.back() = hi;
  return cps;
}

struct RunConfig {
  std::uint64_t horizon = 100000;
  std::size_t num_runs = 10;
  std::uint64_t master_seed = 1;
  // Strictly increasing step indices <= horizon; empty selects the default
  // geometric schedule of 20 points from 100 to the horizon.
  std::vector<std::uint64_t> checkpoints;

  std::vector<std::uint64_t> resolved_checkpoints() const {
    if (horizon < 1) throw std::invalid_argument("run config: horizon must be >= 1");
    if (num_runs < 1) throw std::invalid_argument("run config: num_runs must be >= 1");
    if (checkpoints.empty()) {
      return geometric_checkpoints(std::min<std::uint64_t>(100, horizon),
                                   horizon, 20);
    }
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
      if (checkpoints[i] < 1 || checkpoints[i] > horizon ||
          (i > 0 && checkpoints[i] <= checkpoints[i - 1])) {
        throw std::invalid_argument(
            "run config: checkpoints must be strictly increasing in [1, horizon]");
      }
    }
    return checkpoints;
  }
};

// Cumulative pseudo- and realized regret of one episode, recorded at the
// checkpoint steps.
struct RegretTrace {
  std::vector<std::uint64_t> checkpoints;
  std::vector<double> cumulative_pseudo;
  std::vector<double> cumulative_realized;
  std::uint64_t run_seed = 0;
  std::uint64_t init_steps = 0;   // first_step - 1
  bool truncated_init = false;    // horizon ended before init finished
};

// One seeded episode: init, then UCB steps up to the horizon, with
// pseudo-regret accrued from step 1 (init rounds included). Deterministic
// given (master_seed, run_index).
inline RegretTrace run_episode(const Environment& env, const Oracle& oracle,
                               const GapSummary& bench, const RunConfig& cfg,
                               std::size_t run_index) {
  const auto checkpoints = cfg.resolved_checkpoints();
  RegretTrace trace;
  trace.checkpoints = checkpoints;
  trace.run_seed = derive_run_seed(cfg.master_seed, run_index);
  Rng rng(trace.run_seed);

  double cum_pseudo = 0.0;
  double cum_realized = 0.0;
  std::size_t next_cp = 0;
  auto record_step = [&](std::uint64_t t, double pseudo, double realized) {
    cum_pseudo += pseudo;
    cum_realized += realized;
    while (next_cp < checkpoints.size() && checkpoints[next_cp] == t) {
      trace.cumulative_pseudo.push_back(cum_pseudo);
      trace.cumulative_realized.push_back(cum_realized);
      ++next_cp;
    }
  };

  InitResult ir = init(oracle, env, rng);
  trace.init_steps = ir.first_step - 1;
  const std::uint64_t accounted_init =
      std::min<std::uint64_t>(trace.init_steps, cfg.horizon);
  trace.truncated_init = trace.init_steps > cfg.horizon;
  for (std::uint64_t t = 1; t <= accounted_init; ++t) {
    const InitRound& round = ir.rounds[t - 1];
    double pseudo = solution_gap(bench, round.chosen, env.mean_weights());
    double realized = return_value(bench.optimal, round.sample) -
                      return_value(round.chosen, round.sample);
    record_step(t, pseudo, realized);
  }
  if (!trace.truncated_init) {
    AgentState state = std::move(ir.state);
    for (std::uint64_t t = ir.first_step; t <= cfg.horizon; ++t) {
      StepRecord rec = step(state, oracle, env, rng, bench);
      record_step(t, rec.pseudo_regret, rec.realized_regret);
    }
  }
  // Checkpoints past the recorded range (possible only when truncated).
  while (trace.cumulative_pseudo.size() < checkpoints.size()) {
    trace.cumulative_pseudo.push_back(cum_pseudo);
    trace.cumulative_realized.push_back(cum_realized);
  }
  return trace;
}

inline RegretTrace run_episode(const Environment& env, const Oracle& oracle,
                               const RunConfig& cfg, std::size_t run_index) {
  return run_episode(env, oracle, gap_summary(env, oracle), cfg, run_index);
}

// All runs of the config, ordered by run index regardless of how many
// worker threads execute them.
inline std::vector<RegretTrace> run_all(const Environment& env,
                                        const Oracle& oracle,
                                        const RunConfig& cfg,
                                        unsigned jobs = 1) {
  const GapSummary bench = gap_summary(env, oracle);
  (void)cfg.resolved_checkpoints();  // reject bad configs on this thread
  std::vector<RegretTrace> traces(cfg.num_runs);
  if (jobs <= 1 || cfg.num_runs <= 1) {
    for (std::size_t i = 0; i < cfg.num_runs; ++i) {
      traces[i] = run_episode(env, oracle, bench, cfg, i);
    }
    return traces;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      for (std::size_t i = next.fetch_add(1); i < cfg.num_runs;
           i = next.fetch_add(1)) {
        traces[i] = run_episode(env, oracle, bench, cfg, i);
      }
    } catch (...) {
      std::scoped_lock lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(cfg.num_runs);  // stop handing out work
    }
  };
  std::vector<std::thread> pool;
  const unsigned workers =
      std::min<unsigned>(jobs, static_cast<unsigned>(cfg.num_runs));
  pool.reserve(workers);
  for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return traces;
}

// Per-checkpoint mean and standard deviation (population form, so a
// single run reports zero spread) of cumulative pseudo-regret.
struct AggregateResult {
  std::vector<std::uint64_t> checkpoints;
  std::vector<double> mean;
  std::vector<double> stddev;
  std::size_t num_runs = 0;
};

inline AggregateResult aggregate(const std::vector<RegretTrace>& traces) {
  if (traces.empty()) throw std::invalid_argument("aggregate: no traces");
  AggregateResult agg;
  agg.checkpoints = traces.front().checkpoints;
  agg.num_runs = traces.size();
  const std::size_t n_cp = agg.checkpoints.size();
  for (const RegretTrace& t : traces) {
    if (t.checkpoints != agg.checkpoints) {
      throw std::invalid_argument("aggregate: traces disagree on checkpoints");
    }
  }
  agg.mean.resize(n_cp);
  agg.stddev.resize(n_cp);
  const double n = static_cast<double>(traces.size());
  for (std::size_t c = 0; c < n_cp; ++c) {
    double sum = 0.0;
    for (const RegretTrace& t : traces) sum += t.cumulative_pseudo[c];
    const double mean = sum / n;
    double sq = 0.0;
    for (const RegretTrace& t : traces) {
      const double d = t.cumulative_pseudo[c] - mean;
      sq += d * d;
    }
    agg.mean[c] = mean;
    agg.stddev[c] = std::sqrt(sq / n);
  }
  return agg;
}

inline AggregateResult run_many(const Environment& env, const Oracle& oracle,
                                const RunConfig& cfg, unsigned jobs = 1) {
  return aggregate(run_all(env, oracle, cfg, jobs));
}

// Empirical-vs-bound report: per-checkpoint ratio mean/bound (zero where
// the bound is infinite) and flags where the mean exceeds the bound.
struct BoundComparison {
  std::vector<double> bound;
  std::vector<double> ratio;
  std::vector<bool> exceeded;
  bool any_exceeded = false;
};

inline BoundComparison compare_to_bound(
    const AggregateResult& agg,
    const std::function<double(std::uint64_t)>& bound_at) {
  BoundComparison cmp;
  cmp.bound.reserve(agg.checkpoints.size());
  for (std::size_t c = 0; c < agg.checkpoints.size(); ++c) {
    const double b = bound_at(agg.checkpoints[c]);
    cmp.bound.push_back(b);
    cmp.ratio.push_back(std::isinf(b) ? 0.0 : agg.mean[c] / b);
    const bool over = agg.mean[c] > b;
    cmp.exceeded.push_back(over);
    cmp.any_exceeded = cmp.any_exceeded || over;
  }
  return cmp;
}

}  // namespace semibandit
