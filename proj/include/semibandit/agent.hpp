#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "semibandit/env.hpp"
#include "semibandit/oracle.hpp"
#include "semibandit/rng.hpp"
#include "semibandit/types.hpp"

namespace semibandit {

// Per-item observation counts T(e), running means of the observed weights,
// and the current step index t. The step counter starts at 1;
// initialization consumes steps 1 .. first_step-1.
struct AgentState {
  std::vector<std::uint64_t> counts;
  WeightVector means;
  std::uint64_t step = 1;

  std::size_t ground_size() const { return counts.size(); }
};

// Confidence radius sqrt(1.5 ln t / s) for an item observed s times at
// time t. Natural logarithm.
inline double confidence_radius(std::uint64_t t, std::uint64_t s) {
  if (t < 1) throw std::invalid_argument("confidence_radius: t must be >= 1");
  if (s < 1) {
    throw std::domain_error(
        "confidence_radius: s = 0 (item never observed; run init first)");
  }
  return std::sqrt(1.5 * std::log(static_cast<double>(t)) /
                   static_cast<double>(s));
}

// U(e) = mean(e) + radius(t-1, count(e)). UCBs may exceed 1; the oracle
// accepts any nonnegative weights, so no clipping.
inline WeightVector compute_ucbs(const AgentState& state) {
  if (state.step < 2) {
    throw std::domain_error("compute_ucbs: step must be >= 2 (after init)");
  }
  WeightVector ucbs(state.ground_size());
  const std::uint64_t t = state.step - 1;
  const double log_t = std::log(static_cast<double>(t));
  for (std::size_t e = 0; e < ucbs.size(); ++e) {
    if (state.counts[e] == 0) {
      throw std::domain_error("compute_ucbs: item " + std::to_string(e) +
                              " never observed (agent not initialized)");
    }
    ucbs[e] = state.means[e] +
              std::sqrt(1.5 * log_t / static_cast<double>(state.counts[e]));
  }
  return ucbs;
}

// Fold the observed weights of the chosen items into the running means,
// increment their counts, and advance the step. Only entries of `chosen`
// are read from `observed` (semi-bandit feedback).
inline void update(AgentState& state, const Solution& chosen,
                   const WeightVector& observed) {
  if (observed.size() != state.ground_size()) {
    throw std::invalid_argument("update: observation length mismatch");
  }
  for (ItemId e : chosen.items()) {
    if (e >= state.ground_size()) {
      throw std::out_of_range("update: item out of range");
    }
    double w = observed[e];
    if (!(w >= 0.0 && w <= 1.0)) {
      throw std::invalid_argument("update: observed weight outside [0,1]");
    }
    const double old_count = static_cast<double>(state.counts[e]);
    state.counts[e] += 1;
    state.means[e] =
        (old_count * state.means[e] + w) / static_cast<double>(state.counts[e]);
  }
  state.step += 1;
}

// One initialization round: the solution chosen and the weights sampled.
struct InitRound {
  Solution chosen;
  WeightVector sample;
};

struct InitResult {
  AgentState state;
  std::uint64_t first_step = 1;   // equals state.step; rounds used + 1
  std::vector<InitRound> rounds;  // steps 1 .. first_step-1, for accounting
};

// Initialization: repeatedly call the oracle on the 0/1 vector of
// not-yet-observed items; after each call record the fresh observation of
// every chosen item (overwriting earlier ones; counts stay 1) and clear
// its marker. Terminates in at most L calls when every item belongs to
// some feasible solution.
inline InitResult init(const Oracle& oracle, const Environment& env, Rng& rng) {
  const std::size_t ground = oracle.ground_size();
  if (env.ground_size() != ground) {
    throw std::invalid_argument("init: environment/oracle size mismatch");
  }
  InitResult out;
  out.state.counts.assign(ground, 0);
  out.state.means.assign(ground, 0.0);

  WeightVector unobserved(ground, 1.0);
  std::size_t remaining = ground;
  std::uint64_t iterations = 0;
  while (remaining > 0) {
    if (iterations >= ground) {
      throw std::runtime_error(
          "init: oracle failed to cover all items in L iterations "
          "(some item belongs to no feasible solution?)");
    }
    Solution chosen = oracle.maximize(unobserved);
    WeightVector w = env.sample(rng);
    for (ItemId e : chosen.items()) {
      out.state.means[e] = w[e];
      if (unobserved[e] == 1.0) {
        unobserved[e] = 0.0;
        --remaining;
      }
    }
    out.rounds.push_back(InitRound{std::move(chosen), std::move(w)});
    ++iterations;
  }
  out.state.counts.assign(ground, 1);
  out.state.step = iterations + 1;
  out.first_step = out.state.step;
  return out;
}

// What one step of the agent did, with regret measured against the
// environment's optimal solution.
struct StepRecord {
  std::uint64_t step = 0;
  Solution chosen;
  double realized_return = 0.0;
  double pseudo_regret = 0.0;   // f(A*, mean) - f(A_t, mean)
  double realized_regret = 0.0; // f(A*, w_t) - f(A_t, w_t)
};

// Gap of `chosen` relative to the precomputed optimum. Sub-ulp negatives
// from re-summing tied solutions in a different order are clamped to 0.
inline double solution_gap(const GapSummary& bench, const Solution& chosen,
                           const WeightVector& mean) {
  double gap = bench.optimal_value - return_value(chosen, mean);
  if (gap < 0.0 && gap > -kOptimumTieTolerance) gap = 0.0;
  return gap;
}

// One round of the main loop: compute UCBs, ask the oracle for the best
// solution under them, draw the weights, account regret, update statistics.
inline StepRecord step(AgentState& state, const Oracle& oracle,
                       const Environment& env, Rng& rng,
                       const GapSummary& bench) {
  StepRecord rec;
  rec.step = state.step;
  WeightVector ucbs = compute_ucbs(state);
  rec.chosen = oracle.maximize(ucbs);
  WeightVector w = env.sample(rng);
  rec.realized_return = return_value(rec.chosen, w);
  rec.pseudo_regret = solution_gap(bench, rec.chosen, env.mean_weights());
  rec.realized_regret = return_value(bench.optimal, w) - rec.realized_return;
  update(state, rec.chosen, w);
  return rec;
}

}  // namespace semibandit
