#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "semibandit/grid.hpp"
#include "semibandit/oracle.hpp"
#include "semibandit/rng.hpp"
#include "semibandit/types.hpp"

namespace semibandit {

// A sampleable weight distribution over [0,1]^L together with its mean
// vector. Immutable after construction; concurrent sampling is safe as
// long as each caller owns its own Rng stream. The mean vector is for
// harness-side regret accounting only; the agent never sees it.
class Environment {
 public:
  virtual ~Environment() = default;

  std::size_t ground_size() const { return means_.size(); }
  const WeightVector& mean_weights() const { return means_; }

  WeightVector sample(Rng& rng) const {
    WeightVector w(means_.size());
    sample_into(rng, w);
    return w;
  }

  void sample_into(Rng& rng, WeightVector& out) const {
    out.resize(means_.size());
    do_sample(rng, out);
  }

 protected:
  explicit Environment(WeightVector means) : means_(std::move(means)) {
    if (means_.empty()) {
      throw std::invalid_argument("environment: empty mean vector");
    }
    for (double v : means_) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument("environment: means must lie in [0,1]");
      }
    }
  }

  virtual void do_sample(Rng& rng, WeightVector& out) const = 0;

 private:
  WeightVector means_;
};

// Independent Bernoulli weights with the given means; items drawn in
// index order, one uniform per item.
class BernoulliEnv final : public Environment {
 public:
  explicit BernoulliEnv(WeightVector means) : Environment(std::move(means)) {}

 private:
  void do_sample(Rng& rng, WeightVector& out) const override {
    const WeightVector& mu = mean_weights();
    for (std::size_t e = 0; e < mu.size(); ++e) out[e] = bernoulli01(rng, mu[e]);
  }
};

// The K-path construction: L/K disjoint paths of K items. Items of the
// first path have mean 0.5, all others 0.5 - delta/K. Weights within one
// path are a single shared Bernoulli draw; distinct paths are independent.
// One uniform per path, in path order.
class KPathEnv final : public Environment {
 public:
  KPathEnv(std::size_t num_items, std::size_t path_size, double delta)
      : Environment(make_means(num_items, path_size, delta)),
        path_size_(path_size),
        delta_(delta) {}

  std::size_t path_size() const { return path_size_; }
  double delta() const { return delta_; }

 private:
  static WeightVector make_means(std::size_t L, std::size_t K, double delta) {
    if (K == 0 || L == 0 || L % K != 0) {
      throw std::invalid_argument("k-path env: L must be a positive multiple of K");
    }
    if (!(delta > 0.0) || !(delta / static_cast<double>(K) < 0.5)) {
      throw std::invalid_argument("k-path env: need 0 < delta/K < 0.5");
    }
    WeightVector means(L, 0.5 - delta / static_cast<double>(K));
    for (std::size_t e = 0; e < K; ++e) means[e] = 0.5;
    return means;
  }

  void do_sample(Rng& rng, WeightVector& out) const override {
    const WeightVector& mu = mean_weights();
    const std::size_t paths = mu.size() / path_size_;
    for (std::size_t j = 0; j < paths; ++j) {
      double v = bernoulli01(rng, mu[j * path_size_]);
      for (std::size_t i = 0; i < path_size_; ++i) out[j * path_size_ + i] = v;
    }
  }

  std::size_t path_size_;
  double delta_;
};

// The grid longest-path construction: independent Bernoulli edges with
// mean 0.5 + sigma/2 on leftmost-column and bottommost-row edges and
// 0.5 - sigma/2 elsewhere. Degenerate sigma in {0, 1} is rejected.
class GridEnv final : public Environment {
 public:
  GridEnv(std::size_t m, double sigma)
      : Environment(make_means(GridSpec(m), sigma)), spec_(m), sigma_(sigma) {}

  const GridSpec& spec() const { return spec_; }
  double sigma() const { return sigma_; }

 private:
  static WeightVector make_means(const GridSpec& g, double sigma) {
    if (!(sigma > 0.0 && sigma < 1.0)) {
      throw std::invalid_argument("grid env: need 0 < sigma < 1");
    }
    WeightVector means(g.ground_size(), 0.5 - sigma / 2.0);
    for (std::size_t r = 0; r < g.m; ++r) means[g.down_edge(r, 0)] = 0.5 + sigma / 2.0;
    for (std::size_t c = 0; c < g.m; ++c) means[g.right_edge(g.m, c)] = 0.5 + sigma / 2.0;
    return means;
  }

  void do_sample(Rng& rng, WeightVector& out) const override {
    const WeightVector& mu = mean_weights();
    for (std::size_t e = 0; e < mu.size(); ++e) out[e] = bernoulli01(rng, mu[e]);
  }

  GridSpec spec_;
  double sigma_;
};

// Optimal solution, its expected return, and the per-item minimum gaps
// of the instance under the environment's mean weights.
struct GapSummary {
  Solution optimal;
  double optimal_value = 0.0;
  // min_gap[e] = optimal_value - best expected return over solutions
  // containing e, for e outside the optimal solution; NaN for e in it.
  std::vector<double> min_gap;
  double second_best_value = -std::numeric_limits<double>::infinity();
  // False when a second solution reaches optimal_value within 1e-12.
  // Non-fatal: gaps are still reported relative to the oracle's maximizer.
  bool unique_optimum = true;

  // Gaps of the suboptimal items only, in item order.
  std::vector<double> suboptimal_gaps() const {
    std::vector<double> gaps;
    for (double g : min_gap) {
      if (!std::isnan(g)) gaps.push_back(g);
    }
    return gaps;
  }
};

inline constexpr double kOptimumTieTolerance = 1e-12;

inline GapSummary gap_summary(const Environment& env, const Oracle& oracle) {
  if (env.ground_size() != oracle.ground_size()) {
    throw std::invalid_argument("gap_summary: environment/oracle size mismatch");
  }
  const WeightVector& mean = env.mean_weights();
  GapSummary out;
  out.optimal = oracle.maximize(mean);
  out.optimal_value = return_value(out.optimal, mean);
  out.second_best_value = oracle.second_best_value(mean, out.optimal);
  out.unique_optimum =
      out.second_best_value < out.optimal_value - kOptimumTieTolerance;
  out.min_gap.assign(env.ground_size(),
                     std::numeric_limits<double>::quiet_NaN());
  for (ItemId e = 0; e < env.ground_size(); ++e) {
    if (out.optimal.contains(e)) continue;
    out.min_gap[e] = out.optimal_value - oracle.best_value_containing(e, mean);
  }
  return out;
}

}  // namespace semibandit
