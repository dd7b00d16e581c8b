#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "semibandit/types.hpp"

namespace semibandit {

// Closed-form regret bound evaluators. All logarithms are natural, and
// every upper bound includes the (pi^2/3 + 1) K L constant term so values
// are directly comparable to simulated cumulative pseudo-regret.

struct ProblemParams {
  std::size_t L = 0;                 // number of ground items
  std::size_t K = 0;                 // maximum solution size
  std::uint64_t n = 0;               // horizon
  std::optional<double> delta;       // uniform gap, when all gaps agree
  std::optional<std::vector<double>> item_gaps;  // per-item minimum gaps
};

namespace detail {

inline void check_instance(const ProblemParams& p) {
  if (p.K == 0 || p.L == 0 || p.K > p.L) {
    throw std::invalid_argument("bounds: need 1 <= K <= L");
  }
  if (p.n < 1) throw std::invalid_argument("bounds: need n >= 1");
}

inline double checked_gap(const ProblemParams& p, double gap) {
  if (!(gap > 0.0) || gap > static_cast<double>(p.K)) {
    throw std::invalid_argument("bounds: gaps must lie in (0, K]");
  }
  return gap;
}

inline double uniform_gap(const ProblemParams& p) {
  if (!p.delta) throw std::invalid_argument("bounds: delta not set");
  return checked_gap(p, *p.delta);
}

inline const std::vector<double>& gap_list(const ProblemParams& p) {
  if (!p.item_gaps || p.item_gaps->empty()) {
    throw std::invalid_argument("bounds: per-item gaps not set");
  }
  for (double g : *p.item_gaps) checked_gap(p, g);
  return *p.item_gaps;
}

}  // namespace detail

// (pi^2/3 + 1) K L, the gap-independent additive term shared by all
// upper bounds.
inline double bound_constant_term(std::size_t L, std::size_t K) {
  constexpr double pi = std::numbers::pi;
  return (pi * pi / 3.0 + 1.0) * static_cast<double>(K) *
         static_cast<double>(L);
}

// K^{4/3} L (48/delta) ln n + const. Uniform-gap form of the K^{4/3} bound.
inline double gap_bound_k43_uniform(const ProblemParams& p) {
  detail::check_instance(p);
  const double gap = detail::uniform_gap(p);
  const double k = static_cast<double>(p.K);
  return std::pow(k, 4.0 / 3.0) * static_cast<double>(p.L) * (48.0 / gap) *
             std::log(static_cast<double>(p.n)) +
         bound_constant_term(p.L, p.K);
}

// sum_e K^{4/3} (96/gap_e) ln n + const over the suboptimal items.
inline double gap_bound_k43(const ProblemParams& p) {
  detail::check_instance(p);
  const auto& gaps = detail::gap_list(p);
  const double k43 = std::pow(static_cast<double>(p.K), 4.0 / 3.0);
  double sum = 0.0;
  for (double g : gaps) sum += k43 * 96.0 / g;
  return sum * std::log(static_cast<double>(p.n)) +
         bound_constant_term(p.L, p.K);
}

// K L (267/delta) ln n + const. Tighter than the K^{4/3} form for large K.
inline double gap_bound_k_uniform(const ProblemParams& p) {
  detail::check_instance(p);
  const double gap = detail::uniform_gap(p);
  return static_cast<double>(p.K) * static_cast<double>(p.L) * (267.0 / gap) *
             std::log(static_cast<double>(p.n)) +
         bound_constant_term(p.L, p.K);
}

// sum_e K (534/gap_e) ln n + const over the suboptimal items.
inline double gap_bound_k(const ProblemParams& p) {
  detail::check_instance(p);
  const auto& gaps = detail::gap_list(p);
  double sum = 0.0;
  for (double g : gaps) sum += static_cast<double>(p.K) * 534.0 / g;
  return sum * std::log(static_cast<double>(p.n)) +
         bound_constant_term(p.L, p.K);
}

// 47 sqrt(K L n ln n) + const; needs n >= 2 so the log term is positive.
inline double gap_free_bound(const ProblemParams& p) {
  detail::check_instance(p);
  if (p.n < 2) throw std::invalid_argument("gap_free_bound: need n >= 2");
  const double n = static_cast<double>(p.n);
  return 47.0 * std::sqrt(static_cast<double>(p.K) *
                          static_cast<double>(p.L) * n * std::log(n)) +
         bound_constant_term(p.L, p.K);
}

// 4272 m^2 ln n / sigma: the grid instance's log term alone (the caller
// adds the constant term).
inline double grid_log_term_bound(std::size_t m, double sigma,
                                  std::uint64_t n) {
  if (m == 0) throw std::invalid_argument("grid_log_term_bound: need m >= 1");
  if (!(sigma > 0.0 && sigma < 1.0)) {
    throw std::invalid_argument("grid_log_term_bound: need 0 < sigma < 1");
  }
  if (n < 1) throw std::invalid_argument("grid_log_term_bound: need n >= 1");
  const double md = static_cast<double>(m);
  return 4272.0 * md * md * std::log(static_cast<double>(n)) / sigma;
}

// Asymptotic coefficient of ln n in the gap-dependent lower bound for the
// K-path instance: (L - K) K / (4 delta).
inline double lower_bound_gap(const ProblemParams& p) {
  detail::check_instance(p);
  if (p.L % p.K != 0) {
    throw std::invalid_argument("lower_bound_gap: L must be a multiple of K");
  }
  if (!p.delta) throw std::invalid_argument("lower_bound_gap: delta not set");
  const double gap = *p.delta;
  if (!(gap > 0.0) || !(gap / static_cast<double>(p.K) < 0.5)) {
    throw std::invalid_argument("lower_bound_gap: need 0 < delta/K < 0.5");
  }
  return static_cast<double>(p.L - p.K) * static_cast<double>(p.K) /
         (4.0 * gap);
}

// Gap-free lower bound min(sqrt(K L n), K n) / 20 for the K-path family.
inline double lower_bound_gap_free(const ProblemParams& p) {
  detail::check_instance(p);
  if (p.L % p.K != 0) {
    throw std::invalid_argument("lower_bound_gap_free: L must be a multiple of K");
  }
  const double k = static_cast<double>(p.K);
  const double n = static_cast<double>(p.n);
  return std::min(std::sqrt(k * static_cast<double>(p.L) * n), k * n) / 20.0;
}

// --- Geometric tuning sequences behind the 267/534 constants -------------
//
// The K-form bounds come from sequences beta_i = beta^i, alpha_i = d alpha^i
// with 0 < alpha < beta < sqrt(alpha) < 1. The scale d is the smallest value
// satisfying the exhaustiveness condition
//   sqrt(6/d) (1 - beta) / (sqrt(alpha) - beta) <= 1,
// and the bound constant is the series value d alpha / (beta - alpha).

inline void check_sequence_params(double alpha, double beta) {
  if (!(alpha > 0.0 && alpha < beta && beta < std::sqrt(alpha) &&
        std::sqrt(alpha) < 1.0)) {
    throw std::invalid_argument(
        "sequence params: need 0 < alpha < beta < sqrt(alpha) < 1");
  }
}

// d = 6 ((1 - beta) / (sqrt(alpha) - beta))^2.
inline double sequence_scale(double alpha, double beta) {
  check_sequence_params(alpha, beta);
  const double r = (1.0 - beta) / (std::sqrt(alpha) - beta);
  return 6.0 * r * r;
}

// Partial sum sqrt(6) sum_{i<=terms} (beta^{i-1} - beta^i) / sqrt(d alpha^i).
// Converges to sqrt(6/d) (1 - beta) / (sqrt(alpha) - beta), which equals 1
// exactly when d = sequence_scale(alpha, beta).
inline double sequence_condition_partial_sum(double alpha, double beta,
                                             double d, std::size_t terms) {
  check_sequence_params(alpha, beta);
  if (!(d > 0.0)) throw std::invalid_argument("sequence scale: need d > 0");
  double sum = 0.0;
  double beta_prev = 1.0;     // beta^0
  double alpha_pow = 1.0;
  for (std::size_t i = 1; i <= terms; ++i) {
    alpha_pow *= alpha;
    const double beta_cur = beta_prev * beta;
    sum += (beta_prev - beta_cur) / std::sqrt(d * alpha_pow);
    beta_prev = beta_cur;
  }
  return std::sqrt(6.0) * sum;
}

// Series value sum_i alpha_i / beta_i = d alpha / (beta - alpha) with the
// minimal feasible d. Evaluates to < 267 at the tuned (0.1459, 0.2360).
inline double sequence_objective(double alpha, double beta) {
  const double d = sequence_scale(alpha, beta);
  return d * alpha / (beta - alpha);
}

// Gap threshold sqrt(534 K L ln n / n) splitting the gap-free analysis
// into large-gap and small-gap regimes.
inline double gap_free_epsilon(std::size_t K, std::size_t L,
                               std::uint64_t n) {
  if (K == 0 || L == 0) throw std::invalid_argument("gap_free_epsilon: need K, L >= 1");
  if (n < 2) throw std::invalid_argument("gap_free_epsilon: need n >= 2");
  const double nd = static_cast<double>(n);
  return std::sqrt(534.0 * static_cast<double>(K) * static_cast<double>(L) *
                   std::log(nd) / nd);
}

}  // namespace semibandit
