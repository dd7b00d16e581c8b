#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "semibandit/agent.hpp"
#include "semibandit/bounds.hpp"
#include "semibandit/grid.hpp"
#include "semibandit/rng.hpp"

namespace semibandit {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Grid DP against brute-force enumeration of all monotone paths:
// the argmax values must agree exactly on random weight vectors.
inline CheckResult check_grid_oracle_equivalence(std::size_t max_m = 3,
                                                 std::size_t trials = 1000,
                                                 std::uint64_t seed = 4242) {
  CheckResult res{"grid-oracle-vs-enumeration", true, ""};
  Rng rng(seed);
  std::size_t mismatches = 0;
  for (std::size_t m = 1; m <= max_m; ++m) {
    GridSpec spec(m);
    GridOracle oracle(spec);
    const auto paths = grid_enumerate_paths(spec);
    WeightVector w(spec.ground_size());
    for (std::size_t trial = 0; trial < trials; ++trial) {
      for (double& v : w) v = uniform01(rng);
      const Solution got = oracle.maximize(w);
      double best = -1.0;
      for (const Solution& p : paths) best = std::max(best, return_value(p, w));
      if (return_value(got, w) != best) ++mismatches;
    }
  }
  res.passed = mismatches == 0;
  std::ostringstream os;
  os << mismatches << " value mismatches over " << max_m * trials
     << " trials (m <= " << max_m << ")";
  res.detail = os.str();
  return res;
}

// The tuned geometric-sequence constant must land strictly inside
// (265, 267).
inline CheckResult check_sequence_objective(double alpha = 0.1459,
                                            double beta = 0.2360) {
  CheckResult res{"sequence-objective", false, ""};
  const double value = sequence_objective(alpha, beta);
  res.passed = value > 265.0 && value < 267.0;
  std::ostringstream os;
  os.precision(10);
  os << "objective(" << alpha << ", " << beta << ") = " << value
     << ", required in (265, 267)";
  res.detail = os.str();
  return res;
}

// Partial sums of the exhaustiveness condition converge to <= 1 + 1e-9
// when d is the minimal feasible scale.
inline CheckResult check_sequence_condition(double alpha = 0.1459,
                                            double beta = 0.2360,
                                            std::size_t terms = 200) {
  CheckResult res{"sequence-condition-partial-sum", false, ""};
  const double d = sequence_scale(alpha, beta);
  const double sum = sequence_condition_partial_sum(alpha, beta, d, terms);
  res.passed = sum <= 1.0 + 1e-9;
  std::ostringstream os;
  os.precision(12);
  os << "partial sum over " << terms << " terms = " << sum
     << ", required <= 1 + 1e-9";
  res.detail = os.str();
  return res;
}

// Monte Carlo coverage of the confidence interval for a Bernoulli(0.5)
// item: the miss rate P(|0.5 - mean of s draws| >= radius(t, s)) must stay
// below 2 t^-3 plus three standard errors plus 1/samples.
struct CoverageCell {
  std::uint64_t t = 0;
  std::uint64_t s = 0;
  double empirical = 0.0;
  double bound = 0.0;
  bool passed = false;
};

inline std::vector<CoverageCell> confidence_coverage_cells(
    std::size_t samples, std::uint64_t seed,
    const std::vector<std::uint64_t>& ts = {10, 100},
    const std::vector<std::uint64_t>& ss = {1, 5, 20}) {
  std::vector<CoverageCell> cells;
  Rng rng(seed);
  for (std::uint64_t t : ts) {
    for (std::uint64_t s : ss) {
      const double radius = confidence_radius(t, s);
      std::size_t misses = 0;
      for (std::size_t i = 0; i < samples; ++i) {
        std::uint64_t hits = 0;
        for (std::uint64_t k = 0; k < s; ++k) {
          hits += uniform01(rng) < 0.5 ? 1 : 0;
        }
        const double mean = static_cast<double>(hits) / static_cast<double>(s);
        if (std::abs(0.5 - mean) >= radius) ++misses;
      }
      CoverageCell cell;
      cell.t = t;
      cell.s = s;
      cell.empirical =
          static_cast<double>(misses) / static_cast<double>(samples);
      const double target = 2.0 * std::pow(static_cast<double>(t), -3.0);
      cell.bound = target +
                   3.0 * std::sqrt(target / static_cast<double>(samples)) +
                   1.0 / static_cast<double>(samples);
      cell.passed = cell.empirical <= cell.bound;
      cells.push_back(cell);
    }
  }
  return cells;
}

inline CheckResult check_confidence_coverage(std::size_t samples = 100000,
                                             std::uint64_t seed = 977) {
  CheckResult res{"confidence-coverage", true, ""};
  std::ostringstream os;
  os.precision(4);
  for (const CoverageCell& cell : confidence_coverage_cells(samples, seed)) {
    res.passed = res.passed && cell.passed;
    os << "(t=" << cell.t << ",s=" << cell.s << ") " << cell.empirical
       << (cell.passed ? " <= " : " > ") << cell.bound << "; ";
  }
  res.detail = os.str();
  return res;
}

// The fast verification suite behind the `verify` CLI subcommand.
inline std::vector<CheckResult> run_verification_suite() {
  return {
      check_grid_oracle_equivalence(),
      check_sequence_objective(),
      check_sequence_condition(),
      check_confidence_coverage(),
  };
}

}  // namespace semibandit
