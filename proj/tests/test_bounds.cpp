#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "semibandit/bounds.hpp"
#include "semibandit/rng.hpp"

using namespace semibandit;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ProblemParams uniform_instance(std::size_t L, std::size_t K, std::uint64_t n,
                               double delta) {
  ProblemParams p;
  p.L = L;
  p.K = K;
  p.n = n;
  p.delta = delta;
  return p;
}

ProblemParams gapped_instance(std::size_t L, std::size_t K, std::uint64_t n,
                              std::vector<double> gaps) {
  ProblemParams p;
  p.L = L;
  p.K = K;
  p.n = n;
  p.item_gaps = std::move(gaps);
  return p;
}

// Leading coefficient A and offset C of an evaluator that is affine in
// ln n, recovered from two evaluations. A + C is then the bound at ln n = 1.
std::pair<double, double> affine_in_log(const std::function<double(std::uint64_t)>& f) {
  const double v1 = f(10), v2 = f(1000);
  const double a = (v2 - v1) / (std::log(1000.0) - std::log(10.0));
  return {a, v1 - a * std::log(10.0)};
}

}  // namespace

TEST_CASE("constant term") {
  CHECK_THAT(bound_constant_term(1, 1), WithinAbs(4.2898681336964529, 1e-13));
  CHECK_THAT(bound_constant_term(4, 2), WithinAbs(34.318945069571623, 1e-12));
}

TEST_CASE("uniform-gap upper bounds") {
  // frozen: K^{4/3} L (48/0.5) ln 3 + const for (L=4, K=2)
  CHECK_THAT(gap_bound_k43_uniform(uniform_instance(4, 2, 3, 0.5)),
             WithinRel(1097.3574716611627, 1e-13));
  // frozen: K L (267/0.5) ln 3 + const
  CHECK_THAT(gap_bound_k_uniform(uniform_instance(4, 2, 3, 0.5)),
             WithinRel(4727.5906422597362, 1e-13));

  SECTION("value at ln n = 1 via the affine form") {
    auto [a43, c43] = affine_in_log([](std::uint64_t n) {
      return gap_bound_k43_uniform(uniform_instance(4, 2, n, 0.5));
    });
    CHECK_THAT(a43 + c43, WithinRel(1001.9383113888342, 1e-10));
    auto [ak, ck] = affine_in_log([](std::uint64_t n) {
      return gap_bound_k_uniform(uniform_instance(4, 2, n, 0.5));
    });
    CHECK_THAT(ak + ck, WithinRel(4306.3189450695716, 1e-10));
  }

  SECTION("n = 1 leaves only the constant term") {
    CHECK_THAT(gap_bound_k43_uniform(uniform_instance(1, 1, 1, 1.0)),
               WithinAbs(4.2898681336964529, 1e-13));
    CHECK_THAT(gap_bound_k_uniform(uniform_instance(4, 2, 1, 0.5)),
               WithinAbs(34.318945069571623, 1e-12));
  }

  SECTION("parameter validation") {
    ProblemParams p = uniform_instance(4, 2, 3, 0.5);
    p.delta.reset();
    CHECK_THROWS_AS(gap_bound_k43_uniform(p), std::invalid_argument);
    CHECK_THROWS_AS(gap_bound_k_uniform(p), std::invalid_argument);
    CHECK_THROWS_AS(gap_bound_k_uniform(uniform_instance(4, 2, 3, 0.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(gap_bound_k_uniform(uniform_instance(4, 2, 3, 2.5)),
                    std::invalid_argument);  // gap > K
    CHECK_THROWS_AS(gap_bound_k_uniform(uniform_instance(2, 4, 3, 0.5)),
                    std::invalid_argument);  // K > L
  }
}

TEST_CASE("per-item-gap upper bounds") {
  // frozen: 96 ln 3 + const for a single unit gap, K = L = 1
  CHECK_THAT(gap_bound_k43(gapped_instance(1, 1, 3, {1.0})),
             WithinRel(109.75664784583498, 1e-13));
  // frozen: (534/0.25) ln 7 + const
  CHECK_THAT(gap_bound_k(gapped_instance(1, 1, 7, {0.25})),
             WithinRel(4160.7539465158457, 1e-13));

  SECTION("n = 1 leaves only the constant term, regardless of gaps") {
    CHECK_THAT(gap_bound_k43(gapped_instance(3, 2, 1, {0.5, 1.0})),
               WithinAbs(bound_constant_term(3, 2), 1e-12));
    CHECK_THAT(gap_bound_k(gapped_instance(3, 2, 1, {0.5, 1.0})),
               WithinAbs(bound_constant_term(3, 2), 1e-12));
  }

  SECTION("uniform gaps double the K^{4/3} log term vs the uniform bound") {
    // with |E~| = L and identical gaps the general form has 96/48 = 2x
    // the log coefficient of the uniform form
    const double delta = 0.4;
    ProblemParams uni = uniform_instance(6, 2, 1000, delta);
    ProblemParams gen = gapped_instance(6, 2, 1000, std::vector<double>(6, delta));
    const double log_uni = gap_bound_k43_uniform(uni) - bound_constant_term(6, 2);
    const double log_gen = gap_bound_k43(gen) - bound_constant_term(6, 2);
    CHECK_THAT(log_gen, WithinRel(2.0 * log_uni, 1e-12));
  }

  SECTION("empty gap list rejected") {
    ProblemParams p = gapped_instance(1, 1, 3, {});
    CHECK_THROWS_AS(gap_bound_k43(p), std::invalid_argument);
    CHECK_THROWS_AS(gap_bound_k(p), std::invalid_argument);
  }
}

TEST_CASE("k-form vs k43-form crossover") {
  // log terms are proportional to 534 K and 96 K^{4/3}: the K form wins
  // exactly when K^{1/3} >= 534/96, i.e. K >= (534/96)^3 = 172.11...
  const double crossover = std::pow(534.0 / 96.0, 3.0);
  CHECK_THAT(crossover, WithinAbs(172.111572265625, 1e-9));
  CHECK(crossover < 173.0);

  auto log_term = [](double (*bound)(const ProblemParams&), std::size_t K) {
    ProblemParams p = gapped_instance(200, K, 100, std::vector<double>(5, 0.5));
    return bound(p) - bound_constant_term(200, K);
  };
  CHECK(log_term(gap_bound_k, 172) > log_term(gap_bound_k43, 172));
  CHECK(log_term(gap_bound_k, 173) < log_term(gap_bound_k43, 173));

  // same crossover for the uniform-gap pair (48 K^{4/3} vs 267 K)
  CHECK(gap_bound_k43_uniform(uniform_instance(200, 172, 100, 0.5)) <
        gap_bound_k_uniform(uniform_instance(200, 172, 100, 0.5)));
  CHECK(gap_bound_k43_uniform(uniform_instance(200, 173, 100, 0.5)) >
        gap_bound_k_uniform(uniform_instance(200, 173, 100, 0.5)));
}

TEST_CASE("gap-free upper bound") {
  CHECK_THAT(gap_free_bound(uniform_instance(1, 1, 8, 1.0)),
             WithinRel(195.98726228543254, 1e-13));
  CHECK_THAT(gap_free_bound(gapped_instance(3, 2, 50, {0.5})),
             WithinRel(1635.8626965189539, 1e-13));
  CHECK_THROWS_AS(gap_free_bound(uniform_instance(1, 1, 1, 1.0)),
                  std::invalid_argument);

  SECTION("the leading constant is 47 = ceil(2 sqrt(534))") {
    CHECK_THAT(2.0 * std::sqrt(534.0), WithinAbs(46.216880033165372, 1e-12));
    CHECK(2.0 * std::sqrt(534.0) < 47.0);
    ProblemParams p = uniform_instance(5, 3, 12345, 1.0);
    const double lead = gap_free_bound(p) - bound_constant_term(5, 3);
    CHECK_THAT(lead * lead / (5.0 * 3.0 * 12345.0 * std::log(12345.0)),
               WithinRel(47.0 * 47.0, 1e-12));
  }

  SECTION("sqrt-n scaling of the leading term") {
    ProblemParams p = uniform_instance(4, 2, 1u << 20, 1.0);
    ProblemParams p4 = p;
    p4.n = p.n * 4;
    const double lead = gap_free_bound(p) - bound_constant_term(4, 2);
    const double lead4 = gap_free_bound(p4) - bound_constant_term(4, 2);
    // ratio tends to 2 modulo the slowly-varying log factor
    CHECK(lead4 / lead > 2.0);
    CHECK(lead4 / lead < 2.1);
  }
}

TEST_CASE("grid log-term bound") {
  CHECK(grid_log_term_bound(2, 0.5, 1) == 0.0);
  CHECK_THAT(grid_log_term_bound(3, 0.25, 100),
             WithinRel(708238.33324348055, 1e-13));
  CHECK_THAT(grid_log_term_bound(2, 0.2, 50),
             WithinRel(2.0 * grid_log_term_bound(2, 0.4, 50), 1e-12));
  CHECK_THROWS_AS(grid_log_term_bound(2, 0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(grid_log_term_bound(2, 1.0, 10), std::invalid_argument);

  SECTION("value at ln n = 1 via the affine form") {
    auto [a, c] = affine_in_log(
        [](std::uint64_t n) { return grid_log_term_bound(2, 0.5, n); });
    CHECK_THAT(a + c, WithinRel(34176.0, 1e-10));
    CHECK_THAT(c, WithinAbs(0.0, 1e-6));
  }

  SECTION("dominates the per-item-gap sum on the grid gap profile") {
    // gap profile: at most 2(i-1) items at gap i sigma, i = 2 .. 2m
    for (std::size_t m : {2, 3, 5}) {
      for (double sigma : {0.2, 0.8}) {
        std::vector<double> gaps;
        for (std::size_t i = 2; i <= 2 * m; ++i) {
          for (std::size_t k = 0; k < 2 * (i - 1); ++k) {
            gaps.push_back(static_cast<double>(i) * sigma);
          }
        }
        ProblemParams p = gapped_instance(2 * m * (m + 1), 2 * m, 100000, gaps);
        const double exact = gap_bound_k(p) - bound_constant_term(p.L, p.K);
        CHECK(exact < grid_log_term_bound(m, sigma, p.n));
      }
    }
  }
}

TEST_CASE("lower bounds") {
  CHECK(lower_bound_gap(uniform_instance(4, 4, 10, 0.5)) == 0.0);  // L = K
  CHECK_THAT(lower_bound_gap(uniform_instance(4, 2, 10, 0.5)),
             WithinAbs(2.0, 1e-15));
  CHECK_THAT(lower_bound_gap(uniform_instance(8, 2, 10, 0.2)),
             WithinAbs(15.0, 1e-12));
  CHECK_THROWS_AS(lower_bound_gap(uniform_instance(5, 2, 10, 0.5)),
                  std::invalid_argument);
  CHECK_THROWS_AS(lower_bound_gap(uniform_instance(4, 2, 10, 1.0)),
                  std::invalid_argument);  // delta/K = 0.5

  CHECK_THAT(lower_bound_gap_free(uniform_instance(4, 2, 2, 0.5)),
             WithinAbs(0.2, 1e-15));
  CHECK_THAT(lower_bound_gap_free(uniform_instance(1, 1, 100, 0.5)),
             WithinAbs(0.5, 1e-15));
  CHECK_THROWS_AS(lower_bound_gap_free(uniform_instance(5, 2, 10, 0.5)),
                  std::invalid_argument);

  SECTION("gap-dependent lower bound never beats the matching upper bound") {
    Rng rng(71);
    for (int rep = 0; rep < 200; ++rep) {
      std::size_t K = 1 + rng() % 6;
      std::size_t L = K * (1 + rng() % 8);
      double delta = (0.01 + 0.48 * uniform01(rng)) * static_cast<double>(K);
      ProblemParams p = uniform_instance(L, K, 100, delta);
      CHECK(lower_bound_gap(p) <=
            static_cast<double>(K * L) * 267.0 / delta);
    }
  }

  SECTION("upper/lower gap-free ratio grows like sqrt(log n)") {
    ProblemParams p = uniform_instance(8, 2, 100, 0.5);
    auto ratio = [&](std::uint64_t n) {
      ProblemParams q = p;
      q.n = n;
      return gap_free_bound(q) / lower_bound_gap_free(q);
    };
    // ratio / sqrt(ln n) approaches 20 * 47 and is near-flat
    const double r1 = ratio(1u << 10) / std::sqrt(std::log(std::pow(2.0, 10)));
    const double r2 = ratio(1u << 24) / std::sqrt(std::log(std::pow(2.0, 24)));
    CHECK_THAT(r2, WithinRel(20.0 * 47.0, 0.01));
    CHECK_THAT(r1 / r2, WithinAbs(1.0, 0.05));
  }
}

TEST_CASE("bounds are monotone in each parameter") {
  Rng rng(83);
  for (int rep = 0; rep < 100; ++rep) {
    std::size_t K = 1 + rng() % 5;
    std::size_t L = K + rng() % 20;
    std::uint64_t n = 2 + rng() % 100000;
    double delta = (0.05 + 0.9 * uniform01(rng)) * static_cast<double>(K);
    ProblemParams p = uniform_instance(L, K, n, delta);
    p.item_gaps = std::vector<double>{delta, delta * 0.5};

    for (auto bound : {gap_bound_k43_uniform, gap_bound_k_uniform,
                       gap_bound_k43, gap_bound_k, gap_free_bound}) {
      ProblemParams larger_n = p;
      larger_n.n = n * 2;
      CHECK(bound(larger_n) >= bound(p));
      ProblemParams larger_l = p;
      larger_l.L += 3;
      CHECK(bound(larger_l) >= bound(p));
      ProblemParams larger_k = p;
      larger_k.K += 1;
      larger_k.L += 1;  // keep K <= L
      CHECK(bound(larger_k) >= bound(p));
    }
    ProblemParams smaller_gap = p;
    smaller_gap.delta = delta / 2.0;
    smaller_gap.item_gaps = std::vector<double>{delta / 2.0, delta * 0.25};
    CHECK(gap_bound_k43_uniform(smaller_gap) >= gap_bound_k43_uniform(p));
    CHECK(gap_bound_k_uniform(smaller_gap) >= gap_bound_k_uniform(p));
    CHECK(gap_bound_k43(smaller_gap) >= gap_bound_k43(p));
    CHECK(gap_bound_k(smaller_gap) >= gap_bound_k(p));
  }
}

TEST_CASE("geometric tuning sequences") {
  const double alpha = 0.1459, beta = 0.2360;
  CHECK_THAT(sequence_scale(alpha, beta),
             WithinRel(164.36871913302763, 1e-13));
  const double objective = sequence_objective(alpha, beta);
  CHECK_THAT(objective, WithinAbs(266.164218884669596, 1e-9));
  CHECK(objective > 265.0);
  CHECK(objective < 267.0);

  SECTION("condition partial sums converge to one from below") {
    const double d = sequence_scale(alpha, beta);
    double prev = 0.0;
    for (std::size_t terms : {1, 5, 20, 200}) {
      double s = sequence_condition_partial_sum(alpha, beta, d, terms);
      CHECK(s >= prev);
      CHECK(s <= 1.0 + 1e-9);
      prev = s;
    }
    CHECK_THAT(prev, WithinAbs(1.0, 1e-12));
    // oversized d strengthens the condition
    CHECK(sequence_condition_partial_sum(alpha, beta, 4.0 * d, 200) < 1.0);
  }

  SECTION("the tuned point is a near-optimum of the objective") {
    // coarse grid + local refinement over 0 < alpha < beta < sqrt(alpha) < 1
    double best = 1e300, best_a = 0, best_b = 0;
    for (int i = 1; i < 400; ++i) {
      for (int j = 1; j < 700; ++j) {
        const double a = i / 1000.0, b = j / 1000.0;
        if (!(a < b && b < std::sqrt(a))) continue;
        const double v = sequence_objective(a, b);
        if (v < best) {
          best = v;
          best_a = a;
          best_b = b;
        }
      }
    }
    for (double scale : {1e-4, 1e-5}) {
      double refined = best;
      double ra = best_a, rb = best_b;
      for (int i = -10; i <= 10; ++i) {
        for (int j = -10; j <= 10; ++j) {
          const double a = best_a + i * scale, b = best_b + j * scale;
          if (!(a > 0 && a < b && b < std::sqrt(a) && std::sqrt(a) < 1)) continue;
          const double v = sequence_objective(a, b);
          if (v < refined) {
            refined = v;
            ra = a;
            rb = b;
          }
        }
      }
      best = refined;
      best_a = ra;
      best_b = rb;
    }
    CHECK(std::abs(best - objective) < 0.5);
    CHECK(best < 267.0);
  }

  SECTION("feasible-region validation") {
    CHECK_THROWS_AS(sequence_objective(0.3, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(sequence_objective(0.5, 0.8), std::invalid_argument);
    CHECK(sequence_objective(0.1, 0.2) > 0.0);
  }
}

TEST_CASE("gap-free epsilon") {
  CHECK_THAT(gap_free_epsilon(2, 3, 1000), WithinRel(4.7045135682511074, 1e-13));
  CHECK_THROWS_AS(gap_free_epsilon(1, 1, 1), std::invalid_argument);

  SECTION("epsilon crosses 1 at the root of n = 534 ln n") {
    // fixed point computed by bisection: n* = 4490.829...
    CHECK(gap_free_epsilon(1, 1, 4490) > 1.0);
    CHECK(gap_free_epsilon(1, 1, 4491) < 1.0);
    CHECK_THAT(gap_free_epsilon(1, 1, 4490), WithinAbs(1.0000813621370038, 1e-12));
  }

  SECTION("epsilon balances the two regret contributions") {
    const std::size_t K = 2, L = 8;
    const std::uint64_t n = 100000;
    auto g = [&](double eps) {
      return 534.0 * K * L * std::log(static_cast<double>(n)) / eps +
             eps * static_cast<double>(n);
    };
    const double eps = gap_free_epsilon(K, L, n);
    CHECK(g(eps) <= g(eps * 1.1));
    CHECK(g(eps) <= g(eps * 0.9));
  }

  SECTION("epsilon vanishes as n grows") {
    double prev = gap_free_epsilon(3, 9, 100);
    for (std::uint64_t n : {10000ull, 1000000ull, 100000000ull, 10000000000ull}) {
      double eps = gap_free_epsilon(3, 9, n);
      CHECK(eps < prev);
      prev = eps;
    }
    CHECK(prev < 0.01);
  }
}
