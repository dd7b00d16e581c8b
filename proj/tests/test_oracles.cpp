#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "semibandit/grid.hpp"
#include "semibandit/oracle.hpp"
#include "semibandit/rng.hpp"

using namespace semibandit;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<Solution> all_k_subsets(std::size_t L, std::size_t k) {
  std::vector<Solution> out;
  std::vector<ItemId> pick;
  auto rec = [&](auto&& self, ItemId from) -> void {
    if (pick.size() == k) {
      out.emplace_back(pick);
      return;
    }
    for (ItemId e = from; e < L; ++e) {
      pick.push_back(e);
      self(self, e + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

double brute_force_max(const std::vector<Solution>& feasible,
                       const WeightVector& w) {
  double best = -1.0;
  for (const Solution& a : feasible) best = std::max(best, return_value(a, w));
  return best;
}

}  // namespace

TEST_CASE("exhaustive oracle") {
  ExplicitFeasibleSetOracle pair(2, 1, {Solution{0}, Solution{1}});
  CHECK(pair.maximize({0.3, 0.7}) == Solution{1});
  CHECK(pair.maximize({0.5, 0.5}) == Solution{0});  // lexicographic tie-break

  ExplicitFeasibleSetOracle two_of_four(4, 2, all_k_subsets(4, 2));
  CHECK(two_of_four.maximize({0.1, 0.9, 0.8, 0.2}) == Solution({1, 2}));

  SECTION("input validation") {
    CHECK_THROWS_AS(pair.maximize({0.1, 0.2, 0.3}), std::invalid_argument);
    CHECK_THROWS_AS(pair.maximize({0.1, -0.2}), std::invalid_argument);
    CHECK_THROWS_AS(
        pair.maximize({0.1, std::numeric_limits<double>::infinity()}),
        std::invalid_argument);
  }

  SECTION("construction validation") {
    CHECK_THROWS_AS(ExplicitFeasibleSetOracle(2, 1, {}),
                    std::invalid_argument);
    // item 1 uncovered
    CHECK_THROWS_AS(ExplicitFeasibleSetOracle(2, 1, {Solution{0}}),
                    std::invalid_argument);
    // solution exceeds K
    CHECK_THROWS_AS(ExplicitFeasibleSetOracle(2, 1, {Solution{0, 1}}),
                    std::invalid_argument);
    // item out of range
    CHECK_THROWS_AS(ExplicitFeasibleSetOracle(2, 2, {Solution{0, 5}}),
                    std::out_of_range);
  }
}

TEST_CASE("k-path oracle") {
  KPathOracle oracle(4, 2);
  CHECK(oracle.maximize({0.5, 0.5, 0.25, 0.25}) == Solution({0, 1}));
  CHECK(oracle.maximize({0, 0, 1, 1}) == Solution({2, 3}));

  KPathOracle six(6, 2);
  CHECK(six.maximize({0.5, 0.5, 0.5, 0.5, 0.5, 0.5}) == Solution({0, 1}));

  CHECK_THROWS_AS(KPathOracle(5, 2), std::invalid_argument);

  SECTION("matches the exhaustive oracle on random weights") {
    std::vector<Solution> paths;
    for (std::size_t j = 0; j < six.num_paths(); ++j) paths.push_back(six.path(j));
    ExplicitFeasibleSetOracle reference(6, 2, paths);
    Rng rng(41);
    for (int rep = 0; rep < 300; ++rep) {
      WeightVector w(6);
      for (double& v : w) v = uniform01(rng);
      CHECK(six.maximize(w) == reference.maximize(w));
    }
  }
}

TEST_CASE("grid oracle") {
  GridSpec g1(1);
  GridOracle oracle1(g1);

  SECTION("edge indexing") {
    CHECK(g1.ground_size() == 4);
    CHECK(g1.path_length() == 2);
    CHECK(g1.right_edge(0, 0) == 0);
    CHECK(g1.right_edge(1, 0) == 1);
    CHECK(g1.down_edge(0, 0) == 2);
    CHECK(g1.down_edge(0, 1) == 3);
    GridSpec g3(3);
    CHECK(g3.ground_size() == 24);
    CHECK(g3.path_length() == 6);
  }

  SECTION("m=1 with the benchmark means, sigma=0.2") {
    // down-left and bottom-right edges carry 0.6, the rest 0.4
    WeightVector w{0.4, 0.6, 0.6, 0.4};
    Solution best = oracle1.maximize(w);
    CHECK(best == Solution({1, 2}));  // down, then right
    CHECK_THAT(return_value(best, w), WithinAbs(1.2, 1e-15));
  }

  SECTION("all-equal weights tie-break prefers down") {
    CHECK(oracle1.maximize({0.5, 0.5, 0.5, 0.5}) == Solution({1, 2}));
    GridOracle oracle2{GridSpec(2)};
    Solution s = oracle2.maximize(WeightVector(12, 1.0));
    // left column down edges then bottom row right edges
    CHECK(s == Solution({4, 5, 6, 9}));
  }

  SECTION("matches enumeration for m <= 5 on random weights") {
    Rng rng(17);
    for (std::size_t m = 1; m <= 5; ++m) {
      GridSpec g(m);
      GridOracle oracle(g);
      auto paths = grid_enumerate_paths(g);
      std::size_t mismatches = 0;
      WeightVector w(g.ground_size());
      for (int rep = 0; rep < 1000; ++rep) {
        for (double& v : w) v = uniform01(rng);
        if (return_value(oracle.maximize(w), w) != brute_force_max(paths, w)) {
          ++mismatches;
        }
      }
      INFO("m = " << m);
      CHECK(mismatches == 0);
    }
  }
}

TEST_CASE("grid path enumeration") {
  CHECK(grid_enumerate_paths(GridSpec(1)).size() == 2);
  CHECK(grid_enumerate_paths(GridSpec(2)).size() == 6);
  auto p3 = grid_enumerate_paths(GridSpec(3));
  CHECK(p3.size() == 20);
  for (const Solution& p : p3) CHECK(p.size() == 6);
  CHECK_THROWS_AS(grid_enumerate_paths(GridSpec(13)), std::runtime_error);
}

TEST_CASE("grid best value through an edge") {
  GridSpec g1(1);
  WeightVector w{0.4, 0.6, 0.6, 0.4};
  // only the right-then-down path holds the top-right edge
  CHECK_THAT(grid_best_through_edge(g1, w, 0), WithinAbs(0.8, 1e-15));
  // the leftmost edge lies on the optimal path
  CHECK_THAT(grid_best_through_edge(g1, w, 2), WithinAbs(1.2, 1e-15));

  SECTION("uniform weights give path length through every edge") {
    for (std::size_t m : {1, 2, 3}) {
      GridSpec g(m);
      WeightVector ones(g.ground_size(), 1.0);
      for (ItemId e = 0; e < g.ground_size(); ++e) {
        CHECK_THAT(grid_best_through_edge(g, ones, e),
                   WithinAbs(static_cast<double>(2 * m), 1e-12));
      }
    }
  }

  SECTION("constrained max never beats the global max; equality on max paths") {
    Rng rng(23);
    for (std::size_t m : {1, 2, 3}) {
      GridSpec g(m);
      GridOracle oracle(g);
      auto paths = grid_enumerate_paths(g);
      for (int rep = 0; rep < 50; ++rep) {
        WeightVector w(g.ground_size());
        for (double& v : w) v = uniform01(rng);
        const double global = return_value(oracle.maximize(w), w);
        for (ItemId e = 0; e < g.ground_size(); ++e) {
          const double through = grid_best_through_edge(g, w, e);
          CHECK(through <= global + 1e-12);
          // brute force: best path through e
          double expect = -1.0;
          bool on_max_path = false;
          for (const Solution& p : paths) {
            if (!p.contains(e)) continue;
            double v = return_value(p, w);
            expect = std::max(expect, v);
            on_max_path = on_max_path || std::abs(v - global) < 1e-9;
          }
          CHECK_THAT(through, WithinAbs(expect, 1e-12));
          CHECK((std::abs(through - global) < 1e-9) == on_max_path);
        }
      }
    }
  }
}

TEST_CASE("oracle scale invariance and determinism") {
  Rng rng(31);
  GridOracle grid{GridSpec(3)};
  KPathOracle kpath(8, 2);
  ExplicitFeasibleSetOracle expl(4, 2, all_k_subsets(4, 2));
  const std::vector<const Oracle*> oracles{&grid, &kpath, &expl};
  for (const Oracle* oracle : oracles) {
    for (int rep = 0; rep < 100; ++rep) {
      WeightVector w(oracle->ground_size());
      for (double& v : w) v = uniform01(rng);
      const Solution first = oracle->maximize(w);
      CHECK(oracle->maximize(w) == first);  // deterministic
      const double c = 0.25 + 3.0 * uniform01(rng);
      WeightVector scaled = w;
      for (double& v : scaled) v *= c;
      CHECK_THAT(return_value(oracle->maximize(scaled), scaled),
                 WithinRel(c * return_value(first, w), 1e-12));
    }
  }
}

TEST_CASE("oracle argmax matches enumeration on dense explicit instances") {
  // every feasible set with |Theta| <= 10^4 here: all K-subsets of L items
  Rng rng(59);
  for (auto [L, K] : std::vector<std::pair<std::size_t, std::size_t>>{
           {5, 2}, {7, 3}, {9, 4}}) {
    auto feasible = all_k_subsets(L, K);
    REQUIRE(feasible.size() <= 10000);
    ExplicitFeasibleSetOracle oracle(L, K, feasible);
    for (int rep = 0; rep < 200; ++rep) {
      WeightVector w(L);
      for (double& v : w) v = uniform01(rng);
      CHECK(return_value(oracle.maximize(w), w) == brute_force_max(feasible, w));
    }
  }
}

TEST_CASE("explicit feasible set file round trip") {
  const auto path = std::filesystem::temp_directory_path() / "feasible_test.txt";
  {
    std::ofstream out(path);
    out << "4 2\n# the two disjoint pairs plus a diagonal\n0 1\n2 3\n\n0 3\n";
  }
  auto oracle = ExplicitFeasibleSetOracle::load(path.string());
  CHECK(oracle.ground_size() == 4);
  CHECK(oracle.max_solution_size() == 2);
  CHECK(oracle.solutions().size() == 3);
  CHECK(oracle.maximize({1, 1, 0, 0}) == Solution({0, 1}));
  std::filesystem::remove(path);

  SECTION("malformed inputs") {
    std::istringstream missing_header("0 1\n");
    CHECK_THROWS_AS(
        ExplicitFeasibleSetOracle::load_stream(missing_header, "mem"),
        std::invalid_argument);
    std::istringstream bad_item("2 1\n0\nx\n");
    CHECK_THROWS_AS(ExplicitFeasibleSetOracle::load_stream(bad_item, "mem"),
                    std::invalid_argument);
    CHECK_THROWS_AS(ExplicitFeasibleSetOracle::load("/no/such/file.txt"),
                    std::invalid_argument);
  }
}
