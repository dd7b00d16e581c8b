#pragma once

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "semibandit/types.hpp"

namespace semibandit {

// Offline optimization oracle: argmax over the feasible set of f(A, w)
// for any finite nonnegative weight vector. Implementations are stateless
// after construction and deterministic, with a documented tie-break, so
// repeated calls with equal inputs return identical solutions.
class Oracle {
 public:
  virtual ~Oracle() = default;

  std::size_t ground_size() const { return ground_size_; }        // L
  std::size_t max_solution_size() const { return max_size_; }     // K

  Solution maximize(const WeightVector& w) const {
    check_weights(w);
    return do_maximize(w);
  }

  // Largest return among feasible solutions that contain item e.
  double best_value_containing(ItemId e, const WeightVector& w) const {
    check_weights(w);
    if (e >= ground_size_) throw std::out_of_range("oracle: item out of range");
    return do_best_value_containing(e, w);
  }

  // Largest return among feasible solutions other than `best`. Used to
  // detect ties for the optimum. -inf when no other solution exists.
  virtual double second_best_value(const WeightVector& w,
                                   const Solution& best) const {
    // Valid whenever distinct solutions are never subsets of one another
    // (true for fixed-cardinality families): any rival contains an item
    // outside `best`.
    double second = -std::numeric_limits<double>::infinity();
    for (ItemId e = 0; e < ground_size_; ++e) {
      if (best.contains(e)) continue;
      second = std::max(second, best_value_containing(e, w));
    }
    return second;
  }

 protected:
  Oracle(std::size_t ground_size, std::size_t max_size)
      : ground_size_(ground_size), max_size_(max_size) {
    if (ground_size_ == 0) throw std::invalid_argument("oracle: L must be >= 1");
    if (max_size_ == 0 || max_size_ > ground_size_) {
      throw std::invalid_argument("oracle: K must satisfy 1 <= K <= L");
    }
  }

  void check_weights(const WeightVector& w) const {
    if (w.size() != ground_size_) {
      throw std::invalid_argument("oracle: weight vector has length " +
                                  std::to_string(w.size()) + ", expected " +
                                  std::to_string(ground_size_));
    }
    for (double v : w) {
      if (!std::isfinite(v) || v < 0.0) {
        throw std::invalid_argument(
            "oracle: weights must be finite and nonnegative");
      }
    }
  }

  virtual Solution do_maximize(const WeightVector& w) const = 0;
  virtual double do_best_value_containing(ItemId e,
                                          const WeightVector& w) const = 0;

 private:
  std::size_t ground_size_;
  std::size_t max_size_;
};

// Feasible set given by explicit enumeration. Reference oracle for tests
// and for small hand-written instances. Ties break to the lexicographically
// smallest item sequence.
class ExplicitFeasibleSetOracle final : public Oracle {
 public:
  ExplicitFeasibleSetOracle(std::size_t ground_size, std::size_t max_size,
                            std::vector<Solution> solutions)
      : Oracle(ground_size, max_size), solutions_(std::move(solutions)) {
    if (solutions_.empty()) {
      throw std::invalid_argument("explicit oracle: feasible set is empty");
    }
    std::vector<bool> covered(this->ground_size(), false);
    for (const Solution& a : solutions_) {
      if (a.size() > this->max_solution_size()) {
        throw std::invalid_argument("explicit oracle: solution " +
                                    a.to_string() + " exceeds K items");
      }
      for (ItemId e : a.items()) {
        if (e >= this->ground_size()) {
          throw std::out_of_range("explicit oracle: item out of range in " +
                                  a.to_string());
        }
        covered[e] = true;
      }
    }
    for (std::size_t e = 0; e < covered.size(); ++e) {
      if (!covered[e]) {
        throw std::invalid_argument("explicit oracle: item " +
                                    std::to_string(e) +
                                    " appears in no feasible solution");
      }
    }
  }

  // File format: first line "L K", then one solution per line as
  // space-separated item indices. Blank lines and '#' comments skipped.
  static ExplicitFeasibleSetOracle load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
      throw std::invalid_argument("explicit oracle: cannot open " + path);
    }
    return load_stream(in, path);
  }

  static ExplicitFeasibleSetOracle load_stream(std::istream& in,
                                               const std::string& name) {
    std::string line;
    std::size_t ground = 0, max_size = 0;
    bool have_header = false;
    std::vector<Solution> solutions;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      if (!have_header) {
        if (!(ls >> ground >> max_size)) {
          if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
          throw std::invalid_argument(name + ":" + std::to_string(line_no) +
                                      ": expected header \"L K\"");
        }
        have_header = true;
        continue;
      }
      std::vector<ItemId> items;
      long long e;
      while (ls >> e) {
        if (e < 0) {
          throw std::invalid_argument(name + ":" + std::to_string(line_no) +
                                      ": negative item index");
        }
        items.push_back(static_cast<ItemId>(e));
      }
      if (!ls.eof()) {
        throw std::invalid_argument(name + ":" + std::to_string(line_no) +
                                    ": malformed item index");
      }
      if (items.empty()) continue;
      solutions.emplace_back(std::move(items));
    }
    if (!have_header) {
      throw std::invalid_argument(name + ": missing \"L K\" header");
    }
    return ExplicitFeasibleSetOracle(ground, max_size, std::move(solutions));
  }

  const std::vector<Solution>& solutions() const { return solutions_; }

  double second_best_value(const WeightVector& w,
                           const Solution& best) const override {
    double second = -std::numeric_limits<double>::infinity();
    for (const Solution& a : solutions_) {
      if (a == best) continue;
      second = std::max(second, return_value(a, w));
    }
    return second;
  }

 private:
  Solution do_maximize(const WeightVector& w) const override {
    const Solution* best = nullptr;
    double best_value = -std::numeric_limits<double>::infinity();
    for (const Solution& a : solutions_) {
      double v = return_value(a, w);
      if (v > best_value || (v == best_value && best && a < *best)) {
        best_value = v;
        best = &a;
      }
    }
    return *best;
  }

  double do_best_value_containing(ItemId e, const WeightVector& w) const override {
    double best = -std::numeric_limits<double>::infinity();
    for (const Solution& a : solutions_) {
      if (a.contains(e)) best = std::max(best, return_value(a, w));
    }
    return best;
  }

  std::vector<Solution> solutions_;
};

// L/K disjoint paths of K consecutive items each; path j (0-based) holds
// items jK .. jK+K-1. Ties break to the smallest path index.
class KPathOracle final : public Oracle {
 public:
  KPathOracle(std::size_t ground_size, std::size_t path_size)
      : Oracle(ground_size, path_size) {
    if (ground_size % path_size != 0) {
      throw std::invalid_argument("k-path oracle: L must be divisible by K");
    }
  }

  std::size_t num_paths() const { return ground_size() / max_solution_size(); }

  Solution path(std::size_t j) const {
    if (j >= num_paths()) throw std::out_of_range("k-path: no such path");
    std::vector<ItemId> items(max_solution_size());
    for (std::size_t i = 0; i < items.size(); ++i) {
      items[i] = j * max_solution_size() + i;
    }
    return Solution(std::move(items));
  }

 private:
  double path_value(std::size_t j, const WeightVector& w) const {
    double v = 0.0;
    const std::size_t k = max_solution_size();
    for (std::size_t i = 0; i < k; ++i) v += w[j * k + i];
    return v;
  }

  Solution do_maximize(const WeightVector& w) const override {
    std::size_t best = 0;
    double best_value = path_value(0, w);
    for (std::size_t j = 1; j < num_paths(); ++j) {
      double v = path_value(j, w);
      if (v > best_value) {
        best_value = v;
        best = j;
      }
    }
    return path(best);
  }

  double do_best_value_containing(ItemId e, const WeightVector& w) const override {
    // The path holding e is the only solution that contains it.
    return path_value(e / max_solution_size(), w);
  }
};

}  // namespace semibandit
