#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "semibandit/oracle.hpp"
#include "semibandit/types.hpp"

namespace semibandit {

// (m+1) x (m+1) node grid; feasible solutions are the monotone paths
// (right/down moves only) from the upper-left to the bottom-right corner.
// Every path has exactly 2m edges; there are C(2m, m) of them.
//
// Edge indexing, fixed so weight vectors are portable:
//   right edge (r,c) -> (r,c+1):  id = r*m + c                r in [0,m], c in [0,m)
//   down  edge (r,c) -> (r+1,c):  id = m*(m+1) + r*(m+1) + c  r in [0,m), c in [0,m]
struct GridSpec {
  std::size_t m;

  explicit GridSpec(std::size_t m_) : m(m_) {
    if (m == 0) throw std::invalid_argument("grid: m must be >= 1");
  }

  std::size_t ground_size() const { return 2 * m * (m + 1); }   // L
  std::size_t path_length() const { return 2 * m; }             // K
  std::size_t nodes_per_side() const { return m + 1; }

  ItemId right_edge(std::size_t r, std::size_t c) const {
    return r * m + c;
  }
  ItemId down_edge(std::size_t r, std::size_t c) const {
    return m * (m + 1) + r * (m + 1) + c;
  }
  bool is_right_edge(ItemId e) const { return e < m * (m + 1); }

  // (row, col) of the edge's source node.
  std::pair<std::size_t, std::size_t> edge_source(ItemId e) const {
    if (e >= ground_size()) throw std::out_of_range("grid: edge out of range");
    if (is_right_edge(e)) return {e / m, e % m};
    ItemId d = e - m * (m + 1);
    return {d / (m + 1), d % (m + 1)};
  }
};

namespace detail {

// Best path value from each node to the bottom-right corner.
inline std::vector<double> grid_suffix_values(const GridSpec& g,
                                              const WeightVector& w) {
  const std::size_t n = g.nodes_per_side();
  std::vector<double> suffix(n * n, 0.0);
  auto at = [n](std::vector<double>& v, std::size_t r, std::size_t c) -> double& {
    return v[r * n + c];
  };
  for (std::size_t ri = n; ri-- > 0;) {
    for (std::size_t ci = n; ci-- > 0;) {
      if (ri == n - 1 && ci == n - 1) continue;
      double best = -1.0;
      if (ri < n - 1) {
        best = w[g.down_edge(ri, ci)] + at(suffix, ri + 1, ci);
      }
      if (ci < n - 1) {
        double right = w[g.right_edge(ri, ci)] + at(suffix, ri, ci + 1);
        // strict >: at equal values the down edge wins
        if (ri == n - 1 || right > best) best = right;
      }
      at(suffix, ri, ci) = best;
    }
  }
  return suffix;
}

// Best path value from the upper-left corner to each node.
inline std::vector<double> grid_prefix_values(const GridSpec& g,
                                              const WeightVector& w) {
  const std::size_t n = g.nodes_per_side();
  std::vector<double> prefix(n * n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (r == 0 && c == 0) continue;
      double best = -1.0;
      if (r > 0) best = prefix[(r - 1) * n + c] + w[g.down_edge(r - 1, c)];
      if (c > 0) {
        double via_right = prefix[r * n + c - 1] + w[g.right_edge(r, c - 1)];
        if (r == 0 || via_right > best) best = via_right;
      }
      prefix[r * n + c] = best;
    }
  }
  return prefix;
}

}  // namespace detail

// Maximum-weight monotone corner-to-corner path by dynamic programming in
// topological order. Ties prefer the down edge, which makes the result
// deterministic and sends the all-equal-weights case along the left column.
class GridOracle final : public Oracle {
 public:
  explicit GridOracle(GridSpec spec)
      : Oracle(spec.ground_size(), spec.path_length()), spec_(spec) {}

  const GridSpec& spec() const { return spec_; }

 private:
  Solution do_maximize(const WeightVector& w) const override {
    const auto suffix = detail::grid_suffix_values(spec_, w);
    const std::size_t n = spec_.nodes_per_side();
    std::vector<ItemId> items;
    items.reserve(spec_.path_length());
    std::size_t r = 0, c = 0;
    while (r != n - 1 || c != n - 1) {
      bool go_down;
      if (r == n - 1) {
        go_down = false;
      } else if (c == n - 1) {
        go_down = true;
      } else {
        double down = w[spec_.down_edge(r, c)] + suffix[(r + 1) * n + c];
        double right = w[spec_.right_edge(r, c)] + suffix[r * n + c + 1];
        go_down = down >= right;
      }
      if (go_down) {
        items.push_back(spec_.down_edge(r, c));
        ++r;
      } else {
        items.push_back(spec_.right_edge(r, c));
        ++c;
      }
    }
    return Solution(std::move(items));
  }

  double do_best_value_containing(ItemId e, const WeightVector& w) const override {
    const auto prefix = detail::grid_prefix_values(spec_, w);
    const auto suffix = detail::grid_suffix_values(spec_, w);
    const std::size_t n = spec_.nodes_per_side();
    auto [r, c] = spec_.edge_source(e);
    std::size_t r2 = r, c2 = c;
    if (spec_.is_right_edge(e)) ++c2; else ++r2;
    return prefix[r * n + c] + w[e] + suffix[r2 * n + c2];
  }

  GridSpec spec_;
};

// All monotone corner-to-corner paths, each as an edge set of size 2m.
// Test oracle; capped at m <= 12 (C(2m, m) paths).
inline std::vector<Solution> grid_enumerate_paths(const GridSpec& g) {
  if (g.m > 12) {
    throw std::runtime_error("grid_enumerate_paths: m > 12 not supported");
  }
  std::vector<Solution> paths;
  std::vector<ItemId> edges;
  auto walk = [&](auto&& self, std::size_t r, std::size_t c) -> void {
    if (r == g.m && c == g.m) {
      paths.emplace_back(edges);
      return;
    }
    if (c < g.m) {
      edges.push_back(g.right_edge(r, c));
      self(self, r, c + 1);
      edges.pop_back();
    }
    if (r < g.m) {
      edges.push_back(g.down_edge(r, c));
      self(self, r + 1, c);
      edges.pop_back();
    }
  };
  walk(walk, 0, 0);
  return paths;
}

// Max weight over monotone paths constrained to pass through edge e:
// best prefix to the edge's tail + w(e) + best suffix from its head.
inline double grid_best_through_edge(const GridSpec& g, const WeightVector& w,
                                     ItemId e) {
  GridOracle oracle(g);
  return oracle.best_value_containing(e, w);
}

}  // namespace semibandit
