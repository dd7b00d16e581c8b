#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace semibandit {

// Ground items are indexed 0 .. L-1.
using ItemId = std::size_t;

// Length-L vector of per-item weights. Observations live in [0,1]^L;
// oracle inputs (e.g. UCBs) are arbitrary finite nonnegative reals.
using WeightVector = std::vector<double>;

// A feasible subset of ground items, stored as a strictly increasing
// item sequence so that equality and lexicographic order are canonical.
class Solution {
 public:
  Solution() = default;

  explicit Solution(std::vector<ItemId> items) : items_(std::move(items)) {
    std::sort(items_.begin(), items_.end());
    if (std::adjacent_find(items_.begin(), items_.end()) != items_.end()) {
      throw std::invalid_argument("Solution: duplicate item");
    }
  }

  Solution(std::initializer_list<ItemId> items)
      : Solution(std::vector<ItemId>(items)) {}

  const std::vector<ItemId>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  bool contains(ItemId e) const {
    return std::binary_search(items_.begin(), items_.end(), e);
  }

  ItemId max_item() const {
    if (items_.empty()) throw std::out_of_range("Solution: empty");
    return items_.back();
  }

  // Lexicographic order on the item sequence; used as the oracle tie-break.
  auto operator<=>(const Solution&) const = default;

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < items_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(items_[i]);
    }
    return s + "}";
  }

 private:
  std::vector<ItemId> items_;
};

// Return f(A, w) = sum of w(e) over e in A, summed in ascending item order.
inline double return_value(const Solution& a, const WeightVector& w) {
  double total = 0.0;
  for (ItemId e : a.items()) {
    if (e >= w.size()) {
      throw std::out_of_range("return_value: item " + std::to_string(e) +
                              " outside weight vector of length " +
                              std::to_string(w.size()));
    }
    total += w[e];
  }
  return total;
}

}  // namespace semibandit
