#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace wskein {

/// Disjoint sets with path halving and union by size.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n = 0) : parent_(n), size_(n, 1), sets_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }

  /// Returns true if a union was performed.
  bool unite(std::size_t i, std::size_t j) {
    i = find(i);
    j = find(j);
    if (i == j) return false;
    if (size_[i] < size_[j]) std::swap(i, j);
    parent_[j] = i;
    size_[i] += size_[j];
    --sets_;
    return true;
  }

  std::size_t sets() const { return sets_; }
  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::size_t sets_;
};

/// Union-find that can undo unions in LIFO order. No path compression, so
/// find is O(log n) and every union is a single parent write.
class RollbackUnionFind {
 public:
  explicit RollbackUnionFind(std::size_t n = 0) : parent_(n), rank_(n, 0), sets_(n) {
    std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
  }

  std::uint32_t find(std::uint32_t i) const {
    while (parent_[i] != i) i = parent_[i];
    return i;
  }

  void unite(std::uint32_t i, std::uint32_t j) {
    i = find(i);
    j = find(j);
    if (i == j) {
      history_.push_back(kNoop);
      return;
    }
    if (rank_[i] < rank_[j]) std::swap(i, j);
    parent_[j] = i;
    bool bumped = rank_[i] == rank_[j];
    if (bumped) ++rank_[i];
    history_.push_back((static_cast<std::uint64_t>(j) << 1) | (bumped ? 1u : 0u));
    --sets_;
  }

  /// Number of unions recorded so far (including no-ops).
  std::size_t checkpoint() const { return history_.size(); }

  void rollback(std::size_t to) {
    while (history_.size() > to) {
      std::uint64_t h = history_.back();
      history_.pop_back();
      if (h == kNoop) continue;
      auto j = static_cast<std::uint32_t>(h >> 1);
      std::uint32_t i = parent_[j];
      if (h & 1u) --rank_[i];
      parent_[j] = j;
      ++sets_;
    }
  }

  std::size_t sets() const { return sets_; }
  std::size_t size() const { return parent_.size(); }

 private:
  static constexpr std::uint64_t kNoop = ~std::uint64_t{0};
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint8_t> rank_;
  std::vector<std::uint64_t> history_;
  std::size_t sets_;
};

}  // namespace wskein
