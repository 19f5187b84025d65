#pragma once

// Dynamic 2D point counting over [1, u] x [1, u] with duplicates.
// A Fenwick tree of Fenwick trees, stored sparsely.

#include <cstdint>
#include <unordered_map>

namespace rlelcs {

class QueryLedger;

class RangeSum2D {
 public:
  explicit RangeSum2D(std::int64_t universe, QueryLedger* ledger = nullptr);

  void set_ledger(QueryLedger* ledger) noexcept { ledger_ = ledger; }

  std::int64_t universe() const noexcept { return u_; }
  std::int64_t total() const noexcept { return total_; }

  void insert(std::int64_t x, std::int64_t y);
  /// Throws NotFoundError when (x, y) is not present.
  void erase(std::int64_t x, std::int64_t y);
  /// Points in [x1, x2] x [y1, y2]; empty ranges count 0.
  std::int64_t count(std::int64_t x1, std::int64_t x2, std::int64_t y1, std::int64_t y2) const;

 private:
  static std::uint64_t cell(std::int64_t x, std::int64_t y) {
    return (static_cast<std::uint64_t>(x) << 32) | static_cast<std::uint64_t>(y);
  }
  void check_point(std::int64_t x, std::int64_t y) const;
  void add(std::int64_t x, std::int64_t y, std::int64_t delta);
  std::int64_t prefix(std::int64_t x, std::int64_t y) const;
  void charge() const;

  std::int64_t u_;
  std::int64_t total_ = 0;
  std::unordered_map<std::uint64_t, std::int64_t> tree_;
  std::unordered_map<std::uint64_t, std::int64_t> points_;
  QueryLedger* ledger_;
};

}  // namespace rlelcs
