#include "rlelcs/range_sum_2d.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rlelcs/errors.hpp"
#include "rlelcs/query.hpp"

namespace rlelcs {

RangeSum2D::RangeSum2D(std::int64_t universe, QueryLedger* ledger) : u_(universe), ledger_(ledger) {
  if (universe < 1 || universe >= (std::int64_t{1} << 31)) throw ParameterError("universe out of range");
}

void RangeSum2D::charge() const {
  if (!ledger_) return;
  const double l = std::log2(static_cast<double>(u_) + 2.0);
  ledger_->charge(l * l);
}

void RangeSum2D::check_point(std::int64_t x, std::int64_t y) const {
  if (x < 1 || x > u_ || y < 1 || y > u_) {
    throw RangeError("point (" + std::to_string(x) + ", " + std::to_string(y) + ") outside the universe");
  }
}

void RangeSum2D::add(std::int64_t x, std::int64_t y, std::int64_t delta) {
  for (std::int64_t i = x; i <= u_; i += i & -i) {
    for (std::int64_t j = y; j <= u_; j += j & -j) {
      auto it = tree_.find(cell(i, j));
      if (it == tree_.end()) {
        tree_.emplace(cell(i, j), delta);
      } else if ((it->second += delta) == 0) {
        tree_.erase(it);
      }
    }
  }
}

std::int64_t RangeSum2D::prefix(std::int64_t x, std::int64_t y) const {
  std::int64_t s = 0;
  for (std::int64_t i = x; i > 0; i -= i & -i) {
    for (std::int64_t j = y; j > 0; j -= j & -j) {
      auto it = tree_.find(cell(i, j));
      if (it != tree_.end()) s += it->second;
    }
  }
  return s;
}

void RangeSum2D::insert(std::int64_t x, std::int64_t y) {
  check_point(x, y);
  charge();
  add(x, y, 1);
  ++points_[cell(x, y)];
  ++total_;
}

void RangeSum2D::erase(std::int64_t x, std::int64_t y) {
  check_point(x, y);
  auto it = points_.find(cell(x, y));
  if (it == points_.end()) {
    throw NotFoundError("point (" + std::to_string(x) + ", " + std::to_string(y) + ") not stored");
  }
  charge();
  if (--it->second == 0) points_.erase(it);
  add(x, y, -1);
  --total_;
}

std::int64_t RangeSum2D::count(std::int64_t x1, std::int64_t x2, std::int64_t y1, std::int64_t y2) const {
  charge();
  x1 = std::max<std::int64_t>(x1, 1);
  y1 = std::max<std::int64_t>(y1, 1);
  x2 = std::min(x2, u_);
  y2 = std::min(y2, u_);
  if (x1 > x2 || y1 > y2) return 0;
  return prefix(x2, y2) - prefix(x1 - 1, y2) - prefix(x2, y1 - 1) + prefix(x1 - 1, y1 - 1);
}

}  // namespace rlelcs
