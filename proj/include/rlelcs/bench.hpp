#pragma once

// Ledger measurements of the inner search on planted instances.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rlelcs/config.hpp"

namespace rlelcs {

struct BenchRow {
  std::int64_t n = 0;
  std::int64_t d = 0;
  std::int64_t d_tilde = 0;
  WalkMode mode = WalkMode::kCostOnly;
  double charged_cost = 0.0;
  double run_q = 0.0;
  double prefix_q = 0.0;
  std::uint64_t seed = 0;
  std::int64_t m = 0;  // mean anchor count, not part of the CSV
};

/// Planted decoded length used for a cell: 5 characters per shared run.
std::int64_t bench_d_tilde(std::int64_t d);

/// Means over `trials` planted pairs with n runs each and a shared block of
/// d runs. Each trial runs one inner search at the planted d with minimizer
/// anchors (exhaustive below d_min) and r = ceil(m^(2/3)).
BenchRow bench_cell(std::int64_t n, std::int64_t d, std::int64_t trials, std::uint64_t seed,
                    const SolverConfig& config);

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

/// Least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace rlelcs
