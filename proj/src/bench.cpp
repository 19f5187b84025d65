#include "rlelcs/bench.hpp"

#include <cmath>
#include <memory>
#include <ostream>

#include "rlelcs/errors.hpp"
#include "rlelcs/reference.hpp"
#include "rlelcs/walk.hpp"

namespace rlelcs {

std::int64_t bench_d_tilde(std::int64_t d) { return 5 * d; }

BenchRow bench_cell(std::int64_t n, std::int64_t d, std::int64_t trials, std::uint64_t seed,
                    const SolverConfig& config) {
  if (trials < 1) throw ParameterError("need at least one trial");
  BenchRow row;
  row.n = n;
  row.d = d;
  row.d_tilde = bench_d_tilde(d);
  row.mode = config.mode;
  row.seed = seed;
  double m_total = 0.0;
  for (std::int64_t t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = seed + static_cast<std::uint64_t>(t);
    const PlantedInstance inst = plant_pair(n, d, row.d_tilde, trial_seed);
    auto ledger = std::make_shared<QueryLedger>();
    const OracleHandle a(inst.a, ledger);
    const OracleHandle b(inst.b, ledger);
    const ConcatOracle s(a, b);
    const RleString joined = s.joined();
    AnchorSet x = d >= config.d_min ? build_minimizer(joined, d, trial_seed, config.d_min) : build_exhaustive(joined, d);
    m_total += static_cast<double>(x.size());
    SolverConfig cell = config;
    InnerSearch search(s, std::move(x), d, cell, trial_seed);
    search.run(row.d_tilde);
    row.charged_cost += ledger->charged_cost();
    row.run_q += static_cast<double>(ledger->run_queries());
    row.prefix_q += static_cast<double>(ledger->prefix_queries());
  }
  const auto k = static_cast<double>(trials);
  row.charged_cost /= k;
  row.run_q /= k;
  row.prefix_q /= k;
  row.m = static_cast<std::int64_t>(std::llround(m_total / k));
  return row;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "n,d,d_tilde,mode,charged_cost,run_q,prefix_q,seed\n";
  for (const BenchRow& r : rows) {
    out << r.n << ',' << r.d << ',' << r.d_tilde << ',' << to_string(r.mode) << ',' << r.charged_cost << ','
        << r.run_q << ',' << r.prefix_q << ',' << r.seed << '\n';
  }
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ParameterError("need at least two paired points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw ParameterError("degenerate x values");
  return (n * sxy - sx * sy) / denom;
}

}  // namespace rlelcs
