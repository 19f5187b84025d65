#pragma once

// Query-counted oracle access and the classical stand-ins for the quantum
// primitives. Every primitive runs a deterministic classical procedure and
// charges the idealized quantum cost to a QueryLedger. Charges made while a
// primitive evaluates its predicate are discarded: the primitive's own
// formula is the cost.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "rlelcs/errors.hpp"
#include "rlelcs/rle.hpp"

namespace rlelcs {

class QueryLedger {
 public:
  void count_run_query() noexcept { ++run_queries_; }
  void count_prefix_query() noexcept { ++prefix_queries_; }

  /// Adds to the innermost open measurement, or to the total when none is open.
  void charge(double cost);

  /// Runs fn and returns what it charged. That amount does not reach the
  /// total (or any enclosing measurement).
  template <typename F>
  double measure(F&& fn) {
    scopes_.push_back(0.0);
    struct Pop {
      std::vector<double>& s;
      ~Pop() { s.pop_back(); }
    } pop{scopes_};
    std::forward<F>(fn)();
    return scopes_.back();
  }

  std::uint64_t run_queries() const noexcept { return run_queries_; }
  std::uint64_t prefix_queries() const noexcept { return prefix_queries_; }
  double charged_cost() const noexcept { return charged_cost_; }

  /// {"run_queries":..,"prefix_queries":..,"charged_cost":..}
  std::string to_json() const;

 private:
  std::uint64_t run_queries_ = 0;
  std::uint64_t prefix_queries_ = 0;
  double charged_cost_ = 0.0;
  std::vector<double> scopes_;
};

struct CostModel {
  double grover_factor = 1.0;
  double minfind_factor = 1.0;
  double whp_log_base = 2.0;
  double anchor_factor = 1.0;
  /// Multiply walk charges by the high-probability boosting factor.
  bool boost_whp = false;
  /// Exponent p of the (log2(m + 2))^p factor applied to nominal walk costs.
  int log_power = 0;

  void validate() const;
  /// Overrides the fields named in a key=value map; unknown keys are ignored.
  void apply(const std::map<std::string, std::string>& kv);
};

inline std::int64_t ceil_sqrt(std::int64_t n) {
  if (n <= 0) return 0;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r < n) ++r;
  while (r > 0 && (r - 1) * (r - 1) >= n) --r;
  return r;
}

inline std::int64_t ceil_log2(std::int64_t n) {
  std::int64_t k = 0;
  while ((std::int64_t{1} << k) < n) ++k;
  return k;
}

/// Read-only access to one RLE string through the O_S and O_P oracles.
class OracleHandle {
 public:
  OracleHandle(RleString s, std::shared_ptr<QueryLedger> ledger);

  /// (C(S[i]), R(S[i])) for i in [1, n].
  Run query_run(std::int64_t i) const;
  /// P_S[i] for i in [0, n].
  std::int64_t query_prefix(std::int64_t i) const;
  /// Inverse prefix sum by binary search over query_prefix.
  std::int64_t inverse_prefix(std::int64_t decoded_index) const;

  // Input metadata; not charged.
  std::int64_t size() const noexcept { return string_->size(); }
  std::int64_t decoded_length() const noexcept { return prefix_->decoded_length(); }

  /// Uncounted access for reference checks and anchor construction.
  const RleString& string() const noexcept { return *string_; }
  QueryLedger& ledger() const noexcept { return *ledger_; }
  const std::shared_ptr<QueryLedger>& ledger_ptr() const noexcept { return ledger_; }

 private:
  std::shared_ptr<const RleString> string_;
  std::shared_ptr<const PrefixTable> prefix_;
  std::shared_ptr<QueryLedger> ledger_;
};

/// grover_factor * ceil(sqrt(n)) * unit_cost
inline double grover_charge(std::int64_t n, double unit_cost, const CostModel& cost) {
  return cost.grover_factor * static_cast<double>(ceil_sqrt(n)) * unit_cost;
}

inline double minfind_charge(std::int64_t n, double unit_cost, const CostModel& cost) {
  return cost.minfind_factor * static_cast<double>(ceil_sqrt(n)) * unit_cost;
}

/// Some i in [1, n] with pred(i), or nullopt. Classically the smallest such i.
template <typename Pred>
std::optional<std::int64_t> grover_search(std::int64_t n, Pred&& pred, double unit_cost, QueryLedger& ledger,
                                          const CostModel& cost) {
  std::optional<std::int64_t> found;
  ledger.measure([&] {
    for (std::int64_t i = 1; i <= n && !found; ++i) {
      if (pred(i)) found = i;
    }
  });
  ledger.charge(grover_charge(n, unit_cost, cost));
  return found;
}

/// An argmin of key over [1, n]; ties resolve to the smallest index.
template <typename Key>
std::int64_t minimum_find(std::int64_t n, Key&& key, double unit_cost, QueryLedger& ledger, const CostModel& cost) {
  if (n < 1) throw ParameterError("minimum_find over an empty range");
  std::int64_t best = 1;
  ledger.measure([&] {
    auto best_key = key(1);
    for (std::int64_t i = 2; i <= n; ++i) {
      auto k = key(i);
      if (k < best_key) {
        best_key = std::move(k);
        best = i;
      }
    }
  });
  ledger.charge(minfind_charge(n, unit_cost, cost));
  return best;
}

/// Smallest i in [1, n] with pred(i). This is minimum finding over the key
/// (pred(i) ? i : infinity); the classical scan stops at the first hit.
template <typename Pred>
std::optional<std::int64_t> find_first(std::int64_t n, Pred&& pred, double unit_cost, QueryLedger& ledger,
                                       const CostModel& cost) {
  std::optional<std::int64_t> found;
  ledger.measure([&] {
    for (std::int64_t i = 1; i <= n && !found; ++i) {
      if (pred(i)) found = i;
    }
  });
  if (n > 0) ledger.charge(minfind_charge(n, unit_cost, cost));
  return found;
}

/// Charged cost of a subroutine boosted to high success probability.
double with_whp(double inner_cost, std::int64_t n_scale, double log_base = 2.0);

// ---------------------------------------------------------------------------
// Quantum walk driver on the Johnson graph J(m, r).

enum class WalkMode { kFullSet, kRandomWalk, kCostOnly };

const char* to_string(WalkMode mode);
WalkMode parse_walk_mode(std::string_view name);

struct WalkCosts {
  double setup = 0.0;
  double update = 0.0;
  double check = 0.0;
};

/// s + (1/sqrt(delta)) * (sqrt(r) * u + c)
inline double mnrs_cost(const WalkCosts& c, std::int64_t r, double delta_bound) {
  return c.setup + (c.update * std::sqrt(static_cast<double>(r)) + c.check) / std::sqrt(delta_bound);
}

template <typename Report>
struct WalkHooks {
  /// Build the vertex data for the given subset of [1, m].
  std::function<void(std::span<const std::int64_t>)> setup;
  /// Move to a neighbouring vertex: remove `out`, add `in`.
  std::function<void(std::int64_t out, std::int64_t in)> update;
  std::function<std::optional<Report>()> check;
  /// Costs used where a hook is not executed (COSTONLY, or the update in FULLSET).
  WalkCosts nominal;
};

struct WalkParams {
  std::int64_t m = 0;
  std::int64_t r = 0;
  double delta_bound = 1.0;
  WalkMode mode = WalkMode::kFullSet;
  std::uint64_t seed = 1;
  /// Check rounds before RANDOMWALK reports absent; 0 selects
  /// 20 * ceil(m/r) * ceil(1/sqrt(delta_bound)).
  std::int64_t step_budget = 0;
};

struct WalkOutcome {
  WalkCosts measured;
  double charged = 0.0;
  std::int64_t checks = 0;
  std::int64_t updates = 0;
};

namespace detail {

void validate_walk_params(const WalkParams& p);
std::int64_t default_step_budget(const WalkParams& p);

}  // namespace detail

/// Runs the walk in the configured mode and charges the walk formula once.
/// Returns a report iff some executed check marked its vertex.
template <typename Report>
std::optional<Report> mnrs_walk(const WalkParams& params, WalkHooks<Report>& hooks, QueryLedger& ledger,
                                WalkOutcome* outcome = nullptr) {
  detail::validate_walk_params(params);
  WalkOutcome out;
  std::optional<Report> report;

  switch (params.mode) {
    case WalkMode::kCostOnly:
      out.measured = hooks.nominal;
      break;

    case WalkMode::kFullSet: {
      std::vector<std::int64_t> all(static_cast<std::size_t>(params.m));
      for (std::int64_t i = 0; i < params.m; ++i) all[static_cast<std::size_t>(i)] = i + 1;
      out.measured.setup = ledger.measure([&] { hooks.setup(all); });
      out.measured.check = ledger.measure([&] { report = hooks.check(); });
      out.measured.update = hooks.nominal.update;
      out.checks = 1;
      break;
    }

    case WalkMode::kRandomWalk: {
      std::mt19937_64 rng(params.seed);
      std::vector<std::int64_t> pool(static_cast<std::size_t>(params.m));
      for (std::int64_t i = 0; i < params.m; ++i) pool[static_cast<std::size_t>(i)] = i + 1;
      std::shuffle(pool.begin(), pool.end(), rng);
      // pool[0, r) is the current vertex, pool[r, m) the complement.
      const auto r = static_cast<std::size_t>(params.r);
      std::vector<std::int64_t> subset(pool.begin(), pool.begin() + params.r);
      out.measured.setup = ledger.measure([&] { hooks.setup(subset); });

      const std::int64_t budget = params.step_budget > 0 ? params.step_budget : detail::default_step_budget(params);
      const std::int64_t updates_per_round = ceil_sqrt(params.r);
      double update_total = 0.0;
      double check_total = 0.0;
      for (std::int64_t round = 0; round < budget && !report; ++round) {
        check_total += ledger.measure([&] { report = hooks.check(); });
        ++out.checks;
        if (report || pool.size() == r) break;
        for (std::int64_t u = 0; u < updates_per_round; ++u) {
          std::uniform_int_distribution<std::size_t> in_vertex(0, r - 1);
          std::uniform_int_distribution<std::size_t> outside(r, pool.size() - 1);
          const std::size_t a = in_vertex(rng);
          const std::size_t b = outside(rng);
          update_total += ledger.measure([&] { hooks.update(pool[a], pool[b]); });
          std::swap(pool[a], pool[b]);
          ++out.updates;
        }
      }
      out.measured.check = out.checks > 0 ? check_total / static_cast<double>(out.checks) : hooks.nominal.check;
      out.measured.update = out.updates > 0 ? update_total / static_cast<double>(out.updates) : hooks.nominal.update;
      break;
    }
  }

  out.charged = mnrs_cost(out.measured, params.r, params.delta_bound);
  ledger.charge(out.charged);
  if (outcome) *outcome = out;
  return report;
}

}  // namespace rlelcs
