#include "rlelcs/query.hpp"

#include <charconv>
#include <sstream>

#include <json.hpp>

namespace rlelcs {

void QueryLedger::charge(double cost) {
  if (!(cost >= 0.0)) throw ParameterError("negative charge");
  if (scopes_.empty()) {
    charged_cost_ += cost;
  } else {
    scopes_.back() += cost;
  }
}

std::string QueryLedger::to_json() const {
  nlohmann::ordered_json j;
  j["run_queries"] = run_queries_;
  j["prefix_queries"] = prefix_queries_;
  j["charged_cost"] = charged_cost_;
  return j.dump();
}

void CostModel::validate() const {
  if (!(grover_factor > 0) || !(minfind_factor > 0) || !(anchor_factor > 0) || !(whp_log_base > 1)) {
    throw ParameterError("cost factors must be positive and the log base above 1");
  }
  if (log_power < 0) throw ParameterError("log_power must be non-negative");
}

namespace {

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ParameterError("config key '" + key + "' expects a number, got '" + v + "'");
  }
}

}  // namespace

void CostModel::apply(const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) {
    if (key == "grover_factor") grover_factor = to_double(key, value);
    else if (key == "minfind_factor") minfind_factor = to_double(key, value);
    else if (key == "whp_log_base") whp_log_base = to_double(key, value);
    else if (key == "anchor_factor") anchor_factor = to_double(key, value);
    else if (key == "boost_whp") boost_whp = (value == "1" || value == "true");
    else if (key == "log_power") log_power = static_cast<int>(to_double(key, value));
  }
  validate();
}

OracleHandle::OracleHandle(RleString s, std::shared_ptr<QueryLedger> ledger)
    : string_(std::make_shared<const RleString>(std::move(s))),
      prefix_(std::make_shared<const PrefixTable>(*string_)),
      ledger_(ledger ? std::move(ledger) : std::make_shared<QueryLedger>()) {}

Run OracleHandle::query_run(std::int64_t i) const {
  if (i < 1 || i > size()) {
    throw RangeError("run index " + std::to_string(i) + " outside [1, " + std::to_string(size()) + "]");
  }
  ledger_->count_run_query();
  return string_->run(i - 1);
}

std::int64_t OracleHandle::query_prefix(std::int64_t i) const {
  if (i < 0 || i > size()) {
    throw RangeError("prefix index " + std::to_string(i) + " outside [0, " + std::to_string(size()) + "]");
  }
  ledger_->count_prefix_query();
  return (*prefix_)[i];
}

std::int64_t OracleHandle::inverse_prefix(std::int64_t decoded_index) const {
  if (decoded_index < 1 || decoded_index > decoded_length()) {
    throw RangeError("decoded index " + std::to_string(decoded_index) + " out of range");
  }
  std::int64_t lo = 1;
  std::int64_t hi = size();
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (query_prefix(mid) >= decoded_index) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

double with_whp(double inner_cost, std::int64_t n_scale, double log_base) {
  if (inner_cost < 0) throw ParameterError("negative inner cost");
  if (n_scale < 2) throw ParameterError("n_scale must be at least 2");
  const double reps = std::ceil(std::log(static_cast<double>(n_scale)) / std::log(log_base) - 1e-12);
  return inner_cost * reps;
}

const char* to_string(WalkMode mode) {
  switch (mode) {
    case WalkMode::kFullSet: return "fullset";
    case WalkMode::kRandomWalk: return "walk";
    case WalkMode::kCostOnly: return "costonly";
  }
  return "?";
}

WalkMode parse_walk_mode(std::string_view name) {
  if (name == "fullset") return WalkMode::kFullSet;
  if (name == "walk" || name == "randomwalk") return WalkMode::kRandomWalk;
  if (name == "costonly") return WalkMode::kCostOnly;
  throw ParameterError("unknown walk mode '" + std::string(name) + "'");
}

namespace detail {

void validate_walk_params(const WalkParams& p) {
  if (p.m < 1) throw ParameterError("walk over an empty list");
  if (p.r < 1 || p.r > p.m) {
    throw ParameterError("subset size r=" + std::to_string(p.r) + " outside [1, m=" + std::to_string(p.m) + "]");
  }
  if (!(p.delta_bound > 0.0) || p.delta_bound > 1.0) throw ParameterError("delta_bound must lie in (0, 1]");
}

std::int64_t default_step_budget(const WalkParams& p) {
  const std::int64_t ratio = (p.m + p.r - 1) / p.r;
  const auto inv_sqrt_delta = static_cast<std::int64_t>(std::ceil(1.0 / std::sqrt(p.delta_bound) - 1e-12));
  return 20 * ratio * std::max<std::int64_t>(1, inv_sqrt_delta);
}

}  // namespace detail

}  // namespace rlelcs
