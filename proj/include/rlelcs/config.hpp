#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>

#include "rlelcs/anchors.hpp"
#include "rlelcs/query.hpp"

namespace rlelcs {

using KeyValues = std::map<std::string, std::string>;

/// `key = value` lines; '#' starts a comment. Throws ParseError.
KeyValues parse_key_values(std::istream& in);
KeyValues load_key_values(const std::string& path);

struct SolverConfig {
  CostModel cost;
  WalkMode mode = WalkMode::kFullSet;
  AnchorScheme scheme = AnchorScheme::kExhaustive;
  std::int64_t d_min = 8;
  /// r = ceil(r_constant * m^(2/3)) outside FULLSET.
  double r_constant = 1.0;
  std::int64_t step_budget = 0;
  std::uint64_t seed = 1;
  /// Use exhaustive anchors for d < d_min; when off those levels are skipped.
  bool exhaustive_fallback = true;
  /// Direct search for common substrings of one or two runs.
  bool small_fallback = true;
  /// Replaces the anchor construction for every d (testing hook).
  std::function<AnchorSet(const RleString& s, std::int64_t d)> anchor_override;

  /// Recognized keys: the CostModel fields, d_min, r_constant, step_budget,
  /// mode, anchors, seed.
  void apply(const KeyValues& kv);
};

}  // namespace rlelcs
