#pragma once

// d-anchor sets over the run indices of S = A $ B.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rlelcs/query.hpp"
#include "rlelcs/rle.hpp"

namespace rlelcs {

enum class AnchorScheme { kExhaustive, kMinimizer };

const char* to_string(AnchorScheme scheme);
AnchorScheme parse_anchor_scheme(std::string_view name);

struct AnchorSet {
  std::vector<std::int64_t> entries;  // X(1..m) as 1-based run indices, stored 0-based
  std::int64_t d = 1;
  AnchorScheme scheme = AnchorScheme::kExhaustive;

  std::int64_t size() const noexcept { return static_cast<std::int64_t>(entries.size()); }
  std::string to_json() const;
};

AnchorSet build_exhaustive(const RleString& s, std::int64_t d = 1);

/// Winnowing over q-grams of runs: every window of w = ceil(d/2) consecutive
/// positions contributes its leftmost hash-minimal position, where position
/// i is hashed by the run tuple S[i .. i+q-1], q = max(1, floor(d/4)).
/// Throws ParameterError when d < d_min.
AnchorSet build_minimizer(const RleString& s, std::int64_t d, std::uint64_t seed, std::int64_t d_min = 8);

/// X(k) for k in [1, m]; charges anchor_factor * sqrt(d).
std::int64_t anchor_at(const AnchorSet& x, std::int64_t k, QueryLedger* ledger, const CostModel& cost);

struct AnchorWitness {
  std::int64_t start_a = 0;  // first run of the block in A
  std::int64_t start_b = 0;  // first run of the block in B
  std::int64_t d = 0;
};

struct AnchorValidation {
  bool valid = true;
  std::int64_t blocks_checked = 0;
  std::optional<AnchorWitness> witness;
};

/// Checks every pair of run-aligned common blocks of exactly d runs (first and
/// last runs may be partial, interior runs identical) for a shift h with
/// i+h and n_A+1+j+h both in X. h ranges over [1, d-2] for d >= 3 and
/// [0, d-1] below.
AnchorValidation validate_anchor_set(const AnchorSet& x, const RleString& s, std::int64_t sep_index, std::int64_t d);

}  // namespace rlelcs
