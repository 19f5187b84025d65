#pragma once

// Brute-force ground truth over decoded strings.

#include <cstdint>
#include <random>
#include <vector>

#include "rlelcs/rle.hpp"

namespace rlelcs {

inline constexpr std::int64_t kDefaultDeskBound = 10'000'000;

struct BruteLcs {
  std::int64_t length = 0;
  std::int64_t start_a = 0;  // 1-based decoded start, 0 when length is 0
  std::int64_t start_b = 0;
  std::int64_t encoded_length = 0;  // runs of the reported occurrence
};

/// Quadratic DP over the decodings. Throws ResourceError when
/// decoded_length(a) * decoded_length(b) exceeds the bound.
BruteLcs brute_lcs(const RleString& a, const RleString& b, std::int64_t desk_bound = kDefaultDeskBound);

struct BruteLrs {
  std::int64_t length = 0;
  std::int64_t start_1 = 0;
  std::int64_t start_2 = 0;
};

/// Longest substring occurring at two distinct starts; occurrences may overlap.
BruteLrs brute_lrs(const RleString& a, std::int64_t desk_bound = kDefaultDeskBound);

/// The run-level slice covering decoded positions [start, start + len).
RleString decoded_slice(const RleString& s, std::int64_t start, std::int64_t len);

struct PlantedInstance {
  RleString a;
  RleString b;
  RleString block;
  std::int64_t offset_a = 0;  // run index in A where the block starts (1-based)
  std::int64_t offset_b = 0;
  BruteLcs truth;
};

inline constexpr int kPlantAlphabet = 4;
inline constexpr std::int64_t kPlantRunCap = 9;

/// Random strings over {a, b, c, d} with run lengths <= 9 and a shared block
/// of d_runs runs and decoded length >= d_tilde. Truth comes from brute_lcs.
PlantedInstance plant_instance(std::int64_t n_runs, std::int64_t d_runs, std::int64_t d_tilde, std::uint64_t seed);

/// A random RLE string with the given number of runs.
RleString random_rle(std::int64_t n_runs, int alphabet, std::int64_t run_cap, std::mt19937_64& rng);

/// Same construction as plant_instance without the brute-force re-check,
/// for sizes past the desk bound.
PlantedInstance plant_pair(std::int64_t n_runs, std::int64_t d_runs, std::int64_t d_tilde, std::uint64_t seed);

}  // namespace rlelcs
