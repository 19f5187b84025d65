#pragma once

// PARITY gadgets and the drivers that recover the parity bit from an LCS
// solver.

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "rlelcs/rle.hpp"

namespace rlelcs {

struct ParityInstance {
  std::vector<int> bits;

  std::int64_t size() const noexcept { return static_cast<std::int64_t>(bits.size()); }
  int parity() const;
  std::string to_string() const;
  static ParityInstance from_string(std::string_view s);
};

/// Decoded-length solver: (S, T) -> decoded length of their LCS.
using DlSolver = std::function<std::int64_t(const RleString&, const RleString&)>;
/// Encoded-length solver: (S, T) -> run count of their LCS.
using ElSolver = std::function<std::int64_t(const RleString&, const RleString&)>;

/// Alternating a/b runs of length B_i + 2.
RleString gadget_dl(const ParityInstance& b);

struct ParityRun {
  int parity = 0;
  std::int64_t calls = 0;
  std::int64_t k_prime = 0;  // EL only
};

ParityRun parity_via_dl(const ParityInstance& b, const DlSolver& solver);

/// Alternating a/b runs of length 2 B_i + 2, then sep, then c^k.
RleString gadget_el(const ParityInstance& b, std::int64_t k, Symbol sep);

/// Finds the smallest odd k' in [2n, 4n] where the encoded LCS of the '@'
/// and '#' gadgets drops to 1, and returns bit1(k') xor bit0(n).
/// Throws ReductionError on answers outside {1, n}.
ParityRun parity_via_el(const ParityInstance& b, const ElSolver& solver);

/// a1 @ a2 @ ... a_n @ over the decoded string. Throws ParameterError when
/// '@' already occurs.
RleString pad_interleave(const RleString& a);

}  // namespace rlelcs
