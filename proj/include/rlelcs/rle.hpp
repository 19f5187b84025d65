#pragma once

// Run-length encoded strings and the decoded-domain comparisons on them.
//
// Index conventions: containers (RleString::run, any RunSequence) are
// 0-based. Domain indices that mirror the encoded/decoded positions of a
// string (inverse_prefix, PrefixTable entries, oracle queries) are 1-based,
// with P[0] = 0.

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace rlelcs {

using Symbol = unsigned char;

// Reserved code points. Generators never emit them.
inline constexpr Symbol kSeparator = '$';
inline constexpr Symbol kPadSymbol = '@';
inline constexpr Symbol kAltSeparator = '#';

struct Run {
  Symbol ch = 0;
  std::int64_t len = 0;

  friend bool operator==(const Run&, const Run&) = default;
};

template <typename T>
concept RunSequence = requires(const T& s, std::int64_t i) {
  { s.size() } -> std::convertible_to<std::int64_t>;
  { s.run(i) } -> std::convertible_to<Run>;
};

class RleString {
 public:
  RleString() = default;
  /// Throws ParameterError unless every len >= 1 and adjacent chars differ.
  explicit RleString(std::vector<Run> runs);

  std::int64_t size() const noexcept { return static_cast<std::int64_t>(runs_.size()); }
  bool empty() const noexcept { return runs_.empty(); }
  std::int64_t decoded_length() const noexcept { return decoded_length_; }
  const Run& run(std::int64_t i) const { return runs_[static_cast<std::size_t>(i)]; }
  const std::vector<Run>& runs() const noexcept { return runs_; }

  /// Runs [first, last) as a new string (0-based, clamped).
  RleString slice(std::int64_t first, std::int64_t last) const;

  bool contains_symbol(Symbol c) const noexcept;

  friend bool operator==(const RleString& a, const RleString& b) { return a.runs_ == b.runs_; }

 private:
  std::vector<Run> runs_;
  std::int64_t decoded_length_ = 0;
};

class PrefixTable {
 public:
  PrefixTable() : values_{0} {}
  explicit PrefixTable(const RleString& s);

  /// P[i] for i in [0, n].
  std::int64_t operator[](std::int64_t i) const { return values_[static_cast<std::size_t>(i)]; }
  std::int64_t encoded_length() const noexcept { return static_cast<std::int64_t>(values_.size()) - 1; }
  std::int64_t decoded_length() const noexcept { return values_.back(); }
  const std::vector<std::int64_t>& values() const noexcept { return values_; }

 private:
  std::vector<std::int64_t> values_;
};

RleString encode(std::string_view decoded);
std::string decode(const RleString& s);
PrefixTable prefix_table(const RleString& s);

/// The unique i with P[i-1] < decoded_index <= P[i]; binary search over P.
std::int64_t inverse_prefix(const PrefixTable& p, std::int64_t decoded_index);

/// Length of the longest common prefix of the decodings, computed run by run.
/// Both sequences must consist of maximal runs.
template <RunSequence S, RunSequence T>
std::int64_t ldcp(const S& s, const T& t) {
  const std::int64_t n = std::min<std::int64_t>(s.size(), t.size());
  std::int64_t acc = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    const Run a = s.run(i);
    const Run b = t.run(i);
    if (a.ch != b.ch) return acc;
    if (a.len != b.len) return acc + std::min(a.len, b.len);
    acc += a.len;
  }
  return acc;
}

/// Three-way lexicographic order of the decodings; a proper prefix is smaller.
template <RunSequence S, RunSequence T>
std::strong_ordering lex_compare_decoded(const S& s, const T& t) {
  const std::int64_t ns = s.size();
  const std::int64_t nt = t.size();
  const std::int64_t n = std::min(ns, nt);
  for (std::int64_t i = 0; i < n; ++i) {
    const Run a = s.run(i);
    const Run b = t.run(i);
    if (a.ch != b.ch) return a.ch <=> b.ch;
    if (a.len < b.len) {
      // s leaves the shared run first; t still shows a.ch at that position.
      if (i + 1 < ns) return s.run(i + 1).ch <=> a.ch;
      return std::strong_ordering::less;
    }
    if (a.len > b.len) {
      if (i + 1 < nt) return a.ch <=> t.run(i + 1).ch;
      return std::strong_ordering::greater;
    }
  }
  return ns <=> nt;
}

bool is_generalized_substring(const RleString& s, const RleString& t);

struct Concatenation {
  RleString joined;
  std::int64_t separator_run = 0;  // 1-based run index of the separator
};

/// a, then a single separator run, then b. Throws ParameterError when sep
/// occurs in either input.
Concatenation concat_sep(const RleString& a, const RleString& b, Symbol sep = kSeparator);

RleString reverse(const RleString& s);

// Text format: comma-separated `char:count` tokens, chars as a single
// printable byte or a \xHH escape. The empty string is the empty line.
std::string format_rle(const RleString& s);
RleString parse_rle(std::string_view line, std::int64_t line_number = 0);
std::vector<RleString> read_rle_lines(std::istream& in);

}  // namespace rlelcs
