#include "rlelcs/rle.hpp"

#include <algorithm>
#include <charconv>
#include <istream>

#include "rlelcs/errors.hpp"

namespace rlelcs {

RleString::RleString(std::vector<Run> runs) : runs_(std::move(runs)) {
  for (std::size_t i = 0; i < runs_.size(); ++i) {
    if (runs_[i].len < 1) throw ParameterError("run length must be positive");
    if (i > 0 && runs_[i].ch == runs_[i - 1].ch) throw ParameterError("adjacent runs share a character");
    decoded_length_ += runs_[i].len;
  }
}

RleString RleString::slice(std::int64_t first, std::int64_t last) const {
  first = std::clamp<std::int64_t>(first, 0, size());
  last = std::clamp<std::int64_t>(last, first, size());
  return RleString(std::vector<Run>(runs_.begin() + first, runs_.begin() + last));
}

bool RleString::contains_symbol(Symbol c) const noexcept {
  return std::any_of(runs_.begin(), runs_.end(), [c](const Run& r) { return r.ch == c; });
}

PrefixTable::PrefixTable(const RleString& s) {
  values_.reserve(static_cast<std::size_t>(s.size()) + 1);
  values_.push_back(0);
  for (const Run& r : s.runs()) values_.push_back(values_.back() + r.len);
}

RleString encode(std::string_view decoded) {
  std::vector<Run> runs;
  for (char c : decoded) {
    const auto sym = static_cast<Symbol>(c);
    if (!runs.empty() && runs.back().ch == sym) {
      ++runs.back().len;
    } else {
      runs.push_back({sym, 1});
    }
  }
  return RleString(std::move(runs));
}

std::string decode(const RleString& s) {
  std::string out;
  out.reserve(static_cast<std::size_t>(s.decoded_length()));
  for (const Run& r : s.runs()) out.append(static_cast<std::size_t>(r.len), static_cast<char>(r.ch));
  return out;
}

PrefixTable prefix_table(const RleString& s) { return PrefixTable(s); }

std::int64_t inverse_prefix(const PrefixTable& p, std::int64_t decoded_index) {
  if (decoded_index < 1 || decoded_index > p.decoded_length()) {
    throw RangeError("decoded index " + std::to_string(decoded_index) + " outside [1, " +
                     std::to_string(p.decoded_length()) + "]");
  }
  const auto& v = p.values();
  // First i with P[i] >= decoded_index.
  auto it = std::lower_bound(v.begin() + 1, v.end(), decoded_index);
  return static_cast<std::int64_t>(it - v.begin());
}

bool is_generalized_substring(const RleString& s, const RleString& t) {
  const std::int64_t ns = s.size();
  const std::int64_t nt = t.size();
  if (ns == 0) return true;
  if (ns == 1) {
    return std::any_of(t.runs().begin(), t.runs().end(), [&](const Run& r) {
      return r.ch == s.run(0).ch && r.len >= s.run(0).len;
    });
  }
  for (std::int64_t j = 0; j + ns <= nt; ++j) {
    const Run& first = t.run(j);
    const Run& last = t.run(j + ns - 1);
    if (first.ch != s.run(0).ch || first.len < s.run(0).len) continue;
    if (last.ch != s.run(ns - 1).ch || last.len < s.run(ns - 1).len) continue;
    bool inner = true;
    for (std::int64_t i = 1; i + 1 < ns && inner; ++i) inner = t.run(j + i) == s.run(i);
    if (inner) return true;
  }
  return false;
}

Concatenation concat_sep(const RleString& a, const RleString& b, Symbol sep) {
  if (a.contains_symbol(sep) || b.contains_symbol(sep)) {
    throw ParameterError("separator occurs in an input string");
  }
  std::vector<Run> runs;
  runs.reserve(static_cast<std::size_t>(a.size() + b.size() + 1));
  runs.insert(runs.end(), a.runs().begin(), a.runs().end());
  runs.push_back({sep, 1});
  runs.insert(runs.end(), b.runs().begin(), b.runs().end());
  return {RleString(std::move(runs)), a.size() + 1};
}

RleString reverse(const RleString& s) {
  return RleString(std::vector<Run>(s.runs().rbegin(), s.runs().rend()));
}

namespace {

bool needs_escape(Symbol c) { return c < 0x21 || c > 0x7e || c == ',' || c == ':' || c == '\\'; }

}  // namespace

std::string format_rle(const RleString& s) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (std::int64_t i = 0; i < s.size(); ++i) {
    if (i > 0) out += ',';
    const Run& r = s.run(i);
    if (needs_escape(r.ch)) {
      out += "\\x";
      out += kHex[r.ch >> 4];
      out += kHex[r.ch & 0xf];
    } else {
      out += static_cast<char>(r.ch);
    }
    out += ':';
    out += std::to_string(r.len);
  }
  return out;
}

RleString parse_rle(std::string_view line, std::int64_t line_number) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<Run> runs;
  if (line.empty()) return RleString();
  std::size_t pos = 0;
  while (true) {
    Symbol ch = 0;
    if (pos < line.size() && line[pos] == '\\') {
      if (pos + 4 > line.size() || line[pos + 1] != 'x') throw ParseError("malformed escape", line_number);
      unsigned value = 0;
      auto [p, ec] = std::from_chars(line.data() + pos + 2, line.data() + pos + 4, value, 16);
      if (ec != std::errc() || p != line.data() + pos + 4) throw ParseError("malformed escape", line_number);
      ch = static_cast<Symbol>(value);
      pos += 4;
    } else if (pos < line.size()) {
      ch = static_cast<Symbol>(line[pos]);
      ++pos;
    } else {
      throw ParseError("missing character", line_number);
    }
    if (pos >= line.size() || line[pos] != ':') throw ParseError("expected ':' after character", line_number);
    ++pos;
    std::int64_t len = 0;
    auto [p, ec] = std::from_chars(line.data() + pos, line.data() + line.size(), len);
    if (ec != std::errc() || len < 1) throw ParseError("run length must be a positive integer", line_number);
    pos = static_cast<std::size_t>(p - line.data());
    if (!runs.empty() && runs.back().ch == ch) throw ParseError("adjacent runs share a character", line_number);
    runs.push_back({ch, len});
    if (pos == line.size()) break;
    if (line[pos] != ',') throw ParseError("expected ','", line_number);
    ++pos;
  }
  return RleString(std::move(runs));
}

std::vector<RleString> read_rle_lines(std::istream& in) {
  std::vector<RleString> out;
  std::string line;
  std::int64_t number = 0;
  while (std::getline(in, line)) out.push_back(parse_rle(line, ++number));
  return out;
}

}  // namespace rlelcs
