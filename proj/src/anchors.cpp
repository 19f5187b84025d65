#include "rlelcs/anchors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include <json.hpp>

#include "rlelcs/errors.hpp"

namespace rlelcs {

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

const char* to_string(AnchorScheme scheme) {
  return scheme == AnchorScheme::kExhaustive ? "exhaustive" : "minimizer";
}

AnchorScheme parse_anchor_scheme(std::string_view name) {
  if (name == "exhaustive") return AnchorScheme::kExhaustive;
  if (name == "minimizer") return AnchorScheme::kMinimizer;
  throw ParameterError("unknown anchor scheme '" + std::string(name) + "'");
}

std::string AnchorSet::to_json() const {
  nlohmann::ordered_json j;
  j["scheme"] = to_string(scheme);
  j["d"] = d;
  j["m"] = size();
  j["entries"] = entries;
  return j.dump();
}

AnchorSet build_exhaustive(const RleString& s, std::int64_t d) {
  AnchorSet x;
  x.d = d;
  x.scheme = AnchorScheme::kExhaustive;
  x.entries.resize(static_cast<std::size_t>(std::max<std::int64_t>(s.size(), 1)));
  for (std::size_t i = 0; i < x.entries.size(); ++i) x.entries[i] = static_cast<std::int64_t>(i) + 1;
  return x;
}

AnchorSet build_minimizer(const RleString& s, std::int64_t d, std::uint64_t seed, std::int64_t d_min) {
  if (d < d_min) {
    throw ParameterError("d=" + std::to_string(d) + " below d_min=" + std::to_string(d_min));
  }
  AnchorSet x;
  x.d = d;
  x.scheme = AnchorScheme::kMinimizer;
  const std::int64_t n = s.size();
  const std::int64_t w = (d + 1) / 2;
  const std::int64_t q = std::max<std::int64_t>(1, d / 4);
  if (n < w) {
    x.entries = {1};
    return x;
  }

  std::vector<std::uint64_t> h(static_cast<std::size_t>(n));
  const std::uint64_t base = mix(seed);
  for (std::int64_t i = 0; i < n; ++i) {
    std::uint64_t acc = base;
    for (std::int64_t t = i; t < std::min(n, i + q); ++t) {
      const Run& r = s.run(t);
      acc = mix(acc ^ (static_cast<std::uint64_t>(r.ch) << 56) ^ static_cast<std::uint64_t>(r.len));
    }
    h[static_cast<std::size_t>(i)] = acc;
  }

  // Monotone deque of candidate positions; front is the leftmost minimum.
  std::deque<std::int64_t> dq;
  for (std::int64_t i = 0; i < n; ++i) {
    while (!dq.empty() && h[static_cast<std::size_t>(dq.back())] > h[static_cast<std::size_t>(i)]) dq.pop_back();
    dq.push_back(i);
    if (dq.front() <= i - w) dq.pop_front();
    if (i >= w - 1) {
      const std::int64_t pick = dq.front() + 1;
      if (x.entries.empty() || x.entries.back() != pick) x.entries.push_back(pick);
    }
  }
  return x;
}

std::int64_t anchor_at(const AnchorSet& x, std::int64_t k, QueryLedger* ledger, const CostModel& cost) {
  if (k < 1 || k > x.size()) {
    throw RangeError("anchor index " + std::to_string(k) + " outside [1, " + std::to_string(x.size()) + "]");
  }
  if (ledger) ledger->charge(cost.anchor_factor * std::sqrt(static_cast<double>(x.d)));
  return x.entries[static_cast<std::size_t>(k - 1)];
}

AnchorValidation validate_anchor_set(const AnchorSet& x, const RleString& s, std::int64_t sep_index, std::int64_t d) {
  AnchorValidation out;
  if (d < 1) throw ParameterError("d must be positive");
  const std::int64_t n_a = sep_index - 1;
  const std::int64_t n_b = s.size() - sep_index;
  if (sep_index < 1 || sep_index > s.size()) throw ParameterError("separator index out of range");
  std::vector<char> in_x(static_cast<std::size_t>(s.size()) + 2, 0);
  for (std::int64_t e : x.entries) {
    if (e >= 1 && e <= s.size()) in_x[static_cast<std::size_t>(e)] = 1;
  }
  const std::int64_t h_lo = d >= 3 ? 1 : 0;
  const std::int64_t h_hi = d >= 3 ? d - 2 : d - 1;

  // Run t of A is S run t; run t of B is S run sep_index + t (1-based).
  auto a = [&](std::int64_t t) { return s.run(t - 1); };
  auto b = [&](std::int64_t t) { return s.run(sep_index + t - 1); };

  for (std::int64_t i = 1; i + d - 1 <= n_a; ++i) {
    for (std::int64_t j = 1; j + d - 1 <= n_b; ++j) {
      if (a(i).ch != b(j).ch || a(i + d - 1).ch != b(j + d - 1).ch) continue;
      bool inner = true;
      for (std::int64_t t = 1; t + 1 < d && inner; ++t) inner = a(i + t) == b(j + t);
      if (!inner) continue;
      ++out.blocks_checked;
      bool hit = false;
      for (std::int64_t h = h_lo; h <= h_hi && !hit; ++h) {
        hit = in_x[static_cast<std::size_t>(i + h)] && in_x[static_cast<std::size_t>(sep_index + j + h)];
      }
      if (!hit) {
        out.valid = false;
        out.witness = AnchorWitness{i, j, d};
        return out;
      }
    }
  }
  return out;
}

}  // namespace rlelcs
