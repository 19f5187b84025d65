#include "rlelcs/reference.hpp"

#include <algorithm>
#include <initializer_list>
#include <string>

#include "rlelcs/errors.hpp"

namespace rlelcs {

namespace {

void check_bound(std::int64_t x, std::int64_t y, std::int64_t bound) {
  if (x > 0 && y > bound / x) {
    throw ResourceError("brute force over " + std::to_string(x) + " x " + std::to_string(y) +
                        " exceeds the desk bound " + std::to_string(bound));
  }
}

}  // namespace

BruteLcs brute_lcs(const RleString& a, const RleString& b, std::int64_t desk_bound) {
  check_bound(a.decoded_length(), b.decoded_length(), desk_bound);
  const std::string x = decode(a);
  const std::string y = decode(b);
  BruteLcs out;
  std::vector<std::int64_t> prev(y.size() + 1, 0);
  std::vector<std::int64_t> cur(y.size() + 1, 0);
  for (std::size_t i = 1; i <= x.size(); ++i) {
    for (std::size_t j = 1; j <= y.size(); ++j) {
      cur[j] = x[i - 1] == y[j - 1] ? prev[j - 1] + 1 : 0;
      if (cur[j] > out.length) {
        out.length = cur[j];
        out.start_a = static_cast<std::int64_t>(i) - cur[j] + 1;
        out.start_b = static_cast<std::int64_t>(j) - cur[j] + 1;
      }
    }
    std::swap(prev, cur);
  }
  if (out.length > 0) out.encoded_length = decoded_slice(a, out.start_a, out.length).size();
  return out;
}

BruteLrs brute_lrs(const RleString& a, std::int64_t desk_bound) {
  check_bound(a.decoded_length(), a.decoded_length(), desk_bound);
  const std::string s = decode(a);
  const std::size_t n = s.size();
  BruteLrs out;
  // row[j] holds L(i+1, j) until slot j is overwritten with L(i, j).
  std::vector<std::int64_t> row(n + 2, 0);
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) {
      row[j] = s[i] == s[j] ? row[j + 1] + 1 : 0;
      if (row[j] > out.length) {
        out.length = row[j];
        out.start_1 = static_cast<std::int64_t>(i) + 1;
        out.start_2 = static_cast<std::int64_t>(j) + 1;
      }
    }
  }
  return out;
}

RleString decoded_slice(const RleString& s, std::int64_t start, std::int64_t len) {
  if (len <= 0) return RleString();
  if (start < 1 || start + len - 1 > s.decoded_length()) throw RangeError("decoded slice out of range");
  std::vector<Run> runs;
  std::int64_t pos = 0;  // decoded characters before the current run
  const std::int64_t end = start + len - 1;
  for (const Run& r : s.runs()) {
    const std::int64_t lo = std::max(start, pos + 1);
    const std::int64_t hi = std::min(end, pos + r.len);
    if (lo <= hi) runs.push_back({r.ch, hi - lo + 1});
    pos += r.len;
    if (pos >= end) break;
  }
  return RleString(std::move(runs));
}

RleString random_rle(std::int64_t n_runs, int alphabet, std::int64_t run_cap, std::mt19937_64& rng) {
  if (alphabet < 2 && n_runs > 1) throw ParameterError("need two symbols for more than one run");
  std::uniform_int_distribution<int> sym(0, alphabet - 1);
  std::uniform_int_distribution<std::int64_t> len(1, run_cap);
  std::vector<Run> runs;
  for (std::int64_t i = 0; i < n_runs; ++i) {
    Symbol c;
    do {
      c = static_cast<Symbol>('a' + sym(rng));
    } while (!runs.empty() && runs.back().ch == c);
    runs.push_back({c, len(rng)});
  }
  return RleString(std::move(runs));
}

namespace {

Symbol pick_symbol(std::mt19937_64& rng, std::initializer_list<int> banned) {
  std::uniform_int_distribution<int> sym(0, kPlantAlphabet - 1);
  while (true) {
    const Symbol c = static_cast<Symbol>('a' + sym(rng));
    if (std::find(banned.begin(), banned.end(), static_cast<int>(c)) == banned.end()) return c;
  }
}

/// Random runs ending next to `edge`; the run touching the block avoids both
/// the block symbol and the matching run of the other string.
std::vector<Run> flank(std::int64_t count, Symbol edge, int other_edge, bool before, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> len(1, kPlantRunCap);
  std::vector<Run> runs(static_cast<std::size_t>(count));
  if (count == 0) return runs;
  // Fill outward from the block so each run only constrains its neighbour.
  Symbol prev = edge;
  for (std::int64_t t = 0; t < count; ++t) {
    const std::size_t slot = before ? static_cast<std::size_t>(count - 1 - t) : static_cast<std::size_t>(t);
    const Symbol c = t == 0 ? pick_symbol(rng, {prev, other_edge}) : pick_symbol(rng, {prev});
    runs[slot] = {c, len(rng)};
    prev = c;
  }
  return runs;
}

PlantedInstance plant_impl(std::int64_t n_runs, std::int64_t d_runs, std::int64_t d_tilde, std::uint64_t seed) {
  if (d_runs < 1 || d_runs > n_runs) throw ParameterError("need 1 <= d_runs <= n_runs");
  if (d_tilde < d_runs || d_tilde > d_runs * kPlantRunCap) {
    throw ParameterError("d_tilde infeasible for d_runs runs of length at most 9");
  }
  std::mt19937_64 rng(seed);
  PlantedInstance inst;

  RleString block = random_rle(d_runs, kPlantAlphabet, kPlantRunCap, rng);
  std::vector<Run> runs = block.runs();
  std::int64_t total = block.decoded_length();
  std::uniform_int_distribution<std::size_t> which(0, runs.size() - 1);
  while (total < d_tilde) {
    Run& r = runs[which(rng)];
    if (r.len < kPlantRunCap) {
      ++r.len;
      ++total;
    }
  }
  inst.block = RleString(runs);

  const std::int64_t rest = n_runs - d_runs;
  std::uniform_int_distribution<std::int64_t> split(0, rest);
  const std::int64_t pre_a = split(rng);
  const std::int64_t pre_b = split(rng);
  const Symbol first = runs.front().ch;
  const Symbol last = runs.back().ch;

  auto before_a = flank(pre_a, first, -1, true, rng);
  const int edge_a_before = before_a.empty() ? -1 : before_a.back().ch;
  auto before_b = flank(pre_b, first, edge_a_before, true, rng);
  auto after_a = flank(rest - pre_a, last, -1, false, rng);
  const int edge_a_after = after_a.empty() ? -1 : after_a.front().ch;
  auto after_b = flank(rest - pre_b, last, edge_a_after, false, rng);

  auto join = [&](const std::vector<Run>& pre, const std::vector<Run>& post) {
    std::vector<Run> all(pre);
    all.insert(all.end(), runs.begin(), runs.end());
    all.insert(all.end(), post.begin(), post.end());
    return RleString(std::move(all));
  };
  inst.a = join(before_a, after_a);
  inst.b = join(before_b, after_b);
  inst.offset_a = pre_a + 1;
  inst.offset_b = pre_b + 1;
  return inst;
}

}  // namespace

PlantedInstance plant_instance(std::int64_t n_runs, std::int64_t d_runs, std::int64_t d_tilde, std::uint64_t seed) {
  PlantedInstance inst = plant_impl(n_runs, d_runs, d_tilde, seed);
  inst.truth = brute_lcs(inst.a, inst.b);
  return inst;
}

PlantedInstance plant_pair(std::int64_t n_runs, std::int64_t d_runs, std::int64_t d_tilde, std::uint64_t seed) {
  return plant_impl(n_runs, d_runs, d_tilde, seed);
}

}  // namespace rlelcs
