// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rlelcs/anchors.hpp"
#include "rlelcs/bench.hpp"
#include "rlelcs/dyn_array.hpp"
#include "rlelcs/range_sum_2d.hpp"
#include "rlelcs/reductions.hpp"
#include "rlelcs/reference.hpp"
#include "rlelcs/walk.hpp"

using namespace rlelcs;

namespace {

struct Result {
  bool pass = true;
  std::string detail;
};

struct Instance {
  RleString a;
  RleString b;
};

std::optional<LcsAnswer> run_solver(const RleString& x, const RleString& y, const SolverConfig& config) {
  auto ledger = std::make_shared<QueryLedger>();
  const OracleHandle a(x, ledger);
  const OracleHandle b(y, ledger);
  return solve_lcs_rle_p(a, b, config);
}

std::int64_t length_of(const std::optional<LcsAnswer>& ans) { return ans ? ans->d_tilde : 0; }

// Suite 1: 500 random pairs plus 200 planted pairs.
const std::vector<Instance>& suite_one() {
  static const std::vector<Instance> instances = [] {
    std::vector<Instance> out;
    std::mt19937_64 rng(20240601);
    for (int t = 0; t < 500; ++t) {
      const int alphabet = 2 + static_cast<int>(rng() % 3);
      const auto na = 1 + static_cast<std::int64_t>(rng() % 64);
      const auto nb = 1 + static_cast<std::int64_t>(rng() % 64);
      RleString a = random_rle(na, alphabet, 9, rng);
      RleString b = random_rle(nb, alphabet, 9, rng);
      out.push_back({std::move(a), std::move(b)});
    }
    for (std::uint64_t s = 1; s <= 200; ++s) {
      const auto n = 8 + static_cast<std::int64_t>(s % 57);
      const auto d = 1 + static_cast<std::int64_t>(s % std::min<std::int64_t>(n, 16));
      const auto dt = d * (1 + static_cast<std::int64_t>(s % 9));
      const PlantedInstance p = plant_instance(n, d, dt, s);
      out.push_back({p.a, p.b});
    }
    return out;
  }();
  return instances;
}

Result criterion_exactness() {
  Result r;
  SolverConfig config;
  config.mode = WalkMode::kFullSet;
  config.scheme = AnchorScheme::kExhaustive;
  int wrong = 0;
  int unverified = 0;
  for (const Instance& inst : suite_one()) {
    const auto ans = run_solver(inst.a, inst.b, config);
    if (length_of(ans) != brute_lcs(inst.a, inst.b).length) ++wrong;
    if (ans && !verify_candidate(*ans, inst.a, inst.b)) ++unverified;
  }
  r.pass = wrong == 0 && unverified == 0;
  r.detail = std::to_string(suite_one().size()) + " instances, " + std::to_string(wrong) + " wrong, " +
             std::to_string(unverified) + " unverified";
  return r;
}

Result criterion_example() {
  Result r;
  const RleString a = encode("abcdbbbbccccc");
  const RleString b = encode("abcd@bbbbcc");
  const auto ans = run_solver(a, b, SolverConfig{});
  if (!ans) return {false, "no answer"};
  const std::string got = decode(decoded_slice(a, ans->decoded_start_A, ans->d_tilde));
  r.pass = ans->d_tilde == 6 && got == "bbbbcc" && verify_candidate(*ans, a, b);
  r.detail = "d_tilde=" + std::to_string(ans->d_tilde) + " substring=" + got;
  return r;
}

Result criterion_reductions() {
  const DlSolver dl = [](const RleString& s, const RleString& t) { return brute_lcs(s, t).length; };
  const ElSolver el = [](const RleString& s, const RleString& t) { return brute_lcs(s, t).encoded_length; };
  std::int64_t cases = 0;
  std::int64_t mismatches = 0;
  std::int64_t over_budget = 0;
  std::int64_t max_calls = 0;
  for (int len = 1; len <= 12; ++len) {
    const std::int64_t budget = static_cast<std::int64_t>(std::ceil(std::log2(2.0 * len))) + 1;
    for (std::uint32_t v = 0; v < (1u << len); ++v) {
      ParityInstance p;
      for (int i = len - 1; i >= 0; --i) p.bits.push_back(static_cast<int>((v >> i) & 1));
      ++cases;
      const int want = p.parity();
      const ParityRun a = parity_via_dl(p, dl);
      const ParityRun b = parity_via_el(p, el);
      if (a.parity != want || b.parity != want) ++mismatches;
      if (b.calls > budget) ++over_budget;
      max_calls = std::max(max_calls, b.calls);
    }
  }
  Result r;
  r.pass = cases == 8190 && mismatches == 0 && over_budget == 0;
  r.detail = std::to_string(cases) + " cases, " + std::to_string(mismatches) + " mismatches, max EL calls " +
             std::to_string(max_calls) + ", " + std::to_string(over_budget) + " over budget";
  return r;
}

Result criterion_structures() {
  std::int64_t failures = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    std::mt19937_64 rng(seed);
    DynArray a;
    std::vector<DynArray::Entry> naive;
    std::int64_t next_key = 0;
    for (int op = 0; op < 10000; ++op) {
      const auto n = static_cast<std::int64_t>(naive.size());
      const auto kind = rng() % 6;
      auto pick = [&](std::int64_t hi) { return static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi)) + 1; };
      if (kind <= 1 || n == 0) {
        const std::int64_t pos = pick(n + 1);
        const DynArray::Entry e{next_key++, static_cast<std::int64_t>(rng() % 1000)};
        a.insert(pos, e);
        naive.insert(naive.begin() + (pos - 1), e);
      } else if (kind == 2) {
        const std::int64_t pos = pick(n);
        if (a.erase(pos) != naive[static_cast<std::size_t>(pos - 1)]) ++failures;
        naive.erase(naive.begin() + (pos - 1));
      } else if (kind == 3) {
        std::int64_t l = pick(n), h = pick(n);
        if (l > h) std::swap(l, h);
        std::int64_t want = naive[static_cast<std::size_t>(l - 1)].second;
        for (auto i = l; i <= h; ++i) want = std::min(want, naive[static_cast<std::size_t>(i - 1)].second);
        if (a.range_min(l, h) != want) ++failures;
      } else if (kind == 4) {
        const std::int64_t pos = pick(n);
        if (a.locate(naive[static_cast<std::size_t>(pos - 1)].first) != pos) ++failures;
      } else {
        const std::int64_t pos = pick(n);
        if (a.index(pos) != naive[static_cast<std::size_t>(pos - 1)]) ++failures;
      }
    }
    if (a.to_vector() != naive) ++failures;
  }

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    std::mt19937_64 rng(seed + 100);
    const std::int64_t u = 64;
    RangeSum2D r(u);
    std::map<std::pair<std::int64_t, std::int64_t>, int> naive;
    for (int op = 0; op < 10000; ++op) {
      const auto x = static_cast<std::int64_t>(rng() % u) + 1;
      const auto y = static_cast<std::int64_t>(rng() % u) + 1;
      const auto kind = rng() % 3;
      if (kind == 0) {
        r.insert(x, y);
        ++naive[{x, y}];
      } else if (kind == 1 && !naive.empty()) {
        auto it = naive.begin();
        std::advance(it, static_cast<long>(rng() % naive.size()));
        r.erase(it->first.first, it->first.second);
        if (--it->second == 0) naive.erase(it);
      } else {
        const auto x2 = static_cast<std::int64_t>(rng() % u) + 1;
        const auto y2 = static_cast<std::int64_t>(rng() % u) + 1;
        const auto [xl, xh] = std::minmax(x, x2);
        const auto [yl, yh] = std::minmax(y, y2);
        std::int64_t want = 0;
        for (const auto& [p, c] : naive) {
          if (p.first >= xl && p.first <= xh && p.second >= yl && p.second <= yh) want += c;
        }
        if (r.count(xl, xh, yl, yh) != want) ++failures;
      }
    }
  }

  // Canonical form: 100 histories that end with the same content.
  std::int64_t shape_mismatch = 0;
  std::mt19937_64 rng(77);
  std::vector<DynArray::Entry> target;
  for (int i = 0; i < 200; ++i) target.push_back({3 * i + 1, static_cast<std::int64_t>(rng() % 100)});
  DynArray direct;
  for (std::size_t i = 0; i < target.size(); ++i) direct.insert(static_cast<std::int64_t>(i) + 1, target[i]);
  const std::string expected = direct.serialize();
  for (int history = 0; history < 100; ++history) {
    DynArray a;
    std::vector<std::int64_t> keys;
    std::vector<std::size_t> order(target.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    std::int64_t junk = 100000;
    for (std::size_t idx : order) {
      const auto pos = std::lower_bound(keys.begin(), keys.end(), target[idx].first) - keys.begin();
      a.insert(pos + 1, target[idx]);
      keys.insert(keys.begin() + pos, target[idx].first);
      if (rng() % 3 == 0) {
        const auto p = static_cast<std::int64_t>(rng() % (keys.size() + 1)) + 1;
        a.insert(p, {junk++, 5});
        a.erase(p);
      }
    }
    if (a.serialize() != expected) ++shape_mismatch;
  }

  Result r;
  r.pass = failures == 0 && shape_mismatch == 0;
  r.detail = std::to_string(failures) + " oracle mismatches over 2x10 seeds x 10^4 ops, " +
             std::to_string(shape_mismatch) + "/100 shape mismatches";
  return r;
}

Result criterion_vertex() {
  const PlantedInstance inst = plant_pair(60, 8, 40, 5);
  auto ledger = std::make_shared<QueryLedger>();
  const OracleHandle a(inst.a, ledger);
  const OracleHandle b(inst.b, ledger);
  const ConcatOracle s(a, b);
  const AnchorSet x = build_exhaustive(s.joined());
  std::vector<std::int64_t> all(static_cast<std::size_t>(x.size()));
  std::iota(all.begin(), all.end(), std::int64_t{1});
  VertexData v(s, x, 4, all, CostModel{});

  std::mt19937_64 rng(99);
  std::vector<std::int64_t> in;
  std::vector<std::int64_t> out = all;
  for (int op = 0; op < 1000; ++op) {
    if (out.empty() || (!in.empty() && rng() % 5 < 2)) {
      const std::size_t i = rng() % in.size();
      v.erase(in[i]);
      out.push_back(in[i]);
      in.erase(in.begin() + static_cast<long>(i));
    } else {
      const std::size_t i = rng() % out.size();
      v.insert(out[i]);
      in.push_back(out[i]);
      out.erase(out.begin() + static_cast<long>(i));
    }
  }

  std::int64_t bad_adjacent = 0;
  std::int64_t bad_interval = 0;
  for (bool fwd : {true, false}) {
    const DynArray& order = fwd ? v.p_order() : v.q_order();
    const DynArray& lc = fwd ? v.p_ldcp() : v.q_ldcp();
    const auto entries = order.to_vector();
    std::vector<std::string> text;
    for (const auto& e : entries) text.push_back(decode((fwd ? v.forward(e.first) : v.backward(e.first)).materialize()));
    auto common = [](const std::string& p, const std::string& q) {
      std::size_t i = 0;
      while (i < p.size() && i < q.size() && p[i] == q[i]) ++i;
      return static_cast<std::int64_t>(i);
    };
    for (std::size_t i = 0; i + 1 < text.size(); ++i) {
      if (text[i] > text[i + 1]) ++bad_adjacent;
      if (lc.index(static_cast<std::int64_t>(i) + 1).second != common(text[i], text[i + 1])) ++bad_adjacent;
    }
    const auto n = static_cast<std::int64_t>(text.size());
    for (int q = 0; q < 1000 && n >= 2; ++q) {
      auto i = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n)) + 1;
      auto j = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n)) + 1;
      if (i == j) continue;
      if (i > j) std::swap(i, j);
      if (lc.range_min(i, j - 1) != common(text[static_cast<std::size_t>(i - 1)], text[static_cast<std::size_t>(j - 1)])) {
        ++bad_interval;
      }
    }
  }
  Result r;
  r.pass = bad_adjacent == 0 && bad_interval == 0;
  r.detail = "vertex size " + std::to_string(v.size()) + ", " + std::to_string(bad_adjacent) + " bad adjacent, " +
             std::to_string(bad_interval) + " bad intervals";
  return r;
}

Result criterion_scaling() {
  SolverConfig config;
  config.mode = WalkMode::kCostOnly;
  config.scheme = AnchorScheme::kMinimizer;
  const std::int64_t trials = 5;

  std::vector<double> xs, ys;
  std::ostringstream detail;
  const std::int64_t d_fixed = 16;
  for (int e = 8; e <= 14; ++e) {
    const std::int64_t n = std::int64_t{1} << e;
    const BenchRow row = bench_cell(n, d_fixed, trials, 1, config);
    xs.push_back(static_cast<double>(n));
    ys.push_back(row.charged_cost);
  }
  const double slope_n = log_log_slope(xs, ys);

  xs.clear();
  ys.clear();
  for (int e = 4; e <= 8; ++e) {
    const std::int64_t d = std::int64_t{1} << e;
    const BenchRow row = bench_cell(4096, d, trials, 1, config);
    xs.push_back(static_cast<double>(d));
    ys.push_back(row.charged_cost);
  }
  const double slope_d = log_log_slope(xs, ys);

  Result r;
  r.pass = slope_n >= 0.55 && slope_n <= 0.80 && slope_d >= -0.35 && slope_d <= 0.0;
  char buf[160];
  std::snprintf(buf, sizeof buf, "slope vs n = %.4f (want [0.55, 0.80]), slope vs d = %.4f (want [-0.35, 0.00])",
                slope_n, slope_d);
  r.detail = buf;
  return r;
}

Result criterion_lrs() {
  std::mt19937_64 rng(4242);
  int wrong = 0;
  std::int64_t max_len = 0;
  for (int t = 0; t < 200; ++t) {
    const int alphabet = 2 + static_cast<int>(rng() % 3);
    const auto runs = 1 + static_cast<std::int64_t>(rng() % 400);
    RleString s = random_rle(runs, alphabet, 9, rng);
    while (s.decoded_length() > 2000) s = s.slice(0, s.size() - 1);
    max_len = std::max(max_len, s.decoded_length());
    auto ledger = std::make_shared<QueryLedger>();
    const OracleHandle a(s, ledger);
    const auto ans = solve_lrs(a, SolverConfig{});
    if (length_of(ans) != brute_lrs(s).length) ++wrong;
  }
  Result r;
  r.pass = wrong == 0;
  r.detail = "200 strings up to decoded length " + std::to_string(max_len) + ", " + std::to_string(wrong) + " wrong";
  return r;
}

Result criterion_anchors() {
  std::int64_t exhaustive_invalid = 0;
  for (const Instance& inst : suite_one()) {
    const Concatenation c = concat_sep(inst.a, inst.b);
    for (std::int64_t d : d_levels(std::min(inst.a.size(), inst.b.size()))) {
      if (!validate_anchor_set(build_exhaustive(c.joined, d), c.joined, c.separator_run, d).valid) {
        ++exhaustive_invalid;
      }
    }
  }

  std::int64_t valid = 0;
  std::ostringstream witnesses;
  const std::int64_t d = 16;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const PlantedInstance p = plant_pair(128, d, 5 * d, seed);
    const Concatenation c = concat_sep(p.a, p.b);
    const AnchorSet x = build_minimizer(c.joined, d, seed);
    const AnchorValidation v = validate_anchor_set(x, c.joined, c.separator_run, d);
    if (v.valid) {
      ++valid;
    } else if (v.witness) {
      witnesses << " seed " << seed << " witness (" << v.witness->start_a << "," << v.witness->start_b << ")";
    }
  }

  SolverConfig config;
  config.scheme = AnchorScheme::kMinimizer;
  config.exhaustive_fallback = true;
  std::int64_t violations = 0;
  for (const Instance& inst : suite_one()) {
    const auto ans = run_solver(inst.a, inst.b, config);
    if (length_of(ans) > brute_lcs(inst.a, inst.b).length) ++violations;
    if (ans && !verify_candidate(*ans, inst.a, inst.b)) ++violations;
  }

  Result r;
  r.pass = exhaustive_invalid == 0 && valid >= 95 && violations == 0;
  r.detail = "exhaustive invalid " + std::to_string(exhaustive_invalid) + ", minimizer valid " + std::to_string(valid) +
             "/100, soundness violations " + std::to_string(violations) + witnesses.str();
  return r;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
      {"1 exactness vs brute force", criterion_exactness},
      {"2 worked example", criterion_example},
      {"3 parity reductions", criterion_reductions},
      {"4 data structures", criterion_structures},
      {"5 vertex coherence", criterion_vertex},
      {"6 ledger scaling", criterion_scaling},
      {"7 longest repeated substring", criterion_lrs},
      {"8 anchor validation", criterion_anchors},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = fn();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!r.pass) ++failed;
    std::printf("%s criterion %s: %s (%.1fs)\n", r.pass ? "PASS" : "FAIL", name.c_str(), r.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
