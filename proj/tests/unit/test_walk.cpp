#include <doctest.h>

#include <algorithm>
#include <memory>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "rlelcs/errors.hpp"
#include "rlelcs/reference.hpp"
#include "rlelcs/walk.hpp"

using namespace rlelcs;
using oracle::rle;

namespace {

struct Pair {
  std::shared_ptr<QueryLedger> ledger = std::make_shared<QueryLedger>();
  OracleHandle a;
  OracleHandle b;
  ConcatOracle s;
  Pair(const RleString& x, const RleString& y) : a(x, ledger), b(y, ledger), s(a, b) {}
};

std::vector<std::int64_t> iota_keys(std::int64_t m) {
  std::vector<std::int64_t> v(static_cast<std::size_t>(m));
  std::iota(v.begin(), v.end(), 1);
  return v;
}

std::optional<LcsAnswer> solve(const RleString& x, const RleString& y, const SolverConfig& config = {}) {
  auto ledger = std::make_shared<QueryLedger>();
  const OracleHandle a(x, ledger);
  const OracleHandle b(y, ledger);
  return solve_lcs_rle_p(a, b, config);
}

std::int64_t solved_length(const std::optional<LcsAnswer>& ans) { return ans ? ans->d_tilde : 0; }

// Every adjacent pair in both orders is sorted and stores the true ldcp.
void check_coherent(const VertexData& v) {
  for (const auto* side : {&v.p_order(), &v.q_order()}) {
    const bool fwd = side == &v.p_order();
    const DynArray& lc = fwd ? v.p_ldcp() : v.q_ldcp();
    const auto order = side->to_vector();
    REQUIRE(lc.size() == std::max<std::int64_t>(0, static_cast<std::int64_t>(order.size()) - 1));
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      const std::string s = decode((fwd ? v.forward(order[i].first) : v.backward(order[i].first)).materialize());
      const std::string t = decode((fwd ? v.forward(order[i + 1].first) : v.backward(order[i + 1].first)).materialize());
      REQUIRE(s <= t);
      REQUIRE(lc.index(static_cast<std::int64_t>(i) + 1).second == oracle::common_prefix(s, t));
    }
  }
}

}  // namespace

TEST_SUITE("walk") {

TEST_CASE("concatenation oracle") {
  Pair p(rle({{'a', 2}, {'b', 3}, {'c', 1}}), rle({{'d', 1}, {'b', 3}, {'c', 2}}));
  CHECK(p.s.size() == 7);
  CHECK(p.s.sep_index() == 4);
  CHECK(p.s.run(4) == Run{'$', 1});
  CHECK(p.s.run(5) == Run{'d', 1});
  CHECK(p.s.prefix(3) == 6);
  CHECK(p.s.prefix(4) == 7);
  CHECK(p.s.prefix(7) == 13);
  CHECK(p.s.color(2) == Color::kRed);
  CHECK(p.s.color(4) == Color::kWhite);
  CHECK(p.s.color(6) == Color::kBlue);
  CHECK(decode(p.s.joined()) == "aabbbc$dbbbcc");

  auto other = std::make_shared<QueryLedger>();
  const OracleHandle c(encode("x"), other);
  CHECK_THROWS_AS(ConcatOracle(p.a, c), ParameterError);
  const OracleHandle dollar(encode("a$"), p.ledger);
  CHECK_THROWS_AS(ConcatOracle(p.a, dollar), ParameterError);
}

TEST_CASE("clamped windows") {
  Pair p(rle({{'a', 2}, {'b', 3}, {'c', 1}}), rle({{'d', 1}, {'b', 3}, {'c', 2}}));
  CHECK(decode(forward_window(p.s, 2, 2).materialize()) == "bbbc$dbbb");
  CHECK(decode(backward_window(p.s, 2, 2).materialize()) == "bbbaa");
  CHECK(decode(backward_window(p.s, 1, 3).materialize()) == "aa");
  CHECK(decode(forward_window(p.s, 7, 3).materialize()) == "cc");
}

TEST_CASE("vertex insert and erase") {
  Pair p(rle({{'a', 2}, {'b', 3}, {'c', 1}}), rle({{'d', 1}, {'b', 3}, {'c', 2}}));
  const AnchorSet x = build_exhaustive(p.s.joined());
  VertexData v(p.s, x, 2, iota_keys(x.size()), CostModel{});
  v.insert(3);
  CHECK(v.size() == 1);
  CHECK(v.p_ldcp().size() == 0);
  CHECK_THROWS_AS(v.insert(3), ParameterError);
  const std::string one = v.serialize();
  v.insert(6);
  v.insert(2);
  check_coherent(v);
  const std::string before = v.serialize();
  v.insert(7);
  v.erase(7);
  CHECK(v.serialize() == before);
  v.erase(2);
  v.erase(6);
  CHECK(v.serialize() == one);
  v.erase(3);
  CHECK(v.size() == 0);
  CHECK_THROWS_AS(v.erase(3), NotFoundError);
}

TEST_CASE("check finds the planted pair") {
  Pair p(rle({{'a', 2}, {'b', 3}, {'c', 1}}), rle({{'d', 1}, {'b', 3}, {'c', 2}}));
  const AnchorSet x = build_exhaustive(p.s.joined());
  VertexData v(p.s, x, 2, iota_keys(x.size()), CostModel{});
  for (std::int64_t k = 1; k <= x.size(); ++k) v.insert(k);
  const auto c = v.check(4);
  REQUIRE(c.has_value());
  CHECK(c->k_red == 2);
  CHECK(c->k_blue == 6);
  CHECK(c->d_prime == 0);
  CHECK(c->L == 3);

  const LcsAnswer ans = finalize_answer(candidate_alignment(*c, p.s), p.a, p.b);
  CHECK(ans.i_A == 2);
  CHECK(ans.i_B == 2);
  CHECK(ans.ell == 2);
  CHECK(ans.d_tilde == 4);

  CHECK_FALSE(v.check(5).has_value());
}

TEST_CASE("check on disjoint alphabets") {
  Pair p(rle({{'a', 2}}), rle({{'b', 2}}));
  const AnchorSet x = build_exhaustive(p.s.joined());
  VertexData v(p.s, x, 1, iota_keys(x.size()), CostModel{});
  for (std::int64_t k = 1; k <= x.size(); ++k) v.insert(k);
  CHECK_FALSE(v.check(1).has_value());
}

TEST_CASE("vertex stays coherent under random updates") {
  std::mt19937_64 rng(31);
  const PlantedInstance inst = plant_pair(40, 6, 20, 8);
  Pair p(inst.a, inst.b);
  const AnchorSet x = build_exhaustive(p.s.joined());
  VertexData v(p.s, x, 3, iota_keys(x.size()), CostModel{});
  std::vector<std::int64_t> in;
  std::vector<std::int64_t> out = iota_keys(x.size());
  for (int op = 0; op < 300; ++op) {
    if (out.empty() || (!in.empty() && rng() % 2)) {
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
    if (op % 25 == 0) check_coherent(v);
  }
  check_coherent(v);
}

TEST_CASE("worked example") {
  const auto ans = solve(encode("abcdbbbbccccc"), encode("abcd@bbbbcc"));
  REQUIRE(ans.has_value());
  CHECK(ans->d_tilde == 6);
  CHECK(ans->ell == 2);
  CHECK(decode(decoded_slice(encode("abcdbbbbccccc"), ans->decoded_start_A, ans->d_tilde)) == "bbbbcc");
  CHECK(verify_candidate(*ans, encode("abcdbbbbccccc"), encode("abcd@bbbbcc")));
}

TEST_CASE("trivial instances") {
  const auto same = solve(rle({{'a', 5}}), rle({{'a', 5}}));
  REQUIRE(same.has_value());
  CHECK(same->d_tilde == 5);
  CHECK(same->ell == 1);
  CHECK(same->i_A == 1);
  CHECK(same->i_B == 1);
  CHECK_FALSE(solve(rle({{'a', 3}, {'b', 1}}), rle({{'c', 2}})).has_value());
  CHECK_FALSE(solve(RleString(), rle({{'c', 2}})).has_value());
}

TEST_CASE("verification rejects tampering") {
  const RleString a = encode("abcdbbbbccccc");
  const RleString b = encode("abcd@bbbbcc");
  const auto ans = solve(a, b);
  REQUIRE(ans.has_value());
  LcsAnswer longer = *ans;
  longer.ell += 1;
  CHECK_FALSE(verify_candidate(longer, a, b));
  LcsAnswer shifted = *ans;
  shifted.decoded_start_A -= 1;
  CHECK_FALSE(verify_candidate(shifted, a, b));
  LcsAnswer stretched = *ans;
  stretched.d_tilde += 1;
  CHECK_FALSE(verify_candidate(stretched, a, b));
}

TEST_CASE("exact on small random pairs") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 150; ++trial) {
    const RleString a = random_rle(1 + static_cast<std::int64_t>(rng() % 14), 3, 5, rng);
    const RleString b = random_rle(1 + static_cast<std::int64_t>(rng() % 14), 3, 5, rng);
    const auto ans = solve(a, b);
    REQUIRE(solved_length(ans) == brute_lcs(a, b).length);
    if (ans) REQUIRE(verify_candidate(*ans, a, b));
  }
}

TEST_CASE("minimizer anchors with fallback stay exact") {
  SolverConfig config;
  config.scheme = AnchorScheme::kMinimizer;
  config.d_min = 4;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const PlantedInstance inst = plant_instance(40, 10, 30, seed);
    const auto ans = solve(inst.a, inst.b, config);
    REQUIRE(solved_length(ans) == inst.truth.length);
  }
}

TEST_CASE("random walk mode never overshoots") {
  SolverConfig config;
  config.mode = WalkMode::kRandomWalk;
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    config.seed = static_cast<std::uint64_t>(trial) + 1;
    const RleString a = random_rle(12, 3, 5, rng);
    const RleString b = random_rle(12, 3, 5, rng);
    const auto ans = solve(a, b, config);
    REQUIRE(solved_length(ans) <= brute_lcs(a, b).length);
    if (ans) REQUIRE(verify_candidate(*ans, a, b));
  }
}

TEST_CASE("crippled anchors lose answers but never invent them") {
  SolverConfig config;
  config.exhaustive_fallback = false;
  config.small_fallback = false;
  config.anchor_override = [](const RleString&, std::int64_t d) {
    AnchorSet x;
    x.d = d;
    x.entries = {1, 2};
    return x;
  };
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 100; ++trial) {
    const RleString a = random_rle(10, 3, 5, rng);
    const RleString b = random_rle(10, 3, 5, rng);
    const auto ans = solve(a, b, config);
    REQUIRE(solved_length(ans) <= brute_lcs(a, b).length);
    if (ans) REQUIRE(verify_candidate(*ans, a, b));
  }
}

TEST_CASE("cost only mode") {
  SolverConfig config;
  config.mode = WalkMode::kCostOnly;
  auto ledger = std::make_shared<QueryLedger>();
  const OracleHandle a(encode("abcdbbbbccccc"), ledger);
  const OracleHandle b(encode("abcd@bbbbcc"), ledger);
  CHECK_FALSE(solve_lcs_rle_p(a, b, config).has_value());
  CHECK(ledger->charged_cost() > 0);
  CHECK(ledger->run_queries() == 0);
}

TEST_CASE("search hit at a fixed threshold") {
  auto ledger = std::make_shared<QueryLedger>();
  const OracleHandle a(encode("abcdbbbbccccc"), ledger);
  const OracleHandle b(encode("abcd@bbbbcc"), ledger);
  CHECK(search_hit(a, b, SolverConfig{}, 6).has_value());
  CHECK_FALSE(search_hit(a, b, SolverConfig{}, 7).has_value());
}

TEST_CASE("longest repeated substring") {
  auto lrs = [](const RleString& s) {
    auto ledger = std::make_shared<QueryLedger>();
    const OracleHandle a(s, ledger);
    return solve_lrs(a, SolverConfig{});
  };
  const auto abc = lrs(encode("abcabc"));
  REQUIRE(abc.has_value());
  CHECK(abc->d_tilde == 3);
  const auto a4 = lrs(rle({{'a', 4}}));
  REQUIRE(a4.has_value());
  CHECK(a4->d_tilde == 3);
  CHECK(a4->decoded_start_A != a4->decoded_start_B);
  CHECK_FALSE(lrs(encode("ab")).has_value());

  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    const RleString s = random_rle(1 + static_cast<std::int64_t>(rng() % 16), 3, 5, rng);
    REQUIRE(solved_length(lrs(s)) == brute_lrs(s).length);
  }
}

TEST_CASE("levels and json") {
  CHECK(d_levels(10) == std::vector<std::int64_t>{8, 4, 2, 1});
  CHECK(d_levels(1) == std::vector<std::int64_t>{1});
  CHECK(d_levels(0).empty());
  QueryLedger ledger;
  CHECK(answer_to_json(std::nullopt, ledger) ==
        R"({"result":null,"ledger":{"run_queries":0,"prefix_queries":0,"charged_cost":0.0}})");
}

}
