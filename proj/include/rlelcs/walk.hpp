#pragma once

// Longest common substring of two RLE strings: the walk vertex, the
// insertion and checking procedures, the outer searches and the answer
// finalization. Also the repeated-substring variant on a single string.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "rlelcs/anchors.hpp"
#include "rlelcs/config.hpp"
#include "rlelcs/dyn_array.hpp"
#include "rlelcs/query.hpp"
#include "rlelcs/range_sum_2d.hpp"
#include "rlelcs/rle.hpp"

namespace rlelcs {

enum class Color { kRed, kBlue, kWhite };

const char* to_string(Color c);

/// S = A $ B seen through the counted oracles of A and B, or S = A alone.
/// Run and prefix indices are 1-based; prefix() clamps outside [0, n].
class ConcatOracle {
 public:
  ConcatOracle(const OracleHandle& a, const OracleHandle& b);
  explicit ConcatOracle(const OracleHandle& a);

  std::int64_t size() const noexcept { return size_; }
  std::int64_t n_a() const noexcept { return a_->size(); }
  /// Run index of the separator, 0 for a single string.
  std::int64_t sep_index() const noexcept { return b_ ? a_->size() + 1 : 0; }
  bool single() const noexcept { return b_ == nullptr; }

  Run run(std::int64_t i) const;
  std::int64_t prefix(std::int64_t i) const;
  Color color(std::int64_t x) const;

  /// Uncounted copy of S, for anchor construction.
  RleString joined() const;
  const OracleHandle& a() const noexcept { return *a_; }
  const OracleHandle& b() const noexcept { return b_ ? *b_ : *a_; }
  QueryLedger& ledger() const noexcept { return a_->ledger(); }

 private:
  const OracleHandle* a_;
  const OracleHandle* b_;
  std::int64_t size_;
};

/// A run range of S read lazily through the oracle, optionally reversed.
class Window {
 public:
  Window() = default;
  Window(const ConcatOracle* s, std::int64_t first, std::int64_t count, bool reversed)
      : s_(s), first_(first), count_(count), reversed_(reversed) {}

  std::int64_t size() const noexcept { return count_; }
  Run run(std::int64_t i) const { return s_->run(reversed_ ? first_ + count_ - 1 - i : first_ + i); }
  RleString materialize() const;

 private:
  const ConcatOracle* s_ = nullptr;
  std::int64_t first_ = 1;
  std::int64_t count_ = 0;
  bool reversed_ = false;
};

/// Runs x .. x+2d of S, clamped.
Window forward_window(const ConcatOracle& s, std::int64_t x, std::int64_t d);
/// Runs x-2d .. x of S reversed, clamped.
Window backward_window(const ConcatOracle& s, std::int64_t x, std::int64_t d);

RleString prefix_window(const ConcatOracle& s, const AnchorSet& x, std::int64_t k, std::int64_t d);
RleString suffix_window(const ConcatOracle& s, const AnchorSet& x, std::int64_t k, std::int64_t d);

struct Candidate {
  std::int64_t k_red = 0;
  std::int64_t k_blue = 0;
  std::int64_t x_red = 0;  // run indices in S
  std::int64_t x_blue = 0;
  std::int64_t d_prime = 0;
  std::int64_t L = 0;
  std::int64_t d_tilde = 0;
};

class VertexData {
 public:
  /// `sample` holds anchor indices of the reference set V. With
  /// `single_color` every non-white key may pair with every other key.
  VertexData(const ConcatOracle& s, const AnchorSet& x, std::int64_t d, std::vector<std::int64_t> sample,
             const CostModel& cost, bool single_color = false);

  void insert(std::int64_t k);
  void erase(std::int64_t k);
  std::optional<Candidate> check(std::int64_t d_tilde);

  std::int64_t size() const noexcept { return by_key_.size(); }
  bool contains(std::int64_t k) const { return info_.count(k) != 0; }

  const DynArray& by_key() const noexcept { return by_key_; }
  const DynArray& p_order() const noexcept { return p_order_; }
  const DynArray& p_ldcp() const noexcept { return p_ldcp_; }
  const DynArray& q_order() const noexcept { return q_order_; }
  const DynArray& q_ldcp() const noexcept { return q_ldcp_; }
  std::int64_t rank_p(std::int64_t k) const { return info_.at(k).rank_p; }
  std::int64_t rank_q(std::int64_t k) const { return info_.at(k).rank_q; }
  Color color(std::int64_t k) const { return info_.at(k).color; }
  /// Points stored for a color in the rank structure.
  std::int64_t rank_points(Color c) const;
  Window forward(std::int64_t k) const;
  Window backward(std::int64_t k) const;

  /// Concatenated serializations of the five arrays.
  std::string serialize() const;

 private:
  struct KeyInfo {
    std::int64_t x = 0;
    Color color = Color::kWhite;
    std::int64_t rank_p = 0;
    std::int64_t rank_q = 0;
  };
  struct Side {
    DynArray* order;
    DynArray* ldcp;
    bool forward;
  };
  using Buckets = std::map<std::int64_t, std::set<std::int64_t>>;

  Window window(std::int64_t x, bool forward) const;
  std::strong_ordering compare(const Window& s, const Window& t) const;
  std::int64_t charged_ldcp(const Window& s, const Window& t) const;
  std::int64_t rank_of(std::int64_t x, bool forward) const;
  void insert_side(const Side& side, std::int64_t k, std::int64_t x);
  void erase_side(const Side& side, std::int64_t k);
  /// Maximal [l, r] around pos whose adjacent ldcp values are all >= threshold.
  std::pair<std::int64_t, std::int64_t> interval(const DynArray& ldcp, std::int64_t pos, std::int64_t threshold) const;
  int slot(Color c) const { return single_ ? 0 : (c == Color::kRed ? 0 : 1); }
  double eval_cost() const;

  const ConcatOracle* s_;
  const AnchorSet* x_;
  std::int64_t d_;
  const CostModel* cost_;
  bool single_;
  QueryLedger* ledger_;

  std::vector<std::int64_t> sample_p_;  // run indices of V sorted by forward window
  std::vector<std::int64_t> sample_q_;

  DynArray by_key_;
  DynArray p_order_;
  DynArray p_ldcp_;
  DynArray q_order_;
  DynArray q_ldcp_;
  std::unordered_map<std::int64_t, KeyInfo> info_;
  std::vector<RangeSum2D> ranks_;
  std::vector<Buckets> bucket_p_;
  std::vector<Buckets> bucket_q_;
};

/// One d level of the outer loops: anchors, reference sample and walk state.
class InnerSearch {
 public:
  InnerSearch(const ConcatOracle& s, AnchorSet x, std::int64_t d, const SolverConfig& config, std::uint64_t seed);

  std::optional<Candidate> run(std::int64_t d_tilde, WalkOutcome* outcome = nullptr);

  const AnchorSet& anchors() const noexcept { return x_; }
  std::int64_t m() const noexcept { return x_.size(); }
  std::int64_t r() const noexcept { return r_; }
  double delta_bound() const noexcept { return delta_; }
  WalkCosts nominal() const;
  VertexData* vertex() noexcept { return vertex_.get(); }

 private:
  void build(std::span<const std::int64_t> subset);

  const ConcatOracle* s_;
  AnchorSet x_;
  std::int64_t d_;
  const SolverConfig* config_;
  std::uint64_t seed_;
  std::int64_t r_;
  double delta_;
  std::vector<std::int64_t> sample_;
  std::unique_ptr<VertexData> vertex_;
  bool built_full_ = false;
  double setup_charge_ = 0.0;
};

struct LcsAnswer {
  std::int64_t i_A = 0;
  std::int64_t i_B = 0;
  std::int64_t ell = 0;
  std::int64_t d_tilde = 0;
  std::int64_t decoded_start_A = 0;
  std::int64_t decoded_start_B = 0;
};

/// A matching pair of decoded positions, A[pos_a] = B[pos_b].
struct Alignment {
  std::int64_t pos_a = 0;
  std::int64_t pos_b = 0;
};

/// The end of run x_red in A against the end of run x_blue in B.
Alignment candidate_alignment(const Candidate& c, const ConcatOracle& s);

/// Extends the alignment maximally in both directions through the oracles.
/// Throws InternalError when the answer fails verify_candidate.
LcsAnswer finalize_answer(const Alignment& at, const OracleHandle& a, const OracleHandle& b);

bool verify_candidate(const LcsAnswer& ans, const RleString& a, const RleString& b);

std::optional<LcsAnswer> solve_lcs_rle_p(const OracleHandle& a, const OracleHandle& b, const SolverConfig& config);

/// Longest repeated substring; i_B/decoded_start_B describe the second start.
std::optional<LcsAnswer> solve_lrs(const OracleHandle& a, const SolverConfig& config);

/// One evaluation of the outer search predicate: an alignment of a common
/// substring of decoded length >= d_tilde, if the inner loop finds one.
std::optional<Alignment> search_hit(const OracleHandle& a, const OracleHandle& b, const SolverConfig& config,
                                    std::int64_t d_tilde);

/// {"result": null | {...}, "ledger": {...}}
std::string answer_to_json(const std::optional<LcsAnswer>& ans, const QueryLedger& ledger);

/// The d levels visited by the inner loop: powers of two from
/// 2^floor(log2 n) down to 1.
std::vector<std::int64_t> d_levels(std::int64_t n);

}  // namespace rlelcs
