#include "rlelcs/walk.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <json.hpp>

#include "rlelcs/errors.hpp"
#include "rlelcs/reference.hpp"

namespace rlelcs {

const char* to_string(Color c) {
  switch (c) {
    case Color::kRed: return "red";
    case Color::kBlue: return "blue";
    case Color::kWhite: return "white";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// ConcatOracle / Window

ConcatOracle::ConcatOracle(const OracleHandle& a, const OracleHandle& b)
    : a_(&a), b_(&b), size_(a.size() + 1 + b.size()) {
  if (a.string().contains_symbol(kSeparator) || b.string().contains_symbol(kSeparator)) {
    throw ParameterError("the separator symbol occurs in an input string");
  }
  if (&a.ledger() != &b.ledger()) throw ParameterError("both oracles must share one ledger");
}

ConcatOracle::ConcatOracle(const OracleHandle& a) : a_(&a), b_(nullptr), size_(a.size()) {}

Run ConcatOracle::run(std::int64_t i) const {
  const std::int64_t na = a_->size();
  if (i <= na) return a_->query_run(i);
  if (!b_) throw RangeError("run index past the end of S");
  if (i == na + 1) return {kSeparator, 1};
  return b_->query_run(i - na - 1);
}

std::int64_t ConcatOracle::prefix(std::int64_t i) const {
  if (i <= 0) return 0;
  i = std::min(i, size_);
  const std::int64_t na = a_->size();
  if (i <= na) return a_->query_prefix(i);
  if (i == na + 1) return a_->decoded_length() + 1;
  return a_->decoded_length() + 1 + b_->query_prefix(i - na - 1);
}

Color ConcatOracle::color(std::int64_t x) const {
  if (!b_) return Color::kRed;
  const std::int64_t na = a_->size();
  if (x <= na) return Color::kRed;
  return x == na + 1 ? Color::kWhite : Color::kBlue;
}

RleString ConcatOracle::joined() const {
  if (!b_) return a_->string();
  return concat_sep(a_->string(), b_->string()).joined;
}

RleString Window::materialize() const {
  std::vector<Run> runs;
  runs.reserve(static_cast<std::size_t>(count_));
  for (std::int64_t i = 0; i < count_; ++i) runs.push_back(run(i));
  return RleString(std::move(runs));
}

Window forward_window(const ConcatOracle& s, std::int64_t x, std::int64_t d) {
  const std::int64_t last = std::min(s.size(), x + 2 * d);
  return Window(&s, x, last - x + 1, false);
}

Window backward_window(const ConcatOracle& s, std::int64_t x, std::int64_t d) {
  const std::int64_t first = std::max<std::int64_t>(1, x - 2 * d);
  return Window(&s, first, x - first + 1, true);
}

RleString prefix_window(const ConcatOracle& s, const AnchorSet& x, std::int64_t k, std::int64_t d) {
  return forward_window(s, anchor_at(x, k, nullptr, CostModel{}), d).materialize();
}

RleString suffix_window(const ConcatOracle& s, const AnchorSet& x, std::int64_t k, std::int64_t d) {
  return backward_window(s, anchor_at(x, k, nullptr, CostModel{}), d).materialize();
}

// ---------------------------------------------------------------------------
// VertexData

VertexData::VertexData(const ConcatOracle& s, const AnchorSet& x, std::int64_t d, std::vector<std::int64_t> sample,
                       const CostModel& cost, bool single_color)
    : s_(&s),
      x_(&x),
      d_(d),
      cost_(&cost),
      single_(single_color),
      ledger_(&s.ledger()),
      by_key_(&s.ledger()),
      p_order_(&s.ledger()),
      p_ldcp_(&s.ledger()),
      q_order_(&s.ledger()),
      q_ldcp_(&s.ledger()) {
  const int colors = single_ ? 1 : 2;
  for (int c = 0; c < colors; ++c) ranks_.emplace_back(x.size() + 1, ledger_);
  bucket_p_.resize(static_cast<std::size_t>(colors));
  bucket_q_.resize(static_cast<std::size_t>(colors));

  std::vector<std::int64_t> runs;
  runs.reserve(sample.size());
  for (std::int64_t k : sample) runs.push_back(anchor_at(x, k, ledger_, cost));
  sample_p_ = runs;
  sample_q_ = std::move(runs);
  std::sort(sample_p_.begin(), sample_p_.end(), [&](std::int64_t a, std::int64_t b) {
    return compare(window(a, true), window(b, true)) < 0;
  });
  std::sort(sample_q_.begin(), sample_q_.end(), [&](std::int64_t a, std::int64_t b) {
    return compare(window(a, false), window(b, false)) < 0;
  });
}

Window VertexData::window(std::int64_t x, bool forward) const {
  return forward ? forward_window(*s_, x, d_) : backward_window(*s_, x, d_);
}

Window VertexData::forward(std::int64_t k) const { return window(info_.at(k).x, true); }
Window VertexData::backward(std::int64_t k) const { return window(info_.at(k).x, false); }

std::strong_ordering VertexData::compare(const Window& s, const Window& t) const {
  const std::int64_t n = std::max<std::int64_t>(1, std::min(s.size(), t.size()));
  ledger_->charge(minfind_charge(n, 1.0, *cost_));
  return lex_compare_decoded(s, t);
}

std::int64_t VertexData::charged_ldcp(const Window& s, const Window& t) const {
  const std::int64_t n = std::max<std::int64_t>(1, std::min(s.size(), t.size()));
  ledger_->charge(minfind_charge(n, 1.0, *cost_));
  return ldcp(s, t);
}

std::int64_t VertexData::rank_of(std::int64_t x, bool forward) const {
  const auto& sorted = forward ? sample_p_ : sample_q_;
  const Window w = window(x, forward);
  // Number of sample windows <= w.
  std::size_t lo = 0;
  std::size_t hi = sorted.size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (compare(window(sorted[mid], forward), w) <= 0) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return static_cast<std::int64_t>(lo) + 1;
}

void VertexData::insert_side(const Side& side, std::int64_t k, std::int64_t x) {
  DynArray& order = *side.order;
  DynArray& lc = *side.ldcp;
  const Window w = window(x, side.forward);
  std::int64_t lo = 1;
  std::int64_t hi = order.size() + 1;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    const auto [km, xm] = order.index(mid);
    const auto c = compare(window(xm, side.forward), w);
    if (c < 0 || (c == 0 && km < k)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  const std::int64_t pos = lo;
  const std::int64_t n = order.size();
  const bool has_a = pos > 1;
  const bool has_b = pos <= n;
  DynArray::Entry a{};
  DynArray::Entry b{};
  if (has_a) a = order.index(pos - 1);
  if (has_b) b = order.index(pos);
  if (has_a && has_b) lc.erase(pos - 1);
  if (has_a) lc.insert(pos - 1, {a.first, charged_ldcp(window(a.second, side.forward), w)});
  if (has_b) lc.insert(pos, {k, charged_ldcp(w, window(b.second, side.forward))});
  order.insert(pos, {k, x});
}

void VertexData::erase_side(const Side& side, std::int64_t k) {
  DynArray& order = *side.order;
  DynArray& lc = *side.ldcp;
  const std::int64_t pos = order.locate(k);
  const std::int64_t n = order.size();
  const bool has_a = pos > 1;
  const bool has_b = pos < n;
  if (has_b) lc.erase(pos);
  if (has_a) lc.erase(pos - 1);
  if (has_a && has_b) {
    const auto a = order.index(pos - 1);
    const auto b = order.index(pos + 1);
    lc.insert(pos - 1, {a.first, charged_ldcp(window(a.second, side.forward), window(b.second, side.forward))});
  }
  order.erase(pos);
}

void VertexData::insert(std::int64_t k) {
  if (contains(k)) throw ParameterError("anchor " + std::to_string(k) + " already stored");
  const std::int64_t x = anchor_at(*x_, k, ledger_, *cost_);

  std::int64_t lo = 1;
  std::int64_t hi = by_key_.size() + 1;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (by_key_.index(mid).first < k) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  by_key_.insert(lo, {k, x});
  insert_side({&p_order_, &p_ldcp_, true}, k, x);
  insert_side({&q_order_, &q_ldcp_, false}, k, x);

  KeyInfo info;
  info.x = x;
  info.color = s_->color(x);
  info.rank_p = rank_of(x, true);
  info.rank_q = rank_of(x, false);
  if (info.color != Color::kWhite) {
    const int c = slot(info.color);
    ranks_[static_cast<std::size_t>(c)].insert(info.rank_p, info.rank_q);
    bucket_p_[static_cast<std::size_t>(c)][info.rank_p].insert(k);
    bucket_q_[static_cast<std::size_t>(c)][info.rank_q].insert(k);
  }
  info_.emplace(k, info);
}

void VertexData::erase(std::int64_t k) {
  auto it = info_.find(k);
  if (it == info_.end()) throw NotFoundError("anchor " + std::to_string(k) + " not stored");
  const KeyInfo info = it->second;
  by_key_.erase(by_key_.locate(k));
  erase_side({&p_order_, &p_ldcp_, true}, k);
  erase_side({&q_order_, &q_ldcp_, false}, k);
  if (info.color != Color::kWhite) {
    const auto c = static_cast<std::size_t>(slot(info.color));
    ranks_[c].erase(info.rank_p, info.rank_q);
    auto drop = [k](Buckets& b, std::int64_t rank) {
      auto bit = b.find(rank);
      bit->second.erase(k);
      if (bit->second.empty()) b.erase(bit);
    };
    drop(bucket_p_[c], info.rank_p);
    drop(bucket_q_[c], info.rank_q);
  }
  info_.erase(it);
}

std::int64_t VertexData::rank_points(Color c) const {
  if (c == Color::kWhite) return 0;
  return ranks_[static_cast<std::size_t>(slot(c))].total();
}

std::pair<std::int64_t, std::int64_t> VertexData::interval(const DynArray& lc, std::int64_t pos,
                                                           std::int64_t threshold) const {
  const std::int64_t n = lc.size() + 1;
  if (threshold <= 0) return {1, n};
  std::int64_t lo = 1;
  std::int64_t hi = pos;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (lc.range_min(mid, pos - 1) >= threshold) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  const std::int64_t left = lo;
  lo = pos;
  hi = n;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo + 1) / 2;
    if (lc.range_min(pos, mid - 1) >= threshold) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return {left, lo};
}

double VertexData::eval_cost() const {
  const auto r = static_cast<double>(size());
  const auto m = x_->size();
  const double lr = std::log2(r + 2.0);
  const double lu = std::log2(static_cast<double>(m + 1) + 2.0);
  return 4.0 * static_cast<double>(ceil_log2(size() + 1)) * lr + 2.0 * lr + lu * lu + 2.0 +
         2.0 * static_cast<double>(ceil_log2(m + 1)) * lr;
}

std::optional<Candidate> VertexData::check(std::int64_t d_tilde) {
  if (d_tilde < 1) throw ParameterError("d_tilde must be positive");
  const double unit = eval_cost();
  const std::int64_t space = (2 * d_ + 1) * std::max<std::int64_t>(1, size());
  std::optional<Candidate> found;

  ledger_->measure([&] {
    const std::int64_t n = size();
    if (n < 2) return;
    for (std::int64_t i = 1; i <= n && !found; ++i) {
      const auto entry = by_key_.index(i);
      const std::int64_t k = entry.first;
      const std::int64_t x = entry.second;
      const KeyInfo& me = info_.at(k);
      if (me.color == Color::kWhite) continue;
      const std::size_t opp = single_ ? 0 : static_cast<std::size_t>(1 - slot(me.color));
      auto partner_ok = [&](std::int64_t j) {
        if (j == k) return false;
        const Color cj = info_.at(j).color;
        if (cj == Color::kWhite) return false;
        return single_ || cj != me.color;
      };

      const std::int64_t pos_p = p_order_.locate(k);
      const std::int64_t pos_q = q_order_.locate(k);
      auto max_adjacent = [n](const DynArray& lc, std::int64_t pos) {
        std::int64_t best = 0;
        if (pos > 1) best = std::max(best, lc.index(pos - 1).second);
        if (pos < n) best = std::max(best, lc.index(pos).second);
        return best;
      };
      const std::int64_t max_p = max_adjacent(p_ldcp_, pos_p);
      const std::int64_t max_q = max_adjacent(q_ldcp_, pos_q);
      const std::int64_t run_len = s_->run(x).len;
      const std::int64_t end_x = s_->prefix(x);

      for (std::int64_t dp = 0; dp <= 2 * d_ && !found; ++dp) {
        const std::int64_t low = x - dp - 1;
        const bool clamped = low <= 0;
        const std::int64_t L = end_x - s_->prefix(low);
        if (L > max_q) break;
        const std::int64_t tau = d_tilde - L + run_len;
        if (tau <= max_p) {
          const auto iq = interval(q_ldcp_, pos_q, L);
          const auto ip = interval(p_ldcp_, pos_p, tau);
          const std::int64_t lq = iq.first, rq = iq.second;
          const std::int64_t lp = ip.first, rp = ip.second;
          const std::int64_t x1 = info_.at(p_order_.index(lp).first).rank_p + 1;
          const std::int64_t x2 = info_.at(p_order_.index(rp).first).rank_p - 1;
          const std::int64_t y1 = info_.at(q_order_.index(lq).first).rank_q + 1;
          const std::int64_t y2 = info_.at(q_order_.index(rq).first).rank_q - 1;
          std::int64_t count = ranks_[opp].count(x1, x2, y1, y2);
          if (single_ && x1 <= me.rank_p && me.rank_p <= x2 && y1 <= me.rank_q && me.rank_q <= y2) --count;

          auto inside = [&](std::int64_t j) {
            const std::int64_t pj = p_order_.locate(j);
            if (pj < lp || pj > rp) return false;
            const std::int64_t qj = q_order_.locate(j);
            return lq <= qj && qj <= rq;
          };
          std::optional<std::int64_t> partner;
          if (count > 0) {
            for (std::int64_t t = lp; t <= rp && !partner; ++t) {
              const std::int64_t j = p_order_.index(t).first;
              if (partner_ok(j) && inside(j)) partner = j;
            }
            if (!partner) throw InternalError("rank count without a partner in the intervals");
          } else {
            auto scan = [&](const Buckets& b, std::int64_t rank) {
              auto it = b.find(rank);
              if (it == b.end()) return;
              for (std::int64_t j : it->second) {
                if (!partner && partner_ok(j) && inside(j)) partner = j;
              }
            };
            scan(bucket_p_[opp], x1 - 1);
            scan(bucket_p_[opp], x2 + 1);
            scan(bucket_q_[opp], y1 - 1);
            scan(bucket_q_[opp], y2 + 1);
          }
          if (partner) {
            Candidate c;
            const std::int64_t xj = info_.at(*partner).x;
            const bool me_red = single_ || me.color == Color::kRed;
            c.k_red = me_red ? k : *partner;
            c.k_blue = me_red ? *partner : k;
            c.x_red = me_red ? x : xj;
            c.x_blue = me_red ? xj : x;
            c.d_prime = dp;
            c.L = L;
            c.d_tilde = d_tilde;
            found = c;
          }
        }
        if (clamped) break;
      }
    }
  });

  ledger_->charge(grover_charge(space, unit, *cost_));
  if (found) ledger_->charge(grover_charge(space, unit, *cost_));
  return found;
}

std::string VertexData::serialize() const {
  return by_key_.serialize() + "|" + p_order_.serialize() + "|" + p_ldcp_.serialize() + "|" +
         q_order_.serialize() + "|" + q_ldcp_.serialize();
}

// ---------------------------------------------------------------------------
// InnerSearch

InnerSearch::InnerSearch(const ConcatOracle& s, AnchorSet x, std::int64_t d, const SolverConfig& config,
                         std::uint64_t seed)
    : s_(&s), x_(std::move(x)), d_(d), config_(&config), seed_(seed) {
  const std::int64_t m = x_.size();
  if (m < 1) throw ParameterError("empty anchor set");
  if (config.mode == WalkMode::kFullSet) {
    r_ = m;
  } else {
    const double target = std::ceil(config.r_constant * std::pow(static_cast<double>(m), 2.0 / 3.0) - 1e-9);
    r_ = std::clamp<std::int64_t>(static_cast<std::int64_t>(target), 1, m);
  }
  const double ratio = static_cast<double>(r_) / static_cast<double>(m);
  delta_ = ratio * ratio;

  sample_.resize(static_cast<std::size_t>(m));
  std::iota(sample_.begin(), sample_.end(), 1);
  if (r_ < m) {
    std::mt19937_64 rng(seed_);
    std::shuffle(sample_.begin(), sample_.end(), rng);
    sample_.resize(static_cast<std::size_t>(r_));
    std::sort(sample_.begin(), sample_.end());
  }
}

WalkCosts InnerSearch::nominal() const {
  const auto m = static_cast<double>(x_.size());
  const auto r = static_cast<double>(r_);
  const auto d = static_cast<double>(d_);
  const double lambda = std::pow(std::log2(m + 2.0), config_->cost.log_power);
  return {r * std::sqrt(d) * lambda, std::sqrt(d) * lambda, std::sqrt(2.0 * d * r) * lambda};
}

void InnerSearch::build(std::span<const std::int64_t> subset) {
  vertex_ = std::make_unique<VertexData>(*s_, x_, d_, sample_, config_->cost, s_->single());
  for (std::int64_t k : subset) vertex_->insert(k);
}

std::optional<Candidate> InnerSearch::run(std::int64_t d_tilde, WalkOutcome* outcome) {
  QueryLedger& ledger = s_->ledger();
  WalkParams params;
  params.m = x_.size();
  params.r = r_;
  params.delta_bound = delta_;
  params.mode = config_->mode;
  params.seed = seed_ + static_cast<std::uint64_t>(d_tilde);
  params.step_budget = config_->step_budget;

  WalkHooks<Candidate> hooks;
  hooks.setup = [&](std::span<const std::int64_t> subset) {
    if (config_->mode != WalkMode::kFullSet) {
      build(subset);
      return;
    }
    if (!built_full_) {
      setup_charge_ = ledger.measure([&] { build(subset); });
      built_full_ = true;
    }
    ledger.charge(setup_charge_);
  };
  hooks.update = [&](std::int64_t out, std::int64_t in) {
    vertex_->erase(out);
    vertex_->insert(in);
  };
  hooks.check = [&] { return vertex_->check(d_tilde); };
  hooks.nominal = nominal();

  std::optional<Candidate> found;
  if (config_->cost.boost_whp) {
    const double c = ledger.measure([&] { found = mnrs_walk(params, hooks, ledger, outcome); });
    ledger.charge(with_whp(c, std::max<std::int64_t>(2, params.m), config_->cost.whp_log_base));
  } else {
    found = mnrs_walk(params, hooks, ledger, outcome);
  }
  return found;
}

// ---------------------------------------------------------------------------
// Answers

Alignment candidate_alignment(const Candidate& c, const ConcatOracle& s) {
  Alignment at;
  at.pos_a = s.prefix(c.x_red);
  at.pos_b = s.prefix(c.x_blue);
  if (!s.single()) at.pos_b -= s.a().decoded_length() + 1;
  return at;
}

namespace {

/// Characters matched walking left from (pa, pb) inclusive.
std::int64_t extend_back(const OracleHandle& a, const OracleHandle& b, std::int64_t pa, std::int64_t pb) {
  std::int64_t total = 0;
  while (pa >= 1 && pb >= 1) {
    const std::int64_t ia = a.inverse_prefix(pa);
    const std::int64_t ib = b.inverse_prefix(pb);
    if (a.query_run(ia).ch != b.query_run(ib).ch) break;
    const std::int64_t avail_a = pa - a.query_prefix(ia - 1);
    const std::int64_t avail_b = pb - b.query_prefix(ib - 1);
    const std::int64_t t = std::min(avail_a, avail_b);
    total += t;
    pa -= t;
    pb -= t;
    if (avail_a != avail_b) break;
  }
  return total;
}

std::int64_t extend_forward(const OracleHandle& a, const OracleHandle& b, std::int64_t pa, std::int64_t pb) {
  std::int64_t total = 0;
  while (pa <= a.decoded_length() && pb <= b.decoded_length()) {
    const std::int64_t ia = a.inverse_prefix(pa);
    const std::int64_t ib = b.inverse_prefix(pb);
    if (a.query_run(ia).ch != b.query_run(ib).ch) break;
    const std::int64_t avail_a = a.query_prefix(ia) - pa + 1;
    const std::int64_t avail_b = b.query_prefix(ib) - pb + 1;
    const std::int64_t t = std::min(avail_a, avail_b);
    total += t;
    pa += t;
    pb += t;
    if (avail_a != avail_b) break;
  }
  return total;
}

LcsAnswer extend(const Alignment& at, const OracleHandle& a, const OracleHandle& b) {
  const std::int64_t back = extend_back(a, b, at.pos_a, at.pos_b);
  const std::int64_t fwd = extend_forward(a, b, at.pos_a, at.pos_b);
  if (back < 1 || fwd < 1) throw InternalError("alignment does not match");
  LcsAnswer ans;
  ans.d_tilde = back + fwd - 1;
  ans.decoded_start_A = at.pos_a - back + 1;
  ans.decoded_start_B = at.pos_b - back + 1;
  ans.i_A = a.inverse_prefix(ans.decoded_start_A);
  ans.i_B = b.inverse_prefix(ans.decoded_start_B);
  ans.ell = a.inverse_prefix(ans.decoded_start_A + ans.d_tilde - 1) - ans.i_A + 1;
  return ans;
}

}  // namespace

LcsAnswer finalize_answer(const Alignment& at, const OracleHandle& a, const OracleHandle& b) {
  LcsAnswer ans = extend(at, a, b);
  if (!verify_candidate(ans, a.string(), b.string())) throw InternalError("answer failed verification");
  return ans;
}

bool verify_candidate(const LcsAnswer& ans, const RleString& a, const RleString& b) {
  if (ans.d_tilde < 1 || ans.ell < 1) return false;
  if (ans.i_A < 1 || ans.i_A > a.size() || ans.i_B < 1 || ans.i_B > b.size()) return false;
  const PrefixTable pa(a);
  const PrefixTable pb(b);
  if (!(pa[ans.i_A - 1] < ans.decoded_start_A && ans.decoded_start_A <= pa[ans.i_A])) return false;
  if (!(pb[ans.i_B - 1] < ans.decoded_start_B && ans.decoded_start_B <= pb[ans.i_B])) return false;
  if (ans.decoded_start_A + ans.d_tilde - 1 > a.decoded_length()) return false;
  if (ans.decoded_start_B + ans.d_tilde - 1 > b.decoded_length()) return false;
  const RleString sa = decoded_slice(a, ans.decoded_start_A, ans.d_tilde);
  const RleString sb = decoded_slice(b, ans.decoded_start_B, ans.d_tilde);
  return sa == sb && sa.size() == ans.ell;
}

std::vector<std::int64_t> d_levels(std::int64_t n) {
  std::vector<std::int64_t> out;
  if (n < 1) return out;
  std::int64_t p = 1;
  while (p * 2 <= n) p *= 2;
  for (; p >= 1; p /= 2) out.push_back(p);
  return out;
}

// ---------------------------------------------------------------------------
// Solver

namespace {

std::uint64_t level_seed(std::uint64_t seed, std::int64_t d) {
  std::uint64_t z = seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(d);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Solver {
 public:
  Solver(const ConcatOracle& s, const SolverConfig& config) : s_(s), config_(config) {
    const std::int64_t limit = s.single() ? s.a().size() : std::min(s.a().size(), s.b().size());
    levels_ = d_levels(limit);
  }

  /// Some alignment of a common (or repeated) substring of decoded length
  /// at least d_tilde, if one is found.
  std::optional<Alignment> hit(std::int64_t d_tilde) {
    for (std::int64_t d : levels_) {
      InnerSearch* level = get(d);
      if (!level) continue;
      if (auto c = level->run(d_tilde)) return candidate_alignment(*c, s_);
    }
    if (config_.small_fallback) return small(d_tilde);
    return std::nullopt;
  }

  /// Charges the full schedule of the outer search without executing it.
  void charge_schedule(std::int64_t upper) {
    const std::int64_t rounds = ceil_log2(upper + 1);
    for (std::int64_t t = 0; t < rounds; ++t) {
      for (std::int64_t d : levels_) {
        if (InnerSearch* level = get(d)) level->run(upper);
      }
      if (config_.small_fallback) charge_small();
    }
  }

 private:
  InnerSearch* get(std::int64_t d) {
    auto it = cache_.find(d);
    if (it != cache_.end()) return it->second.get();
    std::optional<AnchorSet> x;
    if (!joined_) joined_ = s_.joined();
    if (config_.anchor_override) {
      x = config_.anchor_override(*joined_, d);
    } else if (config_.scheme == AnchorScheme::kMinimizer && d >= config_.d_min) {
      x = build_minimizer(*joined_, d, config_.seed, config_.d_min);
    } else if (config_.scheme == AnchorScheme::kExhaustive || config_.exhaustive_fallback) {
      x = build_exhaustive(*joined_, d);
    }
    std::unique_ptr<InnerSearch> level;
    if (x && x->size() > 0) level = std::make_unique<InnerSearch>(s_, std::move(*x), d, config_, level_seed(config_.seed, d));
    InnerSearch* raw = level.get();
    cache_.emplace(d, std::move(level));
    return raw;
  }

  void load_runs() {
    if (loaded_) return;
    loaded_ = true;
    auto read = [](const OracleHandle& h, std::vector<Run>& runs, std::vector<std::int64_t>& prefix) {
      prefix.push_back(0);
      for (std::int64_t i = 1; i <= h.size(); ++i) {
        runs.push_back(h.query_run(i));
        prefix.push_back(prefix.back() + runs.back().len);
      }
    };
    read(s_.a(), runs_a_, pre_a_);
    if (!s_.single()) read(s_.b(), runs_b_, pre_b_);

    // Best single-run match and where it lies.
    if (s_.single()) {
      std::map<Symbol, std::pair<std::int64_t, std::int64_t>> top;  // symbol -> (longest run, index)
      for (std::size_t i = 0; i < runs_a_.size(); ++i) {
        const Run& r = runs_a_[i];
        auto [it, fresh] = top.try_emplace(r.ch, r.len, static_cast<std::int64_t>(i));
        if (!fresh) {
          const std::int64_t prev = it->second.second;
          const auto& best_run = runs_a_[static_cast<std::size_t>(prev)];
          const std::int64_t both = std::min(best_run.len, r.len);
          consider_single(both, pre_a_[static_cast<std::size_t>(prev)] + 1, pre_a_[i] + 1);
          if (r.len > best_run.len) it->second = {r.len, static_cast<std::int64_t>(i)};
        }
        consider_single(r.len - 1, pre_a_[i] + 1, pre_a_[i] + 2);
      }
    } else {
      std::map<Symbol, std::int64_t> best_b;  // symbol -> index of its longest run
      for (std::size_t j = 0; j < runs_b_.size(); ++j) {
        auto [it, fresh] = best_b.try_emplace(runs_b_[j].ch, static_cast<std::int64_t>(j));
        if (!fresh && runs_b_[static_cast<std::size_t>(it->second)].len < runs_b_[j].len) {
          it->second = static_cast<std::int64_t>(j);
        }
      }
      for (std::size_t i = 0; i < runs_a_.size(); ++i) {
        auto it = best_b.find(runs_a_[i].ch);
        if (it == best_b.end()) continue;
        const auto j = static_cast<std::size_t>(it->second);
        consider_single(std::min(runs_a_[i].len, runs_b_[j].len), pre_a_[i] + 1, pre_b_[j] + 1);
      }
    }
  }

  void consider_single(std::int64_t len, std::int64_t pa, std::int64_t pb) {
    if (len > single_len_) {
      single_len_ = len;
      single_at_ = {pa, pb};
    }
  }

  std::int64_t n_a() const { return s_.a().size(); }
  std::int64_t n_b() const { return s_.single() ? s_.a().size() : s_.b().size(); }

  void charge_small() {
    QueryLedger& ledger = s_.ledger();
    ledger.charge(minfind_charge(std::max<std::int64_t>(1, n_a()), static_cast<double>(ceil_sqrt(n_b())), config_.cost));
    const std::int64_t pairs = std::max<std::int64_t>(0, n_a() - 1) * std::max<std::int64_t>(0, n_b() - 1);
    if (pairs > 0) ledger.charge(grover_charge(pairs, 1.0, config_.cost));
  }

  std::optional<Alignment> small(std::int64_t d_tilde) {
    QueryLedger& ledger = s_.ledger();
    ledger.measure([&] { load_runs(); });
    ledger.charge(minfind_charge(std::max<std::int64_t>(1, n_a()), static_cast<double>(ceil_sqrt(n_b())), config_.cost));
    if (single_len_ >= d_tilde) return single_at_;

    const std::int64_t wa = n_a() - 1;
    const std::int64_t wb = n_b() - 1;
    if (wa < 1 || wb < 1) return std::nullopt;
    const std::vector<Run>& rb = s_.single() ? runs_a_ : runs_b_;
    const std::vector<std::int64_t>& pb = s_.single() ? pre_a_ : pre_b_;
    auto pred = [&](std::int64_t idx) {
      const auto i = static_cast<std::size_t>((idx - 1) / wb);
      const auto j = static_cast<std::size_t>((idx - 1) % wb);
      if (s_.single() && i == j) return false;
      const Run& a0 = runs_a_[i];
      const Run& a1 = runs_a_[i + 1];
      const Run& b0 = rb[j];
      const Run& b1 = rb[j + 1];
      if (a0.ch != b0.ch || a1.ch != b1.ch) return false;
      return std::min(a0.len, b0.len) + std::min(a1.len, b1.len) >= d_tilde;
    };
    auto found = grover_search(wa * wb, pred, 1.0, ledger, config_.cost);
    if (!found) return std::nullopt;
    const auto i = static_cast<std::size_t>((*found - 1) / wb);
    const auto j = static_cast<std::size_t>((*found - 1) % wb);
    return Alignment{pre_a_[i + 1], pb[j + 1]};
  }

  const ConcatOracle& s_;
  const SolverConfig& config_;
  std::vector<std::int64_t> levels_;
  std::map<std::int64_t, std::unique_ptr<InnerSearch>> cache_;
  std::optional<RleString> joined_;

  bool loaded_ = false;
  std::vector<Run> runs_a_, runs_b_;
  std::vector<std::int64_t> pre_a_, pre_b_;
  std::int64_t single_len_ = 0;
  Alignment single_at_;
};

std::optional<Alignment> outer_search(Solver& solver, std::int64_t upper) {
  std::int64_t lo = 0;
  std::int64_t hi = upper;
  std::optional<Alignment> best;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo + 1) / 2;
    if (auto at = solver.hit(mid)) {
      lo = mid;
      best = at;
    } else {
      hi = mid - 1;
    }
  }
  return best;
}

}  // namespace

std::optional<LcsAnswer> solve_lcs_rle_p(const OracleHandle& a, const OracleHandle& b, const SolverConfig& config) {
  config.cost.validate();
  const ConcatOracle s(a, b);
  Solver solver(s, config);
  const std::int64_t upper = std::min(a.decoded_length(), b.decoded_length());
  if (upper < 1) return std::nullopt;
  if (config.mode == WalkMode::kCostOnly) {
    solver.charge_schedule(upper);
    return std::nullopt;
  }
  auto at = outer_search(solver, upper);
  if (!at) return std::nullopt;
  return finalize_answer(*at, a, b);
}

std::optional<LcsAnswer> solve_lrs(const OracleHandle& a, const SolverConfig& config) {
  config.cost.validate();
  const ConcatOracle s(a);
  Solver solver(s, config);
  const std::int64_t upper = a.decoded_length() - 1;
  if (upper < 1) return std::nullopt;
  if (config.mode == WalkMode::kCostOnly) {
    solver.charge_schedule(upper);
    return std::nullopt;
  }
  auto at = outer_search(solver, upper);
  if (!at) return std::nullopt;
  LcsAnswer ans = finalize_answer(*at, a, a);
  if (ans.decoded_start_A == ans.decoded_start_B) throw InternalError("repeat found at a single start");
  return ans;
}

std::optional<Alignment> search_hit(const OracleHandle& a, const OracleHandle& b, const SolverConfig& config,
                                    std::int64_t d_tilde) {
  const ConcatOracle s(a, b);
  Solver solver(s, config);
  return solver.hit(d_tilde);
}

std::string answer_to_json(const std::optional<LcsAnswer>& ans, const QueryLedger& ledger) {
  nlohmann::ordered_json j;
  if (ans) {
    nlohmann::ordered_json r;
    r["i_A"] = ans->i_A;
    r["i_B"] = ans->i_B;
    r["ell"] = ans->ell;
    r["d_tilde"] = ans->d_tilde;
    r["decoded_start_A"] = ans->decoded_start_A;
    r["decoded_start_B"] = ans->decoded_start_B;
    j["result"] = r;
  } else {
    j["result"] = nullptr;
  }
  j["ledger"] = nlohmann::ordered_json::parse(ledger.to_json());
  return j.dump();
}

}  // namespace rlelcs
