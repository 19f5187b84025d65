#include "rlelcs/reductions.hpp"

#include "rlelcs/errors.hpp"

namespace rlelcs {

int ParityInstance::parity() const {
  int p = 0;
  for (int b : bits) p ^= b & 1;
  return p;
}

std::string ParityInstance::to_string() const {
  std::string s;
  for (int b : bits) s += b ? '1' : '0';
  return s;
}

ParityInstance ParityInstance::from_string(std::string_view s) {
  ParityInstance p;
  for (char c : s) {
    if (c != '0' && c != '1') throw ParameterError("bit strings use only 0 and 1");
    p.bits.push_back(c - '0');
  }
  if (p.bits.empty()) throw ParameterError("empty bit string");
  return p;
}

namespace {

std::vector<Run> alternating(const ParityInstance& b, std::int64_t scale) {
  std::vector<Run> runs;
  for (std::size_t i = 0; i < b.bits.size(); ++i) {
    runs.push_back({static_cast<Symbol>(i % 2 == 0 ? 'a' : 'b'), scale * b.bits[i] + 2});
  }
  return runs;
}

}  // namespace

RleString gadget_dl(const ParityInstance& b) {
  if (b.bits.empty()) throw ParameterError("empty parity instance");
  return RleString(alternating(b, 1));
}

ParityRun parity_via_dl(const ParityInstance& b, const DlSolver& solver) {
  const RleString s = gadget_dl(b);
  ParityRun out;
  out.parity = static_cast<int>(solver(s, s) % 2);
  out.calls = 1;
  return out;
}

RleString gadget_el(const ParityInstance& b, std::int64_t k, Symbol sep) {
  if (b.bits.empty()) throw ParameterError("empty parity instance");
  if (k < 1) throw ParameterError("k must be positive");
  if (sep != kPadSymbol && sep != kAltSeparator) throw ParameterError("separator must be '@' or '#'");
  std::vector<Run> runs = alternating(b, 2);
  runs.push_back({sep, 1});
  runs.push_back({'c', k});
  return RleString(std::move(runs));
}

ParityRun parity_via_el(const ParityInstance& b, const ElSolver& solver) {
  // A single bit gives one run on both sides of the threshold; a leading
  // zero keeps the parity and separates the two answers.
  ParityInstance work = b;
  if (work.size() == 1) work.bits.insert(work.bits.begin(), 0);
  const std::int64_t n = work.size();

  ParityRun out;
  auto above = [&](std::int64_t k) {
    ++out.calls;
    const std::int64_t e = solver(gadget_el(work, k, kPadSymbol), gadget_el(work, k, kAltSeparator));
    if (e == 1) return true;
    if (e == n) return false;
    throw ReductionError("solver returned encoded length " + std::to_string(e) + " at k=" + std::to_string(k) +
                         ", expected 1 or " + std::to_string(n));
  };

  // Odd k = 2j + 1 never ties with the even decoded length of S_B.
  // j = 2n gives k = 4n + 1, which always lies above.
  std::int64_t lo = n;
  std::int64_t hi = 2 * n;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (above(2 * mid + 1)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  out.k_prime = 2 * lo + 1;
  out.parity = static_cast<int>(((out.k_prime >> 1) & 1) ^ (n & 1));
  return out;
}

RleString pad_interleave(const RleString& a) {
  if (a.contains_symbol(kPadSymbol)) throw ParameterError("'@' occurs in the input");
  std::vector<Run> runs;
  runs.reserve(static_cast<std::size_t>(2 * a.decoded_length()));
  for (const Run& r : a.runs()) {
    for (std::int64_t t = 0; t < r.len; ++t) {
      runs.push_back({r.ch, 1});
      runs.push_back({kPadSymbol, 1});
    }
  }
  return RleString(std::move(runs));
}

}  // namespace rlelcs
