#include "rlelcs/dyn_array.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rlelcs/errors.hpp"
#include "rlelcs/query.hpp"

namespace rlelcs {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();

}  // namespace

void DynArray::charge() const {
  if (ledger_) ledger_->charge(std::log2(static_cast<double>(size()) + 2.0));
}

bool DynArray::higher(std::int32_t a, std::int32_t b) const {
  const Node& x = nodes_[static_cast<std::size_t>(a)];
  const Node& y = nodes_[static_cast<std::size_t>(b)];
  if (x.priority != y.priority) return x.priority > y.priority;
  return x.key < y.key;
}

void DynArray::pull(std::int32_t t) {
  Node& n = nodes_[static_cast<std::size_t>(t)];
  n.size = 1;
  n.min = n.value;
  for (std::int32_t c : {n.left, n.right}) {
    if (c == kNil) continue;
    const Node& ch = nodes_[static_cast<std::size_t>(c)];
    n.size += ch.size;
    n.min = std::min(n.min, ch.min);
    nodes_[static_cast<std::size_t>(c)].parent = t;
  }
}

std::int32_t DynArray::make_node(Entry e) {
  Node n{e.first, e.second, splitmix64(static_cast<std::uint64_t>(e.first)), 1, e.second, kNil, kNil, kNil};
  std::int32_t id;
  if (!free_.empty()) {
    id = free_.back();
    free_.pop_back();
    nodes_[static_cast<std::size_t>(id)] = n;
  } else {
    id = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back(n);
  }
  where_[e.first] = id;
  return id;
}

void DynArray::free_node(std::int32_t t) {
  where_.erase(nodes_[static_cast<std::size_t>(t)].key);
  free_.push_back(t);
}

void DynArray::split(std::int32_t t, std::int64_t count, std::int32_t& a, std::int32_t& b) {
  if (t == kNil) {
    a = b = kNil;
    return;
  }
  Node& n = nodes_[static_cast<std::size_t>(t)];
  const std::int64_t left_size = n.left == kNil ? 0 : nodes_[static_cast<std::size_t>(n.left)].size;
  if (count <= left_size) {
    std::int32_t l = kNil;
    split(n.left, count, a, l);
    nodes_[static_cast<std::size_t>(t)].left = l;
    pull(t);
    b = t;
  } else {
    std::int32_t r = kNil;
    split(n.right, count - left_size - 1, r, b);
    nodes_[static_cast<std::size_t>(t)].right = r;
    pull(t);
    a = t;
  }
  if (a != kNil) nodes_[static_cast<std::size_t>(a)].parent = kNil;
  if (b != kNil) nodes_[static_cast<std::size_t>(b)].parent = kNil;
}

std::int32_t DynArray::merge(std::int32_t a, std::int32_t b) {
  if (a == kNil) return b;
  if (b == kNil) return a;
  if (higher(a, b)) {
    nodes_[static_cast<std::size_t>(a)].right = merge(nodes_[static_cast<std::size_t>(a)].right, b);
    pull(a);
    return a;
  }
  nodes_[static_cast<std::size_t>(b)].left = merge(a, nodes_[static_cast<std::size_t>(b)].left);
  pull(b);
  return b;
}

std::int32_t DynArray::node_at(std::int64_t i) const {
  if (i < 1 || i > size()) {
    throw RangeError("position " + std::to_string(i) + " outside [1, " + std::to_string(size()) + "]");
  }
  std::int32_t t = root_;
  while (true) {
    const Node& n = nodes_[static_cast<std::size_t>(t)];
    const std::int64_t left_size = n.left == kNil ? 0 : nodes_[static_cast<std::size_t>(n.left)].size;
    if (i <= left_size) {
      t = n.left;
    } else if (i == left_size + 1) {
      return t;
    } else {
      i -= left_size + 1;
      t = n.right;
    }
  }
}

DynArray::Entry DynArray::index(std::int64_t i) const {
  charge();
  const Node& n = nodes_[static_cast<std::size_t>(node_at(i))];
  return {n.key, n.value};
}

void DynArray::insert(std::int64_t i, Entry e) {
  if (i < 1 || i > size() + 1) {
    throw RangeError("insert position " + std::to_string(i) + " outside [1, " + std::to_string(size() + 1) + "]");
  }
  if (contains(e.first)) throw ParameterError("duplicate key " + std::to_string(e.first));
  charge();
  std::int32_t a = kNil;
  std::int32_t b = kNil;
  split(root_, i - 1, a, b);
  root_ = merge(merge(a, make_node(e)), b);
  nodes_[static_cast<std::size_t>(root_)].parent = kNil;
}

DynArray::Entry DynArray::erase(std::int64_t i) {
  if (i < 1 || i > size()) {
    throw RangeError("erase position " + std::to_string(i) + " outside [1, " + std::to_string(size()) + "]");
  }
  charge();
  std::int32_t a = kNil;
  std::int32_t mid = kNil;
  split(root_, i - 1, a, mid);
  std::int32_t rest = kNil;
  split(mid, 1, mid, rest);
  const Node& n = nodes_[static_cast<std::size_t>(mid)];
  Entry e{n.key, n.value};
  free_node(mid);
  root_ = merge(a, rest);
  if (root_ != kNil) nodes_[static_cast<std::size_t>(root_)].parent = kNil;
  return e;
}

std::int64_t DynArray::locate(std::int64_t key) const {
  auto it = where_.find(key);
  if (it == where_.end()) throw NotFoundError("key " + std::to_string(key) + " not stored");
  charge();
  std::int32_t t = it->second;
  const Node& n0 = nodes_[static_cast<std::size_t>(t)];
  std::int64_t pos = (n0.left == kNil ? 0 : nodes_[static_cast<std::size_t>(n0.left)].size) + 1;
  while (nodes_[static_cast<std::size_t>(t)].parent != kNil) {
    const std::int32_t p = nodes_[static_cast<std::size_t>(t)].parent;
    const Node& pn = nodes_[static_cast<std::size_t>(p)];
    if (pn.right == t) pos += (pn.left == kNil ? 0 : nodes_[static_cast<std::size_t>(pn.left)].size) + 1;
    t = p;
  }
  return pos;
}

std::int64_t DynArray::range_min(std::int64_t a, std::int64_t b) const {
  if (a < 1 || b > size() || a > b) {
    throw RangeError("range [" + std::to_string(a) + ", " + std::to_string(b) + "] invalid for size " +
                     std::to_string(size()));
  }
  charge();
  // Walk down collecting whole subtrees inside [lo, hi] of the node's span.
  std::int64_t best = kInf;
  struct Frame {
    std::int32_t t;
    std::int64_t offset;  // entries before this subtree
  };
  std::vector<Frame> stack{{root_, 0}};
  while (!stack.empty()) {
    auto [t, offset] = stack.back();
    stack.pop_back();
    if (t == kNil) continue;
    const Node& n = nodes_[static_cast<std::size_t>(t)];
    const std::int64_t lo = offset + 1;
    const std::int64_t hi = offset + n.size;
    if (hi < a || lo > b) continue;
    if (a <= lo && hi <= b) {
      best = std::min(best, n.min);
      continue;
    }
    const std::int64_t left_size = n.left == kNil ? 0 : nodes_[static_cast<std::size_t>(n.left)].size;
    const std::int64_t here = offset + left_size + 1;
    if (a <= here && here <= b) best = std::min(best, n.value);
    stack.push_back({n.left, offset});
    stack.push_back({n.right, here});
  }
  return best;
}

void DynArray::set_value(std::int64_t i, std::int64_t value) {
  charge();
  std::int32_t t = node_at(i);
  nodes_[static_cast<std::size_t>(t)].value = value;
  while (t != kNil) {
    pull(t);
    t = nodes_[static_cast<std::size_t>(t)].parent;
  }
}

std::vector<DynArray::Entry> DynArray::to_vector() const {
  std::vector<Entry> out;
  out.reserve(static_cast<std::size_t>(size()));
  std::vector<std::int32_t> stack;
  std::int32_t t = root_;
  while (t != kNil || !stack.empty()) {
    while (t != kNil) {
      stack.push_back(t);
      t = nodes_[static_cast<std::size_t>(t)].left;
    }
    t = stack.back();
    stack.pop_back();
    out.emplace_back(nodes_[static_cast<std::size_t>(t)].key, nodes_[static_cast<std::size_t>(t)].value);
    t = nodes_[static_cast<std::size_t>(t)].right;
  }
  return out;
}

void DynArray::serialize_into(std::int32_t t, std::string& out) const {
  if (t == kNil) {
    out += '.';
    return;
  }
  const Node& n = nodes_[static_cast<std::size_t>(t)];
  out += '(';
  out += std::to_string(n.key) + ':' + std::to_string(n.value) + ':' + std::to_string(n.size) + ':' +
         std::to_string(n.min) + ' ';
  serialize_into(n.left, out);
  out += ' ';
  serialize_into(n.right, out);
  out += ')';
}

std::string DynArray::serialize() const {
  std::string out;
  serialize_into(root_, out);
  return out;
}

}  // namespace rlelcs
