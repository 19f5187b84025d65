#pragma once

// Ordered (key, value) array with positional insert/delete, key lookup and
// range minimum. Backed by a treap whose priorities are a fixed hash of the
// key, so the tree shape depends only on the current contents and their
// order, not on the history of operations.

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rlelcs {

class QueryLedger;

class DynArray {
 public:
  using Entry = std::pair<std::int64_t, std::int64_t>;  // (key, value)

  explicit DynArray(QueryLedger* ledger = nullptr) : ledger_(ledger) {}

  void set_ledger(QueryLedger* ledger) noexcept { ledger_ = ledger; }

  std::int64_t size() const noexcept { return root_ == kNil ? 0 : nodes_[root_].size; }
  bool empty() const noexcept { return root_ == kNil; }
  bool contains(std::int64_t key) const { return where_.count(key) != 0; }

  // Positions are 1-based.
  Entry index(std::int64_t i) const;
  /// Insert so that the new entry lands at position i in [1, size + 1].
  void insert(std::int64_t i, Entry e);
  Entry erase(std::int64_t i);
  std::int64_t locate(std::int64_t key) const;
  /// Minimum value over positions [a, b].
  std::int64_t range_min(std::int64_t a, std::int64_t b) const;
  /// Replace the value at position i.
  void set_value(std::int64_t i, std::int64_t value);

  std::vector<Entry> to_vector() const;
  /// Pre-order dump "(key:value:size:min ...)" of the tree.
  std::string serialize() const;

 private:
  static constexpr std::int32_t kNil = -1;

  struct Node {
    std::int64_t key;
    std::int64_t value;
    std::uint64_t priority;
    std::int64_t size;
    std::int64_t min;
    std::int32_t left;
    std::int32_t right;
    std::int32_t parent;
  };

  void charge() const;
  void pull(std::int32_t t);
  std::int32_t make_node(Entry e);
  void free_node(std::int32_t t);
  /// First `count` entries into a, the rest into b.
  void split(std::int32_t t, std::int64_t count, std::int32_t& a, std::int32_t& b);
  std::int32_t merge(std::int32_t a, std::int32_t b);
  std::int32_t node_at(std::int64_t i) const;
  bool higher(std::int32_t a, std::int32_t b) const;
  void serialize_into(std::int32_t t, std::string& out) const;

  std::vector<Node> nodes_;
  std::vector<std::int32_t> free_;
  std::unordered_map<std::int64_t, std::int32_t> where_;
  std::int32_t root_ = kNil;
  QueryLedger* ledger_ = nullptr;
};

}  // namespace rlelcs
