#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "d4m/key.hpp"

namespace d4m {

/// Strictly increasing, duplicate-free sequence of keys.
///
/// Positions into a set are 0-based. A set is immutable once built; the
/// sorted-set primitives below produce new sets plus position maps.
class SortedKeySet {
 public:
  using const_iterator = std::vector<Key>::const_iterator;

  SortedKeySet() = default;

  /// Throws std::invalid_argument unless `keys` is strictly increasing.
  static SortedKeySet from_sorted(std::vector<Key> keys);
  /// Unchecked variant for callers that already hold a strictly increasing
  /// sequence (asserted in debug builds).
  static SortedKeySet assume_sorted(std::vector<Key> keys);

  [[nodiscard]] std::size_t size() const noexcept { return keys_.size(); }
  [[nodiscard]] bool empty() const noexcept { return keys_.empty(); }
  [[nodiscard]] const Key& operator[](std::size_t pos) const { return keys_[pos]; }
  [[nodiscard]] const_iterator begin() const noexcept { return keys_.begin(); }
  [[nodiscard]] const_iterator end() const noexcept { return keys_.end(); }
  [[nodiscard]] std::span<const Key> keys() const noexcept { return keys_; }

  /// Binary search; position of `key` or nullopt.
  [[nodiscard]] std::optional<std::size_t> find(const Key& key) const;

  /// Returns the subset at the given strictly increasing positions.
  [[nodiscard]] SortedKeySet subset(std::span<const std::size_t> positions) const;

  friend bool operator==(const SortedKeySet&, const SortedKeySet&) = default;

 private:
  explicit SortedKeySet(std::vector<Key> keys) : keys_(std::move(keys)) {}
  std::vector<Key> keys_;
};

[[nodiscard]] bool is_strictly_increasing(std::span<const Key> keys);

struct MadeSet {
  SortedKeySet set;
  std::vector<std::size_t> remap;  ///< set[remap[t]] == raw[t]
};

/// Sort and deduplicate arbitrary keys, remembering where each input landed.
MadeSet make_set(std::span<const Key> raw);

struct SetUnion {
  SortedKeySet keys;
  std::vector<std::size_t> from_a;  ///< keys[from_a[t]] == a[t]
  std::vector<std::size_t> from_b;
};

struct SetIntersection {
  SortedKeySet keys;
  std::vector<std::size_t> in_a;  ///< a[in_a[t]] == keys[t]
  std::vector<std::size_t> in_b;
};

/// Single forward merge over both inputs.
SetUnion sorted_union(const SortedKeySet& a, const SortedKeySet& b);

/// Single forward merge over both inputs.
SetIntersection sorted_intersect(const SortedKeySet& a, const SortedKeySet& b);

/// Resolves ascending `queries` to positions in `target` in one merge pass.
/// Repeated queries are allowed. Throws std::invalid_argument when the
/// queries are not in non-decreasing order.
std::vector<std::optional<std::size_t>> sorted_map(std::span<const Key> queries,
                                                   const SortedKeySet& target);

/// sorted_map for queries in arbitrary order: sorts a permutation, maps, and
/// returns results in the caller's original order.
std::vector<std::optional<std::size_t>> map_keys(std::span<const Key> queries,
                                                 const SortedKeySet& target);

}  // namespace d4m
