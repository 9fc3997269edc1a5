#include "d4m/key_set.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

namespace d4m {

bool is_strictly_increasing(std::span<const Key> keys) {
  return std::adjacent_find(keys.begin(), keys.end(),
                            [](const Key& a, const Key& b) { return !(a < b); }) == keys.end();
}

SortedKeySet SortedKeySet::from_sorted(std::vector<Key> keys) {
  if (!is_strictly_increasing(keys)) {
    throw std::invalid_argument("d4m::SortedKeySet: keys must be strictly increasing");
  }
  return SortedKeySet(std::move(keys));
}

SortedKeySet SortedKeySet::assume_sorted(std::vector<Key> keys) {
  assert(is_strictly_increasing(keys));
  return SortedKeySet(std::move(keys));
}

std::optional<std::size_t> SortedKeySet::find(const Key& key) const {
  auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  if (it == keys_.end() || *it != key) return std::nullopt;
  return static_cast<std::size_t>(it - keys_.begin());
}

SortedKeySet SortedKeySet::subset(std::span<const std::size_t> positions) const {
  std::vector<Key> out;
  out.reserve(positions.size());
  for (std::size_t p : positions) out.push_back(keys_.at(p));
  return from_sorted(std::move(out));
}

MadeSet make_set(std::span<const Key> raw) {
  std::vector<std::size_t> order(raw.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return raw[x] < raw[y]; });

  std::vector<Key> keys;
  std::vector<std::size_t> remap(raw.size());
  for (std::size_t t : order) {
    if (keys.empty() || keys.back() != raw[t]) keys.push_back(raw[t]);
    remap[t] = keys.size() - 1;
  }
  return {SortedKeySet::assume_sorted(std::move(keys)), std::move(remap)};
}

SetUnion sorted_union(const SortedKeySet& a, const SortedKeySet& b) {
  std::vector<Key> out;
  out.reserve(a.size() + b.size());
  std::vector<std::size_t> from_a(a.size());
  std::vector<std::size_t> from_b(b.size());

  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const auto c = a[i] <=> b[j];
    if (c <= 0) {
      from_a[i] = out.size();
      if (c == 0) from_b[j++] = out.size();
      out.push_back(a[i++]);
    } else {
      from_b[j] = out.size();
      out.push_back(b[j++]);
    }
  }
  for (; i < a.size(); ++i) {
    from_a[i] = out.size();
    out.push_back(a[i]);
  }
  for (; j < b.size(); ++j) {
    from_b[j] = out.size();
    out.push_back(b[j]);
  }
  return {SortedKeySet::assume_sorted(std::move(out)), std::move(from_a), std::move(from_b)};
}

SetIntersection sorted_intersect(const SortedKeySet& a, const SortedKeySet& b) {
  SetIntersection r;
  std::vector<Key> out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const auto c = a[i] <=> b[j];
    if (c < 0) {
      ++i;
    } else if (c > 0) {
      ++j;
    } else {
      out.push_back(a[i]);
      r.in_a.push_back(i++);
      r.in_b.push_back(j++);
    }
  }
  r.keys = SortedKeySet::assume_sorted(std::move(out));
  return r;
}

std::vector<std::optional<std::size_t>> sorted_map(std::span<const Key> queries,
                                                   const SortedKeySet& target) {
  std::vector<std::optional<std::size_t>> result;
  result.reserve(queries.size());
  std::size_t j = 0;
  for (std::size_t t = 0; t < queries.size(); ++t) {
    const Key& q = queries[t];
    if (t > 0 && q < queries[t - 1]) {
      throw std::invalid_argument("d4m::sorted_map: queries must be sorted ascending");
    }
    while (j < target.size() && target[j] < q) ++j;
    if (j < target.size() && target[j] == q) {
      result.emplace_back(j);
    } else {
      result.emplace_back(std::nullopt);
    }
  }
  return result;
}

std::vector<std::optional<std::size_t>> map_keys(std::span<const Key> queries,
                                                 const SortedKeySet& target) {
  std::vector<std::size_t> order(queries.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return queries[x] < queries[y]; });

  std::vector<Key> sorted;
  sorted.reserve(queries.size());
  for (std::size_t t : order) sorted.push_back(queries[t]);

  auto mapped = sorted_map(sorted, target);
  std::vector<std::optional<std::size_t>> result(queries.size());
  for (std::size_t t = 0; t < order.size(); ++t) result[order[t]] = mapped[t];
  return result;
}

}  // namespace d4m
