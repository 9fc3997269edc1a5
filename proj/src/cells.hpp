#pragma once

// Private helpers shared by the assoc, algebra and io translation units.

#include <algorithm>
#include <numeric>
#include <vector>

#include "d4m/assoc.hpp"

namespace d4m::detail {

/// Reorders coords and a parallel payload into row-major order.
template <class T>
void sort_cells(std::vector<Coord>& coords, std::vector<T>& payload) {
  if (std::is_sorted(coords.begin(), coords.end())) return;
  std::vector<std::size_t> order(coords.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return coords[x] < coords[y]; });
  std::vector<Coord> c;
  std::vector<T> p;
  c.reserve(order.size());
  p.reserve(order.size());
  for (std::size_t t : order) {
    c.push_back(coords[t]);
    p.push_back(std::move(payload[t]));
  }
  coords = std::move(c);
  payload = std::move(p);
}

/// Row-major unique coords with numeric payload; zeros are dropped and the
/// result is condensed.
Assoc build_numeric(SortedKeySet rows, SortedKeySet cols, std::vector<Coord> coords,
                    std::vector<double> values);

/// Row-major unique coords with key payload; numeric zeros are dropped, the
/// value set is built and the result is condensed.
Assoc build_keyed(SortedKeySet rows, SortedKeySet cols, std::vector<Coord> coords,
                  std::vector<Key> values);

}  // namespace d4m::detail
