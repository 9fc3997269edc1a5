#include "d4m/assoc.hpp"

#include <algorithm>
#include <regex>
#include <sstream>

#include "cells.hpp"

namespace d4m {

namespace {

bool is_zero(const Key& k) { return k.is_number() && k.number() == 0.0; }

Key merge_keyed(const Key& acc, const Key& next, Collision policy) {
  switch (policy) {
    case Collision::min:
      return std::min(acc, next);
    case Collision::last:
      return next;
    case Collision::sum:
      if (acc.is_text() || next.is_text()) {
        throw std::invalid_argument("d4m::Assoc: sum collision on text values");
      }
      return Key(acc.number() + next.number());
    case Collision::automatic:
    case Collision::max:
      break;
  }
  return std::max(acc, next);
}

double merge_numeric(double acc, double next, Collision policy) {
  switch (policy) {
    case Collision::min:
      return std::min(acc, next);
    case Collision::max:
      return std::max(acc, next);
    case Collision::last:
      return next;
    case Collision::automatic:
    case Collision::sum:
      break;
  }
  return acc + next;
}

std::vector<char> position_mask(std::span<const std::size_t> positions, std::size_t size,
                                 const char* what) {
  std::vector<char> mask(size, 0);
  for (std::size_t p : positions) {
    if (p >= size) {
      throw std::out_of_range(std::string("d4m::select_positions: ") + what +
                              " position out of range");
    }
    mask[p] = 1;
  }
  return mask;
}

std::regex compile(std::string_view pattern) {
  try {
    return std::regex(pattern.begin(), pattern.end(), std::regex::ECMAScript);
  } catch (const std::regex_error& e) {
    throw PatternError("d4m::select_regex: invalid pattern '" + std::string(pattern) +
                       "': " + e.what());
  }
}

std::vector<std::size_t> matching_positions(const SortedKeySet& keys,
                                            std::optional<std::string_view> pattern) {
  std::vector<std::size_t> out;
  if (!pattern) {
    out.resize(keys.size());
    std::iota(out.begin(), out.end(), std::size_t{0});
    return out;
  }
  const std::regex re = compile(*pattern);
  for (std::size_t p = 0; p < keys.size(); ++p) {
    if (std::regex_search(keys[p].str(), re)) out.push_back(p);
  }
  return out;
}

}  // namespace

namespace detail {

Assoc build_numeric(SortedKeySet rows, SortedKeySet cols, std::vector<Coord> coords,
                    std::vector<double> values) {
  std::size_t kept = 0;
  for (std::size_t t = 0; t < coords.size(); ++t) {
    if (values[t] == 0.0) continue;
    coords[kept] = coords[t];
    values[kept] = values[t];
    ++kept;
  }
  coords.resize(kept);
  values.resize(kept);
  return condense(Assoc::from_parts(std::move(rows), std::move(cols), std::move(coords),
                                    NumericValues{std::move(values)}));
}

Assoc build_keyed(SortedKeySet rows, SortedKeySet cols, std::vector<Coord> coords,
                  std::vector<Key> values) {
  std::size_t kept = 0;
  for (std::size_t t = 0; t < coords.size(); ++t) {
    if (is_zero(values[t])) continue;
    coords[kept] = coords[t];
    if (kept != t) values[kept] = std::move(values[t]);
    ++kept;
  }
  coords.resize(kept);
  values.resize(kept);
  auto made = make_set(values);
  return condense(Assoc::from_parts(std::move(rows), std::move(cols), std::move(coords),
                                    KeyedValues{std::move(made.set), std::move(made.remap)}));
}

}  // namespace detail

Assoc Assoc::from_triples(std::span<const Key> rows, std::span<const Key> cols,
                          std::span<const Key> vals, Collision collision) {
  if (rows.size() != cols.size() || rows.size() != vals.size()) {
    throw std::invalid_argument("d4m::Assoc::from_triples: triple sequences differ in length");
  }
  auto row_set = make_set(rows);
  auto col_set = make_set(cols);

  // Zero values are absent; they never take part in a collision.
  std::vector<std::size_t> live;
  live.reserve(vals.size());
  bool keyed = false;
  for (std::size_t t = 0; t < vals.size(); ++t) {
    if (is_zero(vals[t])) continue;
    live.push_back(t);
    keyed = keyed || vals[t].is_text();
  }
  std::stable_sort(live.begin(), live.end(), [&](std::size_t x, std::size_t y) {
    return Coord{row_set.remap[x], col_set.remap[x]} < Coord{row_set.remap[y], col_set.remap[y]};
  });

  std::vector<Coord> coords;
  std::vector<Key> merged_keys;
  std::vector<double> merged_nums;
  for (std::size_t t : live) {
    const Coord c{row_set.remap[t], col_set.remap[t]};
    const bool repeat = !coords.empty() && coords.back() == c;
    if (keyed) {
      if (repeat) {
        merged_keys.back() = merge_keyed(merged_keys.back(), vals[t], collision);
      } else {
        coords.push_back(c);
        merged_keys.push_back(vals[t]);
      }
    } else {
      if (repeat) {
        merged_nums.back() = merge_numeric(merged_nums.back(), vals[t].number(), collision);
      } else {
        coords.push_back(c);
        merged_nums.push_back(vals[t].number());
      }
    }
  }

  if (keyed) {
    return detail::build_keyed(std::move(row_set.set), std::move(col_set.set), std::move(coords),
                               std::move(merged_keys));
  }
  return detail::build_numeric(std::move(row_set.set), std::move(col_set.set), std::move(coords),
                               std::move(merged_nums));
}

Assoc Assoc::from_parts(SortedKeySet rows, SortedKeySet cols, std::vector<Coord> coords,
                        ValueStore store) {
  Assoc a;
  a.rows_ = std::move(rows);
  a.cols_ = std::move(cols);
  a.coords_ = std::move(coords);
  a.store_ = std::move(store);

  auto fail = [](const std::string& why) {
    throw std::invalid_argument("d4m::Assoc::from_parts: " + why);
  };
  for (std::size_t t = 0; t < a.coords_.size(); ++t) {
    const Coord& c = a.coords_[t];
    if (c.row >= a.rows_.size() || c.col >= a.cols_.size()) fail("cell out of bounds");
    if (t > 0 && !(a.coords_[t - 1] < c)) fail("cells not strictly row-major");
  }
  if (const auto* num = std::get_if<NumericValues>(&a.store_)) {
    if (num->values.size() != a.coords_.size()) fail("value count mismatch");
    if (std::find(num->values.begin(), num->values.end(), 0.0) != num->values.end()) {
      fail("explicit zero value");
    }
  } else {
    const auto& keyed = std::get<KeyedValues>(a.store_);
    if (keyed.refs.size() != a.coords_.size()) fail("value count mismatch");
    for (std::size_t r : keyed.refs) {
      if (r >= keyed.keys.size()) fail("value reference out of bounds");
      if (is_zero(keyed.keys[r])) fail("explicit zero value");
    }
  }
  return a;
}

bool Assoc::is_text_valued() const {
  const auto* keyed = std::get_if<KeyedValues>(&store_);
  if (keyed == nullptr) return false;
  return std::any_of(keyed->keys.begin(), keyed->keys.end(),
                     [](const Key& k) { return k.is_text(); });
}

Key Assoc::value(std::size_t cell) const {
  if (const auto* num = std::get_if<NumericValues>(&store_)) return Key(num->values.at(cell));
  const auto& keyed = std::get<KeyedValues>(store_);
  return keyed.keys[keyed.refs.at(cell)];
}

double Assoc::numeric_value(std::size_t cell) const {
  if (const auto* num = std::get_if<NumericValues>(&store_)) return num->values.at(cell);
  const auto& keyed = std::get<KeyedValues>(store_);
  const Key& k = keyed.keys[keyed.refs.at(cell)];
  return k.is_number() ? k.number() : 1.0;
}

std::optional<Key> Assoc::cell_value(const Key& row, const Key& col) const {
  const auto r = rows_.find(row);
  const auto c = cols_.find(col);
  if (!r || !c) return std::nullopt;
  const auto it = std::lower_bound(coords_.begin(), coords_.end(), Coord{*r, *c});
  if (it == coords_.end() || *it != Coord{*r, *c}) return std::nullopt;
  return value(static_cast<std::size_t>(it - coords_.begin()));
}

Triples Assoc::find_triples() const {
  Triples t;
  t.rows.reserve(nnz());
  t.cols.reserve(nnz());
  t.vals.reserve(nnz());
  for (std::size_t n = 0; n < coords_.size(); ++n) {
    t.rows.push_back(rows_[coords_[n].row]);
    t.cols.push_back(cols_[coords_[n].col]);
    t.vals.push_back(value(n));
  }
  return t;
}

std::string invariant_violation(const Assoc& a) {
  std::ostringstream why;
  if (!is_strictly_increasing(a.rows().keys())) return "row keys not strictly increasing";
  if (!is_strictly_increasing(a.cols().keys())) return "col keys not strictly increasing";

  std::vector<char> row_used(a.rows().size(), 0);
  std::vector<char> col_used(a.cols().size(), 0);
  const auto coords = a.coords();
  for (std::size_t t = 0; t < coords.size(); ++t) {
    if (coords[t].row >= a.rows().size() || coords[t].col >= a.cols().size()) {
      why << "cell " << t << " out of bounds";
      return why.str();
    }
    if (t > 0 && !(coords[t - 1] < coords[t])) {
      why << "cell " << t << " breaks row-major order";
      return why.str();
    }
    row_used[coords[t].row] = 1;
    col_used[coords[t].col] = 1;
  }
  if (std::find(row_used.begin(), row_used.end(), 0) != row_used.end()) return "unreferenced row";
  if (std::find(col_used.begin(), col_used.end(), 0) != col_used.end()) return "unreferenced col";

  if (const auto* num = std::get_if<NumericValues>(&a.store())) {
    if (num->values.size() != coords.size()) return "value count mismatch";
    for (double v : num->values) {
      if (v == 0.0) return "explicit zero";
    }
    return {};
  }
  const auto& keyed = std::get<KeyedValues>(a.store());
  if (!is_strictly_increasing(keyed.keys.keys())) return "value keys not strictly increasing";
  if (keyed.refs.size() != coords.size()) return "value count mismatch";
  std::vector<char> val_used(keyed.keys.size(), 0);
  for (std::size_t r : keyed.refs) {
    if (r >= keyed.keys.size()) return "value reference out of bounds";
    val_used[r] = 1;
  }
  if (std::find(val_used.begin(), val_used.end(), 0) != val_used.end()) return "unreferenced value";
  for (const Key& k : keyed.keys) {
    if (is_zero(k)) return "explicit zero";
  }
  return {};
}

Assoc condense(const Assoc& a) {
  const auto coords = a.coords();
  std::vector<std::size_t> row_map(a.rows().size(), 0);
  std::vector<std::size_t> col_map(a.cols().size(), 0);
  for (const Coord& c : coords) {
    row_map[c.row] = 1;
    col_map[c.col] = 1;
  }
  // Turn the usage flags into kept positions and new indices.
  auto compact = [](std::vector<std::size_t>& map) {
    std::vector<std::size_t> kept;
    for (std::size_t p = 0; p < map.size(); ++p) {
      if (map[p] != 0) {
        map[p] = kept.size();
        kept.push_back(p);
      }
    }
    return kept;
  };
  const auto kept_rows = compact(row_map);
  const auto kept_cols = compact(col_map);

  std::vector<Coord> new_coords;
  new_coords.reserve(coords.size());
  for (const Coord& c : coords) new_coords.push_back({row_map[c.row], col_map[c.col]});

  ValueStore store;
  if (const auto* num = std::get_if<NumericValues>(&a.store())) {
    store = *num;
  } else {
    const auto& keyed = std::get<KeyedValues>(a.store());
    std::vector<std::size_t> val_map(keyed.keys.size(), 0);
    for (std::size_t r : keyed.refs) val_map[r] = 1;
    const auto kept_vals = compact(val_map);
    KeyedValues out;
    out.keys = keyed.keys.subset(kept_vals);
    out.refs.reserve(keyed.refs.size());
    for (std::size_t r : keyed.refs) out.refs.push_back(val_map[r]);
    store = std::move(out);
  }
  return Assoc::from_parts(a.rows().subset(kept_rows), a.cols().subset(kept_cols),
                           std::move(new_coords), std::move(store));
}

Assoc select_positions(const Assoc& a, std::span<const std::size_t> rows,
                       std::span<const std::size_t> cols) {
  const auto row_mask = position_mask(rows, a.rows().size(), "row");
  const auto col_mask = position_mask(cols, a.cols().size(), "col");

  const auto coords = a.coords();
  std::vector<Coord> kept_coords;
  std::vector<std::size_t> kept_cells;
  for (std::size_t t = 0; t < coords.size(); ++t) {
    if (row_mask[coords[t].row] && col_mask[coords[t].col]) {
      kept_coords.push_back(coords[t]);
      kept_cells.push_back(t);
    }
  }

  ValueStore store;
  if (const auto* num = std::get_if<NumericValues>(&a.store())) {
    NumericValues out;
    for (std::size_t t : kept_cells) out.values.push_back(num->values[t]);
    store = std::move(out);
  } else {
    const auto& keyed = std::get<KeyedValues>(a.store());
    KeyedValues out{keyed.keys, {}};
    for (std::size_t t : kept_cells) out.refs.push_back(keyed.refs[t]);
    store = std::move(out);
  }
  return condense(Assoc::from_parts(a.rows(), a.cols(), std::move(kept_coords), std::move(store)));
}

Assoc select_keys(const Assoc& a, std::span<const Key> rows, std::span<const Key> cols) {
  auto present = [](const std::vector<std::optional<std::size_t>>& mapped) {
    std::vector<std::size_t> out;
    for (const auto& p : mapped) {
      if (p) out.push_back(*p);
    }
    return out;
  };
  const auto row_pos = present(map_keys(rows, a.rows()));
  const auto col_pos = present(map_keys(cols, a.cols()));
  return select_positions(a, row_pos, col_pos);
}

Assoc select_regex(const Assoc& a, std::optional<std::string_view> row_pattern,
                   std::optional<std::string_view> col_pattern) {
  const auto row_pos = matching_positions(a.rows(), row_pattern);
  const auto col_pos = matching_positions(a.cols(), col_pattern);
  return select_positions(a, row_pos, col_pos);
}

Assoc transpose(const Assoc& a) {
  std::vector<Coord> coords;
  coords.reserve(a.nnz());
  for (const Coord& c : a.coords()) coords.push_back({c.col, c.row});

  if (const auto* num = std::get_if<NumericValues>(&a.store())) {
    auto values = num->values;
    detail::sort_cells(coords, values);
    return Assoc::from_parts(a.cols(), a.rows(), std::move(coords),
                             NumericValues{std::move(values)});
  }
  const auto& keyed = std::get<KeyedValues>(a.store());
  auto refs = keyed.refs;
  detail::sort_cells(coords, refs);
  return Assoc::from_parts(a.cols(), a.rows(), std::move(coords),
                           KeyedValues{keyed.keys, std::move(refs)});
}

KeyedValues indexed_values(const Assoc& a) {
  if (const auto* keyed = std::get_if<KeyedValues>(&a.store())) return *keyed;
  const auto& values = std::get<NumericValues>(a.store()).values;
  const std::vector<Key> keys(values.begin(), values.end());
  auto made = make_set(keys);
  return {std::move(made.set), std::move(made.remap)};
}

Assoc logical(const Assoc& a) {
  return Assoc::from_parts(a.rows(), a.cols(),
                           std::vector<Coord>(a.coords().begin(), a.coords().end()),
                           NumericValues{std::vector<double>(a.nnz(), 1.0)});
}

}  // namespace d4m
