#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "d4m/key.hpp"
#include "d4m/key_set.hpp"

namespace d4m {

/// Merge rule for repeated (row, col) pairs at construction.
///
/// `automatic` sums numeric values and keeps the largest key for key-indexed
/// values. `sum` on key-indexed values only succeeds when every colliding
/// value is a number.
enum class Collision { automatic, sum, min, max, last };

/// 0-based (row, col) position of one stored cell.
struct Coord {
  std::size_t row = 0;
  std::size_t col = 0;
  friend auto operator<=>(const Coord&, const Coord&) = default;
};

/// Cells hold their values directly. No stored value is 0.
struct NumericValues {
  std::vector<double> values;
  friend bool operator==(const NumericValues&, const NumericValues&) = default;
};

/// Cells hold positions into a sorted set of distinct values (Key-indexed).
struct KeyedValues {
  SortedKeySet keys;
  std::vector<std::size_t> refs;
  friend bool operator==(const KeyedValues&, const KeyedValues&) = default;
};

using ValueStore = std::variant<NumericValues, KeyedValues>;

/// Parallel triple sequences, one entry per stored cell.
struct Triples {
  std::vector<Key> rows;
  std::vector<Key> cols;
  std::vector<Key> vals;
  friend bool operator==(const Triples&, const Triples&) = default;
};

class PatternError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Sparse 2-D array keyed by sorted row and column key sets.
///
/// Cells are stored in row-major coordinate order alongside a value store.
/// An Assoc is immutable: every operation returns a new value. All
/// operations return condensed arrays, in which each row key, column key and
/// value key is referenced by at least one cell.
class Assoc {
 public:
  /// The empty 0x0 array (numeric store).
  Assoc() = default;

  /// Builds rows, cols and values with make_set and merges repeated (row,col)
  /// pairs. Numeric 0 values are absent and dropped before merging. The store
  /// is numeric unless some value is text. Throws std::invalid_argument on
  /// length mismatch.
  static Assoc from_triples(std::span<const Key> rows, std::span<const Key> cols,
                            std::span<const Key> vals,
                            Collision collision = Collision::automatic);
  static Assoc from_triples(const Triples& t, Collision collision = Collision::automatic) {
    return from_triples(t.rows, t.cols, t.vals, collision);
  }

  /// Assembles an array from its parts without condensing. Throws
  /// std::invalid_argument if coords are not strictly row-major, out of
  /// bounds, mismatched with the store, or hold an explicit numeric zero.
  static Assoc from_parts(SortedKeySet rows, SortedKeySet cols, std::vector<Coord> coords,
                          ValueStore store);

  [[nodiscard]] const SortedKeySet& rows() const noexcept { return rows_; }
  [[nodiscard]] const SortedKeySet& cols() const noexcept { return cols_; }
  [[nodiscard]] std::span<const Coord> coords() const noexcept { return coords_; }
  [[nodiscard]] const ValueStore& store() const noexcept { return store_; }
  [[nodiscard]] std::size_t nnz() const noexcept { return coords_.size(); }
  [[nodiscard]] bool empty() const noexcept { return coords_.empty(); }

  [[nodiscard]] bool is_numeric() const noexcept {
    return std::holds_alternative<NumericValues>(store_);
  }
  [[nodiscard]] bool is_keyed() const noexcept { return !is_numeric(); }
  /// Key-indexed with at least one text value.
  [[nodiscard]] bool is_text_valued() const;

  /// Value of the `cell`-th stored cell (row-major order).
  [[nodiscard]] Key value(std::size_t cell) const;

  /// Numeric reading of the `cell`-th value; 1 for text values.
  [[nodiscard]] double numeric_value(std::size_t cell) const;

  [[nodiscard]] std::optional<Key> cell_value(const Key& row, const Key& col) const;

  /// Row-major triples.
  [[nodiscard]] Triples find_triples() const;

  friend bool operator==(const Assoc&, const Assoc&) = default;

 private:
  SortedKeySet rows_;
  SortedKeySet cols_;
  std::vector<Coord> coords_;
  ValueStore store_ = NumericValues{};
};

/// Empty string when every structural invariant holds (sorted key sets,
/// row-major unique in-bounds cells, no explicit zeros, valid value refs and
/// condensed form); otherwise a description of the first violation.
std::string invariant_violation(const Assoc& a);

/// Rows and cols at the given positions. Positions are deduplicated;
/// throws std::out_of_range when any is out of bounds.
Assoc select_positions(const Assoc& a, std::span<const std::size_t> rows,
                       std::span<const std::size_t> cols);

/// Rows and cols named by key value. Keys absent from `a` select nothing.
Assoc select_keys(const Assoc& a, std::span<const Key> rows, std::span<const Key> cols);

/// Rows/cols whose rendered key contains a match of the ECMAScript pattern
/// (unanchored search). A missing pattern selects everything. Throws
/// PatternError on an invalid pattern.
Assoc select_regex(const Assoc& a, std::optional<std::string_view> row_pattern,
                   std::optional<std::string_view> col_pattern);

Assoc transpose(const Assoc& a);

/// Same pattern, every value replaced by numeric 1.
Assoc logical(const Assoc& a);

/// Drops row, column and value keys not referenced by any cell.
Assoc condense(const Assoc& a);

/// The sorted distinct values and each cell's position among them, for
/// either store kind (the key-indexed store is returned as is).
KeyedValues indexed_values(const Assoc& a);

}  // namespace d4m
