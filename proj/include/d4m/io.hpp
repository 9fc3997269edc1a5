#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "d4m/assoc.hpp"

namespace d4m {

class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  /// 1-based line on which the offending record starts.
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Strict decimal grammar used for cell inference:
///   -?(0|[1-9][0-9]*)(\.[0-9]+)?([eE][+-]?[0-9]+)?
/// Returns nullopt for anything else, including non-finite results.
/// Leading zeros ("0730") and a leading '+' are not numbers.
std::optional<double> parse_number(std::string_view text);

/// Reads a delimited table whose first record is the header and whose first
/// column holds row labels (the first header field is ignored). Unquoted
/// fields matching parse_number become number keys; every other field,
/// and every quoted field, is text. Empty unquoted cells are absent.
///
/// `delimiter` must be ',' or '\t'. Throws FormatError on a ragged record or
/// an unterminated quote.
Assoc read_delimited(std::istream& in, char delimiter = ',');

/// Writes `a` so that read_delimited gives it back exactly. Fields are
/// quoted RFC-4180 style when they contain the delimiter, a quote or a line
/// break, and text keys are also quoted when empty or number-like.
void write_delimited(const Assoc& a, std::ostream& out, char delimiter = ',');

/// Rectangular grid of optional keys with named columns.
struct DenseTable {
  std::vector<Key> column_names;
  std::optional<std::vector<Key>> row_labels;
  std::vector<std::vector<std::optional<Key>>> grid;

  friend bool operator==(const DenseTable&, const DenseTable&) = default;
};

enum class RowLabels { use_labels, synthesize };

/// Absent cells become 0 for numeric arrays and stay absent otherwise.
DenseTable to_dense_table(const Assoc& a);

/// Skips absent and zero cells. With RowLabels::synthesize rows are keyed
/// 1..n. Throws std::invalid_argument if the grid is not rectangular or if
/// labels are requested but missing or miscounted.
Assoc from_dense_table(const DenseTable& t, RowLabels policy);

}  // namespace d4m
