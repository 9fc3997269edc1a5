#pragma once

#include <string>

#include "d4m/assoc.hpp"

namespace d4m {

/// Delimiter placed between concatenated parts of a cat-product cell.
struct ConcatConfig {
  std::string separator = ";";
};

/// C(i,j) = sum_k A(i,k) * B(k,j) over the keys shared by cols(A) and
/// rows(B). Text-valued operands are multiplied as their logical pattern.
/// Cells summing to exactly zero are dropped.
Assoc multiply(const Assoc& a, const Assoc& b);

/// Each output cell joins, in ascending order, every shared inner key k with
/// both A(i,k) and B(k,j) stored. Same pattern as multiply(logical(A),
/// logical(B)). Throws std::invalid_argument on an empty separator.
Assoc cat_key_mul(const Assoc& a, const Assoc& b, const ConcatConfig& cfg = {});

/// Like cat_key_mul, but each contributing k adds the rendered pair
/// A(i,k), B(k,j) to the flat join.
Assoc cat_val_mul(const Assoc& a, const Assoc& b, const ConcatConfig& cfg = {});

/// Element-wise addition over the union of row and column keys.
///
///   both text-valued   -> per-cell max under the key order, union of patterns
///   one side text      -> numeric side + 1 wherever the text side is stored
///   both numeric       -> numeric sum, exact zeros dropped
///
/// An operand with no cells is the identity in every case.
Assoc add(const Assoc& a, const Assoc& b);

}  // namespace d4m
