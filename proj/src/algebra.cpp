#include "d4m/algebra.hpp"

#include <algorithm>
#include <limits>

#include "cells.hpp"

namespace d4m {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

void require_separator(const ConcatConfig& cfg) {
  if (cfg.separator.empty()) {
    throw std::invalid_argument("d4m::ConcatConfig: separator must be non-empty");
  }
}

std::vector<double> numeric_payload(const Assoc& a) {
  std::vector<double> out(a.nnz());
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = a.numeric_value(t);
  return out;
}

std::vector<std::string> rendered_payload(const Assoc& a) {
  std::vector<std::string> out(a.nnz());
  if (const auto* keyed = std::get_if<KeyedValues>(&a.store())) {
    std::vector<std::string> per_key;
    per_key.reserve(keyed->keys.size());
    for (const Key& k : keyed->keys) per_key.push_back(k.str());
    for (std::size_t t = 0; t < out.size(); ++t) out[t] = per_key[keyed->refs[t]];
  } else {
    for (std::size_t t = 0; t < out.size(); ++t) out[t] = a.value(t).str();
  }
  return out;
}

/// Row-by-row sparse product (Gustavson). For every stored pair A(i,k),
/// B(k,j) with k in cols(A) ∩ rows(B), calls
///   combine(cell, first, a_cell, b_cell, inner)
/// where `inner` indexes the intersected key set and `first` marks the first
/// contribution to C(i,j). Contributions to one output cell arrive in
/// ascending inner-key order.
template <class Cell, class Combine>
void sparse_product(const Assoc& a, const Assoc& b, Combine combine,
                    std::vector<Coord>& out_coords, std::vector<Cell>& out_cells) {
  const auto inner = sorted_intersect(a.cols(), b.rows());
  std::vector<std::size_t> a_col_inner(a.cols().size(), kNone);
  for (std::size_t t = 0; t < inner.in_a.size(); ++t) a_col_inner[inner.in_a[t]] = t;

  // Cell range of each inner key within B's row-major coords.
  std::vector<std::size_t> b_begin(inner.keys.size(), 0);
  std::vector<std::size_t> b_end(inner.keys.size(), 0);
  {
    std::vector<std::size_t> b_row_inner(b.rows().size(), kNone);
    for (std::size_t t = 0; t < inner.in_b.size(); ++t) b_row_inner[inner.in_b[t]] = t;
    const auto bc = b.coords();
    for (std::size_t t = 0; t < bc.size();) {
      std::size_t u = t;
      while (u < bc.size() && bc[u].row == bc[t].row) ++u;
      if (const std::size_t k = b_row_inner[bc[t].row]; k != kNone) {
        b_begin[k] = t;
        b_end[k] = u;
      }
      t = u;
    }
  }

  std::vector<Cell> work(b.cols().size());
  std::vector<char> occupied(b.cols().size(), 0);
  std::vector<std::size_t> touched;

  const auto ac = a.coords();
  const auto bc = b.coords();
  for (std::size_t t = 0; t < ac.size();) {
    const std::size_t row = ac[t].row;
    for (; t < ac.size() && ac[t].row == row; ++t) {
      const std::size_t k = a_col_inner[ac[t].col];
      if (k == kNone) continue;
      for (std::size_t u = b_begin[k]; u < b_end[k]; ++u) {
        const std::size_t j = bc[u].col;
        const bool first = !occupied[j];
        if (first) {
          occupied[j] = 1;
          touched.push_back(j);
        }
        combine(work[j], first, t, u, k);
      }
    }
    std::sort(touched.begin(), touched.end());
    for (std::size_t j : touched) {
      out_coords.push_back({row, j});
      out_cells.push_back(std::move(work[j]));
      work[j] = Cell{};
      occupied[j] = 0;
    }
    touched.clear();
  }
}

/// A and B coords re-expressed over the union key sets (still row-major).
struct Aligned {
  SetUnion rows;
  SetUnion cols;
  std::vector<Coord> a;
  std::vector<Coord> b;
};

Aligned align(const Assoc& a, const Assoc& b) {
  Aligned al{sorted_union(a.rows(), b.rows()), sorted_union(a.cols(), b.cols()), {}, {}};
  al.a.reserve(a.nnz());
  al.b.reserve(b.nnz());
  for (const Coord& c : a.coords()) al.a.push_back({al.rows.from_a[c.row], al.cols.from_a[c.col]});
  for (const Coord& c : b.coords()) al.b.push_back({al.rows.from_b[c.row], al.cols.from_b[c.col]});
  return al;
}

/// Walks both aligned coordinate lists in row-major order, calling
/// visit(coord, a_cell, b_cell) with kNone for the side that has no cell.
template <class Visit>
void merge_cells(const std::vector<Coord>& a, const std::vector<Coord>& b, Visit visit) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i] < b[j])) {
      visit(a[i], i, kNone);
      ++i;
    } else if (i == a.size() || b[j] < a[i]) {
      visit(b[j], kNone, j);
      ++j;
    } else {
      visit(a[i], i, j);
      ++i;
      ++j;
    }
  }
}

}  // namespace

Assoc multiply(const Assoc& a, const Assoc& b) {
  const auto av = numeric_payload(a.is_text_valued() ? logical(a) : a);
  const auto bv = numeric_payload(b.is_text_valued() ? logical(b) : b);

  std::vector<Coord> coords;
  std::vector<double> values;
  sparse_product<double>(
      a, b,
      [&](double& cell, bool, std::size_t ac, std::size_t bc, std::size_t) {
        cell += av[ac] * bv[bc];
      },
      coords, values);
  return detail::build_numeric(a.rows(), b.cols(), std::move(coords), std::move(values));
}

Assoc cat_key_mul(const Assoc& a, const Assoc& b, const ConcatConfig& cfg) {
  require_separator(cfg);
  const auto inner = sorted_intersect(a.cols(), b.rows());
  std::vector<std::string> inner_text;
  inner_text.reserve(inner.keys.size());
  for (const Key& k : inner.keys) inner_text.push_back(k.str());

  std::vector<Coord> coords;
  std::vector<std::string> cells;
  sparse_product<std::string>(
      a, b,
      [&](std::string& cell, bool first, std::size_t, std::size_t, std::size_t k) {
        if (!first) cell += cfg.separator;
        cell += inner_text[k];
      },
      coords, cells);

  std::vector<Key> values(std::make_move_iterator(cells.begin()),
                          std::make_move_iterator(cells.end()));
  return detail::build_keyed(a.rows(), b.cols(), std::move(coords), std::move(values));
}

Assoc cat_val_mul(const Assoc& a, const Assoc& b, const ConcatConfig& cfg) {
  require_separator(cfg);
  const auto at = rendered_payload(a);
  const auto bt = rendered_payload(b);

  std::vector<Coord> coords;
  std::vector<std::string> cells;
  sparse_product<std::string>(
      a, b,
      [&](std::string& cell, bool first, std::size_t ac, std::size_t bc, std::size_t) {
        if (!first) cell += cfg.separator;
        cell += at[ac];
        cell += cfg.separator;
        cell += bt[bc];
      },
      coords, cells);

  std::vector<Key> values(std::make_move_iterator(cells.begin()),
                          std::make_move_iterator(cells.end()));
  return detail::build_keyed(a.rows(), b.cols(), std::move(coords), std::move(values));
}

Assoc add(const Assoc& a, const Assoc& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;

  const bool a_text = a.is_text_valued();
  const bool b_text = b.is_text_valued();
  auto al = align(a, b);
  std::vector<Coord> coords;
  coords.reserve(al.a.size() + al.b.size());

  if (a_text && b_text) {
    std::vector<Key> values;
    merge_cells(al.a, al.b, [&](const Coord& c, std::size_t ia, std::size_t ib) {
      coords.push_back(c);
      if (ia == kNone) {
        values.push_back(b.value(ib));
      } else if (ib == kNone) {
        values.push_back(a.value(ia));
      } else {
        values.push_back(std::max(a.value(ia), b.value(ib)));
      }
    });
    return detail::build_keyed(std::move(al.rows.keys), std::move(al.cols.keys),
                               std::move(coords), std::move(values));
  }

  // A text side contributes an indicator; a numeric side contributes its value.
  auto contribution = [](const Assoc& x, bool text, std::size_t cell) {
    if (cell == kNone) return 0.0;
    return text ? 1.0 : x.numeric_value(cell);
  };
  std::vector<double> values;
  merge_cells(al.a, al.b, [&](const Coord& c, std::size_t ia, std::size_t ib) {
    coords.push_back(c);
    values.push_back(contribution(a, a_text, ia) + contribution(b, b_text, ib));
  });
  return detail::build_numeric(std::move(al.rows.keys), std::move(al.cols.keys), std::move(coords),
                               std::move(values));
}

}  // namespace d4m
