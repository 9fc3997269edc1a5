#include "d4m/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <iterator>
#include <ostream>

namespace d4m {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

void require_delimiter(char delimiter) {
  if (delimiter != ',' && delimiter != '\t') {
    throw std::invalid_argument("d4m: delimiter must be ',' or tab");
  }
}

struct Field {
  std::string text;
  bool quoted = false;
};

struct Record {
  std::vector<Field> fields;
  std::size_t line = 0;
};

/// RFC-4180 record splitter. Accepts LF and CRLF line ends and skips blank
/// lines.
std::vector<Record> split_records(std::string_view data, char delimiter) {
  std::vector<Record> records;
  std::size_t line = 1;
  std::size_t pos = 0;
  if (data.substr(0, 3) == "\xEF\xBB\xBF") pos = 3;

  while (pos < data.size()) {
    if (data[pos] == '\n' || (data[pos] == '\r' && pos + 1 < data.size() && data[pos + 1] == '\n')) {
      pos += data[pos] == '\r' ? 2 : 1;
      ++line;
      continue;
    }
    Record rec;
    rec.line = line;
    bool end_of_record = false;
    while (!end_of_record) {
      Field f;
      if (pos < data.size() && data[pos] == '"') {
        f.quoted = true;
        ++pos;
        for (;;) {
          if (pos >= data.size()) throw FormatError("unterminated quoted field", rec.line);
          const char c = data[pos++];
          if (c == '"') {
            if (pos < data.size() && data[pos] == '"') {
              f.text += '"';
              ++pos;
            } else {
              break;
            }
          } else {
            if (c == '\n') ++line;
            f.text += c;
          }
        }
      } else {
        while (pos < data.size() && data[pos] != delimiter && data[pos] != '\n' &&
               !(data[pos] == '\r' && pos + 1 < data.size() && data[pos + 1] == '\n')) {
          f.text += data[pos++];
        }
      }
      rec.fields.push_back(std::move(f));

      if (pos >= data.size()) {
        end_of_record = true;
      } else if (data[pos] == delimiter) {
        ++pos;
      } else if (data[pos] == '\n' ||
                 (data[pos] == '\r' && pos + 1 < data.size() && data[pos + 1] == '\n')) {
        pos += data[pos] == '\r' ? 2 : 1;
        ++line;
        end_of_record = true;
      } else {
        throw FormatError("unexpected character after closing quote", rec.line);
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

Key infer_key(const Field& f) {
  if (!f.quoted) {
    if (auto n = parse_number(f.text)) return Key(*n);
  }
  return Key(f.text);
}

std::string encode_field(const Key& k, char delimiter) {
  if (k.is_number()) return k.str();
  const std::string& s = k.text();
  const bool needs_quotes = s.empty() || parse_number(s).has_value() ||
                            s.find_first_of(std::string{delimiter, '"', '\r', '\n'}) !=
                                std::string::npos;
  if (!needs_quotes) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::optional<double> parse_number(std::string_view text) {
  std::size_t p = 0;
  const std::size_t n = text.size();
  if (p < n && text[p] == '-') ++p;
  if (p >= n || !is_digit(text[p])) return std::nullopt;
  if (text[p] == '0') {
    ++p;
  } else {
    while (p < n && is_digit(text[p])) ++p;
  }
  if (p < n && text[p] == '.') {
    ++p;
    if (p >= n || !is_digit(text[p])) return std::nullopt;
    while (p < n && is_digit(text[p])) ++p;
  }
  if (p < n && (text[p] == 'e' || text[p] == 'E')) {
    ++p;
    if (p < n && (text[p] == '+' || text[p] == '-')) ++p;
    if (p >= n || !is_digit(text[p])) return std::nullopt;
    while (p < n && is_digit(text[p])) ++p;
  }
  if (p != n) return std::nullopt;

  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + n, value);
  if (ec != std::errc{} || end != text.data() + n || !std::isfinite(value)) return std::nullopt;
  return value;
}

Assoc read_delimited(std::istream& in, char delimiter) {
  require_delimiter(delimiter);
  const std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto records = split_records(data, delimiter);
  if (records.empty()) return {};

  const auto& header = records.front().fields;
  std::vector<Key> columns;
  columns.reserve(header.size());
  for (std::size_t c = 1; c < header.size(); ++c) columns.push_back(infer_key(header[c]));

  Triples t;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != header.size()) {
      throw FormatError("expected " + std::to_string(header.size()) + " fields, found " +
                            std::to_string(rec.fields.size()),
                        rec.line);
    }
    const Key label = infer_key(rec.fields[0]);
    for (std::size_t c = 1; c < rec.fields.size(); ++c) {
      const Field& f = rec.fields[c];
      if (!f.quoted && f.text.empty()) continue;
      t.rows.push_back(label);
      t.cols.push_back(columns[c - 1]);
      t.vals.push_back(infer_key(f));
    }
  }
  return Assoc::from_triples(t);
}

void write_delimited(const Assoc& a, std::ostream& out, char delimiter) {
  require_delimiter(delimiter);
  for (const Key& col : a.cols()) out << delimiter << encode_field(col, delimiter);
  out << '\n';

  const auto coords = a.coords();
  std::vector<std::string> row_cells(a.cols().size());
  for (std::size_t t = 0; t < coords.size();) {
    const std::size_t row = coords[t].row;
    std::fill(row_cells.begin(), row_cells.end(), std::string{});
    for (; t < coords.size() && coords[t].row == row; ++t) {
      row_cells[coords[t].col] = encode_field(a.value(t), delimiter);
    }
    out << encode_field(a.rows()[row], delimiter);
    for (const auto& cell : row_cells) out << delimiter << cell;
    out << '\n';
  }
  if (!out) throw std::ios_base::failure("d4m::write_delimited: write failed");
}

DenseTable to_dense_table(const Assoc& a) {
  DenseTable t;
  t.column_names.assign(a.cols().begin(), a.cols().end());
  t.row_labels.emplace(a.rows().begin(), a.rows().end());
  const std::optional<Key> blank =
      a.is_numeric() ? std::optional<Key>(Key(0.0)) : std::optional<Key>();
  t.grid.assign(a.rows().size(), std::vector<std::optional<Key>>(a.cols().size(), blank));
  const auto coords = a.coords();
  for (std::size_t n = 0; n < coords.size(); ++n) t.grid[coords[n].row][coords[n].col] = a.value(n);
  return t;
}

Assoc from_dense_table(const DenseTable& t, RowLabels policy) {
  for (const auto& row : t.grid) {
    if (row.size() != t.column_names.size()) {
      throw std::invalid_argument("d4m::from_dense_table: grid is not rectangular");
    }
  }
  std::vector<Key> labels;
  if (policy == RowLabels::use_labels) {
    if (!t.row_labels) throw std::invalid_argument("d4m::from_dense_table: table has no row labels");
    if (t.row_labels->size() != t.grid.size()) {
      throw std::invalid_argument("d4m::from_dense_table: row label count mismatch");
    }
    labels = *t.row_labels;
  } else {
    for (std::size_t r = 0; r < t.grid.size(); ++r) labels.emplace_back(r + 1);
  }

  Triples triples;
  for (std::size_t r = 0; r < t.grid.size(); ++r) {
    for (std::size_t c = 0; c < t.column_names.size(); ++c) {
      const auto& cell = t.grid[r][c];
      if (!cell) continue;
      triples.rows.push_back(labels[r]);
      triples.cols.push_back(t.column_names[c]);
      triples.vals.push_back(*cell);
    }
  }
  return Assoc::from_triples(triples);
}

}  // namespace d4m
