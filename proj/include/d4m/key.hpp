#pragma once

#include <compare>
#include <concepts>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

namespace d4m {

/// One atom of a row, column or value label: either text or a finite number.
///
/// Keys are totally ordered: every text key sorts below every number key,
/// text compares by raw UTF-8 bytes and numbers compare numerically (so 1 and
/// 1.0 are the same key). Non-finite numbers are rejected at construction.
class Key {
 public:
  Key() : value_(std::string{}) {}
  Key(std::string text) : value_(std::move(text)) {}  // NOLINT(implicit)
  Key(std::string_view text) : value_(std::string(text)) {}  // NOLINT
  Key(const char* text) : value_(std::string(text)) {}  // NOLINT
  Key(double number);  // NOLINT
  template <std::integral T>
  Key(T number) : Key(static_cast<double>(number)) {}  // NOLINT

  [[nodiscard]] bool is_text() const noexcept {
    return std::holds_alternative<std::string>(value_);
  }
  [[nodiscard]] bool is_number() const noexcept { return !is_text(); }

  /// Precondition: is_text().
  [[nodiscard]] const std::string& text() const { return std::get<std::string>(value_); }
  /// Precondition: is_number().
  [[nodiscard]] double number() const { return std::get<double>(value_); }

  /// Text keys render as themselves; numbers use the shortest decimal form
  /// that parses back to the same double (integral values have no point).
  [[nodiscard]] std::string str() const;

  friend std::strong_ordering operator<=>(const Key& a, const Key& b) noexcept;
  friend bool operator==(const Key& a, const Key& b) noexcept {
    return (a <=> b) == std::strong_ordering::equal;
  }

 private:
  std::variant<std::string, double> value_;
};

/// Three-way comparison under the key total order.
inline std::strong_ordering compare_keys(const Key& a, const Key& b) noexcept { return a <=> b; }

/// Shortest round-trip decimal rendering of a finite double.
std::string format_number(double value);

std::ostream& operator<<(std::ostream& os, const Key& key);

}  // namespace d4m
