#include "d4m/key.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace d4m {

Key::Key(double number) : value_(number) {
  if (!std::isfinite(number)) {
    throw std::invalid_argument("d4m::Key: number keys must be finite");
  }
  // -0.0 and 0.0 are one key.
  if (number == 0.0) value_ = 0.0;
}

std::string format_number(double value) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw std::runtime_error("d4m::format_number: to_chars failed");
  return std::string(buf.data(), end);
}

std::string Key::str() const {
  if (is_text()) return text();
  return format_number(number());
}

std::strong_ordering operator<=>(const Key& a, const Key& b) noexcept {
  const bool a_text = a.is_text();
  const bool b_text = b.is_text();
  if (a_text != b_text) {
    return a_text ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (a_text) {
    // std::string compares through char_traits<char>, which orders as
    // unsigned char, i.e. raw byte order.
    const int c = a.text().compare(b.text());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  const double x = a.number();
  const double y = b.number();
  if (x < y) return std::strong_ordering::less;
  if (x > y) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Key& key) {
  if (key.is_text()) return os << '"' << key.text() << '"';
  return os << key.str();
}

}  // namespace d4m
