#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "secform/error.hpp"

namespace secform {

/// An element of Q/Z held as a reduced fraction num/den with 0 <= num < den.
class QZValue {
 public:
  constexpr QZValue() = default;
  constexpr QZValue(std::int64_t num, std::int64_t den) { assign(num, den); }

  static constexpr QZValue quarters(std::int64_t q) { return QZValue(q, 4); }
  static constexpr QZValue halves(std::int64_t h) { return QZValue(h, 2); }

  constexpr std::int64_t numerator() const noexcept { return num_; }
  constexpr std::int64_t denominator() const noexcept { return den_; }
  constexpr bool is_zero() const noexcept { return num_ == 0; }

  /// Order of the value in Q/Z, i.e. the reduced denominator.
  constexpr std::int64_t order() const noexcept { return den_; }

  constexpr QZValue operator+(const QZValue& o) const {
    const std::int64_t g = std::gcd(den_, o.den_);
    const std::int64_t l = den_ / g * o.den_;
    return QZValue(num_ * (l / den_) + o.num_ * (l / o.den_), l);
  }
  constexpr QZValue operator-() const { return QZValue(-num_, den_); }
  constexpr QZValue operator-(const QZValue& o) const { return *this + (-o); }
  constexpr QZValue& operator+=(const QZValue& o) { return *this = *this + o; }
  constexpr QZValue operator*(std::int64_t k) const { return QZValue(num_ * k, den_); }
  friend constexpr QZValue operator*(std::int64_t k, const QZValue& v) { return v * k; }

  constexpr bool operator==(const QZValue&) const = default;
  constexpr std::strong_ordering operator<=>(const QZValue& o) const {
    // Compare as rationals in [0,1).
    return num_ * o.den_ <=> o.num_ * den_;
  }

  double to_double() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  /// Canonical text form "a/b"; zero renders as "0/1".
  std::string to_string() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  /// Accepts "a/b" or an integer "a" (which is zero mod 1); signs allowed.
  static QZValue parse(std::string_view text) {
    auto read = [&](std::string_view s, std::size_t offset) {
      std::int64_t v = 0;
      const char* first = s.data();
      if (!s.empty() && s.front() == '+') ++first;
      auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
      if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw ParseError("malformed fraction '" + std::string(text) + "'", offset);
      return v;
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return QZValue(read(text, 0), 1);
    const std::int64_t num = read(text.substr(0, slash), 0);
    const std::int64_t den = read(text.substr(slash + 1), slash + 1);
    if (den <= 0) throw ParseError("denominator must be positive", slash + 1);
    return QZValue(num, den);
  }

 private:
  constexpr void assign(std::int64_t num, std::int64_t den) {
    if (den == 0) throw InvalidInput("zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    num %= den;
    if (num < 0) num += den;
    const std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace secform
