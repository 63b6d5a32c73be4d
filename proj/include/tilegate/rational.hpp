#pragma once

/**
 * @file rational.hpp
 * @brief Exact fractions over 64-bit integers.
 *
 * Always kept in lowest terms with a positive denominator, so equal values
 * have equal representations. Intermediate products are formed in 128 bits;
 * a result that does not fit back into 64 bits raises ResourceLimitError
 * instead of wrapping.
 */

#include <charconv>
#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "tilegate/errors.hpp"

namespace tilegate {

using i128 = __int128;

namespace detail {

inline std::int64_t narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) {
    throw ResourceLimitError("integer overflow in exact arithmetic");
  }
  return static_cast<std::int64_t>(v);
}

inline i128 abs128(i128 v) { return v < 0 ? -v : v; }

inline i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline i128 checked_mul(i128 a, i128 b) {
  i128 out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw ResourceLimitError("integer overflow in exact arithmetic");
  }
  return out;
}

inline i128 checked_add(i128 a, i128 b) {
  i128 out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw ResourceLimitError("integer overflow in exact arithmetic");
  }
  return out;
}

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  i128 g = std::gcd(a, b);
  return narrow(abs128(static_cast<i128>(a) / g * b));
}

}  // namespace detail

class Rational {
 public:
  constexpr Rational() = default;
  // NOLINTNEXTLINE(google-explicit-constructor)
  constexpr Rational(std::int64_t n) : num_(n) {}
  Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

  static Rational from_wide(i128 n, i128 d) {
    if (d == 0) throw DomainError("zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    i128 g = detail::gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    Rational r;
    r.num_ = detail::narrow(n);
    r.den_ = detail::narrow(d);
    if (r.num_ == 0) r.den_ = 1;
    return r;
  }

  [[nodiscard]] constexpr std::int64_t num() const { return num_; }
  [[nodiscard]] constexpr std::int64_t den() const { return den_; }
  [[nodiscard]] constexpr bool is_zero() const { return num_ == 0; }
  [[nodiscard]] constexpr bool is_integer() const { return den_ == 1; }
  [[nodiscard]] constexpr int sign() const { return (num_ > 0) - (num_ < 0); }
  [[nodiscard]] double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from_wide(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                     static_cast<i128>(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from_wide(static_cast<i128>(a.num_) * b.den_ - static_cast<i128>(b.num_) * a.den_,
                     static_cast<i128>(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_wide(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw DomainError("division by zero");
    return from_wide(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
  }
  Rational operator-() const { return from_wide(-static_cast<i128>(num_), den_); }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend constexpr bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return static_cast<i128>(a.num_) * b.den_ <=> static_cast<i128>(b.num_) * a.den_;
  }

  /// Largest integer not exceeding the value.
  [[nodiscard]] std::int64_t floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }

  /// Canonical rendering "p/q"; integers keep the "/1".
  [[nodiscard]] std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  /// Accepts "p/q" or "p", with an optional leading minus sign.
  static Rational parse(std::string_view text) {
    auto parse_int = [&](std::string_view s) {
      std::int64_t v = 0;
      if (s.empty()) throw FormatError("bad fraction '" + std::string(text) + "'");
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec == std::errc::result_out_of_range) {
        throw ResourceLimitError("integer too large in '" + std::string(text) + "'");
      }
      if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw FormatError("bad fraction '" + std::string(text) + "'");
      }
      return v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    std::int64_t d = parse_int(text.substr(slash + 1));
    if (d == 0) throw FormatError("zero denominator in '" + std::string(text) + "'");
    return Rational(parse_int(text.substr(0, slash)), d);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  void assign(std::int64_t n, std::int64_t d) { *this = from_wide(n, d); }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// An angle measured in right angles: the value 1 is pi/2.
struct AngleUnits {
  Rational value;

  [[nodiscard]] AngleUnits complement() const { return {Rational(1) - value}; }
  /// The same angle as a multiple of pi.
  [[nodiscard]] Rational over_pi() const { return value / Rational(2); }

  friend bool operator==(const AngleUnits&, const AngleUnits&) = default;
  friend auto operator<=>(const AngleUnits& a, const AngleUnits& b) { return a.value <=> b.value; }
};

/// Renders x*pi for a rational x as "pi/8", "pi*3/10", "pi" or "0".
inline std::string render_pi_multiple(const Rational& x) {
  if (x.is_zero()) return "0";
  std::string sign = x.num() < 0 ? "-" : "";
  std::int64_t n = x.num() < 0 ? -x.num() : x.num();
  std::string head = n == 1 ? sign + "pi" : sign + "pi*" + std::to_string(n);
  return x.den() == 1 ? head : head + "/" + std::to_string(x.den());
}

/// "alpha = pi*u/v" companion for an angle in right-angle units.
inline std::string render_alpha(const AngleUnits& a) { return render_pi_multiple(a.over_pi()); }

}  // namespace tilegate

template <>
struct std::hash<tilegate::Rational> {
  std::size_t operator()(const tilegate::Rational& r) const noexcept {
    return std::hash<std::int64_t>{}(r.num()) * 1000003u ^ std::hash<std::int64_t>{}(r.den());
  }
};
