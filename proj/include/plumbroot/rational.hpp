#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "plumbroot/error.hpp"

namespace plumbroot {

using i128 = __int128;

// Overflow-checked helpers on 64-bit integers. Every exact computation in the
// library goes through these or through Rational; overflow throws
// ErrorKind::Overflow instead of wrapping.
[[noreturn]] void throw_overflow();

inline std::int64_t checked_narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw_overflow();
  return static_cast<std::int64_t>(v);
}
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw_overflow();
  return r;
}
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw_overflow();
  return r;
}
inline i128 checked_mul128(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw_overflow();
  return r;
}
inline i128 checked_add128(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw_overflow();
  return r;
}
std::int64_t floor_div(std::int64_t a, std::int64_t b);
std::int64_t ceil_div(std::int64_t a, std::int64_t b);
i128 floor_div128(i128 a, i128 b);
i128 ceil_div128(i128 a, i128 b);
// floor(sqrt(v)) for v >= 0.
i128 isqrt128(i128 v);
std::int64_t gcd64(std::int64_t a, std::int64_t b);

// Exact rational number p/q with q > 0 and gcd(p, q) = 1.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n) {}  // NOLINT(implicit)
  Rational(std::int64_t n, std::int64_t d);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_ == 0; }
  bool is_integer() const noexcept { return den_ == 1; }
  int sign() const noexcept { return (num_ > 0) - (num_ < 0); }

  std::int64_t floor() const { return floor_div(num_, den_); }
  std::int64_t ceil() const { return ceil_div(num_, den_); }

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  // "p" for integers, "p/q" otherwise.
  std::string str() const;
  // Accepts "p", "p/q", optional sign, surrounding whitespace.
  static Rational parse(std::string_view text);
  // Reduces n/d computed in 128 bits; throws Overflow if it does not fit.
  static Rational from128(i128 n, i128 d);

 private:

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace plumbroot
