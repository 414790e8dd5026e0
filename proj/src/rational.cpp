#include "plumbroot/rational.hpp"

#include <charconv>
#include <limits>
#include <ostream>

namespace plumbroot {

namespace {

[[noreturn]] void overflow() {
  throw Error(ErrorKind::Overflow, "integer overflow in exact arithmetic");
}

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

void throw_overflow() { overflow(); }

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return q;
}

i128 floor_div128(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

i128 ceil_div128(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return q;
}

i128 isqrt128(i128 v) {
  if (v < 0) overflow();
  if (v < 2) return v;
  if (v <= i128(INT64_MAX)) {
    // Same iteration in 64 bits, where division is a single instruction.
    const auto u = static_cast<std::uint64_t>(v);
    std::uint64_t x = std::uint64_t{1} << ((64 - __builtin_clzll(u) + 1) / 2);
    while (true) {
      const std::uint64_t y = (x + u / x) / 2;
      if (y >= x) break;
      x = y;
    }
    while (x * x > u) --x;
    while ((x + 1) * (x + 1) <= u) ++x;
    return x;
  }
  // Newton iteration from an upper bound.
  int bits = 0;
  for (i128 t = v; t > 0; t >>= 1) ++bits;
  i128 x = i128(1) << ((bits + 1) / 2);
  while (true) {
    i128 y = (x + v / x) / 2;
    if (y >= x) break;
    x = y;
  }
  while (x * x > v) --x;
  while ((x + 1) * (x + 1) <= v) ++x;
  return x;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  return checked_narrow(gcd128(a, b));
}

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw Error(ErrorKind::MalformedInput, "zero denominator");
  *this = from128(n, d);
}

Rational Rational::from128(i128 n, i128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  Rational r;
  r.num_ = checked_narrow(n);
  r.den_ = checked_narrow(d);
  return r;
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = checked_narrow(-i128(num_));
  r.den_ = den_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  if (den_ == o.den_) {
    *this = from128(i128(num_) + o.num_, den_);
  } else {
    *this = from128(i128(num_) * o.den_ + i128(o.num_) * den_,
                    i128(den_) * o.den_);
  }
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  *this = from128(i128(num_) * o.num_, i128(den_) * o.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw Error(ErrorKind::MalformedInput, "division by zero");
  *this = from128(i128(num_) * o.den_, i128(den_) * o.num_);
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  i128 l = i128(a.num_) * b.den_;
  i128 r = i128(b.num_) * a.den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  auto parse_int = [&](std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
      throw Error(ErrorKind::MalformedInput,
                  "not a rational number: '" + std::string(text) + "'");
    }
    return v;
  };
  std::string_view t = trim(text);
  auto slash = t.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(t));
  return Rational(parse_int(t.substr(0, slash)), parse_int(t.substr(slash + 1)));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

}  // namespace plumbroot
