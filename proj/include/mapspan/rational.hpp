#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mapspan/errors.hpp"

namespace mapspan {

namespace detail {

using int128 = __int128;

inline int128 iabs128(int128 v) { return v < 0 ? -v : v; }

inline int128 gcd128(int128 a, int128 b) {
  a = iabs128(a);
  b = iabs128(b);
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace detail

// Exact rational on a 64-bit numerator/denominator, always reduced, with a
// positive denominator. All arithmetic runs through 128-bit intermediates;
// a reduced result that no longer fits 64 bits throws Error(Overflow)
// instead of wrapping. Exactness is load-bearing: makespan ties must compare
// equal bit-for-bit, and 1/k accumulation in floating point drifts.
class Rational {
public:
  Rational() = default;
  Rational(long long value) : num_(value) {}  // NOLINT: implicit by design
  Rational(long long num, long long den) { *this = make(num, den); }

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  friend Rational operator+(const Rational& x, const Rational& y) {
    using detail::int128;
    return make(static_cast<int128>(x.num_) * y.den_ + static_cast<int128>(y.num_) * x.den_,
                static_cast<int128>(x.den_) * y.den_);
  }

  friend Rational operator-(const Rational& x, const Rational& y) {
    using detail::int128;
    return make(static_cast<int128>(x.num_) * y.den_ - static_cast<int128>(y.num_) * x.den_,
                static_cast<int128>(x.den_) * y.den_);
  }

  friend Rational operator*(const Rational& x, const Rational& y) {
    using detail::int128;
    return make(static_cast<int128>(x.num_) * y.num_, static_cast<int128>(x.den_) * y.den_);
  }

  friend Rational operator/(const Rational& x, const Rational& y) {
    if (y.num_ == 0) throw std::invalid_argument("rational division by zero");
    using detail::int128;
    return make(static_cast<int128>(x.num_) * y.den_, static_cast<int128>(x.den_) * y.num_);
  }

  Rational& operator+=(const Rational& y) { return *this = *this + y; }
  Rational& operator-=(const Rational& y) { return *this = *this - y; }
  Rational& operator*=(const Rational& y) { return *this = *this * y; }

  friend bool operator==(const Rational& x, const Rational& y) {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }
  friend bool operator!=(const Rational& x, const Rational& y) { return !(x == y); }
  friend bool operator<(const Rational& x, const Rational& y) {
    using detail::int128;
    return static_cast<int128>(x.num_) * y.den_ < static_cast<int128>(y.num_) * x.den_;
  }
  friend bool operator>(const Rational& x, const Rational& y) { return y < x; }
  friend bool operator<=(const Rational& x, const Rational& y) { return !(y < x); }
  friend bool operator>=(const Rational& x, const Rational& y) { return !(x < y); }

  static Rational max(const Rational& x, const Rational& y) { return x < y ? y : x; }

  // "p/q", or just "p" when the denominator is 1.
  std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Exact decimal rendering ("0.5" for 1/2) when the denominator divides a
  // power of ten; falls back to "p/q" otherwise. Values parsed from decimal
  // strings always take the first branch, so they round-trip.
  std::string to_decimal_string() const {
    using detail::int128;
    long long d = den_;
    int twos = 0;
    int fives = 0;
    while (d % 2 == 0) {
      d /= 2;
      ++twos;
    }
    while (d % 5 == 0) {
      d /= 5;
      ++fives;
    }
    if (d != 1) return to_string();
    int digits = twos > fives ? twos : fives;
    int128 scaled = num_;
    for (int i = fives; i < digits; ++i) scaled *= 5;
    for (int i = twos; i < digits; ++i) scaled *= 2;
    bool negative = scaled < 0;
    if (negative) scaled = -scaled;
    std::string raw;
    if (scaled == 0) raw = "0";
    while (scaled > 0) {
      raw += static_cast<char>('0' + static_cast<int>(scaled % 10));
      scaled /= 10;
    }
    while (static_cast<int>(raw.size()) <= digits) raw += '0';
    std::string out;
    if (negative) out += '-';
    for (int i = static_cast<int>(raw.size()) - 1; i >= 0; --i) {
      out += raw[static_cast<size_t>(i)];
      if (i == digits && digits > 0) out += '.';
    }
    return out;
  }

  // Parses a plain decimal string ("3", "0.5", "12.125") to the exact value.
  // No signs, no exponents: the accepted grammar is digits['.'digits].
  static Rational parse_decimal(std::string_view text) {
    using detail::int128;
    if (text.empty()) throw Error(ErrorCode::ParseError, "empty decimal string");
    int128 num = 0;
    int128 den = 1;
    bool seen_dot = false;
    bool digits_before = false;
    bool digits_after = false;
    int total_digits = 0;
    for (char c : text) {
      if (c == '.') {
        if (seen_dot) throw Error(ErrorCode::ParseError, "bad decimal string '" + std::string(text) + "'");
        seen_dot = true;
        continue;
      }
      if (c < '0' || c > '9')
        throw Error(ErrorCode::ParseError, "bad decimal string '" + std::string(text) + "'");
      if (++total_digits > 36)
        throw Error(ErrorCode::Overflow, "decimal string too long '" + std::string(text) + "'");
      num = num * 10 + (c - '0');
      if (seen_dot) {
        den *= 10;
        digits_after = true;
      } else {
        digits_before = true;
      }
    }
    if (!digits_before || (seen_dot && !digits_after))
      throw Error(ErrorCode::ParseError, "bad decimal string '" + std::string(text) + "'");
    return make(num, den);
  }

private:
  static Rational make(detail::int128 num, detail::int128 den) {
    using detail::int128;
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    int128 g = detail::gcd128(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    constexpr int128 kMax = INT64_MAX;
    if (num > kMax || num < -kMax || den > kMax)
      throw Error(ErrorCode::Overflow, "rational out of 64-bit range");
    Rational r;
    r.num_ = static_cast<long long>(num);
    r.den_ = static_cast<long long>(den);
    return r;
  }

  long long num_ = 0;
  long long den_ = 1;
};

}  // namespace mapspan
