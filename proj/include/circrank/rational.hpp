#pragma once

// Exact rational arithmetic on 64-bit numerator/denominator pairs.
// Values are always kept reduced with a positive denominator, and every
// operation that could leave the 64-bit range throws std::overflow_error
// instead of wrapping.  Intermediates are computed in 128 bits, which is
// wide enough that overflow can only occur when narrowing the reduced
// result back to 64 bits.

#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace circrank {

namespace detail {

using int128 = __int128;

inline int128 abs128(int128 v) { return v < 0 ? -v : v; }

inline int128 gcd128(int128 a, int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline long long narrow128(int128 v) {
  if (v > std::numeric_limits<long long>::max() ||
      v < std::numeric_limits<long long>::min()) {
    throw std::overflow_error("rational arithmetic overflow");
  }
  return static_cast<long long>(v);
}

}  // namespace detail

class Rational {
 public:
  constexpr Rational() = default;
  Rational(long long value) : num_(value) {}  // NOLINT: implicit by design
  Rational(long long num, long long den) { assign(num, den); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  bool is_negative() const { return num_ < 0; }

  /// Numeric value when den() == 1; throws otherwise.
  long long as_integer() const {
    if (den_ != 1) throw std::domain_error("rational is not an integer");
    return num_;
  }

  Rational operator-() const {
    Rational r;
    r.num_ = detail::narrow128(-detail::int128(num_));
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(detail::int128(a.num_) * b.den_ + detail::int128(b.num_) * a.den_,
                detail::int128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make(detail::int128(a.num_) * b.den_ - detail::int128(b.num_) * a.den_,
                detail::int128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(detail::int128(a.num_) * b.num_, detail::int128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return make(detail::int128(a.num_) * b.den_, detail::int128(a.den_) * b.num_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return detail::int128(a.num_) * b.den_ < detail::int128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  /// "p/q" for non-integers, plain "p" otherwise.
  std::string str() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) {
      s += '/';
      s += std::to_string(den_);
    }
    return s;
  }

  /// Accepts integer ("3", "-7"), fraction ("3/4"), and decimal ("1.5",
  /// ".25") literals.
  static Rational parse(std::string_view text);

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

 private:
  static Rational make(detail::int128 num, detail::int128 den) {
    Rational r;
    r.assign128(num, den);
    return r;
  }

  void assign(long long num, long long den) {
    assign128(detail::int128(num), detail::int128(den));
  }

  void assign128(detail::int128 num, detail::int128 den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    detail::int128 g = detail::gcd128(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    num_ = detail::narrow128(num);
    den_ = detail::narrow128(den);
  }

  long long num_ = 0;
  long long den_ = 1;
};

inline Rational Rational::parse(std::string_view text) {
  auto fail = [&] {
    throw std::invalid_argument("malformed rational literal: '" + std::string(text) + "'");
  };
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  skip_ws();
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  auto read_digits = [&](detail::int128& out) -> std::size_t {
    std::size_t count = 0;
    out = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      if (++count > 38) throw std::overflow_error("rational literal too long");
      out = out * 10 + (text[pos] - '0');
      ++pos;
    }
    return count;
  };
  detail::int128 whole = 0;
  std::size_t whole_digits = read_digits(whole);
  detail::int128 num = whole;
  detail::int128 den = 1;
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    if (whole_digits == 0) fail();
    if (read_digits(den) == 0) fail();
  } else if (pos < text.size() && text[pos] == '.') {
    ++pos;
    detail::int128 frac = 0;
    std::size_t frac_digits = read_digits(frac);
    if (whole_digits == 0 && frac_digits == 0) fail();
    for (std::size_t i = 0; i < frac_digits; ++i) den *= 10;
    num = whole * den + frac;
  } else if (whole_digits == 0) {
    fail();
  }
  skip_ws();
  if (pos != text.size()) fail();
  if (negative) num = -num;
  return make(num, den);
}

/// Checked least common multiple of two positive integers.
inline long long checked_lcm(long long a, long long b) {
  if (a <= 0 || b <= 0) throw std::domain_error("lcm of non-positive values");
  long long g = static_cast<long long>(detail::gcd128(a, b));
  return detail::narrow128(detail::int128(a) / g * b);
}

/// Least common denominator of a set of rationals (1 for an empty set).
inline long long common_denominator(const std::vector<Rational>& values) {
  long long lcd = 1;
  for (const Rational& v : values) lcd = checked_lcm(lcd, v.den());
  return lcd;
}

}  // namespace circrank
