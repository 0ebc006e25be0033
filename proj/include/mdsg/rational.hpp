#pragma once

// Exact rational numbers over int64 with overflow detection.
//
// Intermediate products are formed in 128-bit integers and reduced before
// narrowing; a result that does not fit in int64 throws std::overflow_error.

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mdsg {

class Rational {
 public:
  using int_type = std::int64_t;

  constexpr Rational() = default;
  constexpr Rational(int_type value) : num_(value) {}  // NOLINT(implicit)
  Rational(int_type num, int_type den) { assign(num, den); }

  int_type num() const { return num_; }
  int_type den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  static Rational parse(std::string_view text) {
    const auto slash = text.find('/');
    auto to_int = [&](std::string_view s) {
      if (s.empty()) throw std::invalid_argument("empty rational component");
      std::size_t used = 0;
      const long long v = std::stoll(std::string(s), &used);
      if (used != s.size()) throw std::invalid_argument("bad rational: " + std::string(text));
      return static_cast<int_type>(v);
    };
    if (slash == std::string_view::npos) return Rational(to_int(text));
    return Rational(to_int(text.substr(0, slash)), to_int(text.substr(slash + 1)));
  }

  Rational operator-() const {
    if (num_ == INT64_MIN) throw std::overflow_error("rational negation overflow");
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.den_ == 1 && b.den_ == 1) return from_wide(static_cast<wide>(a.num_) + b.num_, 1);
    return from_wide(static_cast<wide>(a.num_) * b.den_ + static_cast<wide>(b.num_) * a.den_,
                     static_cast<wide>(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_wide(static_cast<wide>(a.num_) * b.num_, static_cast<wide>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return from_wide(static_cast<wide>(a.num_) * b.den_, static_cast<wide>(a.den_) * b.num_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const wide lhs = static_cast<wide>(a.num_) * b.den_;
    const wide rhs = static_cast<wide>(b.num_) * a.den_;
    return lhs <=> rhs;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  using wide = __int128;

  static wide wide_gcd(wide a, wide b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      const wide t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rational from_wide(wide num, wide den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const wide g = wide_gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num > INT64_MAX || num < -static_cast<wide>(INT64_MAX) || den > INT64_MAX)
      throw std::overflow_error("rational overflow");
    Rational r;
    r.num_ = static_cast<int_type>(num);
    r.den_ = static_cast<int_type>(den);
    return r;
  }

  void assign(int_type num, int_type den) { *this = from_wide(num, den); }

  int_type num_ = 0;
  int_type den_ = 1;
};

}  // namespace mdsg
