#pragma once

#include <cstdint>
#include <string>

#include "tpcsp/error.hpp"

namespace tpcsp {

// 128-bit signed integer used for all exact arithmetic. Desk-scale moment
// computations stay far below this range; anything larger is a bug and must
// abort loudly instead of wrapping.
using Wide = __int128;

std::string wide_to_string(Wide v);

inline Wide checked_add(Wide a, Wide b) {
  Wide r;
  if (__builtin_add_overflow(a, b, &r)) fail(Errc::overflow, "integer overflow in addition");
  return r;
}

inline Wide checked_sub(Wide a, Wide b) {
  Wide r;
  if (__builtin_sub_overflow(a, b, &r)) fail(Errc::overflow, "integer overflow in subtraction");
  return r;
}

inline Wide checked_mul(Wide a, Wide b) {
  Wide r;
  if (__builtin_mul_overflow(a, b, &r)) fail(Errc::overflow, "integer overflow in multiplication");
  return r;
}

// Exact rational with checked 128-bit numerator/denominator.
// Invariants: den > 0 and gcd(|num|, den) == 1.
class Rational {
public:
  Rational() = default;
  Rational(long long n) : num_(n) {}  // NOLINT: implicit on purpose
  Rational(long long n, long long d) { init(n, d); }
  static Rational from_wide(Wide n, Wide d) {
    Rational r;
    r.init(n, d);
    return r;
  }

  Wide num() const { return num_; }
  Wide den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

  Rational operator-() const {
    Rational r;
    r.num_ = checked_sub(0, num_);
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from_wide(checked_add(checked_mul(a.num_, b.den_), checked_mul(b.num_, a.den_)),
                     checked_mul(a.den_, b.den_));
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_wide(checked_mul(a.num_, b.num_), checked_mul(a.den_, b.den_));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) fail(Errc::invalid_argument, "division by zero");
    return from_wide(checked_mul(a.num_, b.den_), checked_mul(a.den_, b.num_));
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return checked_mul(a.num_, b.den_) < checked_mul(b.num_, a.den_);
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  // Serialized form is always "num/den", e.g. "5/6", "0/1", "-2/3".
  std::string str() const { return wide_to_string(num_) + "/" + wide_to_string(den_); }

private:
  void init(Wide n, Wide d) {
    if (d == 0) fail(Errc::invalid_argument, "rational with zero denominator");
    if (d < 0) {
      n = checked_sub(0, n);
      d = checked_sub(0, d);
    }
    Wide g = gcd_wide(n < 0 ? checked_sub(0, n) : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    num_ = n;
    den_ = d;
  }

  static Wide gcd_wide(Wide a, Wide b) {
    while (b != 0) {
      Wide t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  Wide num_ = 0;
  Wide den_ = 1;
};

}  // namespace tpcsp
