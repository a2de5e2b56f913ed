#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "pqlab/errors.hpp"

namespace pqlab {

/// Exact rational number on 128-bit components, always normalized with a
/// positive denominator. Ample headroom for the small exact linear algebra
/// done here; correctness paths never touch floating point.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  constexpr Rational(long long v) : num_(v), den_(1) {}  // NOLINT(implicit)
  Rational(long long num, long long den);

  static Rational from_parts(__int128 num, __int128 den);

  __int128 num() const { return num_; }
  __int128 den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  Rational operator-() const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  std::strong_ordering operator<=>(const Rational& o) const;

  /// Largest integer <= value.
  __int128 floor() const;

  /// Nearest integer; exact halves round toward +infinity.
  __int128 round_half_up() const;

  Rational abs() const;
  double to_double() const;
  std::string to_string() const;

 private:
  Rational(__int128 num, __int128 den, int);  // pre-normalized internal ctor
  void normalize();

  __int128 num_;
  __int128 den_;
};

}  // namespace pqlab
