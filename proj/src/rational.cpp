#include "pqlab/rational.hpp"

namespace pqlab {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

}  // namespace

Rational::Rational(long long num, long long den) : num_(num), den_(den) { normalize(); }

Rational::Rational(__int128 num, __int128 den, int) : num_(num), den_(den) {}

Rational Rational::from_parts(__int128 num, __int128 den) {
  Rational r(num, den, 0);
  r.normalize();
  return r;
}

void Rational::normalize() {
  if (den_ == 0) throw DomainError("rational with zero denominator");
  if (den_ < 0) {
    den_ = -den_;
    num_ = -num_;
  }
  __int128 g = gcd128(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ == 0) den_ = 1;
}

Rational Rational::operator-() const { return Rational(-num_, den_, 0); }

Rational Rational::operator+(const Rational& o) const {
  return from_parts(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
  return from_parts(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
  return from_parts(num_ * o.num_, den_ * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw DomainError("rational division by zero");
  return from_parts(num_ * o.den_, den_ * o.num_);
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
  __int128 lhs = num_ * o.den_;
  __int128 rhs = o.num_ * den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

__int128 Rational::floor() const {
  __int128 q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

__int128 Rational::round_half_up() const {
  // floor(x + 1/2)
  return Rational(num_ * 2 + den_, den_ * 2, 0).floor();
}

Rational Rational::abs() const { return num_ < 0 ? -*this : *this; }

double Rational::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::to_string() const {
  auto digits = [](__int128 v) {
    if (v == 0) return std::string("0");
    bool neg = v < 0;
    if (neg) v = -v;
    std::string s;
    while (v != 0) {
      s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
      v /= 10;
    }
    if (neg) s.insert(s.begin(), '-');
    return s;
  };
  std::string s = digits(num_);
  if (den_ != 1) s += "/" + digits(den_);
  return s;
}

}  // namespace pqlab
