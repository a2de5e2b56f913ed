#include "pqlab/modnum.hpp"

namespace pqlab::modnum {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

void require_modulus(std::uint64_t n) {
  if (n == 0) throw DomainError("modulus must be positive");
}

}  // namespace

bool BezoutCertificate::holds() const {
  i128 lhs = i128(a) * x + i128(b) * y;
  if (lhs != i128(g)) return false;
  if (g == 0) return a == 0 && b == 0;
  return a % g == 0 && b % g == 0;
}

std::uint64_t Factorization::product() const {
  u128 prod = 1;
  for (auto [p, e] : factors)
    for (std::uint32_t i = 0; i < e; ++i) prod *= p;
  return static_cast<std::uint64_t>(prod);
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  require_modulus(n);
  return static_cast<std::uint64_t>(u128(a) * b % n);
}

Residue mod_reduce(std::int64_t a, std::uint64_t n) {
  require_modulus(n);
  i128 r = i128(a) % i128(n);
  if (r < 0) r += i128(n);
  return Residue{static_cast<std::uint64_t>(r), n};
}

bool congruent(std::int64_t a, std::int64_t b, std::uint64_t n) {
  return mod_reduce(a, n).value == mod_reduce(b, n).value;
}

bool divides(std::uint64_t n, std::int64_t m) {
  if (n == 0) return false;
  return m % static_cast<std::int64_t>(n) == 0;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  if (a == 0 && b == 0) throw DomainError("gcd(0, 0) is undefined");
  while (b != 0) {
    std::uint64_t r = a % b;
    a = b;
    b = r;
  }
  return a;
}

BezoutCertificate bezout(std::uint64_t a, std::uint64_t b) {
  if (a == 0 && b == 0) throw DomainError("bezout(0, 0) is undefined");
  // Iterative extended Euclid on (r, x, y) with r = a*x + b*y throughout.
  i128 r0 = a, r1 = b;
  i128 x0 = 1, x1 = 0;
  i128 y0 = 0, y1 = 1;
  while (r1 != 0) {
    i128 q = r0 / r1;
    r0 -= q * r1;
    std::swap(r0, r1);
    x0 -= q * x1;
    std::swap(x0, x1);
    y0 -= q * y1;
    std::swap(y0, y1);
  }
  return BezoutCertificate{static_cast<std::uint64_t>(r0), static_cast<std::int64_t>(x0),
                           static_cast<std::int64_t>(y0), a, b};
}

Residue mod_inverse(std::int64_t a, std::uint64_t m) {
  require_modulus(m);
  std::uint64_t ar = mod_reduce(a, m).value;
  if (m == 1) return Residue{0, 1};  // the one-element ring
  BezoutCertificate cert = bezout(ar, m);
  if (cert.g != 1) throw NotInvertible("no inverse: gcd(a, m) != 1");
  i128 x = cert.x % i128(m);
  if (x < 0) x += i128(m);
  return Residue{static_cast<std::uint64_t>(x), m};
}

Residue mod_pow(std::uint64_t a, std::uint64_t x, std::uint64_t n) {
  require_modulus(n);
  std::uint64_t base = a % n;
  std::uint64_t acc = 1 % n;
  while (x != 0) {
    if (x & 1) acc = mul_mod(acc, base, n);
    base = mul_mod(base, base, n);
    x >>= 1;
  }
  return Residue{acc, n};
}

std::uint64_t period(std::uint64_t a, std::uint64_t n) {
  if (n == 0 || a == 0 || a >= n) throw DomainError("period requires 0 < a < n");
  if (gcd(a, n) != 1) throw NotPeriodic("exp_a is periodic only for gcd(a, n) = 1");
  std::uint64_t v = a % n;
  std::uint64_t p = 1;
  while (v != 1 % n) {
    v = mul_mod(v, a, n);
    ++p;
  }
  return p;
}

std::uint64_t discrete_log(std::uint64_t a, std::uint64_t x, std::uint64_t n) {
  if (n == 0 || a == 0 || a >= n) throw DomainError("discrete_log requires 0 < a < n");
  std::uint64_t target = x % n;
  std::uint64_t v = 1 % n;
  // The power sequence enters a cycle within n steps, so n+1 values cover
  // every reachable residue.
  for (std::uint64_t y = 0; y <= n; ++y) {
    if (v == target) return y;
    v = mul_mod(v, a, n);
  }
  throw NoLogarithm("x is not a power of a modulo n");
}

Factorization factorize(std::uint64_t n) {
  if (n < 2) throw DomainError("factorize requires n >= 2");
  Factorization f;
  auto push = [&f](std::uint64_t p, std::uint32_t e) {
    if (e > 0) f.factors.emplace_back(p, e);
  };
  std::uint32_t e = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++e;
  }
  push(2, e);
  e = 0;
  while (n % 3 == 0) {
    n /= 3;
    ++e;
  }
  push(3, e);
  for (std::uint64_t d = 5; d <= n / d; d += 6) {
    for (std::uint64_t cand : {d, d + 2}) {
      e = 0;
      while (n % cand == 0) {
        n /= cand;
        ++e;
      }
      push(cand, e);
    }
  }
  if (n > 1) push(n, 1);
  return f;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (std::uint64_t d = 5; d <= n / d; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

}  // namespace pqlab::modnum
