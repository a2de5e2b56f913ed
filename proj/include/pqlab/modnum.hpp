#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pqlab/errors.hpp"

namespace pqlab::modnum {

/// A value reduced into [0, modulus).
struct Residue {
  std::uint64_t value = 0;
  std::uint64_t modulus = 1;

  bool operator==(const Residue&) const = default;
};

/// Witness for g = gcd(a, b) together with coefficients x, y such that
/// a*x + b*y = g. The coefficient pair is not unique; the certificate is
/// checked through the identity, not through specific values.
struct BezoutCertificate {
  std::uint64_t g = 0;
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::uint64_t a = 0;
  std::uint64_t b = 0;

  bool holds() const;
};

/// Prime-power decomposition with strictly increasing primes.
struct Factorization {
  std::vector<std::pair<std::uint64_t, std::uint32_t>> factors;

  std::uint64_t product() const;
};

/// Remainder of a divided by n with floor semantics, always in [0, n).
Residue mod_reduce(std::int64_t a, std::uint64_t n);

/// True iff a and b leave the same remainder mod n.
bool congruent(std::int64_t a, std::int64_t b, std::uint64_t n);

/// True iff m is an integer multiple of n.
bool divides(std::uint64_t n, std::int64_t m);

/// Greatest common divisor by the Euclidean remainder chain. (0,0) is a
/// domain error.
std::uint64_t gcd(std::uint64_t a, std::uint64_t b);

/// Extended Euclid; see BezoutCertificate.
BezoutCertificate bezout(std::uint64_t a, std::uint64_t b);

/// Solves a*x == 1 (mod m) for coprime inputs; throws NotInvertible otherwise.
Residue mod_inverse(std::int64_t a, std::uint64_t m);

/// a^x mod n by square-and-multiply, every intermediate reduced.
Residue mod_pow(std::uint64_t a, std::uint64_t x, std::uint64_t n);

/// Smallest p >= 1 with a^p == 1 (mod n); requires 0 < a < n and
/// gcd(a, n) = 1 (throws NotPeriodic otherwise).
std::uint64_t period(std::uint64_t a, std::uint64_t n);

/// Smallest y >= 0 with a^y == x (mod n); throws NoLogarithm if no such
/// exponent appears within one full cycle of powers.
std::uint64_t discrete_log(std::uint64_t a, std::uint64_t x, std::uint64_t n);

/// Prime factorization by trial division; n >= 2.
Factorization factorize(std::uint64_t n);

/// Deterministic trial division; suitable below 2^64 at this project's scale.
bool is_prime(std::uint64_t n);

/// (a * b) mod n without overflow.
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t n);

}  // namespace pqlab::modnum
