#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "pqlab/bytes.hpp"
#include "pqlab/errors.hpp"

namespace pqlab::poly {

/// Polynomial with ascending coefficients. modulus >= 2 keeps every
/// coefficient canonical in [0, modulus); modulus == 0 means plain integer
/// coefficients (used by division exercises and some tests).
struct Poly {
  std::uint64_t modulus = 0;
  std::vector<std::int64_t> coeffs;  // trailing zeros trimmed

  /// Degree of the polynomial; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }
  bool operator==(const Poly&) const = default;
};

Poly make_poly(std::uint64_t modulus, std::vector<std::int64_t> ascending);

Poly poly_add(const Poly& p, const Poly& r);
Poly poly_sub(const Poly& p, const Poly& r);
Poly poly_mul(const Poly& p, const Poly& r);

struct PolyDivMod {
  Poly quotient;
  Poly remainder;
};

/// Long division p = quotient*f + remainder with deg remainder < deg f.
/// Requires the leading coefficient of f to be invertible (always true for
/// monic f, prime modulus, or +-1 over the integers).
PolyDivMod poly_divmod(const Poly& p, const Poly& f);

/// Element of R_q = Z_q[X]/(X^n + 1): exactly n coefficients in [0, q),
/// ascending degree.
struct RingElem {
  std::uint32_t n = 0;
  std::uint64_t q = 0;
  std::vector<std::int64_t> c;

  bool operator==(const RingElem&) const = default;
};

RingElem ring_zero(std::uint32_t n, std::uint64_t q);
RingElem ring_one(std::uint32_t n, std::uint64_t q);
RingElem make_ring_elem(std::uint32_t n, std::uint64_t q,
                        std::vector<std::int64_t> ascending);

/// Folds X^(n+j) -> -X^j until the degree is below n; equal to the
/// remainder of division by X^n + 1.
RingElem reduce_negacyclic(const Poly& p, std::uint32_t n);

RingElem ring_add(const RingElem& a, const RingElem& b);
RingElem ring_sub(const RingElem& a, const RingElem& b);
RingElem ring_mul(const RingElem& a, const RingElem& b);
RingElem ring_neg(const RingElem& a);

/// Vector over R_q with uniform (n, q).
struct RingVec {
  std::vector<RingElem> e;

  std::size_t size() const { return e.size(); }
  const RingElem& operator[](std::size_t i) const { return e[i]; }
  RingElem& operator[](std::size_t i) { return e[i]; }
  bool operator==(const RingVec&) const = default;
};

/// Row-major matrix over R_q.
struct RingMat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<RingElem> e;

  const RingElem& at(std::size_t i, std::size_t j) const { return e[i * cols + j]; }
  RingElem& at(std::size_t i, std::size_t j) { return e[i * cols + j]; }
  bool operator==(const RingMat&) const = default;
};

RingVec vec_add(const RingVec& a, const RingVec& b);
RingVec vec_sub(const RingVec& a, const RingVec& b);
RingElem dot(const RingVec& a, const RingVec& b);
RingVec matvec(const RingMat& m, const RingVec& v);
RingMat matmul(const RingMat& a, const RingMat& b);
RingMat transpose(const RingMat& m);
RingVec scale_vec(const RingElem& c, const RingVec& v);

/// "1001" -> X^3 + 1: the leftmost bit becomes the highest-degree
/// coefficient. At most n bits.
RingElem bits_to_poly(std::string_view bits, std::uint32_t n, std::uint64_t q);

/// Inverse of bits_to_poly for 0/1 polynomials; always emits exactly n bits.
std::string poly_to_bits(const RingElem& p);

/// Round-half-up of q/2 (the scheme convention treats x.5 as x+1).
std::uint64_t half_q(std::uint64_t q);

/// Multiplies a 0/1 polynomial by half_q(q).
RingElem scale_half_q(const RingElem& p);

/// Rounding rho: coefficient -> 1 iff it is at least as close to half_q(q)
/// as to 0 in the circular distance mod q; result has 0/1 coefficients.
RingElem round_coeffs(const RingElem& p);

/// Same decision as round_coeffs but keeps the values {0, half_q(q)}.
RingElem round_to_half(const RingElem& p);

/// Centered representative of c mod q in (-q/2, q/2].
std::int64_t centered(std::int64_t c, std::uint64_t q);

/// Max |centered coefficient|.
std::int64_t inf_norm_centered(const RingElem& p);
std::int64_t inf_norm_centered(const RingVec& v);

/// Display form, descending degree, e.g. "3x^3+6x^2+6x+3". With centered
/// set, coefficients print as their centered representatives.
std::string render(const RingElem& p, bool centered_form = false);
std::string render(const Poly& p);

/// Fixed-width little-endian bit packing of coefficients, ascending degree,
/// bits_per_coeff = ceil(log2 q).
std::uint32_t coeff_bits(std::uint64_t q);
Bytes pack_coeffs(const RingElem& p);
Bytes pack_coeffs(const RingVec& v);
RingElem unpack_elem(ByteView in, std::uint32_t n, std::uint64_t q);
RingVec unpack_vec(ByteView in, std::size_t k, std::uint32_t n, std::uint64_t q);
std::size_t packed_size(std::size_t elems, std::uint32_t n, std::uint64_t q);

}  // namespace pqlab::poly
