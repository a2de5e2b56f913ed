#pragma once

#include <cstdint>
#include <vector>

#include "pqlab/errors.hpp"
#include "pqlab/rng.hpp"

namespace pqlab::ecc {

/// Short Weierstrass curve y^2 = x^3 + ax + b over F_p, p > 3 prime,
/// with 4a^3 + 27b^2 != 0 mod p.
struct CurveParams {
  std::uint64_t p = 0;
  std::uint64_t a = 0;
  std::uint64_t b = 0;

  void validate() const;
  bool operator==(const CurveParams&) const = default;
};

/// Affine point or the far point (the group's neutral element).
struct CurvePoint {
  bool inf = true;
  std::uint64_t x = 0;
  std::uint64_t y = 0;

  static CurvePoint infinity() { return CurvePoint{}; }
  static CurvePoint affine(std::uint64_t x, std::uint64_t y) {
    return CurvePoint{false, x, y};
  }
  bool operator==(const CurvePoint&) const = default;
};

/// Small preset over F_97 with a prime-order group (order 89), suitable for
/// exhaustive checks: y^2 = x^3 + x + 4, generator (0, 2).
struct CurvePreset {
  CurveParams curve;
  CurvePoint generator;
  std::uint64_t order;
};
CurvePreset preset_f97();

/// Larger preset for signature work where a 89-element group would make
/// accidental verification collisions routine: y^2 = x^3 + 5 over
/// F_1000003, prime group order 999007, generator (1, 413233).
CurvePreset preset_f1000003();

bool on_curve(const CurvePoint& pt, const CurveParams& c);

/// Reflection across the x-axis (the group inverse).
CurvePoint negate(const CurvePoint& pt, const CurveParams& c);

/// The curve composition: chord rule for distinct points, tangent rule for
/// doubling, with the far point as neutral element.
CurvePoint compose(const CurvePoint& P, const CurvePoint& Q, const CurveParams& c);

/// G composed with itself s times (s = 0 gives the neutral element).
CurvePoint point_pow(const CurvePoint& G, std::uint64_t s, const CurveParams& c);

/// Smallest k >= 1 with G^k neutral; brute force.
std::uint64_t point_order(const CurvePoint& G, const CurveParams& c);

/// Smallest s >= 1 with G^s = P; throws NoLogarithm if P is not a power of G.
std::uint64_t ec_dlog_bruteforce(const CurvePoint& G, const CurvePoint& P,
                                 const CurveParams& c);

/// their_public^my_private — both parties land on the same point.
CurvePoint ecdh_shared(std::uint64_t my_private, const CurvePoint& their_public,
                       const CurveParams& c);

/// All points of the curve, the far point first. Brute force over F_p.
std::vector<CurvePoint> enumerate_points(const CurveParams& c);

struct EcdsaSignature {
  std::uint64_t r = 0;
  std::uint64_t s = 0;
  bool operator==(const EcdsaSignature&) const = default;
};

/// Textbook ECDSA over a generator of known prime order; the nonce comes
/// from the injected stream and is resampled if r or s vanishes.
EcdsaSignature ecdsa_sign(std::uint64_t digest, std::uint64_t private_key,
                          const CurvePoint& G, std::uint64_t order,
                          const CurveParams& c, RngStream& rng);
bool ecdsa_verify(std::uint64_t digest, const EcdsaSignature& sig,
                  const CurvePoint& public_key, const CurvePoint& G,
                  std::uint64_t order, const CurveParams& c);

/// Minimal ElGamal-style encryption on the curve. The plaintext is carried
/// in the x-coordinate of an embedded point; decryption recovers the point
/// and projects back. Reconstructed to the extent the scheme is standard;
/// the embedding is try-and-increment with a small expansion factor.
struct ElGamalCiphertext {
  CurvePoint c1;
  CurvePoint c2;
};

inline constexpr std::uint64_t kEmbedExpansion = 8;

CurvePoint embed_message(std::uint64_t m, const CurveParams& c);
std::uint64_t unembed_point(const CurvePoint& pt);
ElGamalCiphertext elgamal_encrypt(std::uint64_t m, const CurvePoint& public_key,
                                  const CurvePoint& G, std::uint64_t order,
                                  const CurveParams& c, RngStream& rng);
std::uint64_t elgamal_decrypt(const ElGamalCiphertext& ct, std::uint64_t private_key,
                              const CurveParams& c);

}  // namespace pqlab::ecc
