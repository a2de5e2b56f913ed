#pragma once

#include <cstdint>
#include <vector>

#include "pqlab/bytes.hpp"
#include "pqlab/polyring.hpp"
#include "pqlab/rng.hpp"

namespace pqlab::dilithium {

using poly::RingElem;
using poly::RingMat;
using poly::RingVec;

struct DilithiumParams {
  std::uint32_t n = 0;
  std::uint64_t q = 0;
  std::uint32_t m = 0;  // rows of A, length of t
  std::uint32_t k = 0;  // cols of A, length of s and r1/r2
  std::uint32_t h = 0;  // nonzeros of a challenge
  std::int64_t eta = 0;

  bool operator==(const DilithiumParams&) const = default;
};

/// Exhaustively checkable toy parameters.
inline constexpr DilithiumParams kParamsToy{8, 257, 2, 2, 2, 1};
/// Reference modulus 2^23 - 2^13 + 1 with the three published (m, k) levels.
inline constexpr DilithiumParams kParamsLevel2{256, 8380417, 4, 4, 60, 2};
inline constexpr DilithiumParams kParamsLevel3{256, 8380417, 6, 5, 60, 2};
inline constexpr DilithiumParams kParamsLevel5{256, 8380417, 8, 7, 60, 2};

/// Ternary polynomial with exactly h nonzero coefficients, kept as a sparse
/// list of (position, sign) pairs sorted by position.
struct ChallengePoly {
  std::uint32_t n = 0;
  std::uint64_t q = 0;
  std::vector<std::pair<std::uint32_t, std::int8_t>> entries;

  RingElem to_ring() const;
  bool well_formed(const DilithiumParams& p) const;
  bool operator==(const ChallengePoly&) const = default;
};

struct DilithiumPublicKey {
  DilithiumParams params;
  RingMat A;  // m x k
  RingVec t;  // length m
};

struct DilithiumPrivateKey {
  DilithiumParams params;
  RingVec s;  // length k
};

struct DilithiumKeyPair {
  DilithiumPublicKey pub;
  DilithiumPrivateKey priv;
  RingVec keygen_error;  // e, length m; diagnostics only
};

struct DilithiumSignature {
  RingVec r2;  // length k
  ChallengePoly c;

  bool operator==(const DilithiumSignature&) const = default;
};

DilithiumKeyPair keygen(const DilithiumParams& p, RngStream& rng);
DilithiumKeyPair keygen_from(const DilithiumParams& p, RingVec s, RingMat A, RingVec e);

/// Deterministic hash onto the challenge set: an XOF stream over the input
/// drives an index shuffle that selects exactly h positions and signs.
ChallengePoly hash_to_ball(ByteView input, const DilithiumParams& p);

/// Canonical injective byte form of a rounded vector (fixed-width
/// little-endian coefficients), the second half of the hash input.
Bytes encode_w(const RingVec& w);
RingVec decode_w(ByteView in, std::size_t len, std::uint32_t n, std::uint64_t q);

struct SignResult {
  DilithiumSignature sig;
  int attempts = 0;  // how many r1 draws were needed
};

/// Signs by drawing fresh small r1 until the produced signature passes
/// local verification (the simplified rounding can be perturbed by c*e near
/// region boundaries; retrying closes that gap).
SignResult sign_traced(const DilithiumPrivateKey& priv, const DilithiumPublicKey& pub,
                       ByteView message, RngStream& rng, int max_attempts = 10000);
DilithiumSignature sign(const DilithiumPrivateKey& priv, const DilithiumPublicKey& pub,
                        ByteView message, RngStream& rng, int max_attempts = 10000);

/// w_hat = rho(A r2 - t c), c_hat = Psi(mu || w_hat); valid iff c_hat == c.
/// Malformed signatures return false.
bool verify(const DilithiumPublicKey& pub, ByteView message,
            const DilithiumSignature& sig);

Bytes signature_bytes(const DilithiumSignature& sig);
DilithiumSignature signature_from_bytes(const DilithiumParams& p, ByteView in);

}  // namespace pqlab::dilithium
