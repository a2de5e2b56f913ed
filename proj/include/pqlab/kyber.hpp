#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "pqlab/bytes.hpp"
#include "pqlab/polyring.hpp"
#include "pqlab/rng.hpp"

namespace pqlab::kyber {

using poly::RingElem;
using poly::RingMat;
using poly::RingVec;

struct KyberParams {
  std::uint32_t n = 0;
  std::uint64_t q = 0;
  std::uint32_t k = 0;
  std::int64_t eta = 0;  // error magnitude bound

  bool operator==(const KyberParams&) const = default;
};

/// Tiny parameters for exhaustive study and traceable runs.
inline constexpr KyberParams kParamsToy{4, 7, 2, 1};
inline constexpr KyberParams kParams512{256, 3329, 2, 2};
inline constexpr KyberParams kParams768{256, 3329, 3, 2};
inline constexpr KyberParams kParams1024{256, 3329, 4, 2};

struct KyberPublicKey {
  KyberParams params;
  RingMat A;  // k x k
  RingVec t;  // A*s + e
};

struct KyberPrivateKey {
  KyberParams params;
  RingVec s;
};

struct KyberKeyPair {
  KyberPublicKey pub;
  KyberPrivateKey priv;
  RingVec keygen_error;  // the e used to form t; kept for noise diagnostics
};

struct KyberCiphertext {
  RingVec u;
  RingElem v;

  bool operator==(const KyberCiphertext&) const = default;
};

struct EncryptionRandomness {
  RingVec r;   // randomizer
  RingVec e1;
  RingElem e2;
};

/// Centered-binomial sample with each coefficient in [-eta, eta], mapped
/// into [0, q).
RingElem sample_error_elem(const KyberParams& p, RngStream& rng);
RingVec sample_error_vec(const KyberParams& p, RngStream& rng);
RingElem sample_uniform_elem(const KyberParams& p, RngStream& rng);
EncryptionRandomness sample_encryption_randomness(const KyberParams& p, RngStream& rng);

KyberKeyPair keygen(const KyberParams& p, RngStream& rng);

/// Deterministic assembly from explicit inputs (worked examples, tests).
KyberKeyPair keygen_from(const KyberParams& p, RingVec s, RingMat A, RingVec e);

/// u = A^T r + e1,  v = t^T r + e2 + scale(m). The message is a bit string
/// of at most n bits.
KyberCiphertext encrypt(const KyberPublicKey& pub, std::string_view message_bits,
                        const EncryptionRandomness& rand);

/// m_hat = v - s^T u, rounded to bits. Always returns exactly n bits.
std::string decrypt(const KyberPrivateKey& priv, const KyberCiphertext& ct);

/// The decryption noise e^T r + e2 - s^T e1; m_hat equals the scaled
/// message plus this term, identically.
RingElem noise_term(const KyberPrivateKey& priv, const RingVec& keygen_error,
                    const EncryptionRandomness& rand);

/// m_hat itself, for traces.
RingElem decrypt_pre_round(const KyberPrivateKey& priv, const KyberCiphertext& ct);

Bytes ciphertext_bytes(const KyberCiphertext& ct);
KyberCiphertext ciphertext_from_bytes(const KyberParams& p, ByteView in);
Bytes public_key_bytes(const KyberPublicKey& pub);
KyberPublicKey public_key_from_bytes(const KyberParams& p, ByteView in);

struct KemResult {
  Bytes shared_secret;  // 32 bytes
  KyberCiphertext ct;
};

/// Encrypts a fresh random n-bit secret and hashes it together with the
/// ciphertext bytes into the shared secret. Needs n >= 32.
KemResult kem_encapsulate(const KyberPublicKey& pub, RngStream& rng);

/// Recovers the same 32 bytes for honest ciphertexts; a tampered ciphertext
/// silently yields a different secret (implicit rejection).
Bytes kem_decapsulate(const KyberPrivateKey& priv, const KyberCiphertext& ct);

}  // namespace pqlab::kyber
