#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pqlab/errors.hpp"

namespace pqlab::rsa {

struct RsaPublicKey {
  std::uint64_t d = 0;  // public exponent
  std::uint64_t n = 0;  // modulus
};

struct RsaPrivateKey {
  std::uint64_t g = 0;  // private exponent
  std::uint64_t n = 0;
};

struct RsaKeyPair {
  RsaPublicKey pub;
  RsaPrivateKey priv;
};

/// Diagnostic variant of the keygen result; the transient values p, q and
/// phi(n) are exposed for tests only and are not part of any key.
struct RsaKeygenTrace {
  RsaKeyPair keys;
  std::uint64_t p = 0;
  std::uint64_t q = 0;
  std::uint64_t phi = 0;
};

/// Message as a sequence of numeric blocks, each below the modulus in use.
/// block_width is the (even) number of decimal digits used when rendering.
struct BlockMessage {
  std::vector<std::uint64_t> blocks;
  int block_width = 2;

  bool operator==(const BlockMessage&) const = default;
};

/// n = p*q, d = g^-1 mod (p-1)(q-1); the factors and phi(n) are dropped.
RsaKeyPair rsa_keygen(std::uint64_t p, std::uint64_t q, std::uint64_t g);
RsaKeygenTrace rsa_keygen_traced(std::uint64_t p, std::uint64_t q, std::uint64_t g);

/// Widest even digit count w such that w/2 repetitions of "26" stay below n.
int encode_block_width(std::uint64_t n);

/// Letter coding blank=00, A=01, ..., Z=26 (case-folded), concatenated and
/// split into encode_block_width(n)-digit blocks; the last block is padded
/// with "00".
BlockMessage encode_text(const std::string& text, std::uint64_t n);

/// Inverse of encode_text up to trailing blanks.
std::string decode_text(const BlockMessage& msg);

BlockMessage rsa_encrypt(const BlockMessage& msg, const RsaPublicKey& key);
BlockMessage rsa_decrypt(const BlockMessage& ct, const RsaPrivateKey& key);

/// Naive signature: sig = digest^g mod n, checked by sig^d mod n == digest.
std::uint64_t rsa_sign(std::uint64_t digest, const RsaPrivateKey& key);
bool rsa_verify(std::uint64_t digest, std::uint64_t sig, const RsaPublicKey& key);

/// Space-separated zero-padded decimal blocks, e.g. "0948 2342".
std::string render_blocks(const BlockMessage& msg);
BlockMessage parse_blocks(const std::string& text, std::uint64_t n);

}  // namespace pqlab::rsa
