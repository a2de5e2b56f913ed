#include "pqlab/kyber.hpp"

#include "pqlab/xof.hpp"

namespace pqlab::kyber {

namespace {

using namespace pqlab::poly;

void validate(const KyberParams& p) {
  if (p.n == 0 || p.q < 2 || p.k == 0 || p.eta < 0)
    throw DomainError("invalid parameters");
}

Bytes bits_to_bytes(std::string_view bits) {
  Bytes out((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i] == '1') out[i >> 3] |= std::uint8_t(1u << (i & 7));
  return out;
}

}  // namespace

RingElem sample_error_elem(const KyberParams& p, RngStream& rng) {
  RingElem e = ring_zero(p.n, p.q);
  for (std::uint32_t i = 0; i < p.n; ++i) {
    // Centered binomial: difference of eta coin sums lands in [-eta, eta].
    std::int64_t v = 0;
    for (std::int64_t b = 0; b < p.eta; ++b) v += static_cast<std::int64_t>(rng.uniform_below(2));
    for (std::int64_t b = 0; b < p.eta; ++b) v -= static_cast<std::int64_t>(rng.uniform_below(2));
    e.c[i] = v < 0 ? v + static_cast<std::int64_t>(p.q) : v;
  }
  return e;
}

RingVec sample_error_vec(const KyberParams& p, RngStream& rng) {
  RingVec v;
  for (std::uint32_t i = 0; i < p.k; ++i) v.e.push_back(sample_error_elem(p, rng));
  return v;
}

RingElem sample_uniform_elem(const KyberParams& p, RngStream& rng) {
  RingElem e = ring_zero(p.n, p.q);
  for (auto& c : e.c) c = static_cast<std::int64_t>(rng.uniform_below(p.q));
  return e;
}

EncryptionRandomness sample_encryption_randomness(const KyberParams& p, RngStream& rng) {
  EncryptionRandomness r;
  r.r = sample_error_vec(p, rng);
  r.e1 = sample_error_vec(p, rng);
  r.e2 = sample_error_elem(p, rng);
  return r;
}

KyberKeyPair keygen(const KyberParams& p, RngStream& rng) {
  validate(p);
  RingMat A{p.k, p.k, {}};
  A.e.reserve(static_cast<std::size_t>(p.k) * p.k);
  for (std::uint32_t i = 0; i < p.k * p.k; ++i) A.e.push_back(sample_uniform_elem(p, rng));
  RingVec s = sample_error_vec(p, rng);
  RingVec e = sample_error_vec(p, rng);
  return keygen_from(p, std::move(s), std::move(A), std::move(e));
}

KyberKeyPair keygen_from(const KyberParams& p, RingVec s, RingMat A, RingVec e) {
  validate(p);
  if (s.size() != p.k || e.size() != p.k || A.rows != p.k || A.cols != p.k)
    throw DomainError("shape mismatch");
  RingVec t = vec_add(matvec(A, s), e);
  KyberKeyPair kp;
  kp.pub = KyberPublicKey{p, std::move(A), std::move(t)};
  kp.priv = KyberPrivateKey{p, std::move(s)};
  kp.keygen_error = std::move(e);
  return kp;
}

KyberCiphertext encrypt(const KyberPublicKey& pub, std::string_view message_bits,
                        const EncryptionRandomness& rand) {
  const KyberParams& p = pub.params;
  if (message_bits.size() > p.n) throw DomainError("message longer than n bits");
  if (rand.r.size() != p.k || rand.e1.size() != p.k)
    throw DomainError("randomness shape mismatch");
  const RingElem scaled = scale_half_q(bits_to_poly(message_bits, p.n, p.q));
  KyberCiphertext ct;
  ct.u = vec_add(matvec(transpose(pub.A), rand.r), rand.e1);
  ct.v = ring_add(ring_add(dot(pub.t, rand.r), rand.e2), scaled);
  return ct;
}

RingElem decrypt_pre_round(const KyberPrivateKey& priv, const KyberCiphertext& ct) {
  return ring_sub(ct.v, dot(priv.s, ct.u));
}

std::string decrypt(const KyberPrivateKey& priv, const KyberCiphertext& ct) {
  return poly_to_bits(round_coeffs(decrypt_pre_round(priv, ct)));
}

RingElem noise_term(const KyberPrivateKey& priv, const RingVec& keygen_error,
                    const EncryptionRandomness& rand) {
  return ring_sub(ring_add(dot(keygen_error, rand.r), rand.e2), dot(priv.s, rand.e1));
}

Bytes ciphertext_bytes(const KyberCiphertext& ct) {
  Bytes out = pack_coeffs(ct.u);
  Bytes v = pack_coeffs(ct.v);
  append(out, v);
  return out;
}

KyberCiphertext ciphertext_from_bytes(const KyberParams& p, ByteView in) {
  const std::size_t u_len = packed_size(p.k, p.n, p.q);
  const std::size_t v_len = packed_size(1, p.n, p.q);
  if (in.size() != u_len + v_len) throw ParseError("ciphertext length mismatch");
  KyberCiphertext ct;
  ct.u = unpack_vec(in.first(u_len), p.k, p.n, p.q);
  ct.v = unpack_elem(in.subspan(u_len), p.n, p.q);
  return ct;
}

Bytes public_key_bytes(const KyberPublicKey& pub) {
  RingVec all;
  all.e = pub.A.e;
  for (const auto& e : pub.t.e) all.e.push_back(e);
  return pack_coeffs(all);
}

KyberPublicKey public_key_from_bytes(const KyberParams& p, ByteView in) {
  const std::size_t total = static_cast<std::size_t>(p.k) * p.k + p.k;
  if (in.size() != packed_size(total, p.n, p.q))
    throw ParseError("public key length mismatch");
  RingVec all = unpack_vec(in, total, p.n, p.q);
  KyberPublicKey pub;
  pub.params = p;
  pub.A = RingMat{p.k, p.k, {all.e.begin(), all.e.begin() + p.k * p.k}};
  pub.t = RingVec{{all.e.begin() + p.k * p.k, all.e.end()}};
  return pub;
}

KemResult kem_encapsulate(const KyberPublicKey& pub, RngStream& rng) {
  const KyberParams& p = pub.params;
  if (p.n < 32) throw DomainError("KEM needs at least 32 bits of message capacity");
  std::string secret_bits(p.n, '0');
  for (auto& b : secret_bits) b = rng.uniform_below(2) ? '1' : '0';
  KemResult res;
  res.ct = encrypt(pub, secret_bits, sample_encryption_randomness(p, rng));
  Bytes input = bits_to_bytes(secret_bits);
  append(input, ciphertext_bytes(res.ct));
  res.shared_secret = shake256(input, 32);
  return res;
}

Bytes kem_decapsulate(const KyberPrivateKey& priv, const KyberCiphertext& ct) {
  const std::string bits = decrypt(priv, ct);
  Bytes input = bits_to_bytes(bits);
  append(input, ciphertext_bytes(ct));
  return shake256(input, 32);
}

}  // namespace pqlab::kyber
