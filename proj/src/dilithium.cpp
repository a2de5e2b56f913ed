#include "pqlab/dilithium.hpp"

#include <algorithm>

#include "pqlab/xof.hpp"

namespace pqlab::dilithium {

namespace {

using namespace pqlab::poly;

void validate(const DilithiumParams& p) {
  if (p.n == 0 || p.q < 2 || p.m == 0 || p.k == 0 || p.h == 0 || p.h > p.n ||
      p.eta < 0)
    throw DomainError("invalid parameters");
}

RingElem sample_small(const DilithiumParams& p, RngStream& rng) {
  RingElem e = ring_zero(p.n, p.q);
  for (auto& c : e.c) {
    std::int64_t v = rng.uniform_int(-p.eta, p.eta);
    c = v < 0 ? v + static_cast<std::int64_t>(p.q) : v;
  }
  return e;
}

RingVec sample_small_vec(const DilithiumParams& p, std::uint32_t len, RngStream& rng) {
  RingVec v;
  for (std::uint32_t i = 0; i < len; ++i) v.e.push_back(sample_small(p, rng));
  return v;
}

RingElem sample_uniform(const DilithiumParams& p, RngStream& rng) {
  RingElem e = ring_zero(p.n, p.q);
  for (auto& c : e.c) c = static_cast<std::int64_t>(rng.uniform_below(p.q));
  return e;
}

RingVec round_vec(const RingVec& v) {
  RingVec out;
  for (const auto& e : v.e) out.e.push_back(round_to_half(e));
  return out;
}

RingVec rounded_verification_target(const DilithiumPublicKey& pub,
                                    const DilithiumSignature& sig) {
  const RingElem c = sig.c.to_ring();
  return round_vec(vec_sub(matvec(pub.A, sig.r2), scale_vec(c, pub.t)));
}

}  // namespace

RingElem ChallengePoly::to_ring() const {
  RingElem e = ring_zero(n, q);
  for (auto [pos, sign] : entries)
    e.c[pos] = sign > 0 ? 1 : static_cast<std::int64_t>(q) - 1;
  return e;
}

bool ChallengePoly::well_formed(const DilithiumParams& p) const {
  if (n != p.n || q != p.q || entries.size() != p.h) return false;
  std::uint32_t prev = 0;
  bool first = true;
  for (auto [pos, sign] : entries) {
    if (pos >= n || (sign != 1 && sign != -1)) return false;
    if (!first && pos <= prev) return false;
    prev = pos;
    first = false;
  }
  return true;
}

DilithiumKeyPair keygen(const DilithiumParams& p, RngStream& rng) {
  validate(p);
  RingMat A{p.m, p.k, {}};
  for (std::uint32_t i = 0; i < p.m * p.k; ++i) A.e.push_back(sample_uniform(p, rng));
  RingVec s = sample_small_vec(p, p.k, rng);
  RingVec e = sample_small_vec(p, p.m, rng);
  return keygen_from(p, std::move(s), std::move(A), std::move(e));
}

DilithiumKeyPair keygen_from(const DilithiumParams& p, RingVec s, RingMat A, RingVec e) {
  validate(p);
  if (s.size() != p.k || e.size() != p.m || A.rows != p.m || A.cols != p.k)
    throw DomainError("shape mismatch");
  RingVec t = vec_add(matvec(A, s), e);
  DilithiumKeyPair kp;
  kp.pub = DilithiumPublicKey{p, std::move(A), std::move(t)};
  kp.priv = DilithiumPrivateKey{p, std::move(s)};
  kp.keygen_error = std::move(e);
  return kp;
}

ChallengePoly hash_to_ball(ByteView input, const DilithiumParams& p) {
  validate(p);
  XofReader xof(Bytes(input.begin(), input.end()));
  // Shuffle-based selection: walk the tail positions, each time exchanging
  // with a random earlier slot and planting a fresh sign there. Every step
  // adds exactly one nonzero, so h steps leave exactly h of them.
  std::vector<std::int8_t> c(p.n, 0);
  for (std::uint32_t i = p.n - p.h; i < p.n; ++i) {
    std::uint32_t j;
    do {
      if (p.n <= 256) {
        j = xof.next_byte();
      } else {
        j = static_cast<std::uint32_t>(xof.next_byte()) |
            (static_cast<std::uint32_t>(xof.next_byte()) << 8);
      }
    } while (j > i);
    const std::int8_t sign = (xof.next_byte() & 1) ? std::int8_t(-1) : std::int8_t(1);
    c[i] = c[j];
    c[j] = sign;
  }
  ChallengePoly out;
  out.n = p.n;
  out.q = p.q;
  for (std::uint32_t i = 0; i < p.n; ++i)
    if (c[i] != 0) out.entries.emplace_back(i, c[i]);
  return out;
}

Bytes encode_w(const RingVec& w) {
  Bytes out;
  for (const auto& e : w.e) {
    std::uint32_t width = 1;
    std::uint64_t v = e.q - 1;
    while (v >>= 8) ++width;
    for (auto coeff : e.c) {
      std::uint64_t u = static_cast<std::uint64_t>(coeff);
      for (std::uint32_t b = 0; b < width; ++b) {
        out.push_back(static_cast<std::uint8_t>(u & 0xff));
        u >>= 8;
      }
    }
  }
  return out;
}

RingVec decode_w(ByteView in, std::size_t len, std::uint32_t n, std::uint64_t q) {
  std::uint32_t width = 1;
  std::uint64_t v = q - 1;
  while (v >>= 8) ++width;
  if (in.size() != len * n * width) throw ParseError("encoded vector length mismatch");
  RingVec out;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < len; ++i) {
    RingElem e = ring_zero(n, q);
    for (std::uint32_t j = 0; j < n; ++j) {
      std::uint64_t c = 0;
      for (std::uint32_t b = 0; b < width; ++b)
        c |= static_cast<std::uint64_t>(in[pos++]) << (8 * b);
      if (c >= q) throw ParseError("coefficient out of range");
      e.c[j] = static_cast<std::int64_t>(c);
    }
    out.e.push_back(std::move(e));
  }
  return out;
}

SignResult sign_traced(const DilithiumPrivateKey& priv, const DilithiumPublicKey& pub,
                       ByteView message, RngStream& rng, int max_attempts) {
  const DilithiumParams& p = priv.params;
  if (!(p == pub.params)) throw DomainError("key parameter mismatch");
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    RingVec r1 = sample_small_vec(p, p.k, rng);
    RingVec w = round_vec(matvec(pub.A, r1));
    Bytes mu(message.begin(), message.end());
    append(mu, encode_w(w));
    ChallengePoly c = hash_to_ball(mu, p);
    RingVec r2 = vec_add(r1, scale_vec(c.to_ring(), priv.s));
    DilithiumSignature sig{std::move(r2), std::move(c)};
    if (verify(pub, message, sig)) return SignResult{std::move(sig), attempt};
  }
  throw SigningFailed("no signature survived local verification");
}

DilithiumSignature sign(const DilithiumPrivateKey& priv, const DilithiumPublicKey& pub,
                        ByteView message, RngStream& rng, int max_attempts) {
  return sign_traced(priv, pub, message, rng, max_attempts).sig;
}

bool verify(const DilithiumPublicKey& pub, ByteView message,
            const DilithiumSignature& sig) {
  const DilithiumParams& p = pub.params;
  if (!sig.c.well_formed(p)) return false;
  if (sig.r2.size() != p.k) return false;
  for (const auto& e : sig.r2.e)
    if (e.n != p.n || e.q != p.q) return false;
  RingVec w_hat = rounded_verification_target(pub, sig);
  Bytes mu(message.begin(), message.end());
  append(mu, encode_w(w_hat));
  return hash_to_ball(mu, p) == sig.c;
}

Bytes signature_bytes(const DilithiumSignature& sig) {
  Bytes out = pack_coeffs(sig.r2);
  for (auto [pos, sign] : sig.c.entries) {
    out.push_back(static_cast<std::uint8_t>(pos & 0xff));
    out.push_back(static_cast<std::uint8_t>((pos >> 8) & 0xff));
    out.push_back(sign > 0 ? 1 : 0xff);
  }
  return out;
}

DilithiumSignature signature_from_bytes(const DilithiumParams& p, ByteView in) {
  const std::size_t r2_len = packed_size(p.k, p.n, p.q);
  if (in.size() != r2_len + 3 * static_cast<std::size_t>(p.h))
    throw ParseError("signature length mismatch");
  DilithiumSignature sig;
  sig.r2 = unpack_vec(in.first(r2_len), p.k, p.n, p.q);
  sig.c.n = p.n;
  sig.c.q = p.q;
  for (std::size_t i = r2_len; i < in.size(); i += 3) {
    std::uint32_t pos = static_cast<std::uint32_t>(in[i]) |
                        (static_cast<std::uint32_t>(in[i + 1]) << 8);
    if (in[i + 2] != 1 && in[i + 2] != 0xff) throw ParseError("bad challenge sign byte");
    sig.c.entries.emplace_back(pos, in[i + 2] == 1 ? std::int8_t(1) : std::int8_t(-1));
  }
  if (!sig.c.well_formed(p)) throw ParseError("malformed challenge");
  return sig;
}

}  // namespace pqlab::dilithium
