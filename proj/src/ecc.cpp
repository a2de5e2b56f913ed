#include "pqlab/ecc.hpp"

#include "pqlab/modnum.hpp"

namespace pqlab::ecc {

namespace {

using modnum::mod_inverse;
using modnum::mul_mod;

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t s = a + b;
  if (s >= p) s -= p;
  return s;
}

std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + p - b;
}

void require_on_curve(const CurvePoint& pt, const CurveParams& c) {
  if (!on_curve(pt, c)) throw DomainError("point not on the curve");
}

}  // namespace

void CurveParams::validate() const {
  if (p <= 3 || !modnum::is_prime(p)) throw DomainError("curve needs a prime p > 3");
  if (a >= p || b >= p) throw DomainError("curve coefficients must be reduced mod p");
  // 4a^3 + 27b^2 != 0 excludes singular curves.
  std::uint64_t disc =
      add_mod(mul_mod(4, mul_mod(a, mul_mod(a, a, p), p), p),
              mul_mod(27, mul_mod(b, b, p), p), p);
  if (disc == 0) throw DomainError("singular curve: 4a^3 + 27b^2 == 0");
}

CurvePreset preset_f97() {
  return CurvePreset{CurveParams{97, 1, 4}, CurvePoint::affine(0, 2), 89};
}

CurvePreset preset_f1000003() {
  return CurvePreset{CurveParams{1000003, 0, 5}, CurvePoint::affine(1, 413233), 999007};
}

bool on_curve(const CurvePoint& pt, const CurveParams& c) {
  if (pt.inf) return true;
  if (pt.x >= c.p || pt.y >= c.p) return false;
  std::uint64_t lhs = mul_mod(pt.y, pt.y, c.p);
  std::uint64_t rhs = add_mod(
      add_mod(mul_mod(pt.x, mul_mod(pt.x, pt.x, c.p), c.p), mul_mod(c.a, pt.x, c.p), c.p),
      c.b, c.p);
  return lhs == rhs;
}

CurvePoint negate(const CurvePoint& pt, const CurveParams& c) {
  if (pt.inf) return pt;
  return CurvePoint::affine(pt.x, pt.y == 0 ? 0 : c.p - pt.y);
}

CurvePoint compose(const CurvePoint& P, const CurvePoint& Q, const CurveParams& c) {
  require_on_curve(P, c);
  require_on_curve(Q, c);
  if (P.inf) return Q;
  if (Q.inf) return P;

  const std::uint64_t p = c.p;
  if (P.x == Q.x && add_mod(P.y, Q.y, p) == 0) {
    // Mirror pair (covers doubling a point with y = 0): the connecting line
    // is vertical and meets the curve again at the far point.
    return CurvePoint::infinity();
  }

  std::uint64_t lambda;
  if (P.x == Q.x) {
    // Tangent rule.
    std::uint64_t num = add_mod(mul_mod(3, mul_mod(P.x, P.x, p), p), c.a, p);
    std::uint64_t den = add_mod(P.y, P.y, p);
    lambda = mul_mod(num, mod_inverse(static_cast<std::int64_t>(den), p).value, p);
  } else {
    // Chord rule.
    std::uint64_t num = sub_mod(Q.y, P.y, p);
    std::uint64_t den = sub_mod(Q.x, P.x, p);
    lambda = mul_mod(num, mod_inverse(static_cast<std::int64_t>(den), p).value, p);
  }
  std::uint64_t x3 = sub_mod(sub_mod(mul_mod(lambda, lambda, p), P.x, p), Q.x, p);
  std::uint64_t y3 = sub_mod(mul_mod(lambda, sub_mod(P.x, x3, p), p), P.y, p);
  return CurvePoint::affine(x3, y3);
}

CurvePoint point_pow(const CurvePoint& G, std::uint64_t s, const CurveParams& c) {
  require_on_curve(G, c);
  CurvePoint acc = CurvePoint::infinity();
  CurvePoint base = G;
  while (s != 0) {
    if (s & 1) acc = compose(acc, base, c);
    base = compose(base, base, c);
    s >>= 1;
  }
  return acc;
}

std::uint64_t point_order(const CurvePoint& G, const CurveParams& c) {
  require_on_curve(G, c);
  if (G.inf) return 1;
  CurvePoint acc = G;
  std::uint64_t k = 1;
  while (!acc.inf) {
    acc = compose(acc, G, c);
    ++k;
  }
  return k;
}

std::uint64_t ec_dlog_bruteforce(const CurvePoint& G, const CurvePoint& P,
                                 const CurveParams& c) {
  require_on_curve(G, c);
  require_on_curve(P, c);
  CurvePoint acc = G;
  std::uint64_t s = 1;
  for (;;) {
    if (acc == P) return s;
    if (acc.inf) throw NoLogarithm("point is not a power of the generator");
    acc = compose(acc, G, c);
    ++s;
  }
}

CurvePoint ecdh_shared(std::uint64_t my_private, const CurvePoint& their_public,
                       const CurveParams& c) {
  if (my_private == 0) throw DomainError("private exponent must be positive");
  require_on_curve(their_public, c);
  return point_pow(their_public, my_private, c);
}

std::vector<CurvePoint> enumerate_points(const CurveParams& c) {
  c.validate();
  std::vector<CurvePoint> pts{CurvePoint::infinity()};
  for (std::uint64_t x = 0; x < c.p; ++x) {
    std::uint64_t rhs = add_mod(
        add_mod(mul_mod(x, mul_mod(x, x, c.p), c.p), mul_mod(c.a, x, c.p), c.p), c.b,
        c.p);
    for (std::uint64_t y = 0; y < c.p; ++y) {
      if (mul_mod(y, y, c.p) == rhs) pts.push_back(CurvePoint::affine(x, y));
    }
  }
  return pts;
}

EcdsaSignature ecdsa_sign(std::uint64_t digest, std::uint64_t private_key,
                          const CurvePoint& G, std::uint64_t order,
                          const CurveParams& c, RngStream& rng) {
  require_on_curve(G, c);
  const std::uint64_t z = digest % order;
  for (;;) {
    std::uint64_t k = 1 + rng.uniform_below(order - 1);
    CurvePoint R = point_pow(G, k, c);
    if (R.inf) continue;
    std::uint64_t r = R.x % order;
    if (r == 0) continue;
    std::uint64_t k_inv = mod_inverse(static_cast<std::int64_t>(k), order).value;
    std::uint64_t s =
        mul_mod(k_inv, add_mod(z, mul_mod(r, private_key % order, order), order), order);
    if (s == 0) continue;
    return EcdsaSignature{r, s};
  }
}

bool ecdsa_verify(std::uint64_t digest, const EcdsaSignature& sig,
                  const CurvePoint& public_key, const CurvePoint& G,
                  std::uint64_t order, const CurveParams& c) {
  if (sig.r == 0 || sig.r >= order || sig.s == 0 || sig.s >= order) return false;
  if (!on_curve(public_key, c) || public_key.inf) return false;
  const std::uint64_t z = digest % order;
  std::uint64_t w = mod_inverse(static_cast<std::int64_t>(sig.s), order).value;
  std::uint64_t u1 = mul_mod(z, w, order);
  std::uint64_t u2 = mul_mod(sig.r, w, order);
  CurvePoint X = compose(point_pow(G, u1, c), point_pow(public_key, u2, c), c);
  if (X.inf) return false;
  return X.x % order == sig.r;
}

CurvePoint embed_message(std::uint64_t m, const CurveParams& c) {
  if (m >= c.p / kEmbedExpansion)
    throw DomainError("message too large for point embedding");
  for (std::uint64_t i = 0; i < kEmbedExpansion; ++i) {
    std::uint64_t x = m * kEmbedExpansion + i;
    std::uint64_t rhs = add_mod(
        add_mod(mul_mod(x, mul_mod(x, x, c.p), c.p), mul_mod(c.a, x, c.p), c.p), c.b,
        c.p);
    for (std::uint64_t y = 0; y < c.p; ++y) {
      if (mul_mod(y, y, c.p) == rhs) return CurvePoint::affine(x, y);
    }
  }
  throw DomainError("no curve point found in the embedding window");
}

std::uint64_t unembed_point(const CurvePoint& pt) {
  if (pt.inf) throw DomainError("cannot unembed the far point");
  return pt.x / kEmbedExpansion;
}

ElGamalCiphertext elgamal_encrypt(std::uint64_t m, const CurvePoint& public_key,
                                  const CurvePoint& G, std::uint64_t order,
                                  const CurveParams& c, RngStream& rng) {
  require_on_curve(public_key, c);
  CurvePoint M = embed_message(m, c);
  std::uint64_t k = 1 + rng.uniform_below(order - 1);
  return ElGamalCiphertext{point_pow(G, k, c), compose(M, point_pow(public_key, k, c), c)};
}

std::uint64_t elgamal_decrypt(const ElGamalCiphertext& ct, std::uint64_t private_key,
                              const CurveParams& c) {
  CurvePoint mask = point_pow(ct.c1, private_key, c);
  CurvePoint M = compose(ct.c2, negate(mask, c), c);
  // The plaintext is the first coordinate of the recovered point.
  return unembed_point(M);
}

}  // namespace pqlab::ecc
