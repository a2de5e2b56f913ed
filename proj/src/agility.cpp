#include "pqlab/agility.hpp"

#include <memory>

#include "pqlab/rsa.hpp"
#include "pqlab/xof.hpp"

namespace pqlab::agility {

void SchemeRegistry::register_scheme(SchemeDescriptor desc) {
  if (schemes_.contains(desc.id))
    throw DomainError("scheme id already registered: " + desc.id);
  schemes_.emplace(desc.id, std::move(desc));
}

void SchemeRegistry::unregister_scheme(const std::string& id) {
  if (schemes_.erase(id) == 0) throw DomainError("unknown scheme id: " + id);
}

const SchemeDescriptor& SchemeRegistry::lookup(const std::string& id) const {
  auto it = schemes_.find(id);
  if (it == schemes_.end()) throw DomainError("unknown scheme id: " + id);
  return it->second;
}

bool SchemeRegistry::contains(const std::string& id) const {
  return schemes_.contains(id);
}

namespace {

/// Injective binding of the message and the first signature; the second
/// signer of a chained mode signs this instead of the bare message.
Bytes chained_input(ByteView msg, ByteView first_sig) {
  Bytes out;
  append_u64_le(out, msg.size());
  append(out, msg);
  append_u64_le(out, first_sig.size());
  append(out, first_sig);
  return out;
}

const SchemeDescriptor& lookup_signer(const SchemeRegistry& reg, const std::string& id) {
  const SchemeDescriptor& d = reg.lookup(id);
  if (d.kind != SchemeKind::Signer)
    throw DomainError("scheme is not a signer: " + id);
  return d;
}

}  // namespace

HybridSignature hybrid_sign(ByteView msg, const std::string& classical_id,
                            const std::string& pq_id, HybridMode mode,
                            const SchemeRegistry& registry, RngStream& rng) {
  const SchemeDescriptor& classical = lookup_signer(registry, classical_id);
  const SchemeDescriptor& pq = lookup_signer(registry, pq_id);
  if (classical.post_quantum || !pq.post_quantum)
    throw DomainError("hybrid signing pairs one classical with one post-quantum signer");

  HybridSignature out;
  out.mode = mode;
  const SchemeDescriptor& first = (mode == HybridMode::QthenC) ? pq : classical;
  const SchemeDescriptor& second = (mode == HybridMode::QthenC) ? classical : pq;

  Bytes sig1 = first.sign(msg, rng);
  Bytes sig2;
  if (mode == HybridMode::Parallel) {
    sig2 = second.sign(msg, rng);
  } else {
    sig2 = second.sign(chained_input(msg, sig1), rng);
  }
  out.parts.emplace_back(first.id, std::move(sig1));
  out.parts.emplace_back(second.id, std::move(sig2));
  return out;
}

bool hybrid_verify(ByteView msg, const HybridSignature& sig,
                   const SchemeRegistry& registry) {
  if (sig.parts.size() != 2) return false;
  try {
    const SchemeDescriptor& first = lookup_signer(registry, sig.parts[0].first);
    const SchemeDescriptor& second = lookup_signer(registry, sig.parts[1].first);
    // The declared mode fixes which family must have signed first.
    const bool first_is_pq = (sig.mode == HybridMode::QthenC);
    if (first.post_quantum != first_is_pq || second.post_quantum == first_is_pq)
      return false;
    const Bytes& sig1 = sig.parts[0].second;
    const Bytes& sig2 = sig.parts[1].second;
    if (!first.verify(msg, sig1)) return false;
    if (sig.mode == HybridMode::Parallel) return second.verify(msg, sig2);
    return second.verify(chained_input(msg, sig1), sig2);
  } catch (const Error&) {
    return false;
  }
}

MoscaVerdict mosca_evaluate(const MoscaInput& input) {
  if (input.t_migrate < 0 || input.t_confi < 0 || input.t_crqc < 0)
    throw DomainError("times must be nonnegative");
  MoscaVerdict v;
  v.slack = input.t_crqc - (input.t_migrate + input.t_confi);
  v.at_risk = v.slack < 0;
  v.in_trouble = input.t_confi > input.t_crqc;
  return v;
}

namespace {

std::uint64_t digest_below(ByteView msg, std::uint64_t bound) {
  Bytes h = shake256(msg, 8);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | h[static_cast<std::size_t>(i)];
  return v % bound;
}

}  // namespace

SchemeDescriptor make_rsa_signer(const std::string& id, std::uint64_t p,
                                 std::uint64_t q, std::uint64_t g) {
  auto keys = std::make_shared<rsa::RsaKeyPair>(rsa::rsa_keygen(p, q, g));
  SchemeDescriptor d;
  d.id = id;
  d.kind = SchemeKind::Signer;
  d.sign = [keys](ByteView msg, RngStream&) {
    Bytes out;
    append_u64_le(out, rsa::rsa_sign(digest_below(msg, keys->priv.n), keys->priv));
    return out;
  };
  d.verify = [keys](ByteView msg, ByteView sig) {
    if (sig.size() != 8) return false;
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | sig[static_cast<std::size_t>(i)];
    return rsa::rsa_verify(digest_below(msg, keys->pub.n), v, keys->pub);
  };
  return d;
}

SchemeDescriptor make_ecdsa_signer(const std::string& id, const ecc::CurvePreset& preset,
                                   RngStream& rng) {
  struct EcdsaState {
    ecc::CurvePreset preset;
    std::uint64_t priv;
    ecc::CurvePoint pub;
  };
  auto st = std::make_shared<EcdsaState>();
  st->preset = preset;
  st->priv = 1 + rng.uniform_below(preset.order - 1);
  st->pub = ecc::point_pow(preset.generator, st->priv, preset.curve);

  SchemeDescriptor d;
  d.id = id;
  d.kind = SchemeKind::Signer;
  d.sign = [st](ByteView msg, RngStream& r) {
    auto sig = ecc::ecdsa_sign(digest_below(msg, st->preset.order), st->priv,
                               st->preset.generator, st->preset.order, st->preset.curve,
                               r);
    Bytes out;
    append_u64_le(out, sig.r);
    append_u64_le(out, sig.s);
    return out;
  };
  d.verify = [st](ByteView msg, ByteView sig) {
    if (sig.size() != 16) return false;
    auto word = [&sig](std::size_t off) {
      std::uint64_t v = 0;
      for (int i = 7; i >= 0; --i) v = (v << 8) | sig[off + static_cast<std::size_t>(i)];
      return v;
    };
    return ecc::ecdsa_verify(digest_below(msg, st->preset.order),
                             ecc::EcdsaSignature{word(0), word(8)}, st->pub,
                             st->preset.generator, st->preset.order, st->preset.curve);
  };
  return d;
}

SchemeDescriptor make_dilithium_signer(const std::string& id,
                                       const dilithium::DilithiumParams& params,
                                       RngStream& rng) {
  auto keys = std::make_shared<dilithium::DilithiumKeyPair>(dilithium::keygen(params, rng));
  SchemeDescriptor d;
  d.id = id;
  d.kind = SchemeKind::Signer;
  d.post_quantum = true;
  d.sign = [keys](ByteView msg, RngStream& r) {
    return dilithium::signature_bytes(dilithium::sign(keys->priv, keys->pub, msg, r));
  };
  d.verify = [keys](ByteView msg, ByteView sig) {
    try {
      return dilithium::verify(keys->pub, msg,
                               dilithium::signature_from_bytes(keys->pub.params, sig));
    } catch (const Error&) {
      return false;
    }
  };
  return d;
}

SchemeDescriptor make_kyber_kem(const std::string& id, const kyber::KyberParams& params,
                                RngStream& rng) {
  auto keys = std::make_shared<kyber::KyberKeyPair>(kyber::keygen(params, rng));
  SchemeDescriptor d;
  d.id = id;
  d.kind = SchemeKind::Kem;
  d.post_quantum = true;
  d.encapsulate = [keys](RngStream& r) {
    auto res = kyber::kem_encapsulate(keys->pub, r);
    return std::make_pair(res.shared_secret, kyber::ciphertext_bytes(res.ct));
  };
  d.decapsulate = [keys](ByteView ct) {
    return kyber::kem_decapsulate(
        keys->priv, kyber::ciphertext_from_bytes(keys->pub.params, ct));
  };
  return d;
}

const char* mode_name(HybridMode m) {
  switch (m) {
    case HybridMode::CthenQ: return "c-then-q";
    case HybridMode::QthenC: return "q-then-c";
    case HybridMode::Parallel: return "parallel";
  }
  return "?";
}

HybridMode mode_from_name(const std::string& name) {
  if (name == "c-then-q") return HybridMode::CthenQ;
  if (name == "q-then-c") return HybridMode::QthenC;
  if (name == "parallel") return HybridMode::Parallel;
  throw DomainError("unknown hybrid mode: " + name);
}

}  // namespace pqlab::agility
