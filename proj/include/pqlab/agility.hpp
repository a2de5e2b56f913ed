#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "pqlab/bytes.hpp"
#include "pqlab/dilithium.hpp"
#include "pqlab/ecc.hpp"
#include "pqlab/errors.hpp"
#include "pqlab/kyber.hpp"
#include "pqlab/rng.hpp"

namespace pqlab::agility {

enum class SchemeKind { Signer, Kem };

/// An exchangeable algorithm plugin. Key material is bound into the
/// capability handles at registration time, so the infrastructure itself
/// never learns any scheme's key format.
struct SchemeDescriptor {
  std::string id;
  SchemeKind kind = SchemeKind::Signer;
  bool post_quantum = false;
  std::function<Bytes(ByteView, RngStream&)> sign;
  std::function<bool(ByteView, ByteView)> verify;
  std::function<std::pair<Bytes, Bytes>(RngStream&)> encapsulate;  // (secret, ct)
  std::function<Bytes(ByteView)> decapsulate;
};

class SchemeRegistry {
 public:
  void register_scheme(SchemeDescriptor desc);
  void unregister_scheme(const std::string& id);
  const SchemeDescriptor& lookup(const std::string& id) const;
  bool contains(const std::string& id) const;

 private:
  std::map<std::string, SchemeDescriptor> schemes_;
};

enum class HybridMode { CthenQ, QthenC, Parallel };

/// Two-scheme signature. parts are ordered by application: in the chained
/// modes the second part signs the first's output bound to the message.
struct HybridSignature {
  HybridMode mode = HybridMode::CthenQ;
  std::vector<std::pair<std::string, Bytes>> parts;
};

HybridSignature hybrid_sign(ByteView msg, const std::string& classical_id,
                            const std::string& pq_id, HybridMode mode,
                            const SchemeRegistry& registry, RngStream& rng);

/// True iff every part verifies against its mode-defined input. Any
/// corruption, unknown scheme or kind mismatch yields false.
bool hybrid_verify(ByteView msg, const HybridSignature& sig,
                   const SchemeRegistry& registry);

struct MoscaInput {
  double t_migrate = 0;  // years to migrate the infrastructure
  double t_confi = 0;    // years data must stay confidential
  double t_crqc = 0;     // years until a crypto-relevant quantum computer
};

struct MoscaVerdict {
  double slack = 0;       // t_crqc - (t_migrate + t_confi)
  bool at_risk = false;   // slack < 0
  bool in_trouble = false;  // t_confi alone exceeds t_crqc
};

MoscaVerdict mosca_evaluate(const MoscaInput& input);

// Ready-made plugins with freshly generated keys.
SchemeDescriptor make_rsa_signer(const std::string& id, std::uint64_t p,
                                 std::uint64_t q, std::uint64_t g);
SchemeDescriptor make_ecdsa_signer(const std::string& id, const ecc::CurvePreset& preset,
                                   RngStream& rng);
SchemeDescriptor make_dilithium_signer(const std::string& id,
                                       const dilithium::DilithiumParams& params,
                                       RngStream& rng);
SchemeDescriptor make_kyber_kem(const std::string& id, const kyber::KyberParams& params,
                                RngStream& rng);

const char* mode_name(HybridMode m);
HybridMode mode_from_name(const std::string& name);

}  // namespace pqlab::agility
