#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pqlab/dilithium.hpp"
#include "pqlab/ecc.hpp"
#include "pqlab/errors.hpp"
#include "pqlab/kyber.hpp"
#include "pqlab/rsa.hpp"

namespace pqlab::keyfile {

/// Line-oriented text format: `scheme: <id>` first, then `name: v0 v1 ...`
/// fields with whitespace-separated integers. Polynomial coefficients are
/// stored in ascending degree. parse(write(k)) == k.
struct KeyFile {
  std::string scheme;
  std::vector<std::pair<std::string, std::vector<std::int64_t>>> fields;

  const std::vector<std::int64_t>& field(const std::string& name) const;
  std::int64_t scalar(const std::string& name) const;
  bool has(const std::string& name) const;
};

KeyFile parse_keyfile(const std::string& text);
std::string write_keyfile(const KeyFile& kf);

KeyFile from_rsa_public(const rsa::RsaPublicKey& k);
KeyFile from_rsa_private(const rsa::RsaPrivateKey& k);
rsa::RsaPublicKey to_rsa_public(const KeyFile& kf);
rsa::RsaPrivateKey to_rsa_private(const KeyFile& kf);

KeyFile from_ecc_public(const ecc::CurveParams& c, const ecc::CurvePoint& g,
                        std::uint64_t order, const ecc::CurvePoint& pub);
KeyFile from_ecc_private(const ecc::CurveParams& c, const ecc::CurvePoint& g,
                         std::uint64_t order, std::uint64_t priv);
struct EccPublicEntry {
  ecc::CurveParams curve;
  ecc::CurvePoint generator;
  std::uint64_t order;
  ecc::CurvePoint point;
};
struct EccPrivateEntry {
  ecc::CurveParams curve;
  ecc::CurvePoint generator;
  std::uint64_t order;
  std::uint64_t scalar;
};
EccPublicEntry to_ecc_public(const KeyFile& kf);
EccPrivateEntry to_ecc_private(const KeyFile& kf);

KeyFile from_kyber_public(const kyber::KyberPublicKey& k);
KeyFile from_kyber_private(const kyber::KyberPrivateKey& k);
kyber::KyberPublicKey to_kyber_public(const KeyFile& kf);
kyber::KyberPrivateKey to_kyber_private(const KeyFile& kf);

KeyFile from_dilithium_public(const dilithium::DilithiumPublicKey& k);
KeyFile from_dilithium_private(const dilithium::DilithiumPrivateKey& k,
                               const dilithium::DilithiumParams& params);
KeyFile from_dilithium_signature(const dilithium::DilithiumSignature& sig,
                                 const dilithium::DilithiumParams& params);
dilithium::DilithiumPublicKey to_dilithium_public(const KeyFile& kf);
dilithium::DilithiumPrivateKey to_dilithium_private(const KeyFile& kf);
dilithium::DilithiumSignature to_dilithium_signature(const KeyFile& kf);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace pqlab::keyfile
