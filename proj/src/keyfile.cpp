#include "pqlab/keyfile.hpp"

#include <fstream>
#include <sstream>

namespace pqlab::keyfile {

namespace {

using poly::RingElem;
using poly::RingMat;
using poly::RingVec;

std::string field_error(const std::string& name) {
  return "missing or malformed field: " + name;
}

RingElem elem_from(const std::vector<std::int64_t>& coeffs, std::uint32_t n,
                   std::uint64_t q, const std::string& name) {
  if (coeffs.size() != n) throw ParseError("field " + name + ": expected n coefficients");
  for (auto c : coeffs)
    if (c < 0 || static_cast<std::uint64_t>(c) >= q)
      throw ParseError("field " + name + ": coefficient out of [0, q)");
  RingElem e = poly::ring_zero(n, q);
  e.c = coeffs;
  return e;
}

void check_params(std::int64_t n, std::int64_t q, std::int64_t k) {
  if (n < 1 || q < 2 || k < 1) throw ParseError("invalid ring parameters");
}

}  // namespace

const std::vector<std::int64_t>& KeyFile::field(const std::string& name) const {
  for (const auto& [k, v] : fields)
    if (k == name) return v;
  throw ParseError(field_error(name));
}

std::int64_t KeyFile::scalar(const std::string& name) const {
  const auto& v = field(name);
  if (v.size() != 1) throw ParseError("field " + name + " must hold one integer");
  return v[0];
}

bool KeyFile::has(const std::string& name) const {
  for (const auto& [k, v] : fields)
    if (k == name) return true;
  return false;
}

KeyFile parse_keyfile(const std::string& text) {
  KeyFile kf;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos)
      throw ParseError("line " + std::to_string(lineno) + ": expected 'name: values'");
    std::string name = line.substr(0, colon);
    while (!name.empty() && name.back() == ' ') name.pop_back();
    if (name.empty())
      throw ParseError("line " + std::to_string(lineno) + ": empty field name");
    std::istringstream rest(line.substr(colon + 1));
    if (name == "scheme") {
      if (!(rest >> kf.scheme))
        throw ParseError("line " + std::to_string(lineno) + ": missing scheme id");
      continue;
    }
    std::vector<std::int64_t> values;
    std::string tok;
    while (rest >> tok) {
      try {
        std::size_t used = 0;
        values.push_back(std::stoll(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(lineno) + ": not an integer: " + tok);
      }
    }
    kf.fields.emplace_back(std::move(name), std::move(values));
  }
  if (kf.scheme.empty()) throw ParseError("missing 'scheme:' header");
  return kf;
}

std::string write_keyfile(const KeyFile& kf) {
  std::ostringstream os;
  os << "scheme: " << kf.scheme << "\n";
  for (const auto& [name, values] : kf.fields) {
    os << name << ":";
    for (auto v : values) os << " " << v;
    os << "\n";
  }
  return os.str();
}

KeyFile from_rsa_public(const rsa::RsaPublicKey& k) {
  return KeyFile{"rsa-public",
                 {{"d", {static_cast<std::int64_t>(k.d)}},
                  {"n", {static_cast<std::int64_t>(k.n)}}}};
}

KeyFile from_rsa_private(const rsa::RsaPrivateKey& k) {
  return KeyFile{"rsa-private",
                 {{"g", {static_cast<std::int64_t>(k.g)}},
                  {"n", {static_cast<std::int64_t>(k.n)}}}};
}

rsa::RsaPublicKey to_rsa_public(const KeyFile& kf) {
  if (kf.scheme != "rsa-public") throw ParseError("not an rsa-public file");
  rsa::RsaPublicKey k{static_cast<std::uint64_t>(kf.scalar("d")),
                      static_cast<std::uint64_t>(kf.scalar("n"))};
  if (k.d <= 1 || k.d >= k.n) throw ParseError("exponent out of range");
  return k;
}

rsa::RsaPrivateKey to_rsa_private(const KeyFile& kf) {
  if (kf.scheme != "rsa-private") throw ParseError("not an rsa-private file");
  rsa::RsaPrivateKey k{static_cast<std::uint64_t>(kf.scalar("g")),
                       static_cast<std::uint64_t>(kf.scalar("n"))};
  if (k.g <= 1 || k.g >= k.n) throw ParseError("exponent out of range");
  return k;
}

namespace {

KeyFile ecc_common(const char* scheme, const ecc::CurveParams& c,
                   const ecc::CurvePoint& g, std::uint64_t order) {
  KeyFile kf;
  kf.scheme = scheme;
  kf.fields = {{"p", {static_cast<std::int64_t>(c.p)}},
               {"a", {static_cast<std::int64_t>(c.a)}},
               {"b", {static_cast<std::int64_t>(c.b)}},
               {"G", {static_cast<std::int64_t>(g.x), static_cast<std::int64_t>(g.y)}},
               {"order", {static_cast<std::int64_t>(order)}}};
  return kf;
}

void ecc_header(const KeyFile& kf, ecc::CurveParams& c, ecc::CurvePoint& g,
                std::uint64_t& order) {
  c = ecc::CurveParams{static_cast<std::uint64_t>(kf.scalar("p")),
                       static_cast<std::uint64_t>(kf.scalar("a")),
                       static_cast<std::uint64_t>(kf.scalar("b"))};
  c.validate();
  const auto& gv = kf.field("G");
  if (gv.size() != 2) throw ParseError("field G must hold two coordinates");
  g = ecc::CurvePoint::affine(static_cast<std::uint64_t>(gv[0]),
                              static_cast<std::uint64_t>(gv[1]));
  if (!ecc::on_curve(g, c)) throw ParseError("generator is not on the curve");
  order = static_cast<std::uint64_t>(kf.scalar("order"));
}

}  // namespace

KeyFile from_ecc_public(const ecc::CurveParams& c, const ecc::CurvePoint& g,
                        std::uint64_t order, const ecc::CurvePoint& pub) {
  KeyFile kf = ecc_common("ecc-public", c, g, order);
  kf.fields.push_back(
      {"P", {static_cast<std::int64_t>(pub.x), static_cast<std::int64_t>(pub.y)}});
  return kf;
}

KeyFile from_ecc_private(const ecc::CurveParams& c, const ecc::CurvePoint& g,
                         std::uint64_t order, std::uint64_t priv) {
  KeyFile kf = ecc_common("ecc-private", c, g, order);
  kf.fields.push_back({"s", {static_cast<std::int64_t>(priv)}});
  return kf;
}

EccPublicEntry to_ecc_public(const KeyFile& kf) {
  if (kf.scheme != "ecc-public") throw ParseError("not an ecc-public file");
  EccPublicEntry e;
  ecc_header(kf, e.curve, e.generator, e.order);
  const auto& pv = kf.field("P");
  if (pv.size() != 2) throw ParseError("field P must hold two coordinates");
  e.point = ecc::CurvePoint::affine(static_cast<std::uint64_t>(pv[0]),
                                    static_cast<std::uint64_t>(pv[1]));
  if (!ecc::on_curve(e.point, e.curve)) throw ParseError("point is not on the curve");
  return e;
}

EccPrivateEntry to_ecc_private(const KeyFile& kf) {
  if (kf.scheme != "ecc-private") throw ParseError("not an ecc-private file");
  EccPrivateEntry e;
  ecc_header(kf, e.curve, e.generator, e.order);
  e.scalar = static_cast<std::uint64_t>(kf.scalar("s"));
  if (e.scalar == 0 || e.scalar >= e.order) throw ParseError("scalar out of range");
  return e;
}

namespace {

std::string indexed(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

std::string indexed2(const std::string& base, std::size_t i, std::size_t j) {
  return base + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

void push_vec(KeyFile& kf, const std::string& base, const RingVec& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    kf.fields.push_back({indexed(base, i), v[i].c});
}

void push_mat(KeyFile& kf, const std::string& base, const RingMat& m) {
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j)
      kf.fields.push_back({indexed2(base, i, j), m.at(i, j).c});
}

RingVec read_vec(const KeyFile& kf, const std::string& base, std::size_t len,
                 std::uint32_t n, std::uint64_t q) {
  RingVec v;
  for (std::size_t i = 0; i < len; ++i) {
    const std::string name = indexed(base, i);
    v.e.push_back(elem_from(kf.field(name), n, q, name));
  }
  return v;
}

RingMat read_mat(const KeyFile& kf, const std::string& base, std::size_t rows,
                 std::size_t cols, std::uint32_t n, std::uint64_t q) {
  RingMat m{rows, cols, {}};
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const std::string name = indexed2(base, i, j);
      m.e.push_back(elem_from(kf.field(name), n, q, name));
    }
  return m;
}

}  // namespace

KeyFile from_kyber_public(const kyber::KyberPublicKey& k) {
  KeyFile kf;
  kf.scheme = "kyber-public";
  kf.fields = {{"n", {k.params.n}},
               {"q", {static_cast<std::int64_t>(k.params.q)}},
               {"k", {k.params.k}},
               {"eta", {k.params.eta}}};
  push_mat(kf, "A", k.A);
  push_vec(kf, "t", k.t);
  return kf;
}

KeyFile from_kyber_private(const kyber::KyberPrivateKey& k) {
  KeyFile kf;
  kf.scheme = "kyber-private";
  kf.fields = {{"n", {k.params.n}},
               {"q", {static_cast<std::int64_t>(k.params.q)}},
               {"k", {k.params.k}},
               {"eta", {k.params.eta}}};
  push_vec(kf, "s", k.s);
  return kf;
}

namespace {

kyber::KyberParams kyber_params_from(const KeyFile& kf) {
  check_params(kf.scalar("n"), kf.scalar("q"), kf.scalar("k"));
  return kyber::KyberParams{static_cast<std::uint32_t>(kf.scalar("n")),
                            static_cast<std::uint64_t>(kf.scalar("q")),
                            static_cast<std::uint32_t>(kf.scalar("k")),
                            kf.scalar("eta")};
}

}  // namespace

kyber::KyberPublicKey to_kyber_public(const KeyFile& kf) {
  if (kf.scheme != "kyber-public") throw ParseError("not a kyber-public file");
  const auto p = kyber_params_from(kf);
  kyber::KyberPublicKey k;
  k.params = p;
  k.A = read_mat(kf, "A", p.k, p.k, p.n, p.q);
  k.t = read_vec(kf, "t", p.k, p.n, p.q);
  return k;
}

kyber::KyberPrivateKey to_kyber_private(const KeyFile& kf) {
  if (kf.scheme != "kyber-private") throw ParseError("not a kyber-private file");
  const auto p = kyber_params_from(kf);
  return kyber::KyberPrivateKey{p, read_vec(kf, "s", p.k, p.n, p.q)};
}

namespace {

KeyFile dilithium_header(const char* scheme, const dilithium::DilithiumParams& p) {
  KeyFile kf;
  kf.scheme = scheme;
  kf.fields = {{"n", {p.n}},
               {"q", {static_cast<std::int64_t>(p.q)}},
               {"m", {p.m}},
               {"k", {p.k}},
               {"h", {p.h}},
               {"eta", {p.eta}}};
  return kf;
}

dilithium::DilithiumParams dilithium_params_from(const KeyFile& kf) {
  check_params(kf.scalar("n"), kf.scalar("q"), kf.scalar("k"));
  return dilithium::DilithiumParams{static_cast<std::uint32_t>(kf.scalar("n")),
                                    static_cast<std::uint64_t>(kf.scalar("q")),
                                    static_cast<std::uint32_t>(kf.scalar("m")),
                                    static_cast<std::uint32_t>(kf.scalar("k")),
                                    static_cast<std::uint32_t>(kf.scalar("h")),
                                    kf.scalar("eta")};
}

}  // namespace

KeyFile from_dilithium_public(const dilithium::DilithiumPublicKey& k) {
  KeyFile kf = dilithium_header("dilithium-public", k.params);
  push_mat(kf, "A", k.A);
  push_vec(kf, "t", k.t);
  return kf;
}

KeyFile from_dilithium_private(const dilithium::DilithiumPrivateKey& k,
                               const dilithium::DilithiumParams& params) {
  KeyFile kf = dilithium_header("dilithium-private", params);
  push_vec(kf, "s", k.s);
  return kf;
}

KeyFile from_dilithium_signature(const dilithium::DilithiumSignature& sig,
                                 const dilithium::DilithiumParams& params) {
  KeyFile kf = dilithium_header("dilithium-signature", params);
  push_vec(kf, "r2", sig.r2);
  std::vector<std::int64_t> pos, signs;
  for (auto [p, s] : sig.c.entries) {
    pos.push_back(p);
    signs.push_back(s);
  }
  kf.fields.push_back({"c-positions", pos});
  kf.fields.push_back({"c-signs", signs});
  return kf;
}

dilithium::DilithiumPublicKey to_dilithium_public(const KeyFile& kf) {
  if (kf.scheme != "dilithium-public") throw ParseError("not a dilithium-public file");
  const auto p = dilithium_params_from(kf);
  dilithium::DilithiumPublicKey k;
  k.params = p;
  k.A = read_mat(kf, "A", p.m, p.k, p.n, p.q);
  k.t = read_vec(kf, "t", p.m, p.n, p.q);
  return k;
}

dilithium::DilithiumPrivateKey to_dilithium_private(const KeyFile& kf) {
  if (kf.scheme != "dilithium-private") throw ParseError("not a dilithium-private file");
  const auto p = dilithium_params_from(kf);
  return dilithium::DilithiumPrivateKey{p, read_vec(kf, "s", p.k, p.n, p.q)};
}

dilithium::DilithiumSignature to_dilithium_signature(const KeyFile& kf) {
  if (kf.scheme != "dilithium-signature")
    throw ParseError("not a dilithium-signature file");
  const auto p = dilithium_params_from(kf);
  dilithium::DilithiumSignature sig;
  sig.r2 = read_vec(kf, "r2", p.k, p.n, p.q);
  const auto& pos = kf.field("c-positions");
  const auto& signs = kf.field("c-signs");
  if (pos.size() != signs.size()) throw ParseError("challenge positions/signs mismatch");
  sig.c.n = p.n;
  sig.c.q = p.q;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (pos[i] < 0 || pos[i] >= static_cast<std::int64_t>(p.n))
      throw ParseError("challenge position out of range");
    if (signs[i] != 1 && signs[i] != -1) throw ParseError("challenge sign must be +-1");
    sig.c.entries.emplace_back(static_cast<std::uint32_t>(pos[i]),
                               static_cast<std::int8_t>(signs[i]));
  }
  if (!sig.c.well_formed(p)) throw ParseError("malformed challenge");
  return sig;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  out << content;
}

}  // namespace pqlab::keyfile
