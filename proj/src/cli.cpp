#include "pqlab/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "pqlab/agility.hpp"
#include "pqlab/channel.hpp"
#include "pqlab/dilithium.hpp"
#include "pqlab/ecc.hpp"
#include "pqlab/keyfile.hpp"
#include "pqlab/kyber.hpp"
#include "pqlab/lattice.hpp"
#include "pqlab/modnum.hpp"
#include "pqlab/polyring.hpp"
#include "pqlab/rng.hpp"
#include "pqlab/rsa.hpp"
#include "pqlab/shor.hpp"
#include "pqlab/socket_stream.hpp"
#include "pqlab/xof.hpp"

namespace pqlab::cli {

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("PQLAB_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw DomainError("PQLAB_SEED must be an unsigned integer");
    }
  }
  return 0;
}

kyber::KyberParams kyber_params_by_name(const std::string& name) {
  if (name == "toy") return kyber::kParamsToy;
  if (name == "512") return kyber::kParams512;
  if (name == "768") return kyber::kParams768;
  if (name == "1024") return kyber::kParams1024;
  throw DomainError("unknown parameter set: " + name);
}

dilithium::DilithiumParams dilithium_params_by_name(const std::string& name) {
  if (name == "toy") return dilithium::kParamsToy;
  if (name == "2") return dilithium::kParamsLevel2;
  if (name == "3") return dilithium::kParamsLevel3;
  if (name == "5") return dilithium::kParamsLevel5;
  throw DomainError("unknown level: " + name);
}

lattice::Basis load_basis(const std::string& path) {
  // Whitespace-separated integer rows; each file row is one basis vector.
  std::istringstream is(keyfile::read_text_file(path));
  std::vector<std::vector<std::int64_t>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::vector<std::int64_t> row;
    std::int64_t v;
    while (ls >> v) row.push_back(v);
    if (!ls.eof()) throw ParseError("basis file: non-integer token");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("basis file is empty");
  for (const auto& r : rows)
    if (r.size() != rows.size())
      throw ParseError("basis file must be square (n rows of n integers)");
  return lattice::basis_from_int_columns(rows);
}

std::vector<Rational> parse_rational_vector(const std::string& text, std::size_t n) {
  // accepts integers and decimal fractions like 0.4 or -2.25
  std::istringstream is(text);
  std::vector<Rational> out;
  std::string tok;
  while (is >> tok) {
    const auto dot = tok.find('.');
    try {
      if (dot == std::string::npos) {
        out.emplace_back(std::stoll(tok));
      } else {
        const std::string whole = tok.substr(0, dot);
        const std::string frac = tok.substr(dot + 1);
        long long den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        long long num = std::stoll(whole.empty() || whole == "-" ? whole + "0" : whole);
        long long fnum = frac.empty() ? 0 : std::stoll(frac);
        const bool neg = !whole.empty() && whole[0] == '-';
        out.push_back(Rational(num) + Rational(neg ? -fnum : fnum, den));
      }
    } catch (const std::exception&) {
      throw ParseError("not a number: " + tok);
    }
  }
  if (out.size() != n) throw ParseError("expected " + std::to_string(n) + " coordinates");
  return out;
}

std::string render_rat_vec(const std::vector<Rational>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].to_string();
  }
  return s + ")";
}

std::string render_int_vec(const std::vector<std::int64_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

void print_poly_vec(const std::string& name, const poly::RingVec& v, bool centered) {
  for (std::size_t i = 0; i < v.size(); ++i)
    std::cout << name << "[" << i << "] = " << poly::render(v[i], centered) << "\n";
}

// ----- numtheory ---------------------------------------------------------

void run_numtheory_demo() {
  using namespace modnum;
  std::cout << "(39*99 + 95*64) mod 19 = " << mod_reduce(39 * 99 + 95 * 64, 19).value
            << "\n";
  std::cout << "129537 mod 9 = " << mod_reduce(129537, 9).value << "\n";
  std::cout << "127^4 mod 5 = " << mod_pow(127, 4, 5).value << "\n";
  const auto cert = bezout(63, 17);
  std::cout << "gcd(63, 17) = " << cert.g << " with 63*(" << cert.x << ") + 17*("
            << cert.y << ") = " << cert.g << "\n";
  std::cout << "inverse of 157 mod 2668 = " << mod_inverse(157, 2668).value << "\n";
  std::cout << "period of exp_2 mod 5 = " << period(2, 5) << "\n";
  std::cout << "log_2(5) mod 11 = " << discrete_log(2, 5, 11) << "\n";
  const auto f = factorize(2773);
  std::cout << "2773 = ";
  for (std::size_t i = 0; i < f.factors.size(); ++i) {
    if (i) std::cout << " * ";
    std::cout << f.factors[i].first;
    if (f.factors[i].second > 1) std::cout << "^" << f.factors[i].second;
  }
  std::cout << "\n";
}

// ----- rsa ----------------------------------------------------------------

void run_rsa_demo() {
  const std::string text = "ITS ALL GREEK TO ME";
  const auto keys = rsa::rsa_keygen(47, 59, 157);
  std::cout << "keygen p=47 q=59 g=157 -> public (d=" << keys.pub.d
            << ", n=" << keys.pub.n << ")\n";
  const auto msg = rsa::encode_text(text, keys.pub.n);
  std::cout << "message: " << text << "\n";
  std::cout << "encoded: " << rsa::render_blocks(msg) << "\n";
  const auto ct = rsa::rsa_encrypt(msg, keys.pub);
  std::cout << "encrypted: " << rsa::render_blocks(ct) << "\n";
  const auto pt = rsa::rsa_decrypt(ct, keys.priv);
  std::cout << "decrypted: " << rsa::render_blocks(pt) << "\n";
  std::cout << "decoded: " << rsa::decode_text(pt) << "\n";
}

// ----- ecc ----------------------------------------------------------------

void run_ecc_demo(RngStream& rng) {
  const auto preset = ecc::preset_f97();
  const auto& c = preset.curve;
  std::cout << "curve y^2 = x^3 + " << c.a << "x + " << c.b << " over F_" << c.p
            << ", generator (" << preset.generator.x << ", " << preset.generator.y
            << "), order " << preset.order << "\n";

  auto stream = rng.derive("ecc-demo");
  const std::uint64_t sa = 1 + stream.uniform_below(preset.order - 1);
  const std::uint64_t sb = 1 + stream.uniform_below(preset.order - 1);
  const auto pa = ecc::point_pow(preset.generator, sa, c);
  const auto pb = ecc::point_pow(preset.generator, sb, c);
  const auto ka = ecc::ecdh_shared(sa, pb, c);
  const auto kb = ecc::ecdh_shared(sb, pa, c);
  std::cout << "ecdh: s_A=" << sa << " P_A=(" << pa.x << "," << pa.y << ")  s_B=" << sb
            << " P_B=(" << pb.x << "," << pb.y << ")\n";
  std::cout << "shared K_A=(" << ka.x << "," << ka.y << ") K_B=(" << kb.x << "," << kb.y
            << ") equal=" << (ka == kb ? "yes" : "no") << "\n";
  std::cout << "recovered s_A by brute-force log: "
            << ecc::ec_dlog_bruteforce(preset.generator, pa, c) << "\n";

  const std::uint64_t eg_priv = 1 + stream.uniform_below(preset.order - 1);
  const auto eg_pub = ecc::point_pow(preset.generator, eg_priv, c);
  const std::uint64_t m = stream.uniform_below(12);
  const auto eg_ct =
      ecc::elgamal_encrypt(m, eg_pub, preset.generator, preset.order, c, stream);
  std::cout << "elgamal: m=" << m << " c1=(" << eg_ct.c1.x << "," << eg_ct.c1.y
            << ") c2=(" << eg_ct.c2.x << "," << eg_ct.c2.y
            << ") decrypted=" << ecc::elgamal_decrypt(eg_ct, eg_priv, c) << "\n";

  const auto big = ecc::preset_f1000003();
  const std::uint64_t priv = 1 + stream.uniform_below(big.order - 1);
  const auto pub = ecc::point_pow(big.generator, priv, big.curve);
  const std::uint64_t digest = stream.next_u64() % big.order;
  const auto sig =
      ecc::ecdsa_sign(digest, priv, big.generator, big.order, big.curve, stream);
  std::cout << "ecdsa over F_" << big.curve.p << ": digest=" << digest << " r=" << sig.r
            << " s=" << sig.s << " verifies="
            << (ecc::ecdsa_verify(digest, sig, pub, big.generator, big.order, big.curve)
                    ? "yes"
                    : "no")
            << "\n";
}

// ----- shor ---------------------------------------------------------------

void run_shor(std::uint64_t n, bool trace, int max_rounds, RngStream& rng) {
  auto stream = rng.derive("shor");
  const auto spell_outcome = [](const shor::ShorRound& r) {
    std::ostringstream os;
    os << "a=" << r.a << " outcome=" << shor::outcome_name(r.outcome);
    if (r.outcome != shor::RoundOutcome::GcdShortcut) os << " y=" << r.y;
    if (r.period) os << " period=" << *r.period;
    if (r.divisor) os << " divisor=" << r.divisor;
    return os.str();
  };
  try {
    const auto res = shor::shor_factor(n, stream, max_rounds);
    if (trace) {
      std::cout << "register size N = " << (n % 2 == 1 ? shor::register_size(n) : 0)
                << "\n";
      for (const auto& r : res.trace.rounds) {
        std::cout << "round: " << spell_outcome(r) << "\n";
        if (r.outcome != shor::RoundOutcome::GcdShortcut) {
          const auto cf = shor::continued_fraction(r.y, shor::register_size(n));
          std::cout << "  convergents of " << r.y << "/" << shor::register_size(n)
                    << ":";
          for (const auto& [g, h] : cf.convergents) std::cout << " " << g << "/" << h;
          std::cout << "\n";
        }
        if (r.period && *r.period % 2 == 0) {
          const auto half = modnum::mod_pow(r.a, *r.period / 2, n).value;
          std::cout << "  a^(p/2) = " << half << ", gcd(a^(p/2)-1, n) = "
                    << modnum::gcd(half - 1, n) << ", gcd(a^(p/2)+1, n) = "
                    << modnum::gcd(half + 1, n) << "\n";
        }
      }
    }
    std::cout << n << " has divisor " << res.divisor << " (cofactor "
              << n / res.divisor << ")\n";
  } catch (const shor::ShorGaveUp& e) {
    if (trace)
      for (const auto& r : e.trace.rounds) std::cout << "round: " << spell_outcome(r) << "\n";
    throw;
  }
}

// ----- lattice ------------------------------------------------------------

void run_ggh_demo(std::size_t dim, RngStream& rng) {
  auto stream = rng.derive("ggh");
  lattice::IntMat good(dim, lattice::IntVec(dim, 0));
  for (std::size_t i = 0; i < dim; ++i) good[i][i] = 5 + stream.uniform_int(0, 3);
  lattice::GghKeys keys;
  for (;;) {
    try {
      keys = lattice::ggh_keygen(good, lattice::random_unimodular(dim, stream, 12));
      break;
    } catch (const KeyGenError&) {
    }
  }
  std::cout << "private basis rows:";
  for (const auto& r : keys.private_rows) std::cout << " " << render_int_vec(r);
  std::cout << "  (defect " << keys.private_defect << ")\n";
  std::cout << "public basis rows:";
  for (const auto& r : keys.public_rows) std::cout << " " << render_int_vec(r);
  std::cout << "  (defect " << keys.public_defect << ")\n";

  lattice::IntVec m(dim), e(dim);
  for (auto& v : m) v = stream.uniform_int(-9, 9);
  for (auto& v : e) v = stream.uniform_int(-1, 1);
  const auto ct = lattice::ggh_encrypt(m, keys.public_rows, e);
  const auto back = lattice::ggh_decrypt(ct, keys);
  std::cout << "message " << render_int_vec(m) << " error " << render_int_vec(e)
            << "\nciphertext " << render_int_vec(ct) << "\ndecrypted "
            << render_int_vec(back) << " match=" << (back == m ? "yes" : "no") << "\n";
}

void run_lwe_demo(std::size_t n, std::uint64_t q, std::int64_t bound, RngStream& rng) {
  auto stream = rng.derive("lwe");
  const auto inst = lattice::lwe_generate(n, q, bound, stream);
  std::cout << "n=" << n << " q=" << q << " error bound " << bound << "\n";
  std::cout << "secret s = (";
  for (std::size_t i = 0; i < n; ++i) std::cout << (i ? ", " : "") << inst.s[i];
  std::cout << ")\n";
  const auto emb = lattice::lwe_embed(inst);
  std::cout << "embedding witness (A | E_n | -t) * (s, e, 1)^T == 0: "
            << (emb.witness_ok ? "holds" : "violated") << "\n";
  try {
    const auto recovered = lattice::gauss_solve(inst.A, inst.t, inst.q);
    std::cout << "elimination on the noisy system recovers s: "
              << (recovered == inst.s ? "yes" : "no (errors poison the solve)") << "\n";
  } catch (const Singular&) {
    std::cout << "elimination: matrix singular mod q\n";
  }
  auto clean = inst;
  // rebuild the noiseless system t = A s to contrast
  for (std::size_t i = 0; i < n; ++i) {
    unsigned __int128 acc = 0;
    for (std::size_t j = 0; j < n; ++j)
      acc += static_cast<unsigned __int128>(inst.A[i][j]) * inst.s[j];
    clean.t[i] = static_cast<std::uint64_t>(acc % q);
  }
  try {
    const auto recovered = lattice::gauss_solve(clean.A, clean.t, clean.q);
    std::cout << "elimination on the error-free system recovers s: "
              << (recovered == inst.s ? "yes" : "no") << "\n";
  } catch (const Singular&) {
    std::cout << "elimination: matrix singular mod q\n";
  }
}

// ----- kyber ---------------------------------------------------------------

void run_kyber_toy_trace() {
  using poly::make_ring_elem;
  using poly::render;
  const auto params = kyber::kParamsToy;

  // Reference worked example inputs (ascending coefficients).
  kyber::RingVec s{{make_ring_elem(4, 7, {1, 1, 0, 1}), make_ring_elem(4, 7, {2, 1, 0, 0})}};
  kyber::RingMat A{2, 2,
                   {make_ring_elem(4, 7, {4, 5, 0, 4}), make_ring_elem(4, 7, {0, 0, 5, 3}),
                    make_ring_elem(4, 7, {0, 3, 0, 5}), make_ring_elem(4, 7, {6, 0, 6, 0})}};
  kyber::RingVec e{{make_ring_elem(4, 7, {0, 0, 1, 0}), make_ring_elem(4, 7, {0, 1, 0, 0})}};
  const auto keys = kyber::keygen_from(params, s, A, e);

  std::cout << "parameters: n=4 q=7 k=2\n";
  print_poly_vec("s", keys.priv.s, false);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      std::cout << "A[" << i << "][" << j << "] = " << render(keys.pub.A.at(i, j)) << "\n";
  print_poly_vec("e", e, false);
  std::cout << "t = A*s + e:\n";
  print_poly_vec("t", keys.pub.t, false);

  kyber::EncryptionRandomness rand;
  rand.r = kyber::RingVec{{make_ring_elem(4, 7, {0, 0, 1, 0}), make_ring_elem(4, 7, {1, 0, 0, 0})}};
  rand.e1 = kyber::RingVec{{make_ring_elem(4, 7, {1, 1, 0, 0}), make_ring_elem(4, 7, {1, 0, 0, 0})}};
  rand.e2 = make_ring_elem(4, 7, {0, 1, 0, 1});
  const std::string message = "1001";
  std::cout << "message bits: " << message << "\n";
  std::cout << "P(m) = " << render(poly::bits_to_poly(message, 4, 7)) << "\n";
  std::cout << "scaled: " << render(poly::scale_half_q(poly::bits_to_poly(message, 4, 7)))
            << "\n";
  print_poly_vec("r", rand.r, false);
  print_poly_vec("e1", rand.e1, false);
  std::cout << "e2 = " << render(rand.e2) << "\n";

  const auto ct = kyber::encrypt(keys.pub, message, rand);
  std::cout << "u = A^T*r + e1:\n";
  print_poly_vec("u", ct.u, false);
  std::cout << "v = t^T*r + e2 + scaled(m)\n";
  std::cout << "  computed:  " << render(ct.v) << "\n";
  std::cout << "  reference print: 3x^3+2x^2-x-2  <-- transcription error in the"
               " source example; see docs/errata.md\n";

  const auto m_hat = kyber::decrypt_pre_round(keys.priv, ct);
  std::cout << "m_hat = v - s^T*u = " << render(m_hat) << "\n";
  const auto noise = kyber::noise_term(keys.priv, e, rand);
  std::cout << "noise e^T*r + e2 - s^T*e1 = " << render(noise, true)
            << " (inf-norm " << poly::inf_norm_centered(noise) << ", bound q/4 = 1.75)\n";
  std::cout << "rho(m_hat) = " << render(poly::round_coeffs(m_hat)) << "\n";
  std::cout << "decrypted bits: " << kyber::decrypt(keys.priv, ct)
            << "  (the oversized noise constant flips the low bit at these toy"
               " parameters)\n";

  kyber::KyberCiphertext printed = ct;
  printed.v = make_ring_elem(4, 7, {-2, -1, 2, 3});
  std::cout << "with the reference-printed v instead: m_hat = "
            << render(kyber::decrypt_pre_round(keys.priv, printed))
            << ", bits = " << kyber::decrypt(keys.priv, printed) << "\n";
}

void run_kyber_demo(const std::string& params_name, bool trace, RngStream& rng) {
  if (params_name == "toy") {
    run_kyber_toy_trace();
    if (trace) {
      std::cout << "\n(the toy trace above already shows every intermediate)\n";
    }
    return;
  }
  const auto params = kyber_params_by_name(params_name);
  auto stream = rng.derive("kyber-demo");
  const auto keys = kyber::keygen(params, stream);
  std::cout << "parameters: n=" << params.n << " q=" << params.q << " k=" << params.k
            << " (lattice rank " << params.k * params.n << ")\n";
  std::string bits(params.n, '0');
  for (auto& b : bits) b = stream.uniform_below(2) ? '1' : '0';
  const auto rand = kyber::sample_encryption_randomness(params, stream);
  const auto ct = kyber::encrypt(keys.pub, bits, rand);
  const auto back = kyber::decrypt(keys.priv, ct);
  std::cout << "message bits (first 32): " << bits.substr(0, 32) << "...\n";
  if (trace) {
    std::cout << "u[0] (first terms): "
              << poly::render(ct.u[0]).substr(0, 60) << "...\n";
    const auto noise = kyber::noise_term(keys.priv, keys.keygen_error, rand);
    std::cout << "noise inf-norm: " << poly::inf_norm_centered(noise) << " (q/4 = "
              << static_cast<double>(params.q) / 4.0 << ")\n";
  }
  std::cout << "round trip: " << (back == bits ? "exact" : "FAILED") << "\n";

  const auto kem = kyber::kem_encapsulate(keys.pub, stream);
  const auto shared = kyber::kem_decapsulate(keys.priv, kem.ct);
  std::cout << "kem shared secret: " << to_hex(kem.shared_secret) << "\n";
  std::cout << "kem decapsulated:  " << to_hex(shared) << "\n";
  std::cout << "kem agreement: " << (shared == kem.shared_secret ? "yes" : "no") << "\n";
}

// ----- dilithium ------------------------------------------------------------

void run_dilithium_demo(const std::string& level, RngStream& rng) {
  const auto params = dilithium_params_by_name(level);
  auto stream = rng.derive("dilithium-demo");
  const auto keys = dilithium::keygen(params, stream);
  std::cout << "parameters: n=" << params.n << " q=" << params.q << " m=" << params.m
            << " k=" << params.k << " h=" << params.h << "\n";
  const Bytes msg = to_bytes("ITS ALL GREEK TO ME");
  const auto res = dilithium::sign_traced(keys.priv, keys.pub, msg, stream);
  std::cout << "signing attempts: " << res.attempts << "\n";
  std::cout << "challenge entries (position:sign):";
  for (auto [pos, sign] : res.sig.c.entries)
    std::cout << " " << pos << ":" << (sign > 0 ? "+1" : "-1");
  std::cout << "\n";
  std::cout << "verify: " << (dilithium::verify(keys.pub, msg, res.sig) ? "ok" : "FAILED")
            << "\n";
  Bytes tampered = msg;
  tampered[0] ^= 1;
  std::cout << "verify tampered message: "
            << (dilithium::verify(keys.pub, tampered, res.sig) ? "ACCEPTED" : "rejected")
            << "\n";
}

// ----- hybrid / mosca -------------------------------------------------------

void run_hybrid(const std::string& mode_name, const std::string& classical,
                const std::string& pq, const std::string& message, RngStream& rng) {
  auto stream = rng.derive("hybrid");
  agility::SchemeRegistry registry;
  registry.register_scheme(
      agility::make_ecdsa_signer("ecdsa", ecc::preset_f1000003(), stream));
  registry.register_scheme(agility::make_rsa_signer("rsa", 47, 59, 157));
  registry.register_scheme(
      agility::make_dilithium_signer("dilithium", dilithium::kParamsLevel2, stream));

  const auto mode = agility::mode_from_name(mode_name);
  const Bytes msg = to_bytes(message);
  const auto sig = agility::hybrid_sign(msg, classical, pq, mode, registry, stream);
  std::cout << "mode " << agility::mode_name(sig.mode) << "\n";
  for (const auto& [id, bytes] : sig.parts)
    std::cout << "part " << id << ": " << bytes.size() << " bytes, "
              << to_hex(ByteView(bytes).first(std::min<std::size_t>(bytes.size(), 16)))
              << (bytes.size() > 16 ? "..." : "") << "\n";
  std::cout << "hybrid verify: "
            << (agility::hybrid_verify(msg, sig, registry) ? "ok" : "FAILED") << "\n";
  Bytes tampered = msg;
  if (!tampered.empty()) tampered[0] ^= 1;
  std::cout << "tampered verify: "
            << (agility::hybrid_verify(tampered, sig, registry) ? "ACCEPTED" : "rejected")
            << "\n";
}

void run_mosca(double migrate, double confi, double crqc) {
  const auto v = agility::mosca_evaluate({migrate, confi, crqc});
  std::cout << "T_Migrate + T_Confi = " << migrate + confi << " years, T_CRQC = " << crqc
            << " years\n";
  std::cout << "slack: " << v.slack << " years\n";
  std::cout << "verdict: " << (v.at_risk ? "AT_RISK" : "SAFE");
  if (v.in_trouble) std::cout << " IN_TROUBLE (confidentiality alone outlasts T_CRQC)";
  std::cout << "\n";
}

// ----- channel ---------------------------------------------------------------

void pump_session(channel::ByteStream& stream, channel::SessionState& session) {
  // Half-duplex demo pump: forward stdin lines as sealed frames, print
  // whatever arrives; ends at stdin EOF (client) or peer EOF (server).
  std::cout << "session established, key " << to_hex(session.shared_key) << "\n";
  if (session.role == channel::Role::Client) {
    std::string line;
    while (std::getline(std::cin, line)) {
      channel::write_frame(stream, channel::seal(session, to_bytes(line)));
      const auto reply = channel::read_frame(stream);
      const auto pt = channel::open_frame(session, reply);
      std::cout << std::string(pt.begin(), pt.end()) << "\n";
    }
  } else {
    try {
      for (;;) {
        const auto frame = channel::read_frame(stream);
        if (frame.type == channel::FrameType::Alert) break;
        const auto pt = channel::open_frame(session, frame);
        std::cout << std::string(pt.begin(), pt.end()) << "\n";
        Bytes echo = to_bytes(std::string("echo: "));
        append(echo, pt);
        channel::write_frame(stream, channel::seal(session, echo));
      }
    } catch (const ProtocolError&) {
      // peer closed; session over
    }
  }
}

void run_serve(std::uint16_t port, const std::string& params_name, bool hybrid,
               RngStream& rng) {
  auto stream_rng = rng.derive("serve");
  const auto params = kyber_params_by_name(params_name);
  const auto identity = channel::make_server_identity(params, hybrid, stream_rng);
  std::cout << "listening on port " << port << "\n";
  net::SocketListener listener(port);
  auto stream = listener.accept_one();
  auto session = channel::handshake_server(
      *stream, identity,
      hybrid ? channel::HandshakeMode::Hybrid : channel::HandshakeMode::KemOnly);
  pump_session(*stream, session);
}

void run_connect(const std::string& host, std::uint16_t port,
                 const std::string& params_name, bool hybrid, RngStream& rng) {
  auto stream_rng = rng.derive("connect");
  const auto params = kyber_params_by_name(params_name);
  auto stream = net::connect_to(host, port);
  auto session = channel::handshake_client(
      *stream, params,
      hybrid ? channel::HandshakeMode::Hybrid : channel::HandshakeMode::KemOnly,
      stream_rng);
  pump_session(*stream, session);
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"post-quantum cryptography workbench"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = default_seed();
  app.add_option("--seed", seed, "seed for all randomness (or PQLAB_SEED)");

  // numtheory ---------------------------------------------------------------
  auto* numtheory = app.add_subcommand("numtheory", "modular arithmetic toolbox");
  numtheory->require_subcommand(1);
  numtheory->fallthrough();
  std::int64_t nt_a = 0, nt_b = 0;
  std::uint64_t nt_m = 1, nt_x = 0, nt_n = 1;

  auto* nt_demo = numtheory->add_subcommand("demo", "run the worked examples");
  nt_demo->callback(run_numtheory_demo);

  auto* nt_gcd = numtheory->add_subcommand("gcd", "greatest common divisor");
  nt_gcd->add_option("a", nt_a)->required();
  nt_gcd->add_option("b", nt_b)->required();
  nt_gcd->callback([&] {
    std::cout << modnum::gcd(static_cast<std::uint64_t>(nt_a),
                             static_cast<std::uint64_t>(nt_b))
              << "\n";
  });

  auto* nt_bezout = numtheory->add_subcommand("bezout", "extended Euclid certificate");
  nt_bezout->add_option("a", nt_a)->required();
  nt_bezout->add_option("b", nt_b)->required();
  nt_bezout->callback([&] {
    const auto c = modnum::bezout(static_cast<std::uint64_t>(nt_a),
                                  static_cast<std::uint64_t>(nt_b));
    std::cout << "gcd = " << c.g << ", " << c.a << "*(" << c.x << ") + " << c.b << "*("
              << c.y << ") = " << c.g << "\n";
  });

  auto* nt_mod = numtheory->add_subcommand("mod", "remainder with floor semantics");
  nt_mod->add_option("a", nt_a)->required();
  nt_mod->add_option("n", nt_n)->required();
  nt_mod->callback([&] { std::cout << modnum::mod_reduce(nt_a, nt_n).value << "\n"; });

  auto* nt_inv = numtheory->add_subcommand("inverse", "modular inverse");
  nt_inv->add_option("a", nt_a)->required();
  nt_inv->add_option("m", nt_m)->required();
  nt_inv->callback([&] { std::cout << modnum::mod_inverse(nt_a, nt_m).value << "\n"; });

  auto* nt_pow = numtheory->add_subcommand("pow", "modular exponentiation");
  nt_pow->add_option("a", nt_a)->required();
  nt_pow->add_option("x", nt_x)->required();
  nt_pow->add_option("n", nt_n)->required();
  nt_pow->callback([&] {
    std::cout << modnum::mod_pow(static_cast<std::uint64_t>(nt_a), nt_x, nt_n).value
              << "\n";
  });

  auto* nt_period = numtheory->add_subcommand("period", "multiplicative order of a mod n");
  nt_period->add_option("a", nt_a)->required();
  nt_period->add_option("n", nt_n)->required();
  nt_period->callback([&] {
    std::cout << modnum::period(static_cast<std::uint64_t>(nt_a), nt_n) << "\n";
  });

  auto* nt_dlog = numtheory->add_subcommand("dlog", "brute-force discrete logarithm");
  nt_dlog->add_option("a", nt_a)->required();
  nt_dlog->add_option("x", nt_x)->required();
  nt_dlog->add_option("n", nt_n)->required();
  nt_dlog->callback([&] {
    std::cout << modnum::discrete_log(static_cast<std::uint64_t>(nt_a), nt_x, nt_n)
              << "\n";
  });

  auto* nt_factor = numtheory->add_subcommand("factor", "trial-division factorization");
  nt_factor->add_option("n", nt_n)->required();
  nt_factor->callback([&] {
    const auto f = modnum::factorize(nt_n);
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
      if (i) std::cout << " * ";
      std::cout << f.factors[i].first;
      if (f.factors[i].second > 1) std::cout << "^" << f.factors[i].second;
    }
    std::cout << "\n";
  });

  auto* nt_prime = numtheory->add_subcommand("prime", "primality by trial division");
  nt_prime->add_option("n", nt_n)->required();
  nt_prime->callback([&] { std::cout << (modnum::is_prime(nt_n) ? "yes" : "no") << "\n"; });

  // rsa -----------------------------------------------------------------------
  auto* rsa_cmd = app.add_subcommand("rsa", "textbook RSA with letter-block encoding");
  rsa_cmd->require_subcommand(1);
  rsa_cmd->fallthrough();
  rsa_cmd->add_subcommand("demo", "reproduce the classic worked example")
      ->callback(run_rsa_demo);

  std::uint64_t rsa_p = 0, rsa_q = 0, rsa_g = 0;
  std::string rsa_pub_path, rsa_priv_path, rsa_key_path, rsa_text, rsa_blocks;
  auto* rsa_keygen_cmd = rsa_cmd->add_subcommand("keygen", "derive a key pair");
  rsa_keygen_cmd->add_option("--p", rsa_p, "first prime")->required();
  rsa_keygen_cmd->add_option("--q", rsa_q, "second prime")->required();
  rsa_keygen_cmd->add_option("--g", rsa_g, "private exponent")->required();
  rsa_keygen_cmd->add_option("--pub", rsa_pub_path, "public key output")->required();
  rsa_keygen_cmd->add_option("--priv", rsa_priv_path, "private key output")->required();
  rsa_keygen_cmd->callback([&] {
    const auto keys = rsa::rsa_keygen(rsa_p, rsa_q, rsa_g);
    keyfile::write_text_file(rsa_pub_path,
                             keyfile::write_keyfile(keyfile::from_rsa_public(keys.pub)));
    keyfile::write_text_file(rsa_priv_path,
                             keyfile::write_keyfile(keyfile::from_rsa_private(keys.priv)));
    std::cout << "public (d=" << keys.pub.d << ", n=" << keys.pub.n << ") -> "
              << rsa_pub_path << "\n";
  });

  auto* rsa_enc = rsa_cmd->add_subcommand("encrypt", "encode text and encrypt blocks");
  rsa_enc->add_option("--key", rsa_key_path, "public key file")->required();
  rsa_enc->add_option("--text", rsa_text, "message (A-Z and blanks)")->required();
  rsa_enc->callback([&] {
    const auto pub =
        keyfile::to_rsa_public(keyfile::parse_keyfile(keyfile::read_text_file(rsa_key_path)));
    const auto ct = rsa::rsa_encrypt(rsa::encode_text(rsa_text, pub.n), pub);
    std::cout << rsa::render_blocks(ct) << "\n";
  });

  auto* rsa_dec = rsa_cmd->add_subcommand("decrypt", "decrypt blocks and decode text");
  rsa_dec->add_option("--key", rsa_key_path, "private key file")->required();
  rsa_dec->add_option("--blocks", rsa_blocks, "ciphertext blocks")->required();
  rsa_dec->callback([&] {
    const auto priv = keyfile::to_rsa_private(
        keyfile::parse_keyfile(keyfile::read_text_file(rsa_key_path)));
    const auto pt = rsa::rsa_decrypt(rsa::parse_blocks(rsa_blocks, priv.n), priv);
    std::cout << rsa::render_blocks(pt) << "\n";
    std::cout << rsa::decode_text(pt) << "\n";
  });

  // ecc -----------------------------------------------------------------------
  auto* ecc_cmd = app.add_subcommand("ecc", "elliptic curves over small prime fields");
  ecc_cmd->require_subcommand(1);
  ecc_cmd->fallthrough();
  ecc_cmd->add_subcommand("demo", "ECDH, brute-force logs and ECDSA on the presets")
      ->callback([&] {
        auto rng = RngStream::from_seed(seed);
        run_ecc_demo(rng);
      });

  // shor ----------------------------------------------------------------------
  auto* shor_cmd = app.add_subcommand("shor", "order finding with a simulated register");
  shor_cmd->fallthrough();
  std::uint64_t shor_n = 15;
  bool shor_trace = false;
  int shor_rounds = 64;
  shor_cmd->add_option("--n", shor_n, "odd composite to factor")->required();
  shor_cmd->add_flag("--trace", shor_trace, "print every round");
  shor_cmd->add_option("--max-rounds", shor_rounds, "round budget");
  shor_cmd->callback([&] {
    auto rng = RngStream::from_seed(seed);
    run_shor(shor_n, shor_trace, shor_rounds, rng);
  });

  // lattice ---------------------------------------------------------------------
  auto* lat = app.add_subcommand("lattice", "bases, hard problems, GGH and LWE");
  lat->require_subcommand(1);
  lat->fallthrough();
  std::string lat_basis, lat_target;
  std::int64_t lat_box = 8;

  auto* lat_defect = lat->add_subcommand("defect", "orthogonality defect of a basis");
  lat_defect->add_option("--basis", lat_basis, "file of integer rows")->required();
  lat_defect->callback([&] {
    std::cout << lattice::defect(load_basis(lat_basis)) << "\n";
  });

  auto* lat_svp = lat->add_subcommand("svp", "shortest vector in a coefficient box");
  lat_svp->add_option("--basis", lat_basis)->required();
  lat_svp->add_option("--box", lat_box, "coefficient bound M");
  lat_svp->callback([&] {
    const auto r = lattice::svp_bruteforce(load_basis(lat_basis), lat_box);
    std::cout << "vector " << render_rat_vec(r.vector) << " coeffs "
              << render_int_vec(r.coeffs) << " norm^2 " << r.norm2.to_string() << "\n";
  });

  auto* lat_cvp = lat->add_subcommand("cvp", "closest vector in a coefficient box");
  lat_cvp->add_option("--basis", lat_basis)->required();
  lat_cvp->add_option("--target", lat_target, "target coordinates")->required();
  lat_cvp->add_option("--box", lat_box, "coefficient bound M");
  lat_cvp->callback([&] {
    const auto b = load_basis(lat_basis);
    const auto w = parse_rational_vector(lat_target, b.n);
    const auto r = lattice::cvp_bruteforce(b, w, lat_box);
    std::cout << "vector " << render_rat_vec(r.vector) << " coeffs "
              << render_int_vec(r.coeffs) << " distance^2 " << r.norm2.to_string()
              << "\n";
  });

  auto* lat_sivp = lat->add_subcommand("sivp", "successive minima basis (n <= 3)");
  lat_sivp->add_option("--basis", lat_basis)->required();
  lat_sivp->callback([&] {
    const auto r = lattice::sivp_bruteforce(load_basis(lat_basis));
    for (const auto& col : r.cols) std::cout << render_rat_vec(col) << "\n";
  });

  auto* lat_ggh = lat->add_subcommand("ggh-demo", "good/bad basis encryption demo");
  std::size_t ggh_dim = 2;
  lat_ggh->add_option("--dim", ggh_dim, "dimension (2 or 3)");
  lat_ggh->callback([&] {
    auto rng = RngStream::from_seed(seed);
    run_ggh_demo(ggh_dim, rng);
  });

  auto* lat_lwe = lat->add_subcommand("lwe-demo", "noisy linear system demo");
  std::size_t lwe_n = 4;
  std::uint64_t lwe_q = 97;
  std::int64_t lwe_bound = 3;
  lat_lwe->add_option("--n", lwe_n);
  lat_lwe->add_option("--q", lwe_q);
  lat_lwe->add_option("--bound", lwe_bound);
  lat_lwe->callback([&] {
    auto rng = RngStream::from_seed(seed);
    run_lwe_demo(lwe_n, lwe_q, lwe_bound, rng);
  });

  // kyber -----------------------------------------------------------------------
  auto* kyb = app.add_subcommand("kyber", "module-LWE encryption and KEM");
  kyb->require_subcommand(1);
  kyb->fallthrough();
  std::string kyb_params = "toy";
  bool kyb_trace = false;
  std::string kyb_pub_path, kyb_priv_path, kyb_key_path, kyb_message, kyb_ct_hex;

  auto* kyb_demo = kyb->add_subcommand("demo", "worked toy pipeline or a full round trip");
  kyb_demo->add_option("--params", kyb_params, "toy|512|768|1024");
  kyb_demo->add_flag("--trace", kyb_trace, "print intermediates");
  kyb_demo->callback([&] {
    auto rng = RngStream::from_seed(seed);
    run_kyber_demo(kyb_params, kyb_trace, rng);
  });

  auto* kyb_keygen = kyb->add_subcommand("keygen", "generate a key pair");
  kyb_keygen->add_option("--params", kyb_params, "toy|512|768|1024");
  kyb_keygen->add_option("--pub", kyb_pub_path)->required();
  kyb_keygen->add_option("--priv", kyb_priv_path)->required();
  kyb_keygen->callback([&] {
    auto rng = RngStream::from_seed(seed);
    auto stream = rng.derive("kyber-keygen");
    const auto keys = kyber::keygen(kyber_params_by_name(kyb_params), stream);
    keyfile::write_text_file(kyb_pub_path,
                             keyfile::write_keyfile(keyfile::from_kyber_public(keys.pub)));
    keyfile::write_text_file(
        kyb_priv_path, keyfile::write_keyfile(keyfile::from_kyber_private(keys.priv)));
    std::cout << "wrote " << kyb_pub_path << " and " << kyb_priv_path << "\n";
  });

  auto* kyb_enc = kyb->add_subcommand("encrypt", "encrypt a bit string");
  kyb_enc->add_option("--key", kyb_key_path, "public key file")->required();
  kyb_enc->add_option("--message", kyb_message, "bit string of length <= n")->required();
  kyb_enc->callback([&] {
    auto rng = RngStream::from_seed(seed);
    auto stream = rng.derive("kyber-encrypt");
    const auto pub = keyfile::to_kyber_public(
        keyfile::parse_keyfile(keyfile::read_text_file(kyb_key_path)));
    const auto rand = kyber::sample_encryption_randomness(pub.params, stream);
    const auto ct = kyber::encrypt(pub, kyb_message, rand);
    std::cout << to_hex(kyber::ciphertext_bytes(ct)) << "\n";
  });

  auto* kyb_dec = kyb->add_subcommand("decrypt", "decrypt a hex ciphertext");
  kyb_dec->add_option("--key", kyb_key_path, "private key file")->required();
  kyb_dec->add_option("--ct", kyb_ct_hex, "hex ciphertext")->required();
  kyb_dec->callback([&] {
    const auto priv = keyfile::to_kyber_private(
        keyfile::parse_keyfile(keyfile::read_text_file(kyb_key_path)));
    if (kyb_ct_hex.size() % 2 != 0) throw ParseError("hex ciphertext has odd length");
    Bytes raw;
    for (std::size_t i = 0; i < kyb_ct_hex.size(); i += 2) {
      const auto byte = std::stoul(kyb_ct_hex.substr(i, 2), nullptr, 16);
      raw.push_back(static_cast<std::uint8_t>(byte));
    }
    const auto ct = kyber::ciphertext_from_bytes(priv.params, raw);
    std::cout << kyber::decrypt(priv, ct) << "\n";
  });

  auto* kyb_kem = kyb->add_subcommand("kem-demo", "encapsulate/decapsulate round trip");
  kyb_kem->add_option("--params", kyb_params, "512|768|1024");
  kyb_kem->callback([&] {
    auto rng = RngStream::from_seed(seed);
    auto stream = rng.derive("kyber-kem");
    const auto keys = kyber::keygen(kyber_params_by_name(kyb_params), stream);
    const auto res = kyber::kem_encapsulate(keys.pub, stream);
    std::cout << "shared secret: " << to_hex(res.shared_secret) << "\n";
    std::cout << "decapsulated:  " << to_hex(kyber::kem_decapsulate(keys.priv, res.ct))
              << "\n";
  });

  // dilithium ----------------------------------------------------------------
  auto* dil = app.add_subcommand("dilithium", "module-lattice signatures");
  dil->require_subcommand(1);
  dil->fallthrough();
  std::string dil_level = "toy";
  std::string dil_pub_path, dil_priv_path, dil_sig_path, dil_message;

  auto* dil_demo = dil->add_subcommand("demo", "keygen, sign, verify");
  dil_demo->add_option("--level", dil_level, "toy|2|3|5");
  dil_demo->callback([&] {
    auto rng = RngStream::from_seed(seed);
    run_dilithium_demo(dil_level, rng);
  });

  auto* dil_keygen = dil->add_subcommand("keygen", "generate a key pair");
  dil_keygen->add_option("--level", dil_level, "toy|2|3|5");
  dil_keygen->add_option("--pub", dil_pub_path)->required();
  dil_keygen->add_option("--priv", dil_priv_path)->required();
  dil_keygen->callback([&] {
    auto rng = RngStream::from_seed(seed);
    auto stream = rng.derive("dilithium-keygen");
    const auto params = dilithium_params_by_name(dil_level);
    const auto keys = dilithium::keygen(params, stream);
    keyfile::write_text_file(
        dil_pub_path, keyfile::write_keyfile(keyfile::from_dilithium_public(keys.pub)));
    keyfile::write_text_file(dil_priv_path, keyfile::write_keyfile(keyfile::from_dilithium_private(
                                                keys.priv, params)));
    std::cout << "wrote " << dil_pub_path << " and " << dil_priv_path << "\n";
  });

  auto* dil_sign = dil->add_subcommand("sign", "sign a message");
  dil_sign->add_option("--priv", dil_priv_path, "private key file")->required();
  dil_sign->add_option("--pub", dil_pub_path, "public key file (for the local check)")
      ->required();
  dil_sign->add_option("--message", dil_message)->required();
  dil_sign->add_option("--out", dil_sig_path, "signature file")->required();
  dil_sign->callback([&] {
    auto rng = RngStream::from_seed(seed);
    auto stream = rng.derive("dilithium-sign");
    const auto priv = keyfile::to_dilithium_private(
        keyfile::parse_keyfile(keyfile::read_text_file(dil_priv_path)));
    const auto pub = keyfile::to_dilithium_public(
        keyfile::parse_keyfile(keyfile::read_text_file(dil_pub_path)));
    const auto sig = dilithium::sign(priv, pub, to_bytes(dil_message), stream);
    keyfile::write_text_file(dil_sig_path, keyfile::write_keyfile(keyfile::from_dilithium_signature(
                                               sig, pub.params)));
    std::cout << "wrote " << dil_sig_path << "\n";
  });

  auto* dil_verify = dil->add_subcommand("verify", "verify a signature file");
  dil_verify->add_option("--pub", dil_pub_path)->required();
  dil_verify->add_option("--message", dil_message)->required();
  dil_verify->add_option("--sig", dil_sig_path)->required();
  dil_verify->callback([&] {
    const auto pub = keyfile::to_dilithium_public(
        keyfile::parse_keyfile(keyfile::read_text_file(dil_pub_path)));
    const auto sig = keyfile::to_dilithium_signature(
        keyfile::parse_keyfile(keyfile::read_text_file(dil_sig_path)));
    const bool ok = dilithium::verify(pub, to_bytes(dil_message), sig);
    std::cout << (ok ? "valid" : "invalid") << "\n";
    if (!ok) throw DomainError("signature did not verify");
  });

  // hybrid / mosca -------------------------------------------------------------
  auto* hyb = app.add_subcommand("hybrid", "combine a classical and a lattice signer");
  hyb->fallthrough();
  std::string hyb_mode = "c-then-q", hyb_classical = "ecdsa", hyb_pq = "dilithium";
  std::string hyb_message = "ITS ALL GREEK TO ME";
  hyb->add_option("--mode", hyb_mode, "c-then-q|q-then-c|parallel");
  hyb->add_option("--classical", hyb_classical, "ecdsa|rsa");
  hyb->add_option("--pq", hyb_pq, "dilithium");
  hyb->add_option("--message", hyb_message);
  hyb->callback([&] {
    auto rng = RngStream::from_seed(seed);
    run_hybrid(hyb_mode, hyb_classical, hyb_pq, hyb_message, rng);
  });

  auto* mosca = app.add_subcommand("mosca", "migration-deadline inequality");
  mosca->fallthrough();
  double t_migrate = 0, t_confi = 0, t_crqc = 0;
  mosca->add_option("--migrate", t_migrate, "years to migrate")->required();
  mosca->add_option("--confi", t_confi, "years data must stay confidential")->required();
  mosca->add_option("--crqc", t_crqc, "years until a capable quantum machine")
      ->required();
  mosca->callback([&] { run_mosca(t_migrate, t_confi, t_crqc); });

  // channel ---------------------------------------------------------------------
  auto* serve = app.add_subcommand("serve", "accept one KEM-secured connection");
  serve->fallthrough();
  std::uint16_t port = 9999;
  std::string srv_params = "512";
  bool srv_hybrid = false;
  serve->add_option("--port", port)->required();
  serve->add_option("--params", srv_params, "512|768|1024");
  serve->add_flag("--hybrid", srv_hybrid, "mix a curve exchange into the key");
  serve->callback([&] {
    auto rng = RngStream::from_seed(seed);
    run_serve(port, srv_params, srv_hybrid, rng);
  });

  auto* conn = app.add_subcommand("connect", "open a KEM-secured connection");
  conn->fallthrough();
  std::string host = "127.0.0.1";
  std::uint16_t cport = 9999;
  std::string cli_params = "512";
  bool cli_hybrid = false;
  conn->add_option("--host", host);
  conn->add_option("--port", cport)->required();
  conn->add_option("--params", cli_params, "512|768|1024");
  conn->add_flag("--hybrid", cli_hybrid);
  conn->callback([&] {
    auto rng = RngStream::from_seed(seed);
    run_connect(host, cport, cli_params, cli_hybrid, rng);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace pqlab::cli
