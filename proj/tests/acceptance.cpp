// End-to-end acceptance suite. Each numbered check prints one PASS/FAIL
// line; the process exits nonzero if any check fails. Pass --cli <path>
// to enable the CLI determinism check (11).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "pqlab/agility.hpp"
#include "pqlab/channel.hpp"
#include "pqlab/dilithium.hpp"
#include "pqlab/ecc.hpp"
#include "pqlab/kyber.hpp"
#include "pqlab/lattice.hpp"
#include "pqlab/modnum.hpp"
#include "pqlab/polyring.hpp"
#include "pqlab/rng.hpp"
#include "pqlab/rsa.hpp"
#include "pqlab/shor.hpp"

using namespace pqlab;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool ok, const std::string& detail = "") {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << number << ": " << name;
  if (!detail.empty()) std::cout << " [" << detail << "]";
  std::cout << std::endl;
  if (!ok) ++g_failures;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

// ---- 1: RSA golden path ----------------------------------------------------

void criterion_1() {
  Timer timer;
  bool ok = true;
  const auto keys = rsa::rsa_keygen(47, 59, 157);
  ok = ok && keys.pub.d == 17 && keys.pub.n == 2773;

  const std::string text = "ITS ALL GREEK TO ME";
  const auto msg = rsa::encode_text(text, keys.pub.n);
  ok = ok && rsa::render_blocks(msg) ==
                 "0920 1900 0112 1200 0718 0505 1100 2015 0013 0500";

  const auto ct = rsa::rsa_encrypt(msg, keys.pub);
  ok = ok && ct.blocks.size() == 10 && ct.blocks[0] == 948 && ct.blocks[1] == 2342;

  const auto pt = rsa::rsa_decrypt(ct, keys.priv);
  ok = ok && rsa::decode_text(pt) == text;
  ok = ok && timer.seconds() < 1.0;
  report(1, "RSA golden path", ok);
}

// ---- 2: number theory goldens ----------------------------------------------

void criterion_2() {
  Timer timer;
  bool ok = true;
  ok = ok && modnum::gcd(63, 17) == 1;
  const auto cert = modnum::bezout(63, 17);
  ok = ok && cert.holds() && cert.g == 1;
  ok = ok && (63 * std::int64_t(-7) + 17 * std::int64_t(26) == 1);  // published pair
  ok = ok && modnum::mod_inverse(157, 2668).value == 17;
  ok = ok && modnum::mod_reduce(39 * 99 + 95 * 64, 19).value == 4;
  ok = ok && modnum::mod_reduce(129537, 9).value == 0;
  ok = ok && modnum::period(2, 5) == 4;
  ok = ok && modnum::discrete_log(2, 5, 11) == 4;
  ok = ok && timer.seconds() < 1.0;
  report(2, "number theory goldens", ok);
}

// ---- 3: polynomial division golden ------------------------------------------

void criterion_3() {
  using namespace poly;
  const auto p = make_poly(0, {-1, 0, 1, 2, -1, 4});
  const auto f = make_poly(0, {1, 0, 1});
  const auto [q, r] = poly_divmod(p, f);
  const bool ok = q == make_poly(0, {2, -2, -1, 4}) && r == make_poly(0, {-3, 2}) &&
                  poly_add(poly_mul(q, f), r) == p;
  report(3, "polynomial long-division golden", ok);
}

// ---- 4: kyber toy golden -----------------------------------------------------

void criterion_4() {
  using poly::make_ring_elem;
  bool ok = true;

  kyber::RingVec s{{make_ring_elem(4, 7, {1, 1, 0, 1}), make_ring_elem(4, 7, {2, 1, 0, 0})}};
  kyber::RingMat A{2, 2,
                   {make_ring_elem(4, 7, {4, 5, 0, 4}), make_ring_elem(4, 7, {0, 0, 5, 3}),
                    make_ring_elem(4, 7, {0, 3, 0, 5}), make_ring_elem(4, 7, {6, 0, 6, 0})}};
  kyber::RingVec e{{make_ring_elem(4, 7, {0, 0, 1, 0}), make_ring_elem(4, 7, {0, 1, 0, 0})}};
  const auto keys = kyber::keygen_from(kyber::kParamsToy, s, A, e);

  // printed t and u (mod 7)
  ok = ok && keys.pub.t[0] == make_ring_elem(4, 7, {-1, 2, -2, 5});
  ok = ok && keys.pub.t[1] == make_ring_elem(4, 7, {4, 3, -4, 4});

  kyber::EncryptionRandomness rand;
  rand.r = kyber::RingVec{{make_ring_elem(4, 7, {0, 0, 1, 0}), make_ring_elem(4, 7, {1, 0, 0, 0})}};
  rand.e1 = kyber::RingVec{{make_ring_elem(4, 7, {1, 1, 0, 0}), make_ring_elem(4, 7, {1, 0, 0, 0})}};
  rand.e2 = make_ring_elem(4, 7, {0, 1, 0, 1});
  const auto ct = kyber::encrypt(keys.pub, "1001", rand);
  ok = ok && ct.u[0] == make_ring_elem(4, 7, {1, 0, 4, 3});
  ok = ok && ct.u[1] == make_ring_elem(4, 7, {-5, -3, 6, 0});

  // v and m_hat against the independent schoolbook oracle
  const auto ring_of = [](const kyber::RingElem& x) { return x.c; };
  auto mul = [](const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    return oracle::ring_mul(a, b, 4, 7);
  };
  auto add = [](std::vector<std::int64_t> a, const std::vector<std::int64_t>& b) {
    a = oracle::poly_add_mod(a, b, 7);
    a.resize(4, 0);
    return a;
  };
  const auto t0 = ring_of(keys.pub.t[0]), t1 = ring_of(keys.pub.t[1]);
  auto oracle_v = add(add(add(mul(t0, {0, 0, 1, 0}), mul(t1, {1, 0, 0, 0})),
                          {0, 1, 0, 1}),
                      {4, 0, 0, 4});
  ok = ok && ring_of(ct.v) == oracle_v;
  ok = ok && ct.v == make_ring_elem(4, 7, {3, 6, 2, 4});  // 4x^3+2x^2+6x+3
  // the printed v differs: the discrepancy is the recorded erratum
  const bool printed_differs = !(ct.v == make_ring_elem(4, 7, {-2, -1, 2, 3}));
  ok = ok && printed_differs;

  // noise decomposition: m_hat = scaled(m) + (e^T r + e2 - s^T e1), exactly
  const auto noise = kyber::noise_term(keys.priv, e, rand);
  ok = ok && noise == make_ring_elem(4, 7, {-3, -1, -1, 0});
  const auto m_hat = kyber::decrypt_pre_round(keys.priv, ct);
  const auto scaled = poly::scale_half_q(poly::bits_to_poly("1001", 4, 7));
  ok = ok && m_hat == poly::ring_add(scaled, noise);
  report(4, "kyber toy golden with oracle-checked v and noise identity", ok,
         printed_differs ? "printed v recorded as erratum" : "");
}

// ---- 5: kyber correctness property -------------------------------------------

void criterion_5() {
  Timer timer;
  bool ok = true;
  auto rng = RngStream::from_seed(20250810);

  // 10^5 toy instances: decryption succeeds whenever the centered noise
  // stays below q/4.
  int checked = 0, failures_in_bound = 0;
  const double bound = 7.0 / 4.0;
  for (int i = 0; i < 100000; ++i) {
    const auto keys = kyber::keygen(kyber::kParamsToy, rng);
    const auto rand = kyber::sample_encryption_randomness(kyber::kParamsToy, rng);
    std::string bits;
    for (int b = 0; b < 4; ++b) bits.push_back(rng.uniform_below(2) ? '1' : '0');
    const auto ct = kyber::encrypt(keys.pub, bits, rand);
    const auto noise = kyber::noise_term(keys.priv, keys.keygen_error, rand);
    const bool small = static_cast<double>(poly::inf_norm_centered(noise)) < bound;
    if (small) {
      ++checked;
      if (kyber::decrypt(keys.priv, ct) != bits) ++failures_in_bound;
    }
  }
  // Roughly 9% of toy draws keep every noise coefficient below q/4 = 1.75;
  // all of those must decrypt.
  ok = ok && checked > 5000 && failures_in_bound == 0;

  // 1000 round trips each at the two real parameter sets, zero failures.
  int fail512 = 0, fail768 = 0;
  double worst_single = 0.0;
  for (const auto& [params, fails] :
       {std::pair<kyber::KyberParams, int*>{kyber::kParams512, &fail512},
        {kyber::kParams768, &fail768}}) {
    for (int i = 0; i < 1000; ++i) {
      Timer single;
      const auto keys = kyber::keygen(params, rng);
      std::string bits(params.n, '0');
      for (auto& b : bits) b = rng.uniform_below(2) ? '1' : '0';
      const auto ct =
          kyber::encrypt(keys.pub, bits, kyber::sample_encryption_randomness(params, rng));
      if (kyber::decrypt(keys.priv, ct) != bits) ++(*fails);
      worst_single = std::max(worst_single, single.seconds());
    }
  }
  ok = ok && fail512 == 0 && fail768 == 0;
  ok = ok && worst_single < 5.0;
  const double elapsed = timer.seconds();
  ok = ok && elapsed < 60.0;
  std::ostringstream detail;
  detail << checked << " in-bound toy instances, 0 failures; 2x1000 round trips in "
         << elapsed << " s";
  report(5, "kyber correctness property", ok, detail.str());
}

// ---- 6: dilithium ------------------------------------------------------------

void criterion_6() {
  bool ok = true;
  auto rng = RngStream::from_seed(60718);

  // 200 round trips at toy and level-2 parameters
  for (const auto& params : {dilithium::kParamsToy, dilithium::kParamsLevel2}) {
    const auto keys = dilithium::keygen(params, rng);
    for (int i = 0; i < 200; ++i) {
      const Bytes msg = rng.bytes(1 + rng.uniform_below(48));
      const auto sig = dilithium::sign(keys.priv, keys.pub, msg, rng);
      if (!dilithium::verify(keys.pub, msg, sig)) ok = false;
      if (!sig.c.well_formed(params)) ok = false;
    }
  }

  // 200 tampers and 200 wrong-key verifications, all rejected (level 2:
  // the challenge space exceeds 2^256, accidental collisions are absent)
  {
    const auto params = dilithium::kParamsLevel2;
    const auto keys = dilithium::keygen(params, rng);
    const auto wrong = dilithium::keygen(params, rng);
    int rejected_tamper = 0, rejected_key = 0;
    for (int i = 0; i < 200; ++i) {
      Bytes msg = rng.bytes(24);
      const auto sig = dilithium::sign(keys.priv, keys.pub, msg, rng);
      Bytes bad = msg;
      bad[rng.uniform_below(bad.size())] ^= std::uint8_t(1 + rng.uniform_below(255));
      if (!dilithium::verify(keys.pub, bad, sig)) ++rejected_tamper;
      if (!dilithium::verify(wrong.pub, msg, sig)) ++rejected_key;
    }
    ok = ok && rejected_tamper == 200 && rejected_key == 200;
  }

  // every hash output has exactly h nonzero +-1 coefficients
  for (int i = 0; i < 2000; ++i) {
    if (!dilithium::hash_to_ball(rng.bytes(8), dilithium::kParamsLevel2)
             .well_formed(dilithium::kParamsLevel2))
      ok = false;
  }

  // e = 0 cancellation identity, symbolically on toy parameters
  {
    const auto params = dilithium::kParamsToy;
    const auto base = dilithium::keygen(params, rng);
    poly::RingElem z = poly::ring_zero(params.n, params.q);
    const auto keys =
        dilithium::keygen_from(params, base.priv.s, base.pub.A, dilithium::RingVec{{z, z}});
    for (int i = 0; i < 100; ++i) {
      dilithium::RingVec r1;
      for (std::uint32_t j = 0; j < params.k; ++j) {
        poly::RingElem e = poly::ring_zero(params.n, params.q);
        for (auto& c : e.c) c = rng.uniform_int(0, 1);
        r1.e.push_back(e);
      }
      const auto c = dilithium::hash_to_ball(rng.bytes(8), params);
      const auto r2 = poly::vec_add(r1, poly::scale_vec(c.to_ring(), keys.priv.s));
      const auto lhs = poly::vec_sub(poly::matvec(keys.pub.A, r2),
                                     poly::scale_vec(c.to_ring(), keys.pub.t));
      if (!(lhs == poly::matvec(keys.pub.A, r1))) ok = false;
    }
  }
  report(6, "dilithium round trips, rejections, ball shape, cancellation", ok);
}

// ---- 7: shor ------------------------------------------------------------------

void criterion_7() {
  bool ok = true;

  // normalization for every valid (a, n), n <= 40
  for (std::uint64_t n = 3; n <= 40 && ok; ++n) {
    for (std::uint64_t a = 2; a < n; ++a) {
      if (modnum::gcd(a, n) != 1) continue;
      const auto dist = shor::simulate_quantum_part(a, n);
      const double total = std::accumulate(dist.probs.begin(), dist.probs.end(), 0.0);
      if (std::abs(total - 1.0) >= 1e-9) ok = false;
    }
  }

  // (7, 15): support exactly {0, 64, 128, 192}
  const auto dist = shor::simulate_quantum_part(7, 15);
  for (std::uint64_t y = 0; y < dist.N; ++y) {
    const bool should = (y % 64 == 0);
    if (should && std::abs(dist.probs[y] - 0.25) > 1e-9) ok = false;
    if (!should && dist.probs[y] > 1e-9) ok = false;
  }

  // closed-form agreement where the period does not divide N
  for (auto [a, n] : {std::pair<std::uint64_t, std::uint64_t>{2, 21}, {3, 35}, {5, 37}}) {
    const auto d = shor::simulate_quantum_part(a, n);
    const auto want = oracle::closed_form_distribution(modnum::period(a, n), d.N);
    for (std::uint64_t y = 0; y < d.N; ++y)
      if (std::abs(d.probs[y] - want[y]) >= 1e-6) ok = false;
  }

  // factoring under a fixed seed
  auto rng = RngStream::from_seed(7151);
  for (std::uint64_t n : {15, 21, 33}) {
    auto sub = rng.derive("factor" + std::to_string(n));
    try {
      const auto res = shor::shor_factor(n, sub, 100);
      if (res.divisor <= 1 || res.divisor >= n || n % res.divisor != 0) ok = false;
    } catch (const shor::ShorGaveUp&) {
      ok = false;
    }
  }

  // optional slow run: n = 2773 (register 2^23); enable with PQLAB_RUN_SLOW=1
  std::string detail;
  if (const char* slow = std::getenv("PQLAB_RUN_SLOW"); slow && slow[0] == '1') {
    auto big = RngStream::from_seed(2773);
    const auto res = shor::shor_factor(2773, big, 100);
    const bool good = res.divisor == 47 || res.divisor == 59;
    ok = ok && good;
    detail = "slow n=2773 divisor " + std::to_string(res.divisor);
  } else {
    detail = "slow n=2773 run skipped (set PQLAB_RUN_SLOW=1)";
  }
  report(7, "shor simulation, closed form, factoring", ok, detail);
}

// ---- 8: lattice -----------------------------------------------------------------

void criterion_8() {
  bool ok = true;
  auto rng = RngStream::from_seed(488);

  // defect of the identity and 100 random bases
  {
    std::vector<lattice::RatVec> cols(3, lattice::RatVec(3, Rational(0)));
    for (std::size_t i = 0; i < 3; ++i) cols[i][i] = Rational(1);
    if (std::abs(lattice::defect(lattice::make_basis(cols)) - 1.0) > 1e-9) ok = false;
  }
  int sampled = 0;
  while (sampled < 100) {
    const std::size_t n = 2 + rng.uniform_below(3);
    lattice::IntMat m(n, lattice::IntVec(n));
    for (auto& row : m)
      for (auto& v : row) v = rng.uniform_int(-9, 9);
    try {
      const double d = lattice::defect(lattice::basis_from_int_columns(m));
      if (d < 1.0 - 1e-12) ok = false;
      ++sampled;
    } catch (const DomainError&) {
    }
  }

  // svp/cvp against the independent exhaustive oracle, box M = 8
  for (int i = 0; i < 10; ++i) {
    const std::size_t n = 2 + rng.uniform_below(2);
    lattice::IntMat cols;
    for (;;) {
      cols.assign(n, lattice::IntVec(n));
      for (auto& c : cols)
        for (auto& v : c) v = rng.uniform_int(-5, 5);
      try {
        lattice::basis_from_int_columns(cols);
        break;
      } catch (const DomainError&) {
      }
    }
    const auto b = lattice::basis_from_int_columns(cols);
    std::vector<std::vector<long long>> ocols(n, std::vector<long long>(n));
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t r = 0; r < n; ++r) ocols[c][r] = cols[c][r];

    const auto svp = lattice::svp_bruteforce(b, 8);
    const auto want = oracle::exhaustive_svp(ocols, 8);
    if (!(svp.norm2 == Rational(want.norm2_num))) ok = false;
    if (!std::equal(svp.coeffs.begin(), svp.coeffs.end(), want.coeffs.begin()))
      ok = false;

    std::vector<long long> tnum(n);
    lattice::RatVec w(n);
    for (std::size_t r = 0; r < n; ++r) {
      tnum[r] = rng.uniform_int(-40, 40);
      w[r] = Rational(tnum[r], 10);
    }
    const auto cvp = lattice::cvp_bruteforce(b, w, 8);
    const auto wantc = oracle::exhaustive_cvp(ocols, tnum, 10, 8);
    if (!(cvp.norm2 == Rational(wantc.norm2_num, 100))) ok = false;
  }

  // GGH: 100/100 round trips with unit errors under good bases
  int ggh_done = 0, ggh_ok = 0;
  while (ggh_done < 100) {
    const std::size_t n = 2 + rng.uniform_below(2);
    lattice::IntMat good(n, lattice::IntVec(n, 0));
    for (std::size_t i = 0; i < n; ++i) good[i][i] = 5 + rng.uniform_int(0, 3);
    lattice::GghKeys keys;
    try {
      keys = lattice::ggh_keygen(good, lattice::random_unimodular(n, rng, 10), 1.2);
    } catch (const KeyGenError&) {
      continue;
    }
    lattice::IntVec m(n), e(n);
    for (auto& v : m) v = rng.uniform_int(-25, 25);
    for (auto& v : e) v = rng.uniform_int(-1, 1);
    if (lattice::ggh_decrypt(lattice::ggh_encrypt(m, keys.public_rows, e), keys) == m)
      ++ggh_ok;
    ++ggh_done;
  }
  ok = ok && ggh_ok == 100;

  // LWE embedding witness on 100 random instances
  for (int i = 0; i < 100; ++i) {
    const auto inst = lattice::lwe_generate(2 + rng.uniform_below(4), 97, 3, rng);
    if (!inst.holds() || !lattice::lwe_embed(inst).witness_ok) ok = false;
  }

  // elimination: 100 error-free recoveries; >= 95/100 mismatches with noise
  int clean_ok = 0, clean_total = 0;
  while (clean_total < 100) {
    const auto inst = lattice::lwe_generate(4, 97, 0, rng);
    try {
      if (lattice::gauss_solve(inst.A, inst.t, inst.q) == inst.s) ++clean_ok;
      ++clean_total;
    } catch (const Singular&) {
    }
  }
  ok = ok && clean_ok == 100;

  int noisy_diff = 0, noisy_total = 0;
  while (noisy_total < 100) {
    const auto inst = lattice::lwe_generate(4, 97, 3, rng);
    bool has_error = false;
    for (auto e : inst.e) has_error = has_error || e != 0;
    if (!has_error) continue;
    try {
      if (!(lattice::gauss_solve(inst.A, inst.t, inst.q) == inst.s)) ++noisy_diff;
      ++noisy_total;
    } catch (const Singular&) {
    }
  }
  ok = ok && noisy_diff >= 95;
  std::ostringstream detail;
  detail << "ggh " << ggh_ok << "/100, noisy-solve mismatches " << noisy_diff << "/100";
  report(8, "lattice defect/svp/cvp/ggh/lwe", ok, detail.str());
}

// ---- 9: channel -----------------------------------------------------------------

struct LoopbackStates {
  channel::SessionState client;
  channel::SessionState server;
};

LoopbackStates run_loopback(const kyber::KyberParams& params, channel::HandshakeMode mode,
                            std::uint64_t seed) {
  auto root = RngStream::from_seed(seed);
  auto server_rng = root.derive("server");
  auto client_rng = root.derive("client");
  const auto identity = channel::make_server_identity(
      params, mode == channel::HandshakeMode::Hybrid, server_rng);
  auto [client_end, server_end] = channel::MemoryDuplex::make();
  LoopbackStates out;
  std::thread server([&] {
    out.server = channel::handshake_server(*server_end, identity, mode);
  });
  out.client = channel::handshake_client(*client_end, params, mode, client_rng);
  server.join();
  return out;
}

void criterion_9() {
  bool ok = true;

  // 100 seeded loopback handshakes per mode derive equal 32-byte keys
  for (int i = 0; i < 100; ++i) {
    const auto kem = run_loopback(kyber::kParams512, channel::HandshakeMode::KemOnly,
                                  90000 + static_cast<std::uint64_t>(i));
    ok = ok && kem.client.shared_key.size() == 32 &&
         kem.client.shared_key == kem.server.shared_key;
    const auto hyb = run_loopback(kyber::kParams512, channel::HandshakeMode::Hybrid,
                                  91000 + static_cast<std::uint64_t>(i));
    ok = ok && hyb.client.shared_key == hyb.server.shared_key;
  }

  // single-bit mutations of every handshake frame byte change the key or abort
  {
    const auto params = kyber::kParams512;
    auto root = RngStream::from_seed(92377);
    auto server_rng = root.derive("server");
    auto client_rng = root.derive("client");
    const auto identity = channel::make_server_identity(params, false, server_rng);

    struct Script : channel::ByteStream {
      Bytes sent;
      Bytes feed;
      std::size_t pos = 0;
      void write(ByteView d) override { sent.insert(sent.end(), d.begin(), d.end()); }
      void read_exact(std::uint8_t* out, std::size_t len) override {
        if (pos + len > feed.size()) throw ProtocolError("eof");
        std::copy(feed.begin() + static_cast<std::ptrdiff_t>(pos),
                  feed.begin() + static_cast<std::ptrdiff_t>(pos + len), out);
        pos += len;
      }
    };

    const Bytes pubkey_frame = channel::frame_bytes(channel::Frame{
        channel::FrameType::PubKey, kyber::public_key_bytes(identity.kem_keys.pub)});
    Script client_capture;
    client_capture.feed = pubkey_frame;
    const auto base_client = channel::handshake_client(
        client_capture, params, channel::HandshakeMode::KemOnly, client_rng);

    // client-sent frames (HELLO, ENCAP), replayed against a fresh server
    // with one bit flipped per position (rotating through the bit index)
    int covered = 0;
    const int total = static_cast<int>(client_capture.sent.size());
    for (int i = 0; i < total; ++i) {
      Bytes mutated = client_capture.sent;
      mutated[static_cast<std::size_t>(i)] ^= std::uint8_t(1u << (i % 8));
      Script feed_server;
      feed_server.feed = mutated;
      try {
        const auto st = channel::handshake_server(feed_server, identity,
                                                  channel::HandshakeMode::KemOnly);
        if (st.shared_key != base_client.shared_key) ++covered;
      } catch (const Error&) {
        ++covered;
      }
    }
    ok = ok && covered == total;

    // server-sent PUBKEY frame, replayed against a fresh deterministic client
    int covered_pub = 0;
    const int total_pub = static_cast<int>(pubkey_frame.size());
    for (int i = 0; i < total_pub; ++i) {
      Bytes mutated = pubkey_frame;
      mutated[static_cast<std::size_t>(i)] ^= std::uint8_t(1u << (i % 8));
      Script feed_client;
      feed_client.feed = mutated;
      auto fresh_rng = RngStream::from_seed(92377).derive("client");
      try {
        const auto st = channel::handshake_client(feed_client, params,
                                                  channel::HandshakeMode::KemOnly,
                                                  fresh_rng);
        if (st.shared_key != base_client.shared_key) ++covered_pub;
      } catch (const Error&) {
        ++covered_pub;
      }
    }
    ok = ok && covered_pub == total_pub;
  }

  // record layer: tamper -> AuthFailure, replay -> ReplayError
  {
    auto states = run_loopback(kyber::kParams512, channel::HandshakeMode::KemOnly, 95001);
    const auto frame = channel::seal(states.client, to_bytes("payload"));
    bool auth_failed = false, replay_failed = false;
    channel::Frame bad = frame;
    bad.payload[10] ^= 0x40;
    try {
      channel::open_frame(states.server, bad);
    } catch (const AuthFailure&) {
      auth_failed = true;
    }
    if (channel::open_frame(states.server, frame) != to_bytes("payload")) ok = false;
    try {
      channel::open_frame(states.server, frame);
    } catch (const ReplayError&) {
      replay_failed = true;
    }
    ok = ok && auth_failed && replay_failed;
  }
  report(9, "channel handshakes, transcript binding, record layer", ok);
}

// ---- 10: mosca -------------------------------------------------------------------

void criterion_10() {
  bool ok = true;
  const auto a = agility::mosca_evaluate({5, 10, 12});
  ok = ok && a.at_risk && !a.in_trouble && std::abs(a.slack + 3) < 1e-12;
  const auto b = agility::mosca_evaluate({2, 3, 10});
  ok = ok && !b.at_risk && !b.in_trouble && std::abs(b.slack - 5) < 1e-12;
  const auto c = agility::mosca_evaluate({1, 12, 10});
  ok = ok && c.at_risk && c.in_trouble;
  report(10, "mosca scenario verdicts", ok);
}

// ---- 11: CLI determinism -----------------------------------------------------------

std::string run_command(const std::string& cmd) {
  std::string out;
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  if (pipe == nullptr) return "<popen failed>";
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
  const int rc = pclose(pipe);
  out += "\n<exit " + std::to_string(rc) + ">";
  return out;
}

void criterion_11(const std::string& cli_path) {
  if (cli_path.empty()) {
    report(11, "CLI determinism", false, "no --cli path given");
    return;
  }
  const std::vector<std::string> demos = {
      "numtheory demo",
      "rsa demo",
      "ecc demo --seed 5",
      "shor --n 21 --seed 9 --trace",
      "kyber demo --params toy",
      "kyber demo --params 512 --seed 3",
      "kyber kem-demo --params 768 --seed 4",
      "dilithium demo --level toy --seed 6",
      "dilithium demo --level 2 --seed 6",
      "lattice ggh-demo --seed 8",
      "lattice lwe-demo --seed 8",
      "hybrid --mode c-then-q --classical ecdsa --pq dilithium --seed 2",
      "hybrid --mode parallel --classical rsa --pq dilithium --seed 2",
      "mosca --migrate 5 --confi 10 --crqc 12",
  };
  bool ok = true;
  std::string first_bad;
  for (const auto& demo : demos) {
    const std::string cmd = cli_path + " " + demo;
    const std::string a = run_command(cmd);
    const std::string b = run_command(cmd);
    if (a != b || a.find("<exit 0>") == std::string::npos) {
      ok = false;
      if (first_bad.empty()) first_bad = demo;
    }
  }

  // the golden examples are reachable as single invocations, content checked
  const auto expect = [&](const std::string& demo, const std::string& needle) {
    const std::string out = run_command(cli_path + " " + demo);
    if (out.find(needle) == std::string::npos) {
      ok = false;
      if (first_bad.empty()) first_bad = demo + " missing '" + needle + "'";
    }
  };
  expect("rsa demo", "0948 2342 1084 1444 2663 2390 0778 0774 0219 1655");
  expect("rsa demo", "decoded: ITS ALL GREEK TO ME");
  expect("numtheory demo", "inverse of 157 mod 2668 = 17");
  expect("numtheory demo", "2773 = 47 * 59");
  expect("kyber demo --params toy", "computed:  4x^3+2x^2+6x+3");
  expect("kyber demo --params toy", "bits = 1001");
  expect("mosca --migrate 5 --confi 10 --crqc 12", "AT_RISK");

  report(11, "CLI determinism across repeated seeded runs", ok,
         ok ? std::to_string(demos.size()) + " commands byte-identical, goldens present"
            : first_bad);
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli_path;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--cli") cli_path = argv[i + 1];
  }

  Timer total;
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11(cli_path);
  std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES PRESENT") << " ("
            << total.seconds() << " s)" << std::endl;
  return g_failures == 0 ? 0 : 1;
}
