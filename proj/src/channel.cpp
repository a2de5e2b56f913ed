#include "pqlab/channel.hpp"

#include <algorithm>

#include "pqlab/xof.hpp"

namespace pqlab::channel {

Bytes frame_bytes(const Frame& f) {
  if (f.payload.size() > kMaxPayload) throw ProtocolError("payload too large");
  Bytes out;
  out.push_back(static_cast<std::uint8_t>(f.type));
  append_u32_be(out, static_cast<std::uint32_t>(f.payload.size()));
  append(out, f.payload);
  return out;
}

void write_frame(ByteStream& stream, const Frame& f) { stream.write(frame_bytes(f)); }

Frame read_frame(ByteStream& stream) {
  std::uint8_t head[5];
  stream.read_exact(head, 5);
  if (head[0] < 1 || head[0] > 5) throw ProtocolError("unknown frame type");
  Frame f;
  f.type = static_cast<FrameType>(head[0]);
  const std::uint32_t len = read_u32_be({head + 1, 4});
  if (len > kMaxPayload) throw ProtocolError("payload too large");
  f.payload.resize(len);
  if (len > 0) stream.read_exact(f.payload.data(), len);
  return f;
}

std::pair<std::unique_ptr<MemoryDuplex>, std::unique_ptr<MemoryDuplex>>
MemoryDuplex::make() {
  auto a = std::unique_ptr<MemoryDuplex>(new MemoryDuplex());
  auto b = std::unique_ptr<MemoryDuplex>(new MemoryDuplex());
  auto p1 = std::make_shared<Pipe>();
  auto p2 = std::make_shared<Pipe>();
  a->out_ = p1;
  a->in_ = p2;
  b->out_ = p2;
  b->in_ = p1;
  return {std::move(a), std::move(b)};
}

void MemoryDuplex::write(ByteView data) {
  std::lock_guard lock(out_->mu);
  if (out_->closed) throw ProtocolError("stream closed");
  out_->data.insert(out_->data.end(), data.begin(), data.end());
  out_->cv.notify_all();
}

void MemoryDuplex::read_exact(std::uint8_t* out, std::size_t len) {
  std::unique_lock lock(in_->mu);
  for (std::size_t got = 0; got < len;) {
    in_->cv.wait(lock, [this] { return !in_->data.empty() || in_->closed; });
    if (in_->data.empty() && in_->closed) throw ProtocolError("unexpected end of stream");
    while (got < len && !in_->data.empty()) {
      out[got++] = in_->data.front();
      in_->data.pop_front();
    }
  }
}

void MemoryDuplex::close() {
  for (auto& pipe : {in_, out_}) {
    std::lock_guard lock(pipe->mu);
    pipe->closed = true;
    pipe->cv.notify_all();
  }
}

std::uint8_t params_wire_id(const kyber::KyberParams& params) {
  if (params == kyber::kParams512) return 2;
  if (params == kyber::kParams768) return 3;
  if (params == kyber::kParams1024) return 4;
  throw ProtocolError("parameter set has no wire id");
}

kyber::KyberParams params_from_wire_id(std::uint8_t id) {
  switch (id) {
    case 2: return kyber::kParams512;
    case 3: return kyber::kParams768;
    case 4: return kyber::kParams1024;
  }
  throw ProtocolError("unknown parameter id");
}

ServerIdentity make_server_identity(const kyber::KyberParams& params, bool hybrid,
                                    RngStream& rng) {
  ServerIdentity ident;
  ident.kem_keys = kyber::keygen(params, rng);
  if (hybrid) {
    const auto preset = ecc::preset_f97();
    ident.ec_private = 1 + rng.uniform_below(preset.order - 1);
    ident.ec_public = ecc::point_pow(preset.generator, ident.ec_private, preset.curve);
  }
  return ident;
}

namespace {

void send_alert(ByteStream& stream, const std::string& reason) {
  try {
    write_frame(stream, Frame{FrameType::Alert, to_bytes(reason)});
  } catch (const Error&) {
    // the peer may already be gone; the alert is best-effort
  }
}

Bytes point_bytes(const ecc::CurvePoint& pt) {
  Bytes out;
  append_u64_be(out, pt.x);
  append_u64_be(out, pt.y);
  return out;
}

ecc::CurvePoint point_from_bytes(ByteView in) {
  if (in.size() < 16) throw ProtocolError("truncated curve point");
  return ecc::CurvePoint::affine(read_u64_be(in.first(8)), read_u64_be(in.subspan(8, 8)));
}

Bytes derive_key(ByteView kem_secret, const std::optional<std::uint64_t>& ecdh_x,
                 ByteView transcript) {
  Bytes input(kem_secret.begin(), kem_secret.end());
  if (ecdh_x) append_u64_be(input, *ecdh_x);
  const Bytes th = shake256(transcript, 32);
  append(input, th);
  return shake256(input, 32);
}

}  // namespace

SessionState handshake_client(ByteStream& stream, const kyber::KyberParams& params,
                              HandshakeMode mode, RngStream& rng) {
  SessionState st;
  st.role = Role::Client;
  st.phase = Phase::Init;
  const bool hybrid = mode == HandshakeMode::Hybrid;
  Bytes transcript;

  try {
    Frame hello{FrameType::Hello, {params_wire_id(params), static_cast<std::uint8_t>(mode)}};
    write_frame(stream, hello);
    append(transcript, frame_bytes(hello));
    st.phase = Phase::Awaiting;

    Frame pubkey = read_frame(stream);
    if (pubkey.type == FrameType::Alert) throw ProtocolError("peer alert during handshake");
    if (pubkey.type != FrameType::PubKey) throw ProtocolError("expected a PUBKEY frame");
    append(transcript, frame_bytes(pubkey));

    const std::size_t pub_len =
        poly::packed_size(static_cast<std::size_t>(params.k) * params.k + params.k,
                          params.n, params.q);
    const std::size_t want = pub_len + (hybrid ? 16 : 0);
    if (pubkey.payload.size() != want) throw ProtocolError("bad PUBKEY length");
    auto server_pub =
        kyber::public_key_from_bytes(params, ByteView(pubkey.payload).first(pub_len));

    auto kem = kyber::kem_encapsulate(server_pub, rng);
    Frame encap{FrameType::Encap, kyber::ciphertext_bytes(kem.ct)};

    std::optional<std::uint64_t> ecdh_x;
    if (hybrid) {
      const auto preset = ecc::preset_f97();
      auto server_ec = point_from_bytes(ByteView(pubkey.payload).subspan(pub_len));
      const std::uint64_t priv = 1 + rng.uniform_below(preset.order - 1);
      const auto client_ec = ecc::point_pow(preset.generator, priv, preset.curve);
      const auto shared = ecc::ecdh_shared(priv, server_ec, preset.curve);
      if (shared.inf) throw ProtocolError("degenerate ECDH share");
      ecdh_x = shared.x;
      append(encap.payload, point_bytes(client_ec));
    }

    write_frame(stream, encap);
    append(transcript, frame_bytes(encap));

    st.shared_key = derive_key(kem.shared_secret, ecdh_x, transcript);
    st.phase = Phase::Established;
    st.send_counter = 0;  // clients seal on even counters, servers on odd
    st.recv_counter = 1;
    return st;
  } catch (const Error&) {
    st.phase = Phase::Failed;
    send_alert(stream, "handshake failed");
    throw;
  }
}

SessionState handshake_server(ByteStream& stream, const ServerIdentity& identity,
                              HandshakeMode mode) {
  SessionState st;
  st.role = Role::Server;
  st.phase = Phase::Init;
  const kyber::KyberParams& params = identity.kem_keys.pub.params;
  const bool hybrid = mode == HandshakeMode::Hybrid;
  Bytes transcript;

  try {
    Frame hello = read_frame(stream);
    if (hello.type != FrameType::Hello) throw ProtocolError("expected a HELLO frame");
    if (hello.payload.size() != 2) throw ProtocolError("bad HELLO length");
    append(transcript, frame_bytes(hello));
    if (hello.payload[0] != params_wire_id(params))
      throw ProtocolError("parameter set mismatch");
    if (hello.payload[1] != static_cast<std::uint8_t>(mode))
      throw ProtocolError("handshake mode mismatch");
    st.phase = Phase::Awaiting;

    Frame pubkey{FrameType::PubKey, kyber::public_key_bytes(identity.kem_keys.pub)};
    if (hybrid) append(pubkey.payload, point_bytes(identity.ec_public));
    write_frame(stream, pubkey);
    append(transcript, frame_bytes(pubkey));

    Frame encap = read_frame(stream);
    if (encap.type == FrameType::Alert) throw ProtocolError("peer alert during handshake");
    if (encap.type != FrameType::Encap) throw ProtocolError("expected an ENCAP frame");
    append(transcript, frame_bytes(encap));

    const std::size_t ct_len = poly::packed_size(params.k, params.n, params.q) +
                               poly::packed_size(1, params.n, params.q);
    const std::size_t want = ct_len + (hybrid ? 16 : 0);
    if (encap.payload.size() != want) throw ProtocolError("bad ENCAP length");
    auto ct = kyber::ciphertext_from_bytes(params, ByteView(encap.payload).first(ct_len));
    const Bytes kem_secret = kyber::kem_decapsulate(identity.kem_keys.priv, ct);

    std::optional<std::uint64_t> ecdh_x;
    if (hybrid) {
      const auto preset = ecc::preset_f97();
      auto client_ec = point_from_bytes(ByteView(encap.payload).subspan(ct_len));
      const auto shared = ecc::ecdh_shared(identity.ec_private, client_ec, preset.curve);
      if (shared.inf) throw ProtocolError("degenerate ECDH share");
      ecdh_x = shared.x;
    }

    st.shared_key = derive_key(kem_secret, ecdh_x, transcript);
    st.phase = Phase::Established;
    st.send_counter = 1;
    st.recv_counter = 0;
    return st;
  } catch (const Error&) {
    st.phase = Phase::Failed;
    send_alert(stream, "handshake failed");
    throw;
  }
}

namespace {

// The two directions interleave counters (client even, server odd), so they
// never share a keystream block.
Bytes keystream(ByteView key, std::uint64_t counter, std::size_t len) {
  Bytes input(key.begin(), key.end());
  append_u64_be(input, counter);
  return shake256(input, len);
}

Bytes frame_tag(ByteView key, std::uint64_t counter, ByteView ciphertext) {
  Bytes input(key.begin(), key.end());
  append_u64_be(input, counter);
  append(input, ciphertext);
  return shake256(input, 16);
}

}  // namespace

Frame seal(SessionState& state, ByteView plaintext) {
  if (state.phase != Phase::Established)
    throw ProtocolError("DATA frames need an established session");
  const std::uint64_t counter = state.send_counter;
  state.send_counter += 2;

  Bytes ct(plaintext.begin(), plaintext.end());
  const Bytes ks = keystream(state.shared_key, counter, ct.size());
  for (std::size_t i = 0; i < ct.size(); ++i) ct[i] ^= ks[i];

  Frame f{FrameType::Data, {}};
  append_u64_be(f.payload, counter);
  append(f.payload, ct);
  append(f.payload, frame_tag(state.shared_key, counter, ct));
  return f;
}

Bytes open_frame(SessionState& state, const Frame& f) {
  if (state.phase != Phase::Established)
    throw ProtocolError("DATA frames need an established session");
  if (f.type != FrameType::Data) throw ProtocolError("not a DATA frame");
  if (f.payload.size() < 24) throw ProtocolError("truncated DATA frame");
  const std::uint64_t counter = read_u64_be(ByteView(f.payload).first(8));
  if (counter != state.recv_counter)
    throw ReplayError("replayed or reordered frame counter");
  const ByteView ct = ByteView(f.payload).subspan(8, f.payload.size() - 24);
  const ByteView tag = ByteView(f.payload).subspan(f.payload.size() - 16);
  const Bytes expect = frame_tag(state.shared_key, counter, ct);
  if (!std::equal(tag.begin(), tag.end(), expect.begin()))
    throw AuthFailure("frame tag mismatch");
  state.recv_counter += 2;

  Bytes pt(ct.begin(), ct.end());
  const Bytes ks = keystream(state.shared_key, counter, pt.size());
  for (std::size_t i = 0; i < pt.size(); ++i) pt[i] ^= ks[i];
  return pt;
}

}  // namespace pqlab::channel
