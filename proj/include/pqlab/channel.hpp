#pragma once

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>

#include "pqlab/bytes.hpp"
#include "pqlab/ecc.hpp"
#include "pqlab/errors.hpp"
#include "pqlab/kyber.hpp"
#include "pqlab/rng.hpp"

namespace pqlab::channel {

/// Wire frame: 1 type byte, 4-byte big-endian payload length, payload.
enum class FrameType : std::uint8_t {
  Hello = 1,
  PubKey = 2,
  Encap = 3,
  Data = 4,
  Alert = 5,
};

inline constexpr std::size_t kMaxPayload = std::size_t(1) << 20;

struct Frame {
  FrameType type = FrameType::Alert;
  Bytes payload;
};

/// Blocking duplex byte stream.
class ByteStream {
 public:
  virtual ~ByteStream() = default;
  virtual void write(ByteView data) = 0;
  /// Reads exactly len bytes; throws ProtocolError on EOF.
  virtual void read_exact(std::uint8_t* out, std::size_t len) = 0;
};

Bytes frame_bytes(const Frame& f);
void write_frame(ByteStream& stream, const Frame& f);
Frame read_frame(ByteStream& stream);

/// Thread-safe in-memory pipe pair for loopback tests: what one endpoint
/// writes, the other reads.
class MemoryDuplex : public ByteStream {
 public:
  static std::pair<std::unique_ptr<MemoryDuplex>, std::unique_ptr<MemoryDuplex>> make();

  void write(ByteView data) override;
  void read_exact(std::uint8_t* out, std::size_t len) override;
  void close();

 private:
  struct Pipe {
    std::mutex mu;
    std::condition_variable cv;
    std::deque<std::uint8_t> data;
    bool closed = false;
  };
  std::shared_ptr<Pipe> in_;
  std::shared_ptr<Pipe> out_;
};

enum class Role { Client, Server };
enum class Phase { Init, Awaiting, Established, Failed };
enum class HandshakeMode : std::uint8_t { KemOnly = 0, Hybrid = 1 };

struct SessionState {
  Role role = Role::Client;
  Phase phase = Phase::Init;
  Bytes shared_key;  // 32 bytes once established
  std::uint64_t send_counter = 0;
  std::uint64_t recv_counter = 0;
};

struct ServerIdentity {
  kyber::KyberKeyPair kem_keys;
  std::uint64_t ec_private = 0;       // hybrid mode only
  ecc::CurvePoint ec_public;
};

ServerIdentity make_server_identity(const kyber::KyberParams& params, bool hybrid,
                                    RngStream& rng);

/// HELLO(params, mode) -> PUBKEY(kem pub [+ ec pub]) -> ENCAP(kem ct
/// [+ client ec pub]); the key is the hash of the KEM secret, the optional
/// ECDH contribution and the whole handshake transcript.
SessionState handshake_client(ByteStream& stream, const kyber::KyberParams& params,
                              HandshakeMode mode, RngStream& rng);
SessionState handshake_server(ByteStream& stream, const ServerIdentity& identity,
                              HandshakeMode mode);

/// Toy record protection: XOF keystream plus a 16-byte XOF tag. Loudly not
/// a production cipher; the artifact's point is the handshake above it.
Frame seal(SessionState& state, ByteView plaintext);
Bytes open_frame(SessionState& state, const Frame& f);

std::uint8_t params_wire_id(const kyber::KyberParams& params);
kyber::KyberParams params_from_wire_id(std::uint8_t id);

}  // namespace pqlab::channel
