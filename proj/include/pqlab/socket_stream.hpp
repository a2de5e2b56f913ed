#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "pqlab/channel.hpp"

namespace pqlab::net {

/// Blocking TCP stream implementing the channel byte-stream interface.
class SocketStream : public channel::ByteStream {
 public:
  explicit SocketStream(int fd);
  ~SocketStream() override;
  SocketStream(const SocketStream&) = delete;
  SocketStream& operator=(const SocketStream&) = delete;

  void write(ByteView data) override;
  void read_exact(std::uint8_t* out, std::size_t len) override;

 private:
  int fd_;
};

class SocketListener {
 public:
  explicit SocketListener(std::uint16_t port);
  ~SocketListener();
  SocketListener(const SocketListener&) = delete;
  SocketListener& operator=(const SocketListener&) = delete;

  std::unique_ptr<SocketStream> accept_one();

 private:
  int fd_;
};

std::unique_ptr<SocketStream> connect_to(const std::string& host, std::uint16_t port);

}  // namespace pqlab::net
