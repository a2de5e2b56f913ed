#include "pqlab/rng.hpp"

#include <stdexcept>

namespace pqlab {

namespace {

Bytes stream_input(const Bytes& key) {
  Bytes in = key;
  in.push_back(0x02);  // domain tag: stream output
  return in;
}

}  // namespace

RngStream::RngStream(Bytes key) : key_(std::move(key)), stream_(stream_input(key_)) {}

RngStream RngStream::from_seed(std::uint64_t seed) {
  Bytes in;
  append(in, std::string_view("pqlab-seed"));
  append_u64_le(in, seed);
  return RngStream(shake256(in, 32));
}

RngStream RngStream::derive(std::string_view label) const {
  Bytes in = key_;
  in.push_back(0x01);  // domain tag: key derivation
  append(in, label);
  return RngStream(shake256(in, 32));
}

void RngStream::fill(std::uint8_t* out, std::size_t len) { stream_.read(out, len); }

Bytes RngStream::bytes(std::size_t len) {
  Bytes out(len);
  fill(out.data(), len);
  return out;
}

std::uint64_t RngStream::next_u64() { return stream_.next_u64_le(); }

std::uint64_t RngStream::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
  if (bound == 1) return 0;
  // Reject the low non-multiple-of-bound region to avoid modulo bias.
  const std::uint64_t threshold = (-bound) % bound;
  for (;;) {
    std::uint64_t r = next_u64();
    if (r >= threshold) return r % bound;
  }
}

std::int64_t RngStream::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
  const std::uint64_t span =
      static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next_u64());  // full 64-bit range
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + uniform_below(span));
}

double RngStream::uniform01() {
  // 53 random bits, the precision of a double mantissa.
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace pqlab
