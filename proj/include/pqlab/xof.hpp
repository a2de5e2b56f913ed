#pragma once

#include <cstddef>

#include "pqlab/bytes.hpp"

namespace pqlab {

/// SHAKE-256 with the requested output length.
Bytes shake256(ByteView input, std::size_t out_len);

/// Incremental reader over the SHAKE-256 output stream of a fixed input.
/// Extending the stream re-squeezes from scratch (XOF outputs are
/// prefix-consistent), which is fine for the short inputs used here.
class XofReader {
 public:
  explicit XofReader(Bytes input);

  void read(std::uint8_t* out, std::size_t len);
  std::uint8_t next_byte();
  std::uint64_t next_u64_le();

 private:
  void ensure(std::size_t len);

  Bytes input_;
  Bytes buffer_;
  std::size_t pos_ = 0;
};

}  // namespace pqlab
