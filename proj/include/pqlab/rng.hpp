#pragma once

#include <cstdint>
#include <string_view>

#include "pqlab/bytes.hpp"
#include "pqlab/xof.hpp"

namespace pqlab {

/// Deterministic random stream backed by SHAKE-256. One global seed is
/// expanded into independent per-purpose streams via labeled derivation,
/// so adding a consumer never perturbs the bytes another one sees.
/// Output is bit-for-bit reproducible across platforms.
class RngStream {
 public:
  static RngStream from_seed(std::uint64_t seed);

  /// Child stream keyed by (this stream's key, label).
  RngStream derive(std::string_view label) const;

  void fill(std::uint8_t* out, std::size_t len);
  Bytes bytes(std::size_t len);
  std::uint64_t next_u64();

  /// Uniform in [0, bound), bound >= 1, via rejection sampling.
  std::uint64_t uniform_below(std::uint64_t bound);

  /// Uniform in [lo, hi], inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  /// Uniform double in [0, 1).
  double uniform01();

 private:
  explicit RngStream(Bytes key);

  Bytes key_;
  XofReader stream_;
};

}  // namespace pqlab
