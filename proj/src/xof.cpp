#include "pqlab/xof.hpp"

#include <openssl/evp.h>

#include <memory>
#include <stdexcept>

namespace pqlab {

namespace {

const EVP_MD* shake256_md() {
  static const EVP_MD* md = EVP_shake256();
  if (md == nullptr) throw std::runtime_error("SHAKE-256 unavailable in libcrypto");
  return md;
}

}  // namespace

Bytes shake256(ByteView input, std::size_t out_len) {
  Bytes out(out_len);
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), shake256_md(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), input.data(), input.size()) != 1 ||
      EVP_DigestFinalXOF(ctx.get(), out.data(), out.size()) != 1) {
    throw std::runtime_error("SHAKE-256 digest failed");
  }
  return out;
}

XofReader::XofReader(Bytes input) : input_(std::move(input)) {}

void XofReader::ensure(std::size_t len) {
  if (pos_ + len <= buffer_.size()) return;
  std::size_t want = buffer_.empty() ? 256 : buffer_.size();
  while (want < pos_ + len) want *= 2;
  buffer_ = shake256(input_, want);
}

void XofReader::read(std::uint8_t* out, std::size_t len) {
  ensure(len);
  for (std::size_t i = 0; i < len; ++i) out[i] = buffer_[pos_ + i];
  pos_ += len;
}

std::uint8_t XofReader::next_byte() {
  std::uint8_t b;
  read(&b, 1);
  return b;
}

std::uint64_t XofReader::next_u64_le() {
  std::uint8_t b[8];
  read(b, 8);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

}  // namespace pqlab
