#include "pqlab/rsa.hpp"

#include <cctype>
#include <sstream>

#include "pqlab/modnum.hpp"

namespace pqlab::rsa {

namespace {

int digits_of(std::uint64_t v) {
  int d = 1;
  while (v >= 10) {
    v /= 10;
    ++d;
  }
  return d;
}

int even_up(int d) { return d % 2 == 0 ? d : d + 1; }

void require_blocks_below(const BlockMessage& msg, std::uint64_t n) {
  for (auto b : msg.blocks)
    if (b >= n) throw BlockTooLarge("block value not below the modulus");
}

}  // namespace

RsaKeygenTrace rsa_keygen_traced(std::uint64_t p, std::uint64_t q, std::uint64_t g) {
  if (!modnum::is_prime(p) || !modnum::is_prime(q))
    throw KeyGenError("p and q must be prime");
  if (p == q) throw KeyGenError("p and q must differ");
  const std::uint64_t n = p * q;
  const std::uint64_t phi = (p - 1) * (q - 1);
  if (g <= 1 || g >= phi) throw KeyGenError("private exponent out of range");
  if (modnum::gcd(phi, g) != 1)
    throw KeyGenError("private exponent must be coprime to phi(n)");
  const std::uint64_t d = modnum::mod_inverse(static_cast<std::int64_t>(g), phi).value;
  RsaKeyPair keys{RsaPublicKey{d, n}, RsaPrivateKey{g, n}};
  return RsaKeygenTrace{keys, p, q, phi};
}

RsaKeyPair rsa_keygen(std::uint64_t p, std::uint64_t q, std::uint64_t g) {
  return rsa_keygen_traced(p, q, g).keys;
}

int encode_block_width(std::uint64_t n) {
  // Largest even w such that the w-digit number 2626...26 is still < n.
  int w = 0;
  unsigned __int128 worst = 0;
  for (;;) {
    worst = worst * 100 + 26;
    if (worst >= static_cast<unsigned __int128>(n)) break;
    w += 2;
    if (w >= 18) break;  // block values stay within 64 bits
  }
  if (w == 0) throw EncodingError("modulus too small for the letter code");
  return w;
}

BlockMessage encode_text(const std::string& text, std::uint64_t n) {
  const int w = encode_block_width(n);
  std::string digits;
  digits.reserve(text.size() * 2);
  for (char ch : text) {
    int code;
    if (ch == ' ') {
      code = 0;
    } else if (std::isalpha(static_cast<unsigned char>(ch))) {
      code = std::toupper(static_cast<unsigned char>(ch)) - 'A' + 1;
    } else {
      throw EncodingError(std::string("unsupported character '") + ch + "'");
    }
    digits.push_back(static_cast<char>('0' + code / 10));
    digits.push_back(static_cast<char>('0' + code % 10));
  }

  BlockMessage msg;
  msg.block_width = w;
  for (std::size_t i = 0; i < digits.size(); i += static_cast<std::size_t>(w)) {
    std::string chunk = digits.substr(i, static_cast<std::size_t>(w));
    chunk.resize(static_cast<std::size_t>(w), '0');  // pad the tail with blanks
    msg.blocks.push_back(std::stoull(chunk));
  }
  return msg;
}

std::string decode_text(const BlockMessage& msg) {
  std::string out;
  for (auto b : msg.blocks) {
    std::string chunk(static_cast<std::size_t>(msg.block_width), '0');
    for (int i = msg.block_width - 1; i >= 0; --i) {
      chunk[static_cast<std::size_t>(i)] = static_cast<char>('0' + b % 10);
      b /= 10;
    }
    if (b != 0) throw DecodingError("block value wider than the block width");
    for (std::size_t i = 0; i + 1 < chunk.size(); i += 2) {
      int code = (chunk[i] - '0') * 10 + (chunk[i + 1] - '0');
      if (code > 26) throw DecodingError("letter code above 26");
      out.push_back(code == 0 ? ' ' : static_cast<char>('A' + code - 1));
    }
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

BlockMessage rsa_encrypt(const BlockMessage& msg, const RsaPublicKey& key) {
  require_blocks_below(msg, key.n);
  BlockMessage out;
  out.block_width = std::max(msg.block_width, even_up(digits_of(key.n - 1)));
  out.blocks.reserve(msg.blocks.size());
  for (auto b : msg.blocks) out.blocks.push_back(modnum::mod_pow(b, key.d, key.n).value);
  return out;
}

BlockMessage rsa_decrypt(const BlockMessage& ct, const RsaPrivateKey& key) {
  require_blocks_below(ct, key.n);
  BlockMessage out;
  out.block_width = key.n > 26 ? encode_block_width(key.n) : ct.block_width;
  out.blocks.reserve(ct.blocks.size());
  for (auto b : ct.blocks) out.blocks.push_back(modnum::mod_pow(b, key.g, key.n).value);
  return out;
}

std::uint64_t rsa_sign(std::uint64_t digest, const RsaPrivateKey& key) {
  if (digest >= key.n) throw BlockTooLarge("digest not below the modulus");
  return modnum::mod_pow(digest, key.g, key.n).value;
}

bool rsa_verify(std::uint64_t digest, std::uint64_t sig, const RsaPublicKey& key) {
  if (digest >= key.n) throw BlockTooLarge("digest not below the modulus");
  if (sig >= key.n) return false;
  return modnum::mod_pow(sig, key.d, key.n).value == digest;
}

std::string render_blocks(const BlockMessage& msg) {
  std::ostringstream os;
  for (std::size_t i = 0; i < msg.blocks.size(); ++i) {
    if (i) os << ' ';
    std::string s = std::to_string(msg.blocks[i]);
    while (static_cast<int>(s.size()) < msg.block_width) s.insert(s.begin(), '0');
    os << s;
  }
  return os.str();
}

BlockMessage parse_blocks(const std::string& text, std::uint64_t n) {
  BlockMessage msg;
  msg.block_width = n > 26 ? encode_block_width(n) : 2;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    for (char c : tok)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw ParseError("blocks must be decimal digit groups");
    msg.blocks.push_back(std::stoull(tok));
    msg.block_width = std::max(msg.block_width, even_up(static_cast<int>(tok.size())));
  }
  require_blocks_below(msg, n);
  return msg;
}

}  // namespace pqlab::rsa
