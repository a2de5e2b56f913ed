#include "pqlab/polyring.hpp"

#include <algorithm>
#include <sstream>

#include "pqlab/modnum.hpp"

namespace pqlab::poly {

namespace {

using i128 = __int128;

std::int64_t canon(i128 v, std::uint64_t q) {
  if (q == 0) {
    if (v > i128(INT64_MAX) || v < i128(INT64_MIN))
      throw DomainError("integer polynomial coefficient overflow");
    return static_cast<std::int64_t>(v);
  }
  i128 m = i128(q);
  i128 r = v % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

void trim(std::vector<std::int64_t>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

void require_same_modulus(const Poly& p, const Poly& r) {
  if (p.modulus != r.modulus) throw DomainError("polynomial modulus mismatch");
}

void require_same_ring(const RingElem& a, const RingElem& b) {
  if (a.n != b.n || a.q != b.q) throw DomainError("ring parameter mismatch");
}

void require_uniform(const RingVec& v) {
  for (std::size_t i = 1; i < v.size(); ++i) require_same_ring(v[0], v[i]);
}

}  // namespace

Poly make_poly(std::uint64_t modulus, std::vector<std::int64_t> ascending) {
  if (modulus == 1) throw DomainError("polynomial modulus must be 0 or >= 2");
  Poly p{modulus, std::move(ascending)};
  for (auto& c : p.coeffs) c = canon(c, modulus);
  trim(p.coeffs);
  return p;
}

Poly poly_add(const Poly& p, const Poly& r) {
  require_same_modulus(p, r);
  std::vector<std::int64_t> out(std::max(p.coeffs.size(), r.coeffs.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    i128 v = 0;
    if (i < p.coeffs.size()) v += p.coeffs[i];
    if (i < r.coeffs.size()) v += r.coeffs[i];
    out[i] = canon(v, p.modulus);
  }
  trim(out);
  return Poly{p.modulus, std::move(out)};
}

Poly poly_sub(const Poly& p, const Poly& r) {
  require_same_modulus(p, r);
  std::vector<std::int64_t> out(std::max(p.coeffs.size(), r.coeffs.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    i128 v = 0;
    if (i < p.coeffs.size()) v += p.coeffs[i];
    if (i < r.coeffs.size()) v -= r.coeffs[i];
    out[i] = canon(v, p.modulus);
  }
  trim(out);
  return Poly{p.modulus, std::move(out)};
}

Poly poly_mul(const Poly& p, const Poly& r) {
  require_same_modulus(p, r);
  if (p.is_zero() || r.is_zero()) return Poly{p.modulus, {}};
  std::vector<i128> acc(p.coeffs.size() + r.coeffs.size() - 1, 0);
  for (std::size_t i = 0; i < p.coeffs.size(); ++i)
    for (std::size_t j = 0; j < r.coeffs.size(); ++j)
      acc[i + j] += i128(p.coeffs[i]) * r.coeffs[j];
  std::vector<std::int64_t> out(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) out[i] = canon(acc[i], p.modulus);
  trim(out);
  return Poly{p.modulus, std::move(out)};
}

PolyDivMod poly_divmod(const Poly& p, const Poly& f) {
  require_same_modulus(p, f);
  if (f.is_zero()) throw DomainError("division by the zero polynomial");
  const std::int64_t lead = f.coeffs.back();
  std::int64_t lead_inv = 0;
  if (f.modulus == 0) {
    if (lead != 1 && lead != -1)
      throw DomainError("integer polynomial division needs unit leading coefficient");
    lead_inv = lead;  // 1/1 = 1, 1/-1 = -1
  } else {
    lead_inv = static_cast<std::int64_t>(
        modnum::mod_inverse(lead, f.modulus).value);  // NotInvertible for zero divisors
  }

  std::vector<std::int64_t> rem = p.coeffs;
  trim(rem);
  std::vector<std::int64_t> quot;
  const int df = f.degree();
  if (static_cast<int>(rem.size()) - 1 >= df)
    quot.assign(rem.size() - static_cast<std::size_t>(df), 0);

  while (static_cast<int>(rem.size()) - 1 >= df && !rem.empty()) {
    const std::size_t shift = rem.size() - 1 - static_cast<std::size_t>(df);
    const std::int64_t c = canon(i128(rem.back()) * lead_inv, f.modulus);
    quot[shift] = c;
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
      rem[shift + i] = canon(i128(rem[shift + i]) - i128(c) * f.coeffs[i], f.modulus);
    }
    trim(rem);
  }
  trim(quot);
  return PolyDivMod{Poly{p.modulus, std::move(quot)}, Poly{p.modulus, std::move(rem)}};
}

RingElem ring_zero(std::uint32_t n, std::uint64_t q) {
  if (n == 0 || q < 2) throw DomainError("ring needs n >= 1 and q >= 2");
  return RingElem{n, q, std::vector<std::int64_t>(n, 0)};
}

RingElem ring_one(std::uint32_t n, std::uint64_t q) {
  RingElem e = ring_zero(n, q);
  e.c[0] = 1 % static_cast<std::int64_t>(q);
  return e;
}

RingElem make_ring_elem(std::uint32_t n, std::uint64_t q,
                        std::vector<std::int64_t> ascending) {
  return reduce_negacyclic(Poly{q, std::move(ascending)}, n);
}

RingElem reduce_negacyclic(const Poly& p, std::uint32_t n) {
  if (n == 0 || p.modulus < 2) throw DomainError("ring needs n >= 1 and q >= 2");
  RingElem out = ring_zero(n, p.modulus);
  std::vector<i128> acc(n, 0);
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
    std::size_t k = i;
    int sign = 1;
    while (k >= n) {
      k -= n;
      sign = -sign;
    }
    acc[k] += sign * i128(p.coeffs[i]);
  }
  for (std::uint32_t i = 0; i < n; ++i) out.c[i] = canon(acc[i], p.modulus);
  return out;
}

RingElem ring_add(const RingElem& a, const RingElem& b) {
  require_same_ring(a, b);
  RingElem out = a;
  for (std::uint32_t i = 0; i < a.n; ++i) out.c[i] = canon(i128(a.c[i]) + b.c[i], a.q);
  return out;
}

RingElem ring_sub(const RingElem& a, const RingElem& b) {
  require_same_ring(a, b);
  RingElem out = a;
  for (std::uint32_t i = 0; i < a.n; ++i) out.c[i] = canon(i128(a.c[i]) - b.c[i], a.q);
  return out;
}

RingElem ring_mul(const RingElem& a, const RingElem& b) {
  require_same_ring(a, b);
  const std::uint32_t n = a.n;
  std::vector<i128> acc(n, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (a.c[i] == 0) continue;
    for (std::uint32_t j = 0; j < n; ++j) {
      std::uint32_t k = i + j;
      i128 term = i128(a.c[i]) * b.c[j];
      if (k >= n)
        acc[k - n] -= term;  // X^n == -1
      else
        acc[k] += term;
    }
  }
  RingElem out = ring_zero(n, a.q);
  for (std::uint32_t i = 0; i < n; ++i) out.c[i] = canon(acc[i], a.q);
  return out;
}

RingElem ring_neg(const RingElem& a) {
  RingElem out = a;
  for (auto& c : out.c) c = canon(-i128(c), a.q);
  return out;
}

RingVec vec_add(const RingVec& a, const RingVec& b) {
  if (a.size() != b.size()) throw DomainError("vector length mismatch");
  RingVec out;
  out.e.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.e.push_back(ring_add(a[i], b[i]));
  return out;
}

RingVec vec_sub(const RingVec& a, const RingVec& b) {
  if (a.size() != b.size()) throw DomainError("vector length mismatch");
  RingVec out;
  out.e.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.e.push_back(ring_sub(a[i], b[i]));
  return out;
}

RingElem dot(const RingVec& a, const RingVec& b) {
  if (a.size() != b.size() || a.size() == 0)
    throw DomainError("dot product needs equal nonempty vectors");
  require_uniform(a);
  require_uniform(b);
  RingElem acc = ring_zero(a[0].n, a[0].q);
  for (std::size_t i = 0; i < a.size(); ++i) acc = ring_add(acc, ring_mul(a[i], b[i]));
  return acc;
}

RingVec matvec(const RingMat& m, const RingVec& v) {
  if (m.cols != v.size()) throw DomainError("matrix/vector shape mismatch");
  RingVec out;
  out.e.reserve(m.rows);
  for (std::size_t i = 0; i < m.rows; ++i) {
    RingElem acc = ring_zero(v[0].n, v[0].q);
    for (std::size_t j = 0; j < m.cols; ++j)
      acc = ring_add(acc, ring_mul(m.at(i, j), v[j]));
    out.e.push_back(std::move(acc));
  }
  return out;
}

RingMat matmul(const RingMat& a, const RingMat& b) {
  if (a.cols != b.rows || a.e.empty() || b.e.empty())
    throw DomainError("matrix shape mismatch");
  RingMat out{a.rows, b.cols, {}};
  out.e.reserve(a.rows * b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < b.cols; ++j) {
      RingElem acc = ring_zero(a.e[0].n, a.e[0].q);
      for (std::size_t k = 0; k < a.cols; ++k)
        acc = ring_add(acc, ring_mul(a.at(i, k), b.at(k, j)));
      out.e.push_back(std::move(acc));
    }
  }
  return out;
}

RingMat transpose(const RingMat& m) {
  RingMat out{m.cols, m.rows, {}};
  out.e.resize(m.e.size());
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) out.at(j, i) = m.at(i, j);
  return out;
}

RingVec scale_vec(const RingElem& c, const RingVec& v) {
  RingVec out;
  out.e.reserve(v.size());
  for (const auto& x : v.e) out.e.push_back(ring_mul(c, x));
  return out;
}

RingElem bits_to_poly(std::string_view bits, std::uint32_t n, std::uint64_t q) {
  if (bits.size() > n) throw DomainError("bit string longer than ring degree");
  RingElem out = ring_zero(n, q);
  const std::size_t len = bits.size();
  for (std::size_t i = 0; i < len; ++i) {
    char b = bits[i];
    if (b != '0' && b != '1') throw DomainError("bit string must contain only 0/1");
    // Leftmost bit carries the highest degree present in the string.
    out.c[len - 1 - i] = (b == '1') ? 1 : 0;
  }
  return out;
}

std::string poly_to_bits(const RingElem& p) {
  std::string out(p.n, '0');
  for (std::uint32_t i = 0; i < p.n; ++i) {
    if (p.c[i] != 0 && p.c[i] != 1)
      throw DomainError("poly_to_bits needs 0/1 coefficients");
    out[p.n - 1 - i] = p.c[i] ? '1' : '0';
  }
  return out;
}

std::uint64_t half_q(std::uint64_t q) { return (q + 1) / 2; }

RingElem scale_half_q(const RingElem& p) {
  const std::int64_t h = static_cast<std::int64_t>(half_q(p.q));
  RingElem out = p;
  for (auto& c : out.c) {
    if (c != 0 && c != 1) throw DomainError("scale_half_q needs 0/1 coefficients");
    c = c ? h : 0;
  }
  return out;
}

namespace {

std::uint64_t circular_distance(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  std::uint64_t d = a > b ? a - b : b - a;
  return std::min(d, q - d);
}

bool rounds_to_one(std::int64_t c, std::uint64_t q) {
  const std::uint64_t cv = static_cast<std::uint64_t>(c);
  const std::uint64_t to_half = circular_distance(cv, half_q(q), q);
  const std::uint64_t to_zero = circular_distance(cv, 0, q);
  return to_half <= to_zero;  // ties land on 1
}

}  // namespace

RingElem round_coeffs(const RingElem& p) {
  RingElem out = p;
  for (auto& c : out.c) c = rounds_to_one(c, p.q) ? 1 : 0;
  return out;
}

RingElem round_to_half(const RingElem& p) {
  const std::int64_t h = static_cast<std::int64_t>(half_q(p.q));
  RingElem out = p;
  for (auto& c : out.c) c = rounds_to_one(c, p.q) ? h : 0;
  return out;
}

std::int64_t centered(std::int64_t c, std::uint64_t q) {
  const std::int64_t qq = static_cast<std::int64_t>(q);
  std::int64_t r = c % qq;
  if (r < 0) r += qq;
  return r > qq / 2 ? r - qq : r;
}

std::int64_t inf_norm_centered(const RingElem& p) {
  std::int64_t mx = 0;
  for (auto c : p.c) mx = std::max(mx, std::abs(centered(c, p.q)));
  return mx;
}

std::int64_t inf_norm_centered(const RingVec& v) {
  std::int64_t mx = 0;
  for (const auto& e : v.e) mx = std::max(mx, inf_norm_centered(e));
  return mx;
}

namespace {

std::string render_terms(const std::vector<std::int64_t>& asc) {
  std::ostringstream os;
  bool first = true;
  for (int i = static_cast<int>(asc.size()) - 1; i >= 0; --i) {
    std::int64_t c = asc[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? "-" : "+");
    }
    std::int64_t mag = std::abs(c);
    if (mag != 1 || i == 0) os << mag;
    if (i > 0) {
      os << "x";
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace

std::string render(const RingElem& p, bool centered_form) {
  std::vector<std::int64_t> asc = p.c;
  if (centered_form)
    for (auto& c : asc) c = centered(c, p.q);
  return render_terms(asc);
}

std::string render(const Poly& p) { return render_terms(p.coeffs); }

std::uint32_t coeff_bits(std::uint64_t q) {
  std::uint32_t bits = 0;
  std::uint64_t v = q - 1;
  while (v != 0) {
    ++bits;
    v >>= 1;
  }
  return bits == 0 ? 1 : bits;
}

std::size_t packed_size(std::size_t elems, std::uint32_t n, std::uint64_t q) {
  return (elems * n * coeff_bits(q) + 7) / 8;
}

namespace {

void pack_into(Bytes& out, std::size_t& bitpos, const RingElem& p) {
  const std::uint32_t bits = coeff_bits(p.q);
  for (std::uint32_t i = 0; i < p.n; ++i) {
    std::uint64_t v = static_cast<std::uint64_t>(p.c[i]);
    for (std::uint32_t b = 0; b < bits; ++b) {
      if (v & (std::uint64_t(1) << b)) out[bitpos >> 3] |= std::uint8_t(1u << (bitpos & 7));
      ++bitpos;
    }
  }
}

}  // namespace

Bytes pack_coeffs(const RingElem& p) {
  Bytes out(packed_size(1, p.n, p.q), 0);
  std::size_t bitpos = 0;
  pack_into(out, bitpos, p);
  return out;
}

Bytes pack_coeffs(const RingVec& v) {
  if (v.size() == 0) return {};
  Bytes out(packed_size(v.size(), v[0].n, v[0].q), 0);
  std::size_t bitpos = 0;
  for (const auto& p : v.e) pack_into(out, bitpos, p);
  return out;
}

RingElem unpack_elem(ByteView in, std::uint32_t n, std::uint64_t q) {
  return unpack_vec(in, 1, n, q)[0];
}

RingVec unpack_vec(ByteView in, std::size_t k, std::uint32_t n, std::uint64_t q) {
  const std::uint32_t bits = coeff_bits(q);
  if (in.size() < packed_size(k, n, q)) throw ParseError("packed coefficients truncated");
  RingVec out;
  std::size_t bitpos = 0;
  for (std::size_t ei = 0; ei < k; ++ei) {
    RingElem p = ring_zero(n, q);
    for (std::uint32_t i = 0; i < n; ++i) {
      std::uint64_t v = 0;
      for (std::uint32_t b = 0; b < bits; ++b) {
        v |= std::uint64_t((in[bitpos >> 3] >> (bitpos & 7)) & 1u) << b;
        ++bitpos;
      }
      if (v >= q) throw ParseError("packed coefficient out of range");
      p.c[i] = static_cast<std::int64_t>(v);
    }
    out.e.push_back(std::move(p));
  }
  return out;
}

}  // namespace pqlab::poly
