#pragma once

// Independent reference implementations used only by tests. Everything here
// is deliberately written in the most naive way available (repeated
// multiplication, explicit value tables, full enumeration) and shares no
// code with the library paths it checks.

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

/// a^x mod n by literal repeated multiplication.
inline std::uint64_t naive_mod_pow(std::uint64_t a, std::uint64_t x, std::uint64_t n) {
  unsigned __int128 acc = 1 % n;
  for (std::uint64_t i = 0; i < x; ++i) acc = acc * (a % n) % n;
  return static_cast<std::uint64_t>(acc);
}

/// Schoolbook polynomial product of ascending coefficient lists over Z_q.
inline std::vector<std::int64_t> poly_mul_mod(const std::vector<std::int64_t>& a,
                                              const std::vector<std::int64_t>& b,
                                              std::int64_t q) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::int64_t> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = ((out[i + j] + a[i] * b[j]) % q + q) % q;
  return out;
}

inline std::vector<std::int64_t> poly_add_mod(std::vector<std::int64_t> a,
                                              const std::vector<std::int64_t>& b,
                                              std::int64_t q) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = ((a[i] + b[i]) % q + q) % q;
  return a;
}

/// Reduction mod X^n + 1 done by repeatedly subtracting c * X^j * (X^n + 1)
/// from the top term, i.e. plain long division by the fixed modulus.
inline std::vector<std::int64_t> negacyclic_mod(std::vector<std::int64_t> p,
                                                std::size_t n, std::int64_t q) {
  while (p.size() > n) {
    const std::size_t top = p.size() - 1;
    const std::int64_t c = p[top];
    p[top] = 0;
    p[top - n] = (((p[top - n] - c) % q) + q) % q;
    while (!p.empty() && p.back() == 0) p.pop_back();
  }
  p.resize(n, 0);
  return p;
}

/// Negacyclic product in Z_q[X]/(X^n + 1), fixed length n.
inline std::vector<std::int64_t> ring_mul(const std::vector<std::int64_t>& a,
                                          const std::vector<std::int64_t>& b,
                                          std::size_t n, std::int64_t q) {
  return negacyclic_mod(poly_mul_mod(a, b, q), n, q);
}

/// Exact measurement distribution built from the explicit value table:
/// group register positions by a^x mod n and run a literal DFT per group.
inline std::vector<double> dft_distribution(std::uint64_t a, std::uint64_t n,
                                            std::uint64_t N) {
  std::map<std::uint64_t, std::vector<std::uint64_t>> groups;
  std::uint64_t v = 1 % n;
  for (std::uint64_t x = 0; x < N; ++x) {
    groups[v].push_back(x);
    v = static_cast<std::uint64_t>((static_cast<unsigned __int128>(v) * a) % n);
  }
  std::vector<double> probs(N, 0.0);
  const double tau = 6.283185307179586476925287;
  for (const auto& [beta, xs] : groups) {
    for (std::uint64_t y = 0; y < N; ++y) {
      std::complex<double> amp{0.0, 0.0};
      for (std::uint64_t x : xs) {
        const double ang = tau * static_cast<double>((static_cast<unsigned __int128>(x) * y) % N) /
                           static_cast<double>(N);
        amp += std::complex<double>(std::cos(ang), std::sin(ang));
      }
      amp /= static_cast<double>(N);
      probs[y] += std::norm(amp);
    }
  }
  return probs;
}

/// Closed geometric-sum form of the measurement probability: for each
/// residue class of size A the conditional mass at y is
/// |(1 - q^A)/(1 - q)|^2 / (N*A) with q = exp(2*pi*i*p*y/N).
inline std::vector<double> closed_form_distribution(std::uint64_t period,
                                                    std::uint64_t N) {
  const double tau = 6.283185307179586476925287;
  const std::uint64_t A_low = N / period;
  const std::uint64_t tall = N % period;
  std::vector<double> probs(N, 0.0);
  for (std::uint64_t y = 0; y < N; ++y) {
    const std::uint64_t step = (period * y) % N;
    auto conditional = [&](std::uint64_t A) {
      if (A == 0) return 0.0;
      if (step == 0) return static_cast<double>(A) / static_cast<double>(N);
      const double ang = tau * static_cast<double>(step) / static_cast<double>(N);
      const std::complex<double> qq(std::cos(ang), std::sin(ang));
      std::complex<double> num = 1.0 - std::pow(qq, static_cast<double>(A));
      std::complex<double> den = 1.0 - qq;
      return std::norm(num / den) / (static_cast<double>(N) * static_cast<double>(A));
    };
    // Weight each class by its probability A/N of being selected.
    const double mass_tall = conditional(A_low + 1) *
                             (static_cast<double>(A_low + 1) / static_cast<double>(N));
    const double mass_low = conditional(A_low) *
                            (static_cast<double>(A_low) / static_cast<double>(N));
    probs[y] = static_cast<double>(tall) * mass_tall +
               static_cast<double>(period - tall) * mass_low;
  }
  return probs;
}

struct BoxVector {
  std::vector<long long> coeffs;
  std::vector<double> vec;  // only used for reporting
  long long norm2_num = 0;  // exact when basis is integral
};

/// Exhaustive shortest-vector search over integer bases, coefficients in
/// [-box, box]^n; ties resolved by lexicographic coefficient order.
inline BoxVector exhaustive_svp(const std::vector<std::vector<long long>>& cols,
                                long long box) {
  const std::size_t n = cols.size();
  std::vector<long long> g(n, -box);
  BoxVector best;
  bool found = false;
  for (;;) {
    bool zero = true;
    for (auto c : g) zero = zero && c == 0;
    if (!zero) {
      std::vector<long long> x(n, 0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t r = 0; r < n; ++r) x[r] += g[i] * cols[i][r];
      long long n2 = 0;
      for (auto xv : x) n2 += xv * xv;
      if (!found || n2 < best.norm2_num ||
          (n2 == best.norm2_num && g < best.coeffs)) {
        best.coeffs = g;
        best.norm2_num = n2;
        found = true;
      }
    }
    std::size_t i = 0;
    while (i < n && g[i] == box) {
      g[i] = -box;
      ++i;
    }
    if (i == n) break;
    ++g[i];
  }
  return best;
}

/// Exhaustive closest-vector search against a rational target given as
/// (numerator, shared denominator).
inline BoxVector exhaustive_cvp(const std::vector<std::vector<long long>>& cols,
                                const std::vector<long long>& target_num,
                                long long target_den, long long box) {
  const std::size_t n = cols.size();
  std::vector<long long> g(n, -box);
  BoxVector best;
  bool found = false;
  for (;;) {
    std::vector<long long> x(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t r = 0; r < n; ++r) x[r] += g[i] * cols[i][r];
    // distance^2 scaled by target_den^2 stays integral
    long long n2 = 0;
    for (std::size_t r = 0; r < n; ++r) {
      const long long d = x[r] * target_den - target_num[r];
      n2 += d * d;
    }
    if (!found || n2 < best.norm2_num || (n2 == best.norm2_num && g < best.coeffs)) {
      best.coeffs = g;
      best.norm2_num = n2;
      found = true;
    }
    std::size_t i = 0;
    while (i < n && g[i] == box) {
      g[i] = -box;
      ++i;
    }
    if (i == n) break;
    ++g[i];
  }
  return best;
}

}  // namespace oracle
