#include "pqlab/shor.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "pqlab/modnum.hpp"

namespace pqlab::shor {

std::uint64_t register_size(std::uint64_t n) {
  if (n < 3) throw DomainError("register size needs n >= 3");
  const std::uint64_t lo = n * n;
  std::uint64_t N = 1;
  while (N < lo) N <<= 1;
  return N;  // lo <= N < 2*lo since N/2 < lo
}

MeasurementDistribution simulate_quantum_part(std::uint64_t a, std::uint64_t n) {
  if (a <= 1 || a >= n) throw DomainError("simulation needs 1 < a < n");
  if (modnum::gcd(a, n) != 1) throw DomainError("simulation needs gcd(a, n) = 1");

  const std::uint64_t N = register_size(n);
  // The value table x -> a^x mod n is p-periodic, so the positions holding a
  // common value form the arithmetic progressions {j, j+p, ...}; each class
  // is a group of Eq-style indicator amplitudes to be Fourier transformed.
  const std::uint64_t p = modnum::period(a, n);
  const std::uint64_t base_count = N / p;   // class size for j >= N mod p
  const std::uint64_t taller = N % p;       // that many classes have one more entry

  MeasurementDistribution dist;
  dist.N = N;
  dist.probs.assign(N, 0.0);

  const double inv_n2 = 1.0 / (static_cast<double>(N) * static_cast<double>(N));
  for (std::uint64_t y = 0; y < N; ++y) {
    const std::uint64_t step = (p * y) % N;
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(step) /
                         static_cast<double>(N);
    // DFT sum over one residue class; every class shares the same rotation,
    // differing only in length (base_count or base_count + 1). The partial
    // sum S = sum_{t<A} w^t is accumulated by binary bracketing: walking the
    // bits of A with S_{2k} = S_k * (1 + w^k) and S_{k+1} = S_k + w^k keeps
    // the evaluation an exact summation at O(log A) cost.
    const std::complex<double> w = std::polar(1.0, theta);
    std::complex<double> sum_short{0.0, 0.0};
    std::complex<double> power{1.0, 0.0};  // w^k for the running length k
    if (base_count > 0) {
      int bit = 63;
      while (bit > 0 && ((base_count >> bit) & 1) == 0) --bit;
      for (; bit >= 0; --bit) {
        sum_short += power * sum_short;
        power *= power;
        if ((base_count >> bit) & 1) {
          sum_short += power;
          power *= w;
        }
      }
    }
    const std::complex<double> sum_tall = sum_short + power;
    const double mass = static_cast<double>(taller) * std::norm(sum_tall) +
                        static_cast<double>(p - taller) * std::norm(sum_short);
    dist.probs[y] = mass * inv_n2;
  }
  return dist;
}

std::uint64_t sample_measurement(const MeasurementDistribution& dist, RngStream& rng) {
  if (dist.probs.empty()) throw DomainError("empty distribution");
  const double u = rng.uniform01();
  double cum = 0.0;
  for (std::uint64_t y = 0; y < dist.probs.size(); ++y) {
    cum += dist.probs[y];
    if (u < cum) return y;
  }
  return dist.probs.size() - 1;  // guard against rounding at the tail
}

ContinuedFraction continued_fraction(std::uint64_t y, std::uint64_t N) {
  if (N == 0) throw DomainError("denominator must be positive");
  ContinuedFraction cf;
  std::uint64_t num = y, den = N;
  while (den != 0) {
    cf.quotients.push_back(num / den);
    std::uint64_t r = num % den;
    num = den;
    den = r;
  }
  std::uint64_t g0 = 0, g1 = 1;  // numerator recurrence seeds
  std::uint64_t h0 = 1, h1 = 0;  // denominator recurrence seeds
  for (std::uint64_t q : cf.quotients) {
    std::uint64_t g2 = q * g1 + g0;
    std::uint64_t h2 = q * h1 + h0;
    cf.convergents.emplace_back(g2, h2);
    g0 = g1;
    g1 = g2;
    h0 = h1;
    h1 = h2;
  }
  return cf;
}

namespace {

/// Smallest divisor d of m with a^d == 1 (mod n). m itself satisfies the
/// condition, so the result is the multiplicative order of a.
std::uint64_t reduce_to_order(std::uint64_t m, std::uint64_t a, std::uint64_t n) {
  std::vector<std::uint64_t> divisors{1};
  for (auto [prime, exp] : modnum::factorize(m).factors) {
    const std::size_t count = divisors.size();
    std::uint64_t pe = 1;
    for (std::uint32_t e = 1; e <= exp; ++e) {
      pe *= prime;
      for (std::size_t i = 0; i < count; ++i) divisors.push_back(divisors[i] * pe);
    }
  }
  std::sort(divisors.begin(), divisors.end());
  for (std::uint64_t d : divisors) {
    if (modnum::mod_pow(a, d, n).value == 1) return d;
  }
  return m;
}

}  // namespace

std::optional<std::uint64_t> recover_period(std::uint64_t y, std::uint64_t N,
                                            std::uint64_t a, std::uint64_t n) {
  const ContinuedFraction cf = continued_fraction(y, N);
  for (const auto& [g, h] : cf.convergents) {
    if (h == 0) continue;
    // The measured y approximates k/p with possibly gcd(k, p) > 1, so the
    // convergent denominator can be a proper divisor of the period; small
    // multiples close that gap.
    for (std::uint64_t c = 1; c <= 4; ++c) {
      const std::uint64_t candidate = c * h;
      if (candidate == 0 || candidate >= n) continue;
      if (modnum::mod_pow(a, candidate, n).value == 1) {
        // "Is it really the period" check: shrink to the smallest exponent.
        return reduce_to_order(candidate, a, n);
      }
    }
  }
  return std::nullopt;
}

ShorResult shor_factor(std::uint64_t n, RngStream& rng, int max_rounds) {
  if (n < 3) throw DomainError("factoring loop needs n >= 3");
  ShorResult result;
  if (n % 2 == 0) {
    result.divisor = 2;
    return result;
  }

  for (int round = 0; round < max_rounds; ++round) {
    ShorRound rec;
    rec.a = 2 + rng.uniform_below(n - 3 + 1);  // a in (1, n)
    const std::uint64_t g = modnum::gcd(rec.a, n);
    if (g != 1) {
      rec.outcome = RoundOutcome::GcdShortcut;
      rec.divisor = g;
      result.trace.rounds.push_back(rec);
      result.divisor = g;
      return result;
    }

    const MeasurementDistribution dist = simulate_quantum_part(rec.a, n);
    rec.y = sample_measurement(dist, rng);
    rec.period = recover_period(rec.y, dist.N, rec.a, n);
    if (!rec.period) {
      rec.outcome = RoundOutcome::NoPeriod;
      result.trace.rounds.push_back(rec);
      continue;
    }
    const std::uint64_t p = *rec.period;
    if (p % 2 != 0) {
      rec.outcome = RoundOutcome::OddPeriod;
      result.trace.rounds.push_back(rec);
      continue;
    }
    const std::uint64_t half_power = modnum::mod_pow(rec.a, p / 2, n).value;
    for (std::uint64_t candidate :
         {modnum::gcd(half_power - 1, n), modnum::gcd(half_power + 1, n)}) {
      if (candidate > 1 && candidate < n) {
        rec.outcome = RoundOutcome::Success;
        rec.divisor = candidate;
        result.trace.rounds.push_back(rec);
        result.divisor = candidate;
        return result;
      }
    }
    rec.outcome = RoundOutcome::BadGcd;
    result.trace.rounds.push_back(rec);
  }
  throw ShorGaveUp("no divisor found within the round budget", result.trace);
}

const char* outcome_name(RoundOutcome o) {
  switch (o) {
    case RoundOutcome::GcdShortcut: return "gcd-shortcut";
    case RoundOutcome::NoPeriod: return "no-period";
    case RoundOutcome::OddPeriod: return "odd-period";
    case RoundOutcome::BadGcd: return "bad-gcd";
    case RoundOutcome::Success: return "success";
  }
  return "?";
}

}  // namespace pqlab::shor
