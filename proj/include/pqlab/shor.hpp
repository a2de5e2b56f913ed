#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pqlab/errors.hpp"
#include "pqlab/rng.hpp"

namespace pqlab::shor {

/// Exact probability distribution of the register measurement at the end of
/// the order-finding round for base a modulo n.
struct MeasurementDistribution {
  std::uint64_t N = 0;  // register size, a power of two
  std::vector<double> probs;
};

/// Quotients [a0; a1, ..., al] of y/N and the convergents g_u/h_u, each in
/// lowest terms; the last convergent equals y/N reduced.
struct ContinuedFraction {
  std::vector<std::uint64_t> quotients;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> convergents;
};

enum class RoundOutcome {
  GcdShortcut,  // random a already shared a factor with n
  NoPeriod,     // no convergent-derived candidate verified
  OddPeriod,    // recovered period was odd, cannot split
  BadGcd,       // both gcd(a^(p/2) -+ 1, n) were trivial
  Success,
};

struct ShorRound {
  std::uint64_t a = 0;
  RoundOutcome outcome = RoundOutcome::NoPeriod;
  std::uint64_t y = 0;                 // measured register value
  std::optional<std::uint64_t> period;
  std::uint64_t divisor = 0;           // set on GcdShortcut / Success
};

struct ShorTrace {
  std::vector<ShorRound> rounds;
};

struct ShorResult {
  std::uint64_t divisor = 0;
  ShorTrace trace;
};

/// Raised when no divisor was found within the round budget; carries the
/// full trace for inspection.
class ShorGaveUp : public Error {
 public:
  ShorGaveUp(std::string msg, ShorTrace trace)
      : Error(std::move(msg)), trace(std::move(trace)) {}
  ShorTrace trace;
};

/// The unique power of two N = 2^m with n^2 <= N < 2n^2; n >= 3.
std::uint64_t register_size(std::uint64_t n);

/// Builds the value table x -> a^x mod n over x in [0, N), groups the
/// register positions by that value, Fourier-transforms the resulting
/// superposition within each group and accumulates squared magnitudes.
/// Requires 1 < a < n and gcd(a, n) = 1.
MeasurementDistribution simulate_quantum_part(std::uint64_t a, std::uint64_t n);

/// Draws y with probability probs[y]; deterministic under a seeded stream.
std::uint64_t sample_measurement(const MeasurementDistribution& dist, RngStream& rng);

ContinuedFraction continued_fraction(std::uint64_t y, std::uint64_t N);

/// Scans convergent denominators of y/N (and small multiples c*h, c <= 4)
/// for a verified period of a mod n, then reduces the verified candidate to
/// the smallest exponent that still satisfies a^p == 1. Empty if no
/// candidate verifies.
std::optional<std::uint64_t> recover_period(std::uint64_t y, std::uint64_t N,
                                            std::uint64_t a, std::uint64_t n);

/// Full factoring loop; returns a proper divisor of n together with the
/// per-round trace. Throws ShorGaveUp after max_rounds fruitless rounds.
ShorResult shor_factor(std::uint64_t n, RngStream& rng, int max_rounds = 64);

const char* outcome_name(RoundOutcome o);

}  // namespace pqlab::shor
