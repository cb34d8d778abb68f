#pragma once

#include <cstdint>
#include <vector>

namespace gowerslab::primes {

struct PrimeTable {
  std::int64_t N = 0;
  std::vector<bool> is_prime;  // indexed 0..N
  std::vector<std::int64_t> primes;
};

// Eratosthenes sieve over [1, N].  N is capped at 1e8 (length_error beyond).
PrimeTable sieve(std::int64_t N);

// Truncated singular-series constant: 27/16 times the product of
// p^3 (p-4) / (p-1)^4 over primes 5 <= p <= P, evaluated at 128-bit
// precision.  tail_bound dominates the distance to the infinite product
// (each omitted factor f_p satisfies value * (1 - f_p) <= 7/p^2).
struct GammaEstimate {
  std::int64_t P = 0;
  long double value = 0.0L;
  double tail_bound = 0.0;
};

GammaEstimate hl_gamma(std::int64_t P);

// Exact number of pairs (p, d), d >= 1, with p, p+d, ..., p+4d all prime and
// p+4d <= N.  Scans prime pairs (p, p+d) with three table lookups; N <= 1e6.
std::int64_t count_prime_5aps(std::int64_t N);

// Census against the predicted density gamma * N^2 / log^5 N (natural log).
// ratio_2n repeats the comparison at 2N so the trend is visible in one call.
struct AsymptoticComparison {
  std::int64_t N = 0;
  std::int64_t count = 0;
  double prediction = 0.0;
  double ratio = 0.0;
  double ratio_2n = 0.0;
};

AsymptoticComparison compare_asymptotic(std::int64_t N);

}  // namespace gowerslab::primes
