#include "gowerslab/primes.hpp"

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>

#include "gowerslab/parallel.hpp"

namespace gowerslab::primes {

namespace {
constexpr std::int64_t kSieveCap = 100'000'000;
constexpr std::int64_t kCensusCap = 1'000'000;
}  // namespace

PrimeTable sieve(std::int64_t N) {
  if (N < 1) throw std::invalid_argument("sieve: N must be >= 1");
  if (N > kSieveCap) throw std::length_error("sieve: N exceeds the 1e8 budget");
  PrimeTable t;
  t.N = N;
  t.is_prime.assign(static_cast<std::size_t>(N) + 1, true);
  t.is_prime[0] = false;
  if (N >= 1) t.is_prime[1] = false;
  for (std::int64_t p = 2; p * p <= N; ++p) {
    if (!t.is_prime[static_cast<std::size_t>(p)]) continue;
    for (std::int64_t q = p * p; q <= N; q += p) t.is_prime[static_cast<std::size_t>(q)] = false;
  }
  for (std::int64_t n = 2; n <= N; ++n)
    if (t.is_prime[static_cast<std::size_t>(n)]) t.primes.push_back(n);
  return t;
}

GammaEstimate hl_gamma(std::int64_t P) {
  if (P < 5) throw std::invalid_argument("hl_gamma: P must be >= 5");
  if (P > kSieveCap / 2) throw std::length_error("hl_gamma: P exceeds the sieve budget");
  // extend the sieve past P so most of the tail sum is explicit
  const std::int64_t cap = std::max<std::int64_t>(2 * P, 10'000);
  PrimeTable t = sieve(cap);

  mpf_class value(0, 128);
  value = 27;
  value /= 16;
  mpf_class num(0, 128), den(0, 128);
  double tail = 7.0 / static_cast<double>(cap);  // sum_{n > cap} 7/n^2 < 7/cap
  for (std::int64_t p : t.primes) {
    if (p < 5) continue;
    if (p <= P) {
      num = p;
      num *= num * num;      // p^3
      num *= (p - 4);
      den = p - 1;
      den *= den;
      den *= den;            // (p-1)^4
      value *= num;
      value /= den;
    } else {
      tail += 7.0 / (static_cast<double>(p) * static_cast<double>(p));
    }
  }
  GammaEstimate g;
  g.P = P;
  g.value = static_cast<long double>(mpf_get_d(value.get_mpf_t()));
  // keep the sub-double part of the 128-bit result
  mpf_class rem = value - mpf_class(mpf_get_d(value.get_mpf_t()), 128);
  g.value += static_cast<long double>(mpf_get_d(rem.get_mpf_t()));
  g.tail_bound = tail;
  return g;
}

std::int64_t count_prime_5aps(std::int64_t N) {
  if (N < 1) throw std::invalid_argument("count_prime_5aps: N must be >= 1");
  if (N > kCensusCap) throw std::length_error("count_prime_5aps: N exceeds the 1e6 budget");
  PrimeTable t = sieve(N);
  const auto& isp = t.is_prime;
  const auto& ps = t.primes;
  const std::int64_t np = static_cast<std::int64_t>(ps.size());
  // parallel over p1 blocks; integer partial counts, summed over a fixed tree
  const std::int64_t nblocks = 64;
  return parallel_map_sum<std::int64_t>(nblocks, [&](std::int64_t b) {
    const std::int64_t lo = b * np / nblocks, hi = (b + 1) * np / nblocks;
    std::int64_t cnt = 0;
    for (std::int64_t i = lo; i < hi; ++i) {
      const std::int64_t p1 = ps[i];
      const std::int64_t dmax = (N - p1) / 4;
      for (std::int64_t j = i + 1; j < np && ps[j] - p1 <= dmax; ++j) {
        const std::int64_t d = ps[j] - p1;
        if (isp[static_cast<std::size_t>(p1 + 2 * d)] &&
            isp[static_cast<std::size_t>(p1 + 3 * d)] &&
            isp[static_cast<std::size_t>(p1 + 4 * d)])
          ++cnt;
      }
    }
    return cnt;
  });
}

AsymptoticComparison compare_asymptotic(std::int64_t N) {
  if (N < 1000) throw std::invalid_argument("compare_asymptotic: N must be >= 1e3");
  if (2 * N > kCensusCap)
    throw std::length_error("compare_asymptotic: doubled census exceeds the 1e6 budget");
  const double gamma = static_cast<double>(hl_gamma(100'000).value);
  auto predict = [&](std::int64_t n) {
    const double ln = std::log(static_cast<double>(n));
    return gamma * static_cast<double>(n) * static_cast<double>(n) / std::pow(ln, 5.0);
  };
  AsymptoticComparison c;
  c.N = N;
  c.count = count_prime_5aps(N);
  c.prediction = predict(N);
  c.ratio = static_cast<double>(c.count) / c.prediction;
  c.ratio_2n = static_cast<double>(count_prime_5aps(2 * N)) / predict(2 * N);
  return c;
}

}  // namespace gowerslab::primes
