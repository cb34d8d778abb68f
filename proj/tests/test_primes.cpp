#include "gowerslab/primes.hpp"

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace gowerslab::primes;

namespace {

bool trial_division_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// independent census: p1 over primes, d over all integers
std::int64_t brute_5aps(std::int64_t N) {
  auto t = sieve(N);
  std::int64_t cnt = 0;
  for (std::int64_t p1 : t.primes)
    for (std::int64_t d = 1; p1 + 4 * d <= N; ++d) {
      bool ok = true;
      for (int j = 1; j <= 4 && ok; ++j) ok = t.is_prime[static_cast<std::size_t>(p1 + j * d)];
      if (ok) ++cnt;
    }
  return cnt;
}

}  // namespace

TEST_CASE("sieve: known prime counts and trial-division spot check") {
  auto t10 = sieve(10);
  CHECK(t10.primes == std::vector<std::int64_t>{2, 3, 5, 7});
  CHECK(sieve(100).primes.size() == 25);
  CHECK(sieve(10'000).primes.size() == 1229);
  CHECK(sieve(100'000).primes.size() == 9592);

  auto t = sieve(10'000);
  for (std::int64_t n = 1; n <= 10'000; ++n)
    REQUIRE(t.is_prime[static_cast<std::size_t>(n)] == trial_division_prime(n));

  CHECK(sieve(1).primes.empty());
  CHECK_THROWS_AS(sieve(0), std::invalid_argument);
  CHECK_THROWS_AS(sieve(200'000'000), std::length_error);
}

TEST_CASE("hl_gamma: exact small truncations and high-precision values") {
  auto g5 = hl_gamma(5);
  CHECK(static_cast<double>(g5.value) == 0.823974609375);  // 3375/4096, dyadic
  auto g7 = hl_gamma(7);
  CHECK(static_cast<double>(g7.value) == 0.6542205810546875);  // 42875/65536

  auto g1k = hl_gamma(1000);
  CHECK(std::abs(static_cast<double>(g1k.value) - 0.51929382734604412) < 1e-15);
  auto g1e5 = hl_gamma(100'000);
  CHECK(std::abs(static_cast<double>(g1e5.value) - 0.51890010566440164) < 1e-15);
  auto g1e6 = hl_gamma(1'000'000);
  CHECK(std::abs(static_cast<double>(g1e6.value) - 0.51889781891694767) < 1e-15);

  // strictly decreasing, and each later truncation stays within the tail bound
  std::vector<GammaEstimate> chain{g5, g7, g1k, g1e5, g1e6};
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    CHECK(chain[i + 1].value < chain[i].value);
    for (std::size_t j = i + 1; j < chain.size(); ++j) {
      CHECK(chain[j].value >= chain[i].value - chain[i].tail_bound);
      CHECK(chain[j].value <= chain[i].value);
    }
  }
  CHECK(g1e5.tail_bound > std::abs(static_cast<double>(g1e5.value - g1e6.value)));
  CHECK(g1e5.tail_bound < 1e-4);

  CHECK_THROWS_AS(hl_gamma(4), std::invalid_argument);
}

TEST_CASE("count_prime_5aps: first quintuple, frozen census, brute-force agreement") {
  CHECK(count_prime_5aps(28) == 0);
  CHECK(count_prime_5aps(29) == 1);  // 5, 11, 17, 23, 29
  CHECK(count_prime_5aps(1000) == 58);
  CHECK(count_prime_5aps(10'000) == 1283);
  CHECK(count_prime_5aps(100'000) == 39'866);

  for (std::int64_t N : {29, 100, 541, 2000, 10'000}) CHECK(count_prime_5aps(N) == brute_5aps(N));

  // monotone in N
  std::int64_t prev = 0;
  for (std::int64_t N = 25; N <= 250; N += 25) {
    auto c = count_prime_5aps(N);
    CHECK(c >= prev);
    prev = c;
  }

  CHECK_THROWS_AS(count_prime_5aps(2'000'000), std::length_error);
  CHECK_THROWS_AS(count_prime_5aps(0), std::invalid_argument);
}

TEST_CASE("compare_asymptotic: census against the predicted density") {
  auto c = compare_asymptotic(100'000);
  CHECK(c.count == 39'866);
  const double gamma = static_cast<double>(hl_gamma(100'000).value);
  const double pred = gamma * 1e10 / std::pow(std::log(1e5), 5.0);
  CHECK(c.prediction == doctest::Approx(pred).epsilon(1e-12));
  CHECK(c.prediction > 0.0);
  CHECK(c.ratio == doctest::Approx(39866.0 / pred).epsilon(1e-12));
  CHECK(c.ratio > 0.3);
  CHECK(c.ratio < 3.0);
  CHECK(c.ratio_2n > 0.3);
  CHECK(c.ratio_2n < 3.0);
  CHECK(c.ratio_2n < c.ratio);  // drift toward the asymptote at this scale

  auto small = compare_asymptotic(1000);
  CHECK(small.count == 58);
  CHECK(small.prediction > 0.0);
  CHECK(small.ratio == doctest::Approx(58.0 / small.prediction).epsilon(1e-12));

  CHECK_THROWS_AS(compare_asymptotic(999), std::invalid_argument);
  CHECK_THROWS_AS(compare_asymptotic(600'000), std::length_error);
}
