#include "gowerslab/equidist.hpp"

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "gowerslab/seqfn.hpp"

using namespace gowerslab;
using namespace gowerslab::equidist;

namespace {

std::complex<double> direct_weyl(const std::array<double, 4>& a, std::int64_t N) {
  long double re = 0, im = 0;
  for (std::int64_t n = 1; n <= N; ++n) {
    const long double x = static_cast<long double>(n);
    long double ph = a[0] + a[1] * x + a[2] * x * x + a[3] * x * x * x;
    ph -= std::floor(ph);
    re += std::cos(2.0L * 3.14159265358979323846264338327950288L * ph);
    im += std::sin(2.0L * 3.14159265358979323846264338327950288L * ph);
  }
  return {static_cast<double>(re / N), static_cast<double>(im / N)};
}

}  // namespace

TEST_CASE("weyl_sum: constants, alternating phase, Gauss value, geometric form") {
  CHECK(std::abs(weyl_sum({0, 0, 0, 0}, 50) - 1.0) < 1e-15);
  CHECK(std::abs(weyl_sum({0, 0.5, 0, 0}, 100)) < 1e-12);

  auto g = weyl_sum({0, 0, 0.25, 0}, 16);
  CHECK(g.real() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(g.imag() == doctest::Approx(0.5).epsilon(1e-12));

  std::mt19937_64 rng(0xabcdULL);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 5; ++t) {
    std::array<double, 4> a{u(rng), u(rng), u(rng), u(rng)};
    CHECK(std::abs(weyl_sum(a, 257) - direct_weyl(a, 257)) < 1e-10);
  }

  const double alpha = 0.123;
  const std::complex<double> z = e_cycles(alpha);
  std::complex<double> geo = z * (std::pow(z, 1000) - 1.0) / (z - 1.0) / 1000.0;
  CHECK(std::abs(weyl_sum({0, alpha, 0, 0}, 1000) - geo) < 1e-12);

  CHECK_THROWS_AS(weyl_sum({0, 0.1, 0, 0}, 0), std::invalid_argument);
}

TEST_CASE("equidist_test: irrational linear orbit passes at eps = 0.1") {
  auto orbit = linear_orbit({0.6180339887}, 10000);
  auto rep = equidist_test(orbit, 0.1, 10);
  CHECK(rep.equidistributed);
  CHECK(rep.witness.empty());
  CHECK(rep.magnitude == doctest::Approx(0.000443398647128).epsilon(1e-6));
}

TEST_CASE("equidist_test: rational orbit produces the additive-relation witness") {
  auto orbit = linear_orbit({1.0 / 3.0, 2.0 / 3.0}, 300);
  auto rep = equidist_test(orbit, 0.5, 3);
  REQUIRE_FALSE(rep.equidistributed);
  CHECK(rep.witness == std::vector<long>{1, 1});
  CHECK(rep.magnitude == doctest::Approx(1.0).epsilon(1e-12));

  // re-verify the witness by direct summation
  std::array<double, 4> c{};
  for (std::size_t i = 0; i < 2; ++i)
    for (int j = 0; j < 4; ++j) c[j] += static_cast<double>(rep.witness[i]) * orbit.gen[i][j];
  CHECK(std::abs(direct_weyl(c, orbit.N)) >= 0.5 - 1e-12);
}

TEST_CASE("equidist_test: shell then lexicographic witness order") {
  auto orbit = linear_orbit({0.5, 0.5}, 100);
  auto rep = equidist_test(orbit, 0.5, 3);
  REQUIRE_FALSE(rep.equidistributed);
  CHECK(rep.witness == std::vector<long>{1, -1});
}

TEST_CASE("equidist_test: empty basis is vacuously equidistributed") {
  TorusOrbit empty;
  empty.N = 10;
  auto rep = equidist_test(empty, 0.01, 5);
  CHECK(rep.equidistributed);
  CHECK(rep.magnitude == 0.0);
}

TEST_CASE("rational_approx: convergents and the Q cutoff") {
  auto r = rational_approx(3.0 / 7.0, 10);
  CHECK(r.a == 3);
  CHECK(r.q == 7);
  CHECK(r.err < 1e-12);

  r = rational_approx(3.0 / 7.0 + 1e-9, 10);
  CHECK(r.a == 3);
  CHECK(r.q == 7);
  CHECK(r.err == doctest::Approx(1e-9).epsilon(0.05));

  r = rational_approx(0.5, 1);
  CHECK(r.a == 0);
  CHECK(r.q == 1);
  CHECK(r.err == doctest::Approx(0.5).epsilon(1e-12));

  r = rational_approx(-3.0 / 7.0, 10);
  CHECK(r.a == -3);
  CHECK(r.q == 7);

  for (double alpha : {0.14159265358979, 0.318309886183791, 0.71828182845905, 0.777}) {
    for (long long Q : {10LL, 100LL, 1000LL}) {
      auto best = rational_approx(alpha, Q);
      CHECK(best.q <= Q);
      double achieved = dist_to_z(best.q * alpha);
      for (long long q = 1; q <= Q; ++q) CHECK(achieved <= dist_to_z(q * alpha) + 1e-12);
    }
  }

  CHECK_THROWS_AS(rational_approx(0.3, 0), std::invalid_argument);
}

TEST_CASE("integer_relation: witnesses, certificates, budget") {
  auto m = integer_relation({0.5, 1.0 / 3.0}, 3, 1e-9);
  REQUIRE(m.has_value());
  CHECK(*m == std::vector<long>{2, 0});

  CHECK_FALSE(integer_relation({0.1234567}, 5, 1e-6).has_value());

  m = integer_relation({0.7321, 0.0}, 2, 1e-9);
  REQUIRE(m.has_value());
  CHECK(*m == std::vector<long>{0, 1});

  m = integer_relation({0.5, 0.5}, 3, 1e-9);
  REQUIRE(m.has_value());
  CHECK(*m == std::vector<long>{1, -1});

  // returned relations really are relations
  m = integer_relation({0.25, 0.125}, 4, 1e-9);
  REQUIRE(m.has_value());
  double r = 0;
  for (std::size_t i = 0; i < 2; ++i) r += static_cast<double>((*m)[i]) * (i == 0 ? 0.25 : 0.125);
  CHECK(dist_to_z(r) <= 1e-9);

  CHECK_THROWS_AS(integer_relation(std::vector<double>(7, 0.1), 2, 1e-6), std::invalid_argument);
  CHECK_THROWS_AS(integer_relation({0.1}, 21, 1e-6), std::invalid_argument);
}

TEST_CASE("solve_bounded_rational: pivots, augmentation, inconsistency") {
  RationalMatrixSystem id3;
  id3.A = {{rational(1), rational(0), rational(0)},
           {rational(0), rational(1), rational(0)},
           {rational(0), rational(0), rational(1)}};
  id3.b = {rational(2, 3), rational(-5), rational(7, 4)};
  auto s = solve_bounded_rational(id3);
  REQUIRE(s.consistent);
  CHECK(s.x == id3.b);
  CHECK(s.bound == rational(5));

  RationalMatrixSystem wide;
  wide.A = {{rational(1), rational(1)}};
  wide.b = {rational(2)};
  s = solve_bounded_rational(wide);
  REQUIRE(s.consistent);
  CHECK(s.x == std::vector<Rational>{rational(2), rational(0)});
  CHECK(s.bound == rational(2));

  RationalMatrixSystem tall;
  tall.A = {{rational(1)}, {rational(1)}};
  tall.b = {rational(1), rational(2)};
  s = solve_bounded_rational(tall);
  CHECK_FALSE(s.consistent);
  CHECK(s.inconsistent_row == 1);

  // random consistent systems: exact zero residual
  std::mt19937_64 rng(0x50e1ULL);
  auto rnd_q = [&](int max_den) {
    std::uniform_int_distribution<int> den(1, max_den);
    const int d = den(rng);
    std::uniform_int_distribution<int> num(-3 * d, 3 * d);
    return rational(num(rng), d);
  };
  for (int t = 0; t < 20; ++t) {
    RationalMatrixSystem sys;
    sys.A.assign(3, std::vector<Rational>(5));
    for (auto& row : sys.A)
      for (auto& v : row) v = rnd_q(4);
    std::vector<Rational> x0(5);
    for (auto& v : x0) v = rnd_q(4);
    sys.b.assign(3, Rational(0));
    for (int i = 0; i < 3; ++i) {
      Rational acc(0);
      for (int j = 0; j < 5; ++j) acc += sys.A[i][j] * x0[j];
      sys.b[i] = acc;
    }
    auto sol = solve_bounded_rational(sys);
    REQUIRE(sol.consistent);
    for (int i = 0; i < 3; ++i) {
      Rational acc(0);
      for (int j = 0; j < 5; ++j) acc += sys.A[i][j] * sol.x[j];
      CHECK(acc == sys.b[i]);
    }
  }

  RationalMatrixSystem bad;
  bad.A = {{rational(7, 2)}};
  bad.b = {rational(1)};
  bad.M = 5;
  CHECK_THROWS_AS(solve_bounded_rational(bad), std::invalid_argument);
  bad.M = 7;
  CHECK_NOTHROW(solve_bounded_rational(bad));

  RationalMatrixSystem ragged;
  ragged.A = {{rational(1), rational(2)}, {rational(1)}};
  ragged.b = {rational(1), rational(1)};
  CHECK_THROWS_AS(solve_bounded_rational(ragged), std::invalid_argument);
}
