#include "gowerslab/bohr.hpp"

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

using namespace gowerslab;
using namespace gowerslab::bohr;

namespace {

// second opinion on membership, written against the definition rather than
// the library helpers (long-double norm, integer-scaled range check)
std::vector<std::int64_t> brute_members(const std::vector<double>& S, double rho,
                                        std::int64_t N) {
  std::vector<std::int64_t> out;
  for (std::int64_t n = 1; n <= N; ++n) {
    if (static_cast<double>(n) > rho * static_cast<double>(N) + 1e-9) break;
    bool ok = true;
    for (double th : S) {
      long double f = static_cast<long double>(n) * static_cast<long double>(th);
      f -= std::floor(f);
      long double dist = f < 0.5L ? f : 1.0L - f;
      if (static_cast<double>(dist) > rho + 1e-9) { ok = false; break; }
    }
    if (ok) out.push_back(n);
  }
  return out;
}

double certificate_score(const std::vector<double>& S, double rho, std::int64_t N,
                         int finest_shell) {
  const int d = S.empty() ? 1 : static_cast<int>(S.size());
  const double base = static_cast<double>(bohr_size(S, rho, N));
  double worst = 0.0;
  for (int j = 0; j <= finest_shell; ++j) {
    const double k = 1.0 / (d * (1 << j));
    for (double kk : {k, -k})
      worst = std::max(worst, std::abs(static_cast<double>(bohr_size(S, (1.0 + kk) * rho, N)) /
                                           base - 1.0) / (d * std::abs(kk)));
  }
  return worst;
}

}  // namespace

TEST_CASE("build_bohr: no-frequency and half-frequency sets") {
  auto B = build_bohr({}, 0.3, 100);
  REQUIRE(B.members.size() == 30);
  for (std::int64_t n = 1; n <= 30; ++n) CHECK(B.members[static_cast<std::size_t>(n - 1)] == n);

  B = build_bohr({0.5}, 0.3, 100);
  CHECK(B.members.size() == 15);
  for (std::int64_t m : B.members) {
    CHECK(m % 2 == 0);
    CHECK(m <= 30);
  }

  B = build_bohr({}, 1.0 - 1e-13, 300);
  CHECK(B.members.size() == 300);

  CHECK_THROWS_AS(build_bohr({}, 0.0, 100), std::invalid_argument);
  CHECK_THROWS_AS(build_bohr({}, 1.0, 100), std::invalid_argument);
  CHECK_THROWS_AS(build_bohr({}, -0.5, 100), std::invalid_argument);
  CHECK_THROWS_AS(build_bohr({}, 0.3, 0), std::invalid_argument);
}

TEST_CASE("build_bohr: agrees with an independent enumerator") {
  const std::vector<double> S{0.41421356, 0.7182818};
  auto B = build_bohr(S, 0.17, 2000);
  CHECK(B.members == brute_members(S, 0.17, 2000));
  CHECK(B.members.size() == 39);
  CHECK(B.members.back() == 326);
  std::int64_t sum = 0;
  for (std::int64_t m : B.members) sum += m;
  CHECK(sum == 6649);

  CHECK(bohr_size(S, 0.17, 2000) == 39);
  CHECK(bohr_size(S, 0.0, 2000) == 0);

  auto C = build_bohr({0.123, 0.456, 0.789}, 0.21, 500);
  CHECK(C.members == brute_members(C.S, 0.21, 500));
}

TEST_CASE("find_regular: generic frequency passes at the first radius") {
  auto r = find_regular({0.41421356}, 0.05, 10000);
  REQUIRE(r.found);
  CHECK(r.rho == 0.05);
  CHECK(r.score == doctest::Approx(2.98).epsilon(1e-12));
  CHECK(r.rejected.empty());
  // stability: the certificate survives a much finer kappa grid
  CHECK(certificate_score({0.41421356}, r.rho, 10000, 6) <= 100.0);

  auto r2 = find_regular({0.41421356, 0.7182818}, 0.1, 2000);
  REQUIRE(r2.found);
  CHECK(r2.rho == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(r2.score == doctest::Approx(3.5).epsilon(1e-12));
  CHECK(certificate_score({0.41421356, 0.7182818}, r2.rho, 2000, 6) <= 100.0);
}

TEST_CASE("find_regular: size jumps near 1/q are reported as rejections") {
  auto r = find_regular({0.2}, 0.15, 200, 3.001);
  REQUIRE(r.found);
  CHECK(r.rho == doctest::Approx(0.2355047488615099).epsilon(1e-14));
  CHECK(r.score == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(r.rejected.size() == 57);
  CHECK(r.rejected.back() == doctest::Approx(0.29671739044082196).epsilon(1e-14));
  // rejected radii cluster where (1 +- kappa) * rho straddles 1/5
  for (double rej : r.rejected) CHECK(rej >= 0.15);
  CHECK(certificate_score({0.2}, r.rho, 200, 6) <= 3.001);
}

TEST_CASE("find_regular: impossible constant reports the best candidate") {
  auto r = find_regular({}, 0.1, 1000, 0.05);
  CHECK_FALSE(r.found);
  CHECK(r.rejected.size() == 64);
  CHECK(r.score == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.rho == doctest::Approx(0.1044992120082523).epsilon(1e-14));

  CHECK_THROWS_AS(find_regular({}, 0.6, 100), std::invalid_argument);
  CHECK_THROWS_AS(find_regular({}, 0.0, 100), std::invalid_argument);
}

TEST_CASE("cutoff_decomposition: half-frequency set") {
  auto B = build_bohr({0.5}, 0.30000012345, 400);
  REQUIRE(B.members.size() == 60);
  auto c = cutoff_decomposition(B, 0.1);

  CHECK(c.rho_prime == B.rho / 2.0);
  CHECK(c.psi2_mass == doctest::Approx(31.0).epsilon(1e-12));
  CHECK(c.psi2_mass <= 0.1 * 400);
  CHECK(c.l1_fourier_mass == doctest::Approx(1.27348563684).epsilon(1e-9));

  const double nBp = static_cast<double>(bohr_size(B.S, c.rho_prime, B.N));
  CHECK(nBp == 30.0);
  CHECK(c.l1_fourier_mass <= std::sqrt(60.0 / nBp) + 1e-9);

  std::set<std::int64_t> inB(B.members.begin(), B.members.end());
  auto inner = build_bohr(B.S, B.rho - c.rho_prime, B.N);
  auto outer = build_bohr(B.S, B.rho + c.rho_prime, B.N);
  std::set<std::int64_t> in_inner(inner.members.begin(), inner.members.end());
  std::set<std::int64_t> in_outer(outer.members.begin(), outer.members.end());
  for (std::int64_t n = 1; n <= B.N; ++n) {
    const double p1 = c.psi1.values[static_cast<std::size_t>(n - 1)].real();
    const double p2 = c.psi2.values[static_cast<std::size_t>(n - 1)].real();
    const double ind = inB.count(n) ? 1.0 : 0.0;
    CHECK(p1 + p2 == ind);  // exact splitting
    CHECK(p1 >= 0.0);
    CHECK(p1 <= 1.0);
    const bool in_annulus = in_outer.count(n) && !in_inner.count(n);
    if (!in_annulus) CHECK(p1 == ind);  // plateau/vanishing away from the boundary
  }
}

TEST_CASE("cutoff_decomposition: full interval and degenerate eps") {
  auto B = build_bohr({}, 0.9999999999, 300);
  REQUIRE(B.members.size() == 299);
  auto c = cutoff_decomposition(B, 0.26);
  CHECK(c.rho_prime == B.rho / 4.0);
  CHECK(c.psi2_mass == doctest::Approx(75.0).epsilon(1e-9));
  CHECK(c.l1_fourier_mass == doctest::Approx(1.52974308307).epsilon(1e-9));

  // eps = 1 is allowed and still produces the averaged form, not a trivial split
  auto d = cutoff_decomposition(B, 1.0);
  CHECK(d.rho_prime == B.rho / 2.0);
  CHECK(d.psi1.values[10].real() == 1.0);
  CHECK(d.psi2_mass > 0.0);

  CHECK_THROWS_AS(cutoff_decomposition(B, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(cutoff_decomposition(B, 1.5), std::invalid_argument);

  auto empty = build_bohr({0.5}, 0.2, 4);
  REQUIRE(empty.members.empty());
  CHECK_THROWS_AS(cutoff_decomposition(empty, 0.5), std::invalid_argument);

  // eps far below the edge effects of the narrowest usable shift set
  auto thin = build_bohr({}, 0.5, 100);
  CHECK_THROWS_AS(cutoff_decomposition(thin, 0.01), std::runtime_error);
}

TEST_CASE("locally_linear_shrink: zero and tiny phases keep the full radius") {
  auto B = build_bohr({0.41421356}, 0.05, 10000);
  REQUIRE_FALSE(B.members.empty());
  std::map<std::int64_t, double> zero, tiny;
  for (std::int64_t m : B.members) {
    zero[m] = 0.0;
    tiny[m] = std::fmod(1e-6 * static_cast<double>(m), 1.0);
  }
  auto rp = locally_linear_shrink(B, zero, 0.9, 0.05);
  REQUIRE(rp.has_value());
  CHECK(*rp == B.rho);

  rp = locally_linear_shrink(B, tiny, 0.5, 1e-3);
  REQUIRE(rp.has_value());
  CHECK(*rp == B.rho);
}

TEST_CASE("locally_linear_shrink: a growing linear phase forces a real shrink") {
  auto B = build_bohr({0.41421356}, 0.05, 10000);
  const double slope = 5e-5;
  std::map<std::int64_t, double> phi;
  for (std::int64_t m : B.members) phi[m] = std::fmod(slope * static_cast<double>(m), 1.0);

  auto rp = locally_linear_shrink(B, phi, 0.1, 0.01);
  REQUIRE(rp.has_value());
  CHECK(*rp < B.rho);
  auto shrunk = build_bohr(B.S, *rp, B.N);
  REQUIRE_FALSE(shrunk.members.empty());
  for (std::int64_t m : shrunk.members) CHECK(dist_to_z(slope * static_cast<double>(m)) <= 0.01 + 1e-12);

  // the half-frequency set from the decomposition example: x/2 vanishes on even members
  auto E = build_bohr({0.5}, 0.30000012345, 400);
  std::map<std::int64_t, double> half;
  for (std::int64_t m : E.members) half[m] = std::fmod(0.5 * static_cast<double>(m), 1.0);
  rp = locally_linear_shrink(E, half, 0.9, 0.05);
  REQUIRE(rp.has_value());
  CHECK(*rp == E.rho);
}

TEST_CASE("locally_linear_shrink: violations, weak correlation, exhaustion") {
  auto B = build_bohr({}, 0.3, 100);
  std::map<std::int64_t, double> phi;
  for (std::int64_t m : B.members) phi[m] = std::fmod(0.01 * static_cast<double>(m), 1.0);

  auto broken = phi;
  broken[7] += 0.3;
  CHECK_THROWS_AS(locally_linear_shrink(B, broken, 0.0, 0.5), std::invalid_argument);

  CHECK_THROWS_AS(locally_linear_shrink(B, phi, 0.999, 0.5), std::invalid_argument);

  auto missing = phi;
  missing.erase(11);
  CHECK_THROWS_AS(locally_linear_shrink(B, missing, 0.0, 0.5), std::invalid_argument);

  // phi(1) = 1/4 survives every shrink: the scan must exhaust
  auto small = build_bohr({}, 0.8, 10);
  std::map<std::int64_t, double> quarter;
  for (std::int64_t m : small.members) quarter[m] = std::fmod(0.25 * static_cast<double>(m), 1.0);
  CHECK_FALSE(locally_linear_shrink(small, quarter, 0.0, 0.1).has_value());
}
