#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "gowerslab/scalar.hpp"

// Abelian equidistribution diagnostics and exact rational linear algebra:
// Weyl sums of polynomial phases, eps-equidistribution testing on torus
// orbits with explicit frequency witnesses, best rational approximation via
// continued fractions, exhaustive bounded integer-relation search (whose
// "none" answer certifies dissociativity at the given box and tolerance),
// and bounded-solution solving for rational linear systems.
//
// Thresholds are explicit caller parameters throughout; nothing hides an
// unnamed constant.

namespace gowerslab::equidist {

// orbit n -> (phi_1(n), ..., phi_d(n)) mod 1, each phi a polynomial phase in
// cycles with coefficients (a0, a1, a2, a3), sampled at n = 1..N
struct TorusOrbit {
  std::vector<std::array<double, 4>> gen;
  std::int64_t N = 0;
  int d() const { return static_cast<int>(gen.size()); }
};

TorusOrbit linear_orbit(const std::vector<double>& alphas, std::int64_t N);

// E_{n in [N]} e(a3 n^3 + a2 n^2 + a1 n + a0), phases in cycles
std::complex<double> weyl_sum(const std::array<double, 4>& alpha, std::int64_t N);

// Scans nonzero frequency vectors m with |m_i| <= M_freq (canonicalized so
// the first nonzero entry is positive; m and -m give conjugate sums) in
// max-norm shells, lexicographically within a shell, and returns the first m
// with |E_n e(m . orbit(n))| >= eps. magnitude is that modulus; when
// equidistributed it is the largest modulus seen over the whole box.
struct EquidistReport {
  bool equidistributed = true;
  std::vector<long> witness;
  double magnitude = 0.0;
};
EquidistReport equidist_test(const TorusOrbit& orbit, double eps, int M_freq);

// best continued-fraction convergent a/q with q <= Q: minimizes |q' alpha|
// over 1 <= q' <= Q (distance to the nearest integer), gcd(a, q) = 1
struct RationalApprox {
  long long a = 0;
  long long q = 1;
  double err = 0.0;  // |alpha - a/q|
};
RationalApprox rational_approx(double alpha, long long Q);

// Exhaustive search for nonzero m, |m_i| <= M, with ||m_1 a_1 + ... + m_d a_d||
// over R/Z at most tol; same shell/lex order and canonicalization as
// equidist_test. nullopt certifies there is no such relation in the box.
// Throws std::invalid_argument beyond d = 6 or M = 20 (enumeration budget).
std::optional<std::vector<long>> integer_relation(const std::vector<double>& alphas, int M, double tol);

// A x = b over the rationals. complexity of an entry p/q is max(|p|, |q|);
// when M > 0 every entry of A and b must have complexity <= M.
struct RationalMatrixSystem {
  std::vector<std::vector<Rational>> A;  // m rows, n cols
  std::vector<Rational> b;
  long M = 0;
};

// Row reduction with free variables pinned to zero (equivalently: augment the
// pivot columns with unit vectors to a nonsingular square matrix and invert).
// bound is max |x_i|. Inconsistency reports the offending eliminated row.
struct BoundedSolution {
  bool consistent = true;
  std::vector<Rational> x;
  Rational bound;
  int inconsistent_row = -1;
};
BoundedSolution solve_bounded_rational(const RationalMatrixSystem& sys);

}  // namespace gowerslab::equidist
