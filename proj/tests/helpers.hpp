#pragma once

#include <cmath>
#include <cstdint>

#include "gowerslab/seqfn.hpp"

// Deterministic "generic" 1-bounded function used across the tests: amplitude
// and phase driven by irrational rotations. The reference values frozen in the
// tests were produced by tools/oracles/*.py from the same formula.
inline gowerslab::cplx test_fn_value(std::int64_t n, int j) {
  const double A = 0.41421356237309515;
  const double B = 0.7320508075688772;
  const double C = 0.14285714285714285;
  const double AMP = 0.7548776662466927;
  const double nn = static_cast<double>(n + 3 * j);
  auto frac = [](double x) { return x - std::floor(x); };
  const double amp = 0.5 + 0.5 * std::sin(gowerslab::kTwoPi * frac(nn * AMP));
  const double ph = frac(A * nn * nn * nn + B * nn * nn + C * nn);
  return amp * gowerslab::e_cycles(ph);
}

inline gowerslab::SeqFn test_fn_cyclic(std::int64_t M, int j) {
  gowerslab::SeqFn f = gowerslab::SeqFn::cyclic(M);
  for (std::int64_t x = 0; x < M; ++x) f.values[static_cast<std::size_t>(x)] = test_fn_value(x, j);
  return f;
}

inline gowerslab::SeqFn test_fn_interval(std::int64_t N, int j) {
  gowerslab::SeqFn f = gowerslab::SeqFn::interval(N);
  for (std::int64_t n = 1; n <= N; ++n) f.values[static_cast<std::size_t>(n - 1)] = test_fn_value(n, j);
  return f;
}

// distance on the circle R/Z
inline double circle_dist(double a, double b) {
  double d = std::fabs(a - b);
  d -= std::floor(d);
  return std::min(d, 1.0 - d);
}
