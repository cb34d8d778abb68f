#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace gowerslab {

// Exact rationals back the "rational mode" of every identity oracle: floor and
// fractional part are discontinuous, so float tests near break points are
// meaningless and the contracts demand exact equality.
using Rational = mpq_class;

inline Rational rational(long p, long q = 1) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline Rational sfloor(const Rational& x) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return Rational(q);
}

inline Rational sfrac(const Rational& x) { return x - sfloor(x); }

// mod 1, result in [0,1)
inline Rational smod1(const Rational& x) { return sfrac(x); }

inline bool is_integer(const Rational& x) { return mpz_cmp_ui(x.get_den_mpz_t(), 1) == 0; }

inline double to_double(const Rational& x) { return x.get_d(); }

inline double sfloor(double x) { return std::floor(x); }

inline double sfrac(double x) {
  double f = x - std::floor(x);
  if (f >= 1.0) f = 0.0;  // guard against rounding up at the seam
  if (f < 0.0) f = 0.0;
  return f;
}

inline double smod1(double x) { return sfrac(x); }

inline double to_double(double x) { return x; }

// distance to the nearest integer
inline double dist_to_z(double x) {
  double f = sfrac(x);
  return std::min(f, 1.0 - f);
}

inline Rational dist_to_z(const Rational& x) {
  Rational f = sfrac(x);
  Rational g = 1 - f;
  return f < g ? f : g;
}

inline std::string to_pq_string(const Rational& x) { return x.get_str(); }

// accepts "p/q", plain integers, and decimal literals like "-0.25"
inline Rational rational_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto dot = s.find('.');
  if (dot == std::string::npos) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    return r;
  }
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  std::size_t frac_len = s.size() - dot - 1;
  Rational num;
  if (num.set_str(digits, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  Rational den(1);
  for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
  Rational r = num / den;
  r.canonicalize();
  return r;
}

}  // namespace gowerslab
