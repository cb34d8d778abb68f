#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "gowerslab/scalar.hpp"

namespace gowerslab {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 6.28318530717958647692528676655900577;

// e(c) = exp(2*pi*i*c), c in cycles
inline cplx e_cycles(double c) { return {std::cos(kTwoPi * c), std::sin(kTwoPi * c)}; }
inline cplx e_cycles(const Rational& c) { return e_cycles(to_double(sfrac(c))); }

// 1-bounded complex function on [N] (1-based) or on Z_M (0-based).
struct SeqFn {
  enum class Dom { Interval, Cyclic };

  Dom dom = Dom::Interval;
  std::int64_t len = 0;  // N or M
  std::vector<cplx> values;  // interval: values[i] = f(i+1); cyclic: values[x] = f(x)

  static SeqFn interval(std::int64_t N);
  static SeqFn cyclic(std::int64_t M);

  bool is_interval() const { return dom == Dom::Interval; }
  std::int64_t size() const { return len; }

  // throws std::invalid_argument when |values[x]| > 1 + slack or length mismatches
  void check_one_bounded(double slack = 1e-12) const;
};

// Zero-pad f : [N] -> C into Z_Mtilde, support on residues 1..N.
// Default Mtilde = 2^k * N; smaller values are rejected.
SeqFn embed_interval(const SeqFn& f, int k, std::optional<std::int64_t> M_tilde = {});

// Delta_h f(x) = f(x+h) * conj(f(x)) on a cyclic domain.
SeqFn mult_derivative(const SeqFn& f, std::int64_t h);

// Build from a phase generator returning cycles; n is the domain point
// (1..N for intervals, 0..M-1 for cyclic).
SeqFn phase_seq(SeqFn::Dom dom, std::int64_t len, const std::function<double(std::int64_t)>& phase_cycles);

// phases of a_0 + a_1 n + ... + a_d n^d (cycles, d <= 3) at n = start, ..., start+count-1,
// each reduced to [0,1). Evaluated by exact-rational difference stepping so that
// large n never loses the fractional part.
std::vector<double> poly_phases(const std::vector<Rational>& coeffs, std::int64_t start, std::int64_t count);
std::vector<double> poly_phases(const std::vector<double>& coeffs, std::int64_t start, std::int64_t count);

SeqFn purepoly_seq(SeqFn::Dom dom, std::int64_t len, const std::vector<Rational>& coeffs);

// CSV with header index,re,im; index 1-based for intervals, 0-based for cyclic.
void save_csv(const SeqFn& f, std::ostream& out);
SeqFn load_csv(std::istream& in);

}  // namespace gowerslab
