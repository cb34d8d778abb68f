#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gowerslab/seqfn.hpp"

namespace gowerslab::gowers {

enum class Method { direct, recursion, fft };

const char* method_name(Method m);

struct GowersResult {
  double norm_value = 0;   // the U^k norm
  double power_value = 0;  // norm_value^(2^k), the defining average
  int k = 0;
  Method method = Method::recursion;
  std::string domain;
};

// U^k norm on Z_M. direct = literal nested-derivative average (O(M^{k+1}),
// size-capped); recursion = E_h ||Delta_h f||^{2^{k-1}} with an
// autocorrelation/DFT base case; fft = the U^2 spectral identity (k=2 only).
GowersResult gowers_norm_group(const SeqFn& f, int k, Method method = Method::recursion);

// U^k[N] norm: embed into Z_Mtilde (default 2^k N), divide by the norm of the
// interval indicator. The result does not depend on the admissible Mtilde.
GowersResult gowers_norm_interval(const SeqFn& f, int k, std::optional<std::int64_t> M_tilde = {});

// Gowers inner product of 2^k functions on a common Z_M. fs[omega] with bit i
// of omega selecting shift h_{i+1}; entries with odd popcount are conjugated.
// With all entries equal to f this is ||f||_{U^k}^{2^k}.
std::complex<double> gowers_inner_product(const std::vector<SeqFn>& fs, int k);

struct ShiftSet {
  std::vector<std::int64_t> H;  // sorted subset of [1, N]
  std::int64_t N = 0;
  double eta() const { return N ? static_cast<double>(H.size()) / static_cast<double>(N) : 0.0; }
};

struct QuadrupleReport {
  std::int64_t count = 0;                // quadruples clearing the correlation threshold
  std::int64_t additive_quadruples = 0;  // all h1+h2=h3+h4 in H^4
  double threshold_used = 0;             // c * eta^4 * delta^2
  double eta = 0;
  double delta = 0;  // hypothesis level (given, or measured minimum)
  double bound = 0;  // eta^8 delta^4 N^3 / 2
  std::int64_t Nprime = 0;
};

// Counts ordered quadruples h1+h2=h3+h4 in H^4 whose quadruple correlation
//   E_{n in Z_N'} chi_{h1}(n) chi_{h2}(n+h1-h4) conj(chi_{h3}(n) chi_{h4}(n+h1-h4))
// (all sequences zero-extended from [N]) reaches c * eta^4 * delta^2.
// First verifies |E_n Delta_h f(n) conj(chi_h(n))| >= delta for every h in H;
// pass nullopt to take delta as the measured minimum. N' defaults to 2N+1.
QuadrupleReport count_correlated_quadruples(const SeqFn& f, const ShiftSet& H,
                                            const std::map<std::int64_t, SeqFn>& chi,
                                            std::optional<double> delta, double c = 0.01,
                                            std::optional<std::int64_t> Nprime = {});

}  // namespace gowerslab::gowers
