#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

// Cross-module verification harness.  Each check runs a concrete instance of
// one of the library's quantitative claims, measures the relevant quantities,
// and returns a self-contained report: the parameters used, the measured
// values, a pass/fail verdict with its margin, and the exact CLI invocation
// that reproduces the run.  Every check here is deterministic; the seed is
// echoed into the report so invocations remain replayable verbatim.

namespace gowerslab::verify {

struct VerificationReport {
  std::string claim;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::pair<std::string, double>> measured;
  bool pass = false;
  double margin = 0.0;    // signed distance past the acceptance floor
  std::string note;       // branch taken / precondition detail, "" when clean
  std::string reproduce;  // CLI line replaying this exact check
};

// Lower-bound persistence of U^{s+1}[N] along a grid of N values for a fixed
// generated sequence: linear phase (s=1), quadratic phase (s=2), or the
// 3-step bracket orbit read through its top vertical character (s=3).
// Passes when the minimum over the grid stays >= 0.9x the smallest-N value.
struct NilseqSpec {
  std::string family;  // "linear" | "quadratic" | "bracket312"
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

VerificationReport check_necessity(int s, const NilseqSpec& spec,
                                   const std::vector<std::int64_t>& N_grid,
                                   std::uint64_t seed = 0);

// L1 approximation of bracket exponentials by smooth models.
//   item 3: e(alpha {beta n}) vs a Lipschitz interpolation across the wrap
//           window ||x|| <= eps/10 -- valid when (beta n) is eps/10-
//           equidistributed; otherwise the detected rational structure of
//           beta is reported instead.
//   item 4: e({alpha n}{beta n}) vs a truncated Fourier series of a smooth
//           doubly-periodic extension of e(xy); unconditional.
//   item 5: e(alpha n floor(beta n)) with |beta| <= M/N: exact decomposition
//           into subintervals where the floor is constant.
struct L1Params {
  std::int64_t N = 4096;
  double alpha = 0.0;
  double beta = 0.0;
  double M = 10.0;  // case-v width bound: |beta| <= M/N
};

VerificationReport check_l1_approx(int item, const L1Params& p, double eps,
                                   std::uint64_t seed = 0);

// End-to-end derivative-correlation count plus exhibition: builds f and the
// model family chi_h = Delta_h f on [N], counts correlated additive
// quadruples, and for the first few passing quadruples exhibits a quadratic
// phase e(a n^2 / N^2 + b n / N) correlating with the quadruple product by
// exhaustive grid search.  Passes when the count reaches
// eta^8 delta^4 N^3 / 2 at the *claimed* delta and every sampled exhibition
// correlation reaches 0.25.
struct PhaseFamily {
  std::string kind;  // "pure-quadratic" | "empty"
  double alpha = 0.0;
  double beta = 0.0;
  std::int64_t H_size = 0;  // H = [1, H_size]
};

VerificationReport run_gowers_pipeline(std::int64_t N, const PhaseFamily& fam, double delta,
                                       std::uint64_t seed = 0);

}  // namespace gowerslab::verify
