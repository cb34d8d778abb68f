#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "gowerslab/seqfn.hpp"

namespace gowerslab::bohr {

// B(S, rho, N) = { n in [rho*N] : ||n*theta_j|| <= rho for every theta_j in S },
// a subset of the positive integers (not of Z/NZ). Frequencies are in cycles.
// Membership comparisons carry a 1e-9 guard so that last-ulp rounding of
// n*theta never flips a point that is exactly on the boundary.
struct BohrSet {
  std::vector<double> S;
  double rho = 0.0;
  std::int64_t N = 0;
  std::vector<std::int64_t> members;  // ascending

  int d() const { return static_cast<int>(S.size()); }
};

// Exact enumeration in O(|S| * N). Requires 0 < rho < 1.
BohrSet build_bohr(const std::vector<double>& S, double rho, std::int64_t N);

// |B(S, rho, N)| without materializing the member list. Accepts any rho >= 0
// (radii above 1 arise when probing (1+kappa)*rho during regularity checks).
std::int64_t bohr_size(const std::vector<double>& S, double rho, std::int64_t N);

// Outcome of a regular-radius scan. `rho` is the smallest passing candidate,
// or the best-scoring one when nothing passed; `score` is its worst
// |ratio - 1| / (d * |kappa|) over the kappa grid (pass means score <= C_reg).
struct RegularSearch {
  bool found = false;
  double rho = 0.0;
  double score = 0.0;
  std::vector<double> rejected;  // candidates whose score exceeded C_reg
};

// Scans 64 log-spaced radii in [rho0, 2*rho0] for one at which the size of
// B(S, (1+kappa)*rho, N) stays within a factor 1 + C_reg * d * |kappa| of
// |B(S, rho, N)| for every kappa on the grid. An empty grid selects the
// default {+-1/d, +-1/(2d), +-1/(4d), +-1/(8d)}; d counts at least the
// interval constraint, so S = {} uses d = 1. Candidates are scored in
// parallel and the smallest passing radius wins. Requires rho0 in (0, 1/2).
RegularSearch find_regular(const std::vector<double>& S, double rho0, std::int64_t N,
                           double C_reg = 100.0, const std::vector<double>& grid = {});

// Smooth/rough splitting of the cutoff 1_B. psi1 averages 1_B over forward
// shifts drawn from the narrower set B' = B(S, rho', N):
//
//   psi1(n) = (1/|B'|) * #{ b' in B' : n + b' in B },
//
// so that psi1 = 1_B away from the annulus B(S, rho+rho', N) \ B(S, rho-rho', N)
// (exactly, for n >= 1: inside B(S, rho-rho', N) every shift stays in B, and
// outside B(S, rho+rho', N) every shift misses). rho' is halved from rho/2
// until the rough part psi2 = 1_B - psi1 satisfies sum |psi2| <= eps * N,
// the sum running over the full support, not just [N].
struct CutoffDecomposition {
  SeqFn psi1;  // interval [N]
  SeqFn psi2;  // interval [N]; psi1 + psi2 = 1_B pointwise on [N]
  double rho_prime = 0.0;
  double psi2_mass = 0.0;        // sum over all n of |psi2(n)|
  double l1_fourier_mass = 0.0;  // (1/M) sum over the size-M DFT grid of |psi1-hat|
};

// Requires a nonempty B and eps in (0, 1]; throws std::runtime_error when no
// rho' in the halving scan achieves the psi2 mass bound. The reported
// l1_fourier_mass uses a grid of size M = 4N and is at most
// sqrt(|B| / |B'|) by Cauchy-Schwarz and Parseval on that grid.
CutoffDecomposition cutoff_decomposition(const BohrSet& B, double eps);

// Given phi : members(B) -> R/Z (cycles) with phi(x+y) = phi(x) + phi(y)
// whenever x, y, x+y all lie in B, and |E_{x in B} e(phi(x))| >= eta,
// searches for a regular rho' <= rho with ||phi(x)|| <= eps for every
// x in B(S, rho', N). Tries rho itself first, then regular values found
// near rho/2, rho/4, ... Returns nullopt when the scan exhausts without a
// nonempty passing set. Local linearity is checked on sampled (exhaustive
// when feasible) pairs; a violation throws with the offending pair, as does
// a measured correlation below eta.
std::optional<double> locally_linear_shrink(const BohrSet& B,
                                            const std::map<std::int64_t, double>& phi,
                                            double eta, double eps);

}  // namespace gowerslab::bohr
