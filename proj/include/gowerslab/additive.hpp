#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "gowerslab/scalar.hpp"

namespace gowerslab::additive {

// Subset of {0, ..., N} with its density relative to N.
struct IntSet {
  std::int64_t N = 0;
  std::vector<std::int64_t> elems;  // ascending, distinct
  double alpha = 0.0;               // |elems| / N
};

// Validates 0 <= e <= N, sorts, deduplicates.
IntSet make_intset(std::int64_t N, std::vector<std::int64_t> elems);

// Subset of a square box of integer pairs. Fresh sets live in [0,N]^2; the
// box [lo,hi]^2 records how far sumset applications have widened it.
struct PairSet {
  std::int64_t N = 0;
  std::int64_t lo = 0, hi = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;  // sorted, distinct
  double alpha = 0.0;                                        // |pairs| / N^2
};

PairSet make_pairset(std::int64_t N, std::vector<std::pair<std::int64_t, std::int64_t>> pairs);

// kA - lA = A + ... + A - A - ... - A (k plus-copies, l minus-copies),
// exactly, as a sorted list. A 0-fold sum is {0}. Throws std::length_error
// when the result window or the result itself would exceed ~10^7 elements.
std::vector<std::int64_t> iterated_sumset(const IntSet& A, int k, int l);

// Smallest d <= floor(1/alpha) such that {0, d, 2d, ..., (N-1)d} is contained
// in kA - kA, or nullopt. The containment is guaranteed when k >= 2/alpha;
// smaller k is permitted and the scan is then best-effort.
std::optional<std::int64_t> find_lev_progression(const IntSet& A, int k);

// One application of the bilinear sumset: all (x, y1 +- y2) with (x,y1) and
// (x,y2) in A, together with all (x1 +- x2, y) with (x1,y) and (x2,y) in A.
// The box widens from [lo,hi] to [min(2lo, lo-hi), max(2hi, hi-lo)].
PairSet bilinear_oplus(const PairSet& A);

// Lexicographically smallest (d, d') with 0 < d, d' <= floor(4/alpha^2) such
// that {0, d, ..., (N-1)d} x {0, d', ..., (N-1)d'} lies inside the k-fold
// iterated bilinear sumset, or nullopt. Iterates are squared (doubling the
// number of summands) inside a window of half-width (N-1)*floor(4/alpha^2)
// and the iteration stops at a fixpoint or once at least k summands are
// reached; from the second iterate on the squaring is monotone, so the
// fixpoint dominates every later iterate. Requires N <= 64.
std::optional<std::pair<std::int64_t, std::int64_t>> find_product_progression(const PairSet& A,
                                                                              std::int64_t k);

// Point on Z x (R/Z quantized to grid denominator G): (x, r) stands for
// (x, r/G) with 0 <= r < G.
using GridPoint = std::pair<std::int64_t, std::int64_t>;

// Number of quadruples g1 + g2 = g3 + g4 (first coordinates over Z, second
// mod G), g_i drawn from S_i. Pairwise sums are hashed on exact integer keys.
std::int64_t additive_energy(const std::vector<GridPoint>& S1, const std::vector<GridPoint>& S2,
                             const std::vector<GridPoint>& S3, const std::vector<GridPoint>& S4,
                             std::int64_t grid);

// Quantize f : S -> R/Z (cycles) to the grid {r / floor(1/eps)}: each value
// moves to the nearest grid point, distance at most 1/(2*floor(1/eps)), with
// exact half-way ties broken downward. Requires eps in (0,1).
std::map<std::int64_t, Rational> round_to_grid(const std::map<std::int64_t, double>& f, double eps);

}  // namespace gowerslab::additive
