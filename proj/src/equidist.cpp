#include "gowerslab/equidist.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "gowerslab/parallel.hpp"
#include "gowerslab/seqfn.hpp"

namespace gowerslab::equidist {

TorusOrbit linear_orbit(const std::vector<double>& alphas, std::int64_t N) {
  TorusOrbit o;
  o.N = N;
  for (double a : alphas) o.gen.push_back({0.0, a, 0.0, 0.0});
  return o;
}

std::complex<double> weyl_sum(const std::array<double, 4>& alpha, std::int64_t N) {
  if (N < 1) throw std::invalid_argument("weyl_sum: N must be positive");
  const std::vector<double> coeffs(alpha.begin(), alpha.end());
  const std::vector<double> phases = poly_phases(coeffs, 1, N);
  std::vector<std::complex<double>> vals(static_cast<std::size_t>(N));
  parallel_for(N, [&](std::int64_t i) { vals[static_cast<std::size_t>(i)] = e_cycles(phases[static_cast<std::size_t>(i)]); });
  return pairwise_sum(vals) / static_cast<double>(N);
}

namespace {

// visits canonical frequency vectors (first nonzero positive) with
// max-norm == s in lexicographic order; returns false when the visitor stops
template <class F>
bool scan_shell(int d, int s, F&& visit) {
  std::vector<long> m(static_cast<std::size_t>(d), -s);
  for (;;) {
    long norm = 0;
    for (long v : m) norm = std::max(norm, std::labs(v));
    if (norm == s) {
      bool canonical = false;
      for (long v : m) {
        if (v != 0) {
          canonical = v > 0;
          break;
        }
      }
      if (canonical && !visit(m)) return false;
    }
    int i = d - 1;
    while (i >= 0 && m[static_cast<std::size_t>(i)] == s) {
      m[static_cast<std::size_t>(i)] = -s;
      --i;
    }
    if (i < 0) return true;
    ++m[static_cast<std::size_t>(i)];
  }
}

}  // namespace

EquidistReport equidist_test(const TorusOrbit& orbit, double eps, int M_freq) {
  if (orbit.d() > 0 && orbit.N < 1) throw std::invalid_argument("equidist_test: empty orbit");
  EquidistReport rep;
  const int d = orbit.d();
  if (d == 0) return rep;  // vacuously equidistributed
  for (int s = 1; s <= M_freq; ++s) {
    bool done = !scan_shell(d, s, [&](const std::vector<long>& m) {
      std::array<double, 4> c{};
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < 4; ++j) c[static_cast<std::size_t>(j)] += static_cast<double>(m[static_cast<std::size_t>(i)]) * orbit.gen[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      const double mag = std::abs(weyl_sum(c, orbit.N));
      rep.magnitude = std::max(rep.magnitude, mag);
      if (mag >= eps) {
        rep.equidistributed = false;
        rep.witness = m;
        rep.magnitude = mag;
        return false;
      }
      return true;
    });
    if (done) return rep;
  }
  return rep;
}

RationalApprox rational_approx(double alpha, long long Q) {
  if (Q < 1) throw std::invalid_argument("rational_approx: Q must be >= 1");
  long double x = alpha;
  long long p_prev = 1, q_prev = 0;
  long long p_cur = static_cast<long long>(std::floor(x)), q_cur = 1;
  long double rem = x - std::floor(x);
  for (int it = 0; it < 64 && rem > 1e-18L; ++it) {
    x = 1.0L / rem;
    const long double fl = std::floor(x);
    if (fl > 4e18L) break;
    const long long ak = static_cast<long long>(fl);
    if (q_prev > (4000000000000000000LL - 1) / std::max(1LL, ak)) break;
    const long long p_next = ak * p_cur + p_prev;
    const long long q_next = ak * q_cur + q_prev;
    if (q_next > Q) break;
    p_prev = p_cur;
    q_prev = q_cur;
    p_cur = p_next;
    q_cur = q_next;
    rem = x - fl;
  }
  RationalApprox r;
  r.a = p_cur;
  r.q = q_cur;
  r.err = std::abs(alpha - static_cast<double>(static_cast<long double>(p_cur) / static_cast<long double>(q_cur)));
  return r;
}

std::optional<std::vector<long>> integer_relation(const std::vector<double>& alphas, int M, double tol) {
  const int d = static_cast<int>(alphas.size());
  if (d > 6 || M > 20) throw std::invalid_argument("integer_relation: enumeration budget exceeded (d <= 6, M <= 20)");
  std::optional<std::vector<long>> hit;
  for (int s = 1; s <= M && !hit; ++s) {
    scan_shell(d, s, [&](const std::vector<long>& m) {
      double r = 0.0;
      for (int i = 0; i < d; ++i) r += static_cast<double>(m[static_cast<std::size_t>(i)]) * alphas[static_cast<std::size_t>(i)];
      if (dist_to_z(r) <= tol) {
        hit = m;
        return false;
      }
      return true;
    });
  }
  return hit;
}

namespace {

bool complexity_ok(const Rational& v, long M) {
  mpz_class num = v.get_num(), den = v.get_den();
  return mpz_cmpabs_ui(num.get_mpz_t(), static_cast<unsigned long>(M)) <= 0 &&
         mpz_cmpabs_ui(den.get_mpz_t(), static_cast<unsigned long>(M)) <= 0;
}

}  // namespace

BoundedSolution solve_bounded_rational(const RationalMatrixSystem& sys) {
  const std::size_t m = sys.A.size();
  const std::size_t n = m == 0 ? 0 : sys.A[0].size();
  if (sys.b.size() != m) throw std::invalid_argument("solve_bounded_rational: rhs length mismatch");
  for (const auto& row : sys.A)
    if (row.size() != n) throw std::invalid_argument("solve_bounded_rational: ragged matrix");
  if (sys.M > 0) {
    for (const auto& row : sys.A)
      for (const auto& v : row)
        if (!complexity_ok(v, sys.M)) throw std::invalid_argument("solve_bounded_rational: entry complexity exceeds M");
    for (const auto& v : sys.b)
      if (!complexity_ok(v, sys.M)) throw std::invalid_argument("solve_bounded_rational: entry complexity exceeds M");
  }

  std::vector<std::vector<Rational>> aug(m, std::vector<Rational>(n + 1, Rational(0)));
  std::vector<std::size_t> orig(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = sys.A[i][j];
    aug[i][n] = sys.b[i];
    orig[i] = i;
  }

  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < m; ++col) {
    std::size_t pr = r;
    while (pr < m && aug[pr][col] == 0) ++pr;
    if (pr == m) continue;
    std::swap(aug[r], aug[pr]);
    std::swap(orig[r], orig[pr]);
    const Rational piv = aug[r][col];
    for (std::size_t j = col; j <= n; ++j) aug[r][j] /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || aug[i][col] == 0) continue;
      const Rational f = aug[i][col];
      for (std::size_t j = col; j <= n; ++j) aug[i][j] -= f * aug[r][j];
    }
    pivots.emplace_back(r, col);
    ++r;
  }

  BoundedSolution out;
  for (std::size_t i = r; i < m; ++i) {
    if (aug[i][n] != 0) {
      out.consistent = false;
      out.inconsistent_row = static_cast<int>(orig[i]);
      return out;
    }
  }
  // free variables pinned to zero: the proof's unit-vector augmentation
  out.x.assign(n, Rational(0));
  out.bound = 0;
  for (const auto& [row, col] : pivots) {
    out.x[col] = aug[row][n];
    Rational a = abs(out.x[col]);
    if (a > out.bound) out.bound = a;
  }
  return out;
}

}  // namespace gowerslab::equidist
