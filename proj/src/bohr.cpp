#include "gowerslab/bohr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "gowerslab/fft.hpp"
#include "gowerslab/parallel.hpp"

namespace gowerslab::bohr {

namespace {

constexpr double kEdge = 1e-9;  // boundary guard for ||n*theta|| <= rho and n <= rho*N

bool in_bohr(const std::vector<double>& S, double rho, std::int64_t n) {
  for (double theta : S)
    if (dist_to_z(static_cast<double>(n) * theta) > rho + kEdge) return false;
  return true;
}

std::int64_t range_top(double rho, std::int64_t N) {
  return static_cast<std::int64_t>(std::floor(rho * static_cast<double>(N) + kEdge));
}

}  // namespace

BohrSet build_bohr(const std::vector<double>& S, double rho, std::int64_t N) {
  if (!(rho > 0.0) || !(rho < 1.0)) throw std::invalid_argument("build_bohr: rho must lie in (0,1)");
  if (N < 1) throw std::invalid_argument("build_bohr: N must be positive");
  BohrSet B;
  B.S = S;
  B.rho = rho;
  B.N = N;
  const std::int64_t top = range_top(rho, N);
  for (std::int64_t n = 1; n <= top; ++n)
    if (in_bohr(S, rho, n)) B.members.push_back(n);
  return B;
}

std::int64_t bohr_size(const std::vector<double>& S, double rho, std::int64_t N) {
  if (rho <= 0.0) return 0;
  const std::int64_t top = range_top(rho, N);
  std::int64_t count = 0;
  for (std::int64_t n = 1; n <= top; ++n)
    if (in_bohr(S, rho, n)) ++count;
  return count;
}

RegularSearch find_regular(const std::vector<double>& S, double rho0, std::int64_t N,
                           double C_reg, const std::vector<double>& grid) {
  if (!(rho0 > 0.0) || !(rho0 < 0.5))
    throw std::invalid_argument("find_regular: rho0 must lie in (0,1/2)");
  if (N < 1) throw std::invalid_argument("find_regular: N must be positive");

  // The interval constraint n <= rho*N behaves like one more frequency, so the
  // effective dimension is never zero even for S = {}.
  const int d = std::max<int>(1, static_cast<int>(S.size()));
  std::vector<double> kappas = grid;
  if (kappas.empty())
    for (int j = 0; j < 4; ++j) {
      const double k = 1.0 / (d << j);
      kappas.push_back(k);
      kappas.push_back(-k);
    }

  constexpr int kCandidates = 64;
  std::vector<double> cand(kCandidates), score(kCandidates);
  for (int i = 0; i < kCandidates; ++i)
    cand[i] = rho0 * std::pow(2.0, static_cast<double>(i) / (kCandidates - 1));

  parallel_for(kCandidates, [&](std::int64_t i) {
    const double rho = cand[i];
    const double base = static_cast<double>(bohr_size(S, rho, N));
    double worst = 0.0;
    if (base < 1.0) {
      worst = std::numeric_limits<double>::infinity();
    } else {
      for (double k : kappas) {
        if (std::abs(k) > 1.0 / d + 1e-15 || k == 0.0) continue;
        const double sz = static_cast<double>(bohr_size(S, (1.0 + k) * rho, N));
        worst = std::max(worst, std::abs(sz / base - 1.0) / (d * std::abs(k)));
      }
    }
    score[i] = worst;
  });

  RegularSearch out;
  int best = 0;
  for (int i = 0; i < kCandidates; ++i) {
    if (score[i] < score[best]) best = i;
    if (score[i] <= C_reg) {
      if (!out.found) {
        out.found = true;
        out.rho = cand[i];
        out.score = score[i];
      }
    } else {
      out.rejected.push_back(cand[i]);
    }
  }
  if (!out.found) {
    out.rho = cand[best];
    out.score = score[best];
  }
  return out;
}

CutoffDecomposition cutoff_decomposition(const BohrSet& B, double eps) {
  if (B.members.empty()) throw std::invalid_argument("cutoff_decomposition: empty Bohr set");
  if (!(eps > 0.0) || eps > 1.0)
    throw std::invalid_argument("cutoff_decomposition: eps must lie in (0,1]");
  const std::int64_t N = B.N;

  // indicator of B over [1, max member]
  const std::int64_t maxB = B.members.back();
  std::vector<char> inB(static_cast<std::size_t>(maxB) + 1, 0);
  for (std::int64_t m : B.members) inB[static_cast<std::size_t>(m)] = 1;
  auto is_member = [&](std::int64_t n) { return n >= 1 && n <= maxB && inB[static_cast<std::size_t>(n)]; };

  for (double rp = B.rho / 2.0; rp * static_cast<double>(N) >= 1.0; rp /= 2.0) {
    std::vector<std::int64_t> Bp;
    const std::int64_t topp = static_cast<std::int64_t>(std::floor(rp * static_cast<double>(N) + 1e-9));
    for (std::int64_t n = 1; n <= topp; ++n) {
      bool ok = true;
      for (double theta : B.S)
        if (dist_to_z(static_cast<double>(n) * theta) > rp + 1e-9) { ok = false; break; }
      if (ok) Bp.push_back(n);
    }
    if (Bp.empty()) break;  // shrinking further cannot repopulate it

    // full support of the shifted average: n in [1 - max(B'), max(B)]
    const std::int64_t lo = 1 - Bp.back();
    const std::int64_t span = maxB - lo + 1;
    std::vector<double> psi1_full(static_cast<std::size_t>(span));
    const double inv = 1.0 / static_cast<double>(Bp.size());
    parallel_for(span, [&](std::int64_t i) {
      const std::int64_t n = lo + i;
      std::int64_t hits = 0;
      for (std::int64_t bp : Bp) hits += is_member(n + bp) ? 1 : 0;
      psi1_full[static_cast<std::size_t>(i)] = static_cast<double>(hits) * inv;
    });

    std::vector<double> rough(static_cast<std::size_t>(span));
    for (std::int64_t i = 0; i < span; ++i) {
      const std::int64_t n = lo + i;
      rough[static_cast<std::size_t>(i)] =
          std::abs((is_member(n) ? 1.0 : 0.0) - psi1_full[static_cast<std::size_t>(i)]);
    }
    const double mass = pairwise_sum(rough);
    if (mass > eps * static_cast<double>(N)) continue;

    CutoffDecomposition out;
    out.rho_prime = rp;
    out.psi2_mass = mass;
    out.psi1 = SeqFn::interval(N);
    out.psi2 = SeqFn::interval(N);
    for (std::int64_t n = 1; n <= N; ++n) {
      const double p1 = (n >= lo && n <= maxB) ? psi1_full[static_cast<std::size_t>(n - lo)] : 0.0;
      out.psi1.values[static_cast<std::size_t>(n - 1)] = p1;
      out.psi2.values[static_cast<std::size_t>(n - 1)] = (is_member(n) ? 1.0 : 0.0) - p1;
    }

    // l1 Fourier mass of psi1 over a size-M grid; index shifts only rotate
    // phases, so packing the support at offset 0 leaves magnitudes intact.
    const std::int64_t M = std::max<std::int64_t>(4 * N, span);
    std::vector<cplx> padded(static_cast<std::size_t>(M), cplx{0.0, 0.0});
    for (std::int64_t i = 0; i < span; ++i)
      padded[static_cast<std::size_t>(i)] = cplx{psi1_full[static_cast<std::size_t>(i)], 0.0};
    auto hat = dft_forward(padded);
    std::vector<double> mags(hat.size());
    for (std::size_t g = 0; g < hat.size(); ++g) mags[g] = std::abs(hat[g]);
    out.l1_fourier_mass = pairwise_sum(mags) / static_cast<double>(M);
    return out;
  }
  throw std::runtime_error("cutoff_decomposition: no shift radius achieved the psi2 mass bound");
}

std::optional<double> locally_linear_shrink(const BohrSet& B,
                                            const std::map<std::int64_t, double>& phi,
                                            double eta, double eps) {
  if (B.members.empty()) throw std::invalid_argument("locally_linear_shrink: empty Bohr set");
  for (std::int64_t m : B.members)
    if (!phi.count(m)) {
      std::ostringstream msg;
      msg << "locally_linear_shrink: phi undefined at member " << m;
      throw std::invalid_argument(msg.str());
    }

  const std::int64_t maxB = B.members.back();
  std::vector<char> inB(static_cast<std::size_t>(maxB) + 1, 0);
  for (std::int64_t m : B.members) inB[static_cast<std::size_t>(m)] = 1;
  auto is_member = [&](std::int64_t n) { return n >= 1 && n <= maxB && inB[static_cast<std::size_t>(n)]; };

  auto check_pair = [&](std::int64_t x, std::int64_t y) {
    if (!is_member(x + y)) return;
    const double resid = dist_to_z(phi.at(x) + phi.at(y) - phi.at(x + y));
    if (resid > 1e-9) {
      std::ostringstream msg;
      msg << "locally_linear_shrink: local linearity fails at pair (" << x << ", " << y
          << "), residual " << resid;
      throw std::invalid_argument(msg.str());
    }
  };
  const std::size_t sz = B.members.size();
  if (sz * sz <= 40000) {
    for (std::int64_t x : B.members)
      for (std::int64_t y : B.members) check_pair(x, y);
  } else {
    std::mt19937_64 rng(0xb0417ULL);
    std::uniform_int_distribution<std::size_t> pick(0, sz - 1);
    for (int t = 0; t < 1024; ++t) check_pair(B.members[pick(rng)], B.members[pick(rng)]);
  }

  std::vector<cplx> vals(sz);
  for (std::size_t i = 0; i < sz; ++i) vals[i] = e_cycles(phi.at(B.members[i]));
  const double mean = std::abs(pairwise_sum(vals)) / static_cast<double>(sz);
  if (mean < eta - 1e-12) {
    std::ostringstream msg;
    msg << "locally_linear_shrink: measured correlation " << mean << " is below eta " << eta;
    throw std::invalid_argument(msg.str());
  }

  auto all_small = [&](const std::vector<std::int64_t>& members) {
    for (std::int64_t m : members)
      if (dist_to_z(phi.at(m)) > eps + 1e-12) return false;
    return true;
  };

  if (all_small(B.members)) return B.rho;
  for (double cand = B.rho / 2.0; cand * static_cast<double>(B.N) >= 1.0; cand /= 2.0) {
    auto reg = find_regular(B.S, cand, B.N);
    if (!reg.found) continue;
    auto shrunk = build_bohr(B.S, reg.rho, B.N);
    if (shrunk.members.empty()) break;
    if (all_small(shrunk.members)) return reg.rho;
  }
  return std::nullopt;
}

}  // namespace gowerslab::bohr
