#include "gowerslab/verify.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>

#include "gowerslab/equidist.hpp"
#include "gowerslab/fft.hpp"
#include "gowerslab/gowers.hpp"
#include "gowerslab/nilgroup.hpp"
#include "gowerslab/parallel.hpp"
#include "gowerslab/seqfn.hpp"

namespace gowerslab::verify {

namespace {

std::string fmt(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string fmt(std::int64_t v) { return std::to_string(v); }

double mean_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = std::abs(a[i] - b[i]);
  return pairwise_sum(d) / static_cast<double>(a.size());
}

// ---------- necessity ----------

SeqFn build_family(const NilseqSpec& spec, std::int64_t N) {
  SeqFn f = SeqFn::interval(N);
  if (spec.family == "linear") {
    auto ph = poly_phases(std::vector<double>{0.0, spec.alpha}, 1, N);
    for (std::int64_t n = 0; n < N; ++n) f.values[static_cast<std::size_t>(n)] = e_cycles(ph[static_cast<std::size_t>(n)]);
  } else if (spec.family == "quadratic") {
    auto ph = poly_phases(std::vector<double>{0.0, spec.beta, spec.alpha}, 1, N);
    for (std::int64_t n = 0; n < N; ++n) f.values[static_cast<std::size_t>(n)] = e_cycles(ph[static_cast<std::size_t>(n)]);
  } else if (spec.family == "bracket312") {
    for (std::int64_t n = 1; n <= N; ++n)
      f.values[static_cast<std::size_t>(n - 1)] =
          e_cycles(nil::f312_orbit_closed<double>(spec.alpha, spec.beta, spec.gamma, n));
  } else {
    throw std::invalid_argument("check_necessity: unknown family " + spec.family);
  }
  return f;
}

}  // namespace

VerificationReport check_necessity(int s, const NilseqSpec& spec,
                                   const std::vector<std::int64_t>& N_grid, std::uint64_t seed) {
  if (s < 1 || s > 3) throw std::invalid_argument("check_necessity: s must be 1, 2 or 3");
  const char* expect = s == 1 ? "linear" : s == 2 ? "quadratic" : "bracket312";
  if (spec.family != expect)
    throw std::invalid_argument(std::string("check_necessity: family for s=") + std::to_string(s) +
                                " must be " + expect);
  if (N_grid.empty()) throw std::invalid_argument("check_necessity: empty N grid");
  std::vector<std::int64_t> grid = N_grid;
  std::sort(grid.begin(), grid.end());
  const std::int64_t cap = s == 3 ? 512 : s == 2 ? 4096 : 65536;
  for (auto N : grid) {
    if (N < 4) throw std::invalid_argument("check_necessity: N must be >= 4");
    if (N > cap) throw std::length_error("check_necessity: N exceeds the norm budget");
  }

  VerificationReport rep;
  rep.claim = "necessity-s" + std::to_string(s);
  rep.params = {{"s", std::to_string(s)},
                {"family", spec.family},
                {"alpha", fmt(spec.alpha)},
                {"beta", fmt(spec.beta)},
                {"gamma", fmt(spec.gamma)}};
  std::string gridtxt;
  double first = 0.0, minv = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    SeqFn f = build_family(spec, grid[i]);
    const double v = gowers::gowers_norm_interval(f, s + 1).norm_value;
    rep.measured.emplace_back("norm@" + std::to_string(grid[i]), v);
    if (i == 0) first = minv = v;
    minv = std::min(minv, v);
    gridtxt += (i ? "," : "") + std::to_string(grid[i]);
  }
  rep.params.emplace_back("grid", gridtxt);
  const double floor_v = 0.9 * first;
  rep.measured.emplace_back("min_norm", minv);
  rep.measured.emplace_back("floor", floor_v);
  rep.margin = minv - floor_v;
  rep.pass = rep.margin >= -1e-12;
  rep.reproduce = "gowerslab verify necessity --params '{\"s\":" + std::to_string(s) +
                  ",\"family\":\"" + spec.family + "\",\"alpha\":" + fmt(spec.alpha) +
                  ",\"beta\":" + fmt(spec.beta) + ",\"gamma\":" + fmt(spec.gamma) +
                  ",\"grid\":[" + gridtxt + "]}' --seed " + std::to_string(seed);
  return rep;
}

// ---------- L1 approximation ----------

namespace {

// 2-d DFT helpers on a G x G grid (row-major), via the 1-d transform
void dft2_inplace(std::vector<std::vector<cplx>>& m) {
  const std::size_t G = m.size();
  for (auto& row : m) row = dft_forward(row);
  std::vector<cplx> col(G);
  for (std::size_t j = 0; j < G; ++j) {
    for (std::size_t i = 0; i < G; ++i) col[i] = m[i][j];
    col = dft_forward(col);
    for (std::size_t i = 0; i < G; ++i) m[i][j] = col[i];
  }
}

void idft2_inplace(std::vector<std::vector<cplx>>& m) {
  const std::size_t G = m.size();
  for (auto& row : m)
    for (auto& v : row) v = std::conj(v);
  dft2_inplace(m);
  const double s = 1.0 / (static_cast<double>(G) * static_cast<double>(G));
  for (auto& row : m)
    for (auto& v : row) v = std::conj(v) * s;
}

// smooth return branch of the periodic extension: sigma(x) = x on [0,1],
// then a C^2 quintic bringing the value back to 0 with matched derivatives
double sigma_ext(double x) {
  if (x <= 1.0) return x;
  const double t = x - 1.0, t3 = t * t * t;
  return 1.0 + t - 20.0 * t3 + 30.0 * t3 * t - 12.0 * t3 * t * t;
}

VerificationReport l1_case_iii(const L1Params& p, double eps, std::uint64_t /*seed*/) {
  VerificationReport rep;
  rep.claim = "l1-iii";
  auto orbit = equidist::linear_orbit({p.beta}, p.N);
  auto eq = equidist::equidist_test(orbit, eps / 10.0, 10);
  rep.measured.emplace_back("weyl_magnitude", eq.magnitude);
  const auto phases = poly_phases(std::vector<double>{0.0, p.beta}, 1, p.N);
  if (eq.equidistributed) {
    const double win = eps / 10.0;
    const cplx lo = e_cycles(p.alpha * win), hi = e_cycles(p.alpha * (1.0 - win));
    std::vector<cplx> exact(static_cast<std::size_t>(p.N)), approx(static_cast<std::size_t>(p.N));
    for (std::int64_t n = 0; n < p.N; ++n) {
      const double x = phases[static_cast<std::size_t>(n)];
      exact[static_cast<std::size_t>(n)] = e_cycles(p.alpha * x);
      if (x >= win && x <= 1.0 - win) {
        approx[static_cast<std::size_t>(n)] = exact[static_cast<std::size_t>(n)];
      } else {
        const double t = x >= 1.0 - win ? (x - (1.0 - win)) / (2.0 * win) : (x + win) / (2.0 * win);
        approx[static_cast<std::size_t>(n)] = (1.0 - t) * hi + t * lo;
      }
    }
    const double l1 = mean_abs_diff(exact, approx);
    rep.measured.emplace_back("l1_error", l1);
    rep.measured.emplace_back("lipschitz",
                              std::max(kTwoPi * std::abs(p.alpha), std::abs(hi - lo) / (2.0 * win)));
    rep.margin = eps - l1;
    rep.pass = rep.margin >= 0.0;
  } else {
    auto ra = equidist::rational_approx(p.beta, 100);
    rep.measured.emplace_back("q", static_cast<double>(ra.q));
    rep.measured.emplace_back("a", static_cast<double>(ra.a));
    rep.measured.emplace_back("approx_err", ra.err);
    std::string w;
    for (auto m : eq.witness) w += (w.empty() ? "" : ",") + std::to_string(m);
    rep.note = "rational structure: witness (" + w + ") with |Weyl| " + fmt(eq.magnitude) +
               ", beta ~ " + std::to_string(ra.a) + "/" + std::to_string(ra.q);
    rep.margin = eq.magnitude - eps / 10.0;
    rep.pass = true;  // the dichotomy resolved: structure found and reported
  }
  return rep;
}

VerificationReport l1_case_iv(const L1Params& p, double eps, std::uint64_t /*seed*/) {
  VerificationReport rep;
  rep.claim = "l1-iv";
  constexpr std::size_t G = 256;
  // samples of the extended surface e(sigma(x) sigma(y)) on [0,2)^2
  std::vector<std::vector<cplx>> surf(G, std::vector<cplx>(G));
  std::vector<double> sig(G);
  for (std::size_t j = 0; j < G; ++j) sig[j] = sigma_ext(2.0 * static_cast<double>(j) / G);
  for (std::size_t i = 0; i < G; ++i)
    for (std::size_t j = 0; j < G; ++j) surf[i][j] = e_cycles(sig[i] * sig[j]);
  std::vector<std::vector<cplx>> spec = surf;
  dft2_inplace(spec);

  auto signed_idx = [&](std::size_t i) {
    return static_cast<int>(i <= G / 2 ? i : i - G);
  };
  int K = 0;
  double sup = 0.0;
  for (int cand : {8, 16, 32, 64}) {
    std::vector<std::vector<cplx>> cut(G, std::vector<cplx>(G, cplx(0.0, 0.0)));
    for (std::size_t i = 0; i < G; ++i)
      for (std::size_t j = 0; j < G; ++j)
        if (std::abs(signed_idx(i)) <= cand && std::abs(signed_idx(j)) <= cand) cut[i][j] = spec[i][j];
    idft2_inplace(cut);
    double worst = 0.0;
    for (std::size_t i = 0; i < G; ++i)
      for (std::size_t j = 0; j < G; ++j) worst = std::max(worst, std::abs(surf[i][j] - cut[i][j]));
    K = cand;
    sup = worst;
    if (worst <= eps / 2.0) break;
  }
  rep.measured.emplace_back("fourier_cutoff", static_cast<double>(K));
  rep.measured.emplace_back("grid_sup", sup);

  // coefficients c_{kl} = spec[k][l] / G^2, frequencies (k/2, l/2) cycles
  const double inv = 1.0 / (static_cast<double>(G) * static_cast<double>(G));
  const auto pa = poly_phases(std::vector<double>{0.0, p.alpha}, 1, p.N);
  const auto pb = poly_phases(std::vector<double>{0.0, p.beta}, 1, p.N);
  std::vector<cplx> exact(static_cast<std::size_t>(p.N)), approx(static_cast<std::size_t>(p.N));
  const int kdim = 2 * K + 1;
  parallel_for(p.N, [&](std::int64_t n) {
    const double x = pa[static_cast<std::size_t>(n)], y = pb[static_cast<std::size_t>(n)];
    exact[static_cast<std::size_t>(n)] = e_cycles(x * y);
    std::vector<cplx> ex(static_cast<std::size_t>(kdim)), ey(static_cast<std::size_t>(kdim));
    const cplx bx = e_cycles(x / 2.0), by = e_cycles(y / 2.0);
    ex[static_cast<std::size_t>(K)] = ey[static_cast<std::size_t>(K)] = cplx(1.0, 0.0);
    for (int k = 1; k <= K; ++k) {
      ex[static_cast<std::size_t>(K + k)] = ex[static_cast<std::size_t>(K + k - 1)] * bx;
      ex[static_cast<std::size_t>(K - k)] = std::conj(ex[static_cast<std::size_t>(K + k)]);
      ey[static_cast<std::size_t>(K + k)] = ey[static_cast<std::size_t>(K + k - 1)] * by;
      ey[static_cast<std::size_t>(K - k)] = std::conj(ey[static_cast<std::size_t>(K + k)]);
    }
    cplx acc(0.0, 0.0);
    for (int k = -K; k <= K; ++k) {
      const std::size_t ki = static_cast<std::size_t>((k + static_cast<int>(G)) % static_cast<int>(G));
      cplx row(0.0, 0.0);
      for (int l = -K; l <= K; ++l) {
        const std::size_t li = static_cast<std::size_t>((l + static_cast<int>(G)) % static_cast<int>(G));
        row += spec[ki][li] * ey[static_cast<std::size_t>(K + l)];
      }
      acc += row * ex[static_cast<std::size_t>(K + k)];
    }
    approx[static_cast<std::size_t>(n)] = acc * inv;
  });
  const double l1 = mean_abs_diff(exact, approx);
  rep.measured.emplace_back("l1_error", l1);
  rep.margin = eps - l1;
  rep.pass = rep.margin >= 0.0;
  return rep;
}

VerificationReport l1_case_v(const L1Params& p, double eps, std::uint64_t /*seed*/) {
  VerificationReport rep;
  rep.claim = "l1-v";
  if (std::abs(p.beta) > p.M / static_cast<double>(p.N) + 1e-15) {
    rep.pass = false;
    rep.margin = p.M / static_cast<double>(p.N) - std::abs(p.beta);
    rep.note = "precondition violated: |beta| > M/N";
    return rep;
  }
  std::vector<cplx> exact(static_cast<std::size_t>(p.N)), approx(static_cast<std::size_t>(p.N));
  std::int64_t intervals = 0;
  double prev_floor = 0.0, max_floor = 0.0;
  for (std::int64_t n = 1; n <= p.N; ++n) {
    const double c = std::floor(p.beta * static_cast<double>(n));
    if (n == 1 || c != prev_floor) {
      ++intervals;
      prev_floor = c;
    }
    max_floor = std::max(max_floor, std::abs(c));
    exact[static_cast<std::size_t>(n - 1)] = e_cycles(p.alpha * static_cast<double>(n) * c);
    approx[static_cast<std::size_t>(n - 1)] = e_cycles(p.alpha * static_cast<double>(n) * prev_floor);
  }
  const double l1 = mean_abs_diff(exact, approx);
  rep.measured.emplace_back("intervals", static_cast<double>(intervals));
  rep.measured.emplace_back("max_floor", max_floor);
  rep.measured.emplace_back("l1_error", l1);
  rep.margin = eps - l1;
  rep.pass = rep.margin >= 0.0 && intervals <= 2 * static_cast<std::int64_t>(p.M) + 2;
  return rep;
}

}  // namespace

VerificationReport check_l1_approx(int item, const L1Params& p, double eps, std::uint64_t seed) {
  if (item < 3 || item > 5) throw std::invalid_argument("check_l1_approx: item must be 3, 4 or 5");
  if (!(eps > 0.0) || eps >= 1.0) throw std::invalid_argument("check_l1_approx: eps must lie in (0,1)");
  if (p.N < 16 || p.N > 1'000'000) throw std::invalid_argument("check_l1_approx: N out of range");
  VerificationReport rep = item == 3   ? l1_case_iii(p, eps, seed)
                           : item == 4 ? l1_case_iv(p, eps, seed)
                                       : l1_case_v(p, eps, seed);
  rep.params = {{"item", std::to_string(item)}, {"N", fmt(p.N)},     {"alpha", fmt(p.alpha)},
                {"beta", fmt(p.beta)},          {"M", fmt(p.M)},     {"eps", fmt(eps)}};
  rep.reproduce = "gowerslab verify l1 --params '{\"item\":" + std::to_string(item) +
                  ",\"N\":" + fmt(p.N) + ",\"alpha\":" + fmt(p.alpha) + ",\"beta\":" + fmt(p.beta) +
                  ",\"M\":" + fmt(p.M) + ",\"eps\":" + fmt(eps) + "}' --seed " + std::to_string(seed);
  return rep;
}

// ---------- pipeline ----------

VerificationReport run_gowers_pipeline(std::int64_t N, const PhaseFamily& fam, double delta,
                                       std::uint64_t seed) {
  if (N < 4) throw std::invalid_argument("run_gowers_pipeline: N must be >= 4");
  if (N > 128) throw std::length_error("run_gowers_pipeline: N exceeds the quadruple budget");
  if (delta < 0.0 || delta > 1.0) throw std::invalid_argument("run_gowers_pipeline: delta must lie in [0,1]");
  if (fam.kind != "pure-quadratic" && fam.kind != "empty")
    throw std::invalid_argument("run_gowers_pipeline: unknown family " + fam.kind);

  VerificationReport rep;
  rep.claim = "pipeline-" + fam.kind;
  rep.params = {{"N", fmt(N)},           {"kind", fam.kind},   {"alpha", fmt(fam.alpha)},
                {"beta", fmt(fam.beta)}, {"H", fmt(fam.H_size)}, {"delta", fmt(delta)}};
  rep.reproduce = "gowerslab verify pipeline --params '{\"N\":" + fmt(N) + ",\"kind\":\"" + fam.kind +
                  "\",\"alpha\":" + fmt(fam.alpha) + ",\"beta\":" + fmt(fam.beta) +
                  ",\"H\":" + fmt(fam.H_size) + ",\"delta\":" + fmt(delta) + "}' --seed " +
                  std::to_string(seed);

  gowers::ShiftSet H;
  H.N = N;
  const std::int64_t hmax = fam.kind == "empty" ? 0 : std::min(fam.H_size, N);
  for (std::int64_t h = 1; h <= hmax; ++h) H.H.push_back(h);

  const auto ph = poly_phases(std::vector<double>{0.0, fam.beta, fam.alpha}, 1, N);
  SeqFn f = SeqFn::interval(N);
  for (std::int64_t n = 0; n < N; ++n) f.values[static_cast<std::size_t>(n)] = e_cycles(ph[static_cast<std::size_t>(n)]);
  std::map<std::int64_t, SeqFn> chi;
  for (std::int64_t h : H.H) {
    SeqFn c = SeqFn::interval(N);
    for (std::int64_t n = 1; n + h <= N; ++n)
      c.values[static_cast<std::size_t>(n - 1)] =
          f.values[static_cast<std::size_t>(n + h - 1)] * std::conj(f.values[static_cast<std::size_t>(n - 1)]);
    chi.emplace(h, std::move(c));
  }

  auto count = gowers::count_correlated_quadruples(f, H, chi, std::nullopt);
  const double floor_v =
      std::pow(count.eta, 8) * std::pow(delta, 4) * std::pow(static_cast<double>(N), 3) / 2.0;
  rep.measured.emplace_back("count", static_cast<double>(count.count));
  rep.measured.emplace_back("additive_quadruples", static_cast<double>(count.additive_quadruples));
  rep.measured.emplace_back("eta", count.eta);
  rep.measured.emplace_back("delta_measured", count.delta);
  rep.measured.emplace_back("threshold_used", count.threshold_used);
  rep.measured.emplace_back("floor", floor_v);

  if (H.H.empty()) {
    rep.note = "vacuous: empty family";
    rep.pass = true;
    rep.margin = 0.0;
    return rep;
  }

  // exhibition: first three passing quadruples in (h1,h2,h3) lex order
  const std::int64_t Np = count.Nprime;
  std::vector<std::array<std::int64_t, 4>> samples;
  for (std::int64_t h1 : H.H) {
    for (std::int64_t h2 : H.H) {
      for (std::int64_t h3 : H.H) {
        const std::int64_t h4 = h1 + h2 - h3;
        if (h4 < 1 || h4 > hmax) continue;
        cplx s(0.0, 0.0);
        for (std::int64_t n = 1; n <= N; ++n) {
          std::int64_t n2 = n + h1 - h4;
          n2 = ((n2 % Np) + Np) % Np;
          if (n2 < 1 || n2 > N) continue;
          s += chi.at(h1).values[static_cast<std::size_t>(n - 1)] *
               chi.at(h2).values[static_cast<std::size_t>(n2 - 1)] *
               std::conj(chi.at(h3).values[static_cast<std::size_t>(n - 1)] *
                         chi.at(h4).values[static_cast<std::size_t>(n2 - 1)]);
        }
        if (std::abs(s) / static_cast<double>(Np) >= count.threshold_used - 1e-12)
          samples.push_back({h1, h2, h3, h4});
        if (samples.size() == 3) break;
      }
      if (samples.size() == 3) break;
    }
    if (samples.size() == 3) break;
  }

  double min_corr = 1.0;
  for (std::size_t si = 0; si < samples.size(); ++si) {
    const auto [h1, h2, h3, h4] = samples[si];
    std::vector<cplx> prod(static_cast<std::size_t>(N));
    for (std::int64_t n = 1; n <= N; ++n)
      prod[static_cast<std::size_t>(n - 1)] =
          chi.at(h1).values[static_cast<std::size_t>(n - 1)] * chi.at(h2).values[static_cast<std::size_t>(n - 1)] *
          std::conj(chi.at(h3).values[static_cast<std::size_t>(n - 1)] *
                    chi.at(h4).values[static_cast<std::size_t>(n - 1)]);
    // per-a best correlation materialized, then a serial ascending argmax
    std::vector<double> best_val(static_cast<std::size_t>(N * N));
    std::vector<std::int64_t> best_b(static_cast<std::size_t>(N * N));
    parallel_for(N * N, [&](std::int64_t a) {
      std::vector<cplx> g(static_cast<std::size_t>(N), cplx(0.0, 0.0));
      for (std::int64_t n = 1; n <= N; ++n) {
        const double phase = -static_cast<double>(a) * static_cast<double>(n) * static_cast<double>(n) /
                             (static_cast<double>(N) * static_cast<double>(N));
        g[static_cast<std::size_t>(n % N)] += prod[static_cast<std::size_t>(n - 1)] * e_cycles(phase);
      }
      auto hat = dft_forward(g);
      double bv = -1.0;
      std::int64_t bb = 0;
      for (std::int64_t b = 0; b < N; ++b) {
        const double v = std::abs(hat[static_cast<std::size_t>(b)]) / static_cast<double>(N);
        if (v > bv) {
          bv = v;
          bb = b;
        }
      }
      best_val[static_cast<std::size_t>(a)] = bv;
      best_b[static_cast<std::size_t>(a)] = bb;
    });
    double bv = -1.0;
    std::int64_t ba = 0;
    for (std::int64_t a = 0; a < N * N; ++a)
      if (best_val[static_cast<std::size_t>(a)] > bv) {
        bv = best_val[static_cast<std::size_t>(a)];
        ba = a;
      }
    const std::string tag = "sample" + std::to_string(si + 1);
    rep.params.emplace_back(tag, std::to_string(h1) + "," + std::to_string(h2) + "," +
                                     std::to_string(h3) + "," + std::to_string(h4));
    rep.measured.emplace_back(tag + "_corr", bv);
    rep.measured.emplace_back(tag + "_a", static_cast<double>(ba));
    rep.measured.emplace_back(tag + "_b", static_cast<double>(best_b[static_cast<std::size_t>(ba)]));
    min_corr = std::min(min_corr, bv);
  }

  const double count_slack =
      (static_cast<double>(count.count) - floor_v) / std::max(1.0, std::pow(static_cast<double>(N), 3));
  const double corr_slack = samples.empty() ? 0.0 : min_corr - 0.25;
  rep.margin = std::min(count_slack, corr_slack);
  rep.pass = static_cast<double>(count.count) >= floor_v && corr_slack >= 0.0;
  return rep;
}

}  // namespace gowerslab::verify
