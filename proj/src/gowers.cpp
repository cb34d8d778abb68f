#include "gowerslab/gowers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "gowerslab/fft.hpp"
#include "gowerslab/parallel.hpp"

namespace gowerslab::gowers {

namespace {

// Contiguous support window of a function on Z_M: f(x) = w[x - start] for
// x in [start, start + w.size()), zero elsewhere (no wrap-around). Keeping
// derivatives in this form makes the interval-norm recursion cost scale with
// the support width instead of the ambient modulus.
struct Win {
  std::int64_t M = 0;
  std::int64_t start = 0;
  std::vector<cplx> w;

  bool full() const { return static_cast<std::int64_t>(w.size()) == M; }
};

Win win_from_seq(const SeqFn& f) {
  const std::int64_t M = f.size();
  std::int64_t lo = -1, hi = -1;
  for (std::int64_t i = 0; i < M; ++i) {
    if (f.values[i] != cplx(0.0, 0.0)) {
      if (lo < 0) lo = i;
      hi = i;
    }
  }
  Win win;
  win.M = M;
  if (lo < 0) return win;  // identically zero
  const std::int64_t width = hi - lo + 1;
  // A window only speeds things up (and keeps the autocorrelation base case
  // alias-free) when it spans at most half the circle; otherwise store all of f.
  if (2 * width > M) {
    win.start = 0;
    win.w = f.values;
  } else {
    win.start = lo;
    win.w.assign(f.values.begin() + lo, f.values.begin() + hi + 1);
  }
  return win;
}

// Delta_h f for a full-circle window (cyclic shift).
Win win_derivative_full(const Win& f, std::int64_t h) {
  Win g;
  g.M = f.M;
  g.start = 0;
  g.w.resize(f.M);
  for (std::int64_t x = 0; x < f.M; ++x) {
    std::int64_t xs = x + h;
    if (xs >= f.M) xs -= f.M;
    g.w[x] = f.w[xs] * std::conj(f.w[x]);
  }
  return g;
}

// Delta_h f for a narrow window and signed displacement d (|d| < width).
// The product f(x+d) conj(f(x)) is supported on the overlap of the window
// with its shift, again a contiguous window.
Win win_derivative_narrow(const Win& f, std::int64_t d) {
  const std::int64_t W = static_cast<std::int64_t>(f.w.size());
  Win g;
  g.M = f.M;
  const std::int64_t len = W - std::llabs(d);
  if (len <= 0) return g;
  const std::int64_t off = std::max<std::int64_t>(0, -d);  // index of overlap start in w
  g.start = f.start + off;
  g.w.resize(len);
  for (std::int64_t i = 0; i < len; ++i) g.w[i] = f.w[off + d + i] * std::conj(f.w[off + i]);
  return g;
}

double u1_power(const Win& f) {
  cplx s(0.0, 0.0);
  for (const cplx& v : f.w) s += v;
  const double m = static_cast<double>(f.M);
  return std::norm(s) / (m * m);
}

double u2_power(const Win& f) {
  const double m = static_cast<double>(f.M);
  if (f.full()) {
    // Spectral form: sum of |fhat|^4 with fhat the normalized transform.
    std::vector<cplx> F = dft_forward(f.w);
    double s = 0;
    for (const cplx& v : F) {
      const double a = std::norm(v);
      s += a * a;
    }
    return s / (m * m * m * m);
  }
  // Narrow window: cyclic and linear autocorrelation agree (width <= M/2),
  // and the U^2 power is the mean square of the autocorrelation.
  std::vector<cplx> c = linear_autocorr(f.w);
  double s = 0;
  for (const cplx& v : c) s += std::norm(v);
  return s / (m * m * m);
}

double u_power_recursive(const Win& f, int k, bool parallel_here) {
  if (f.w.empty()) return 0.0;
  if (k == 1) return u1_power(f);
  if (k == 2) return u2_power(f);

  const double m = static_cast<double>(f.M);
  if (f.full()) {
    auto contrib = [&](std::int64_t h) { return u_power_recursive(win_derivative_full(f, h), k - 1, false); };
    double total = parallel_here ? parallel_map_sum<double>(f.M, contrib)
                                 : [&] {
                                     std::vector<double> v(f.w.size());
                                     for (std::int64_t h = 0; h < f.M; ++h) v[h] = contrib(h);
                                     return pairwise_sum(v, 0, v.size());
                                   }();
    return total / m;
  }

  // Narrow window: Delta_h f vanishes unless h wraps to a displacement
  // d in (-W, W); every such h contributes once.
  const std::int64_t W = static_cast<std::int64_t>(f.w.size());
  const std::int64_t nshifts = 2 * W - 1;
  auto contrib = [&](std::int64_t j) {
    const std::int64_t d = j - (W - 1);
    return u_power_recursive(win_derivative_narrow(f, d), k - 1, false);
  };
  double total;
  if (parallel_here) {
    total = parallel_map_sum<double>(nshifts, contrib);
  } else {
    std::vector<double> v(nshifts);
    for (std::int64_t j = 0; j < nshifts; ++j) v[j] = contrib(j);
    total = pairwise_sum(v, 0, v.size());
  }
  return total / m;
}

// Literal defining average: nested shift-products accumulated over all of
// Z_M^{k+1}. Intentionally does not reuse the norm collapse, so it serves as
// an independent check of the recursion. O(M^{k+1}).
struct DirectCaps {
  static std::int64_t max_m(int k) {
    switch (k) {
      case 1: return 1 << 20;
      case 2: return 512;
      case 3: return 128;
      default: return 64;
    }
  }
};

cplx direct_sum_level(const std::vector<cplx>& cur, int depth, std::int64_t M) {
  // depth = number of derivative shifts still to apply.
  if (depth == 0) {
    cplx s(0.0, 0.0);
    for (const cplx& v : cur) s += v;
    return s;
  }
  std::vector<cplx> next(M);
  cplx s(0.0, 0.0);
  for (std::int64_t h = 0; h < M; ++h) {
    for (std::int64_t x = 0; x < M; ++x) {
      std::int64_t xs = x + h;
      if (xs >= M) xs -= M;
      next[x] = cur[xs] * std::conj(cur[x]);
    }
    s += direct_sum_level(next, depth - 1, M);
  }
  return s;
}

double u_power_direct(const SeqFn& f, int k) {
  const std::int64_t M = f.size();
  if (M > DirectCaps::max_m(k))
    throw std::invalid_argument("gowers_norm_group: direct method capped at M=" +
                                std::to_string(DirectCaps::max_m(k)) + " for k=" + std::to_string(k));
  // Parallelize over the outermost shift; each slot is computed serially so
  // the floating-point evaluation order is fixed.
  std::vector<cplx> partial(M);
  if (k == 1) {
    partial.assign(1, direct_sum_level(f.values, 0, M));
    partial[0] = cplx(std::norm(partial[0]), 0.0);
  } else {
    parallel_blocks(M, [&](std::int64_t lo, std::int64_t hi) {
      std::vector<cplx> d1(M);
      for (std::int64_t h = lo; h < hi; ++h) {
        for (std::int64_t x = 0; x < M; ++x) {
          std::int64_t xs = x + h;
          if (xs >= M) xs -= M;
          d1[x] = f.values[xs] * std::conj(f.values[x]);
        }
        partial[h] = direct_sum_level(d1, k - 1, M);
      }
    });
  }
  cplx total = pairwise_sum(partial, 0, partial.size());
  double scale = 1.0;
  for (int j = 0; j <= k; ++j) scale /= static_cast<double>(M);
  if (k == 1) scale = 1.0 / (static_cast<double>(M) * static_cast<double>(M));
  total *= scale;
  if (std::abs(total.imag()) > 1e-9)
    throw std::runtime_error("gowers direct: defining average has non-negligible imaginary part");
  return std::max(0.0, total.real());
}

double u2_power_fft(const SeqFn& f) {
  std::vector<cplx> F = dft_forward(f.values);
  const double m = static_cast<double>(f.size());
  double s = 0;
  for (const cplx& v : F) {
    const double a = std::norm(v);
    s += a * a;
  }
  return s / (m * m * m * m);
}

void require_k(int k) {
  if (k < 1 || k > 4) throw std::invalid_argument("gowers norm: k must be in 1..4");
}

double root_2k(double power, int k) {
  if (power <= 0) return 0.0;
  return std::pow(power, 1.0 / static_cast<double>(std::int64_t(1) << k));
}

// Interval-norm normalizer ||1_[N]||_{U^k(Z_Mtilde)}^{2^k}, cached: the
// acceptance paths recompute it for the same (N, k, Mtilde) many times.
std::mutex g_norm_mutex;
std::map<std::tuple<std::int64_t, int, std::int64_t>, double> g_normalizer_cache;

double indicator_power(std::int64_t N, int k, std::int64_t M_tilde) {
  const auto key = std::make_tuple(N, k, M_tilde);
  {
    std::lock_guard<std::mutex> lock(g_norm_mutex);
    auto it = g_normalizer_cache.find(key);
    if (it != g_normalizer_cache.end()) return it->second;
  }
  SeqFn ind = SeqFn::interval(N);
  for (auto& v : ind.values) v = cplx(1.0, 0.0);
  SeqFn emb = embed_interval(ind, k, M_tilde);
  const double p = u_power_recursive(win_from_seq(emb), k, true);
  std::lock_guard<std::mutex> lock(g_norm_mutex);
  g_normalizer_cache.emplace(key, p);
  return p;
}

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::direct: return "direct";
    case Method::recursion: return "recursion";
    default: return "fft";
  }
}

GowersResult gowers_norm_group(const SeqFn& f, int k, Method method) {
  require_k(k);
  if (f.is_interval()) throw std::invalid_argument("gowers_norm_group expects a cyclic-domain function");
  f.check_one_bounded();
  GowersResult r;
  r.k = k;
  r.method = method;
  r.domain = "Z_" + std::to_string(f.size());
  switch (method) {
    case Method::direct: r.power_value = u_power_direct(f, k); break;
    case Method::recursion: r.power_value = u_power_recursive(win_from_seq(f), k, true); break;
    case Method::fft:
      if (k != 2) throw std::invalid_argument("gowers_norm_group: fft method is defined only for k=2");
      r.power_value = u2_power_fft(f);
      break;
  }
  r.norm_value = root_2k(r.power_value, k);
  return r;
}

GowersResult gowers_norm_interval(const SeqFn& f, int k, std::optional<std::int64_t> M_tilde) {
  require_k(k);
  if (!f.is_interval()) throw std::invalid_argument("gowers_norm_interval expects an interval-domain function");
  f.check_one_bounded();
  const std::int64_t N = f.size();
  const std::int64_t M = M_tilde.value_or((std::int64_t(1) << k) * N);
  if (M < (std::int64_t(1) << k) * N)
    throw std::invalid_argument("gowers_norm_interval: ambient modulus must be at least 2^k N");
  SeqFn emb = embed_interval(f, k, M);
  GowersResult r;
  r.k = k;
  r.method = Method::recursion;
  r.domain = "[" + std::to_string(N) + "] in Z_" + std::to_string(M);
  const double pf = u_power_recursive(win_from_seq(emb), k, true);
  const double p1 = indicator_power(N, k, M);
  r.power_value = pf / p1;
  r.norm_value = root_2k(r.power_value, k);
  return r;
}

std::complex<double> gowers_inner_product(const std::vector<SeqFn>& fs, int k) {
  require_k(k);
  const std::size_t count = std::size_t(1) << k;
  if (fs.size() != count)
    throw std::invalid_argument("gowers_inner_product: expected " + std::to_string(count) + " functions");
  const std::int64_t M = fs[0].size();
  for (const SeqFn& f : fs) {
    if (f.is_interval() || f.size() != M)
      throw std::invalid_argument("gowers_inner_product: all functions must share one cyclic domain");
    f.check_one_bounded();
  }
  double ops = static_cast<double>(count);
  for (int j = 0; j <= k; ++j) ops *= static_cast<double>(M);
  if (ops > 2e8) throw std::invalid_argument("gowers_inner_product: domain too large for the direct evaluation");

  // Pre-conjugate the odd-popcount slots once.
  std::vector<std::vector<cplx>> g(count);
  for (std::size_t w = 0; w < count; ++w) {
    g[w] = fs[w].values;
    if (__builtin_popcountll(w) & 1)
      for (cplx& v : g[w]) v = std::conj(v);
  }

  std::vector<cplx> partial(M);
  parallel_blocks(M, [&](std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> h(k, 0);
    for (std::int64_t h1 = lo; h1 < hi; ++h1) {
      cplx acc(0.0, 0.0);
      h[0] = h1;
      // Odometer over the remaining shifts h_2..h_k.
      std::fill(h.begin() + 1, h.end(), 0);
      while (true) {
        for (std::int64_t x = 0; x < M; ++x) {
          cplx term(1.0, 0.0);
          for (std::size_t w = 0; w < count; ++w) {
            std::int64_t pos = x;
            for (int i = 0; i < k; ++i)
              if (w & (std::size_t(1) << i)) pos += h[i];
            term *= g[w][pos % M];
          }
          acc += term;
        }
        int i = 1;
        while (i < k && ++h[i] == M) h[i++] = 0;
        if (i == k) break;
      }
      partial[h1] = acc;
    }
  });
  cplx total = pairwise_sum(partial, 0, partial.size());
  double scale = 1.0;
  for (int j = 0; j <= k; ++j) scale /= static_cast<double>(M);
  return total * scale;
}

QuadrupleReport count_correlated_quadruples(const SeqFn& f, const ShiftSet& H,
                                            const std::map<std::int64_t, SeqFn>& chi,
                                            std::optional<double> delta, double c,
                                            std::optional<std::int64_t> Nprime_opt) {
  if (!f.is_interval()) throw std::invalid_argument("count_correlated_quadruples: f must live on an interval");
  const std::int64_t N = f.size();
  if (H.N != N) throw std::invalid_argument("count_correlated_quadruples: shift set is for a different interval");
  for (std::size_t i = 0; i < H.H.size(); ++i) {
    if (H.H[i] < 1 || H.H[i] > N) throw std::invalid_argument("count_correlated_quadruples: shifts must lie in [1, N]");
    if (i && H.H[i] <= H.H[i - 1]) throw std::invalid_argument("count_correlated_quadruples: shifts must be sorted and distinct");
  }
  const std::int64_t Nprime = Nprime_opt.value_or(2 * N + 1);
  if (Nprime < N + 1) throw std::invalid_argument("count_correlated_quadruples: N' must exceed N");

  QuadrupleReport rep;
  rep.Nprime = Nprime;
  rep.eta = H.eta();
  const std::size_t m = H.H.size();
  if (m == 0) {
    rep.delta = delta.value_or(0.0);
    return rep;
  }

  // Hypothesis check: each shifted self-correlation against its model chi_h
  // (sums zero-extended past N) must reach delta.
  double measured_min = 2.0;
  std::int64_t worst_h = H.H[0];
  std::vector<std::vector<cplx>> chiZ(m);  // chi_h zero-extended to [0, N')
  for (std::size_t i = 0; i < m; ++i) {
    const std::int64_t h = H.H[i];
    auto it = chi.find(h);
    if (it == chi.end())
      throw std::invalid_argument("count_correlated_quadruples: missing model for shift " + std::to_string(h));
    const SeqFn& ch = it->second;
    if (!ch.is_interval() || ch.size() != N)
      throw std::invalid_argument("count_correlated_quadruples: model for shift " + std::to_string(h) +
                                  " must live on the same interval");
    ch.check_one_bounded();
    cplx s(0.0, 0.0);
    for (std::int64_t n = 1; n + h <= N; ++n)
      s += f.values[n + h - 1] * std::conj(f.values[n - 1]) * std::conj(ch.values[n - 1]);
    const double corr = std::abs(s) / static_cast<double>(N);
    if (corr < measured_min) {
      measured_min = corr;
      worst_h = h;
    }
    chiZ[i].assign(Nprime, cplx(0.0, 0.0));
    for (std::int64_t n = 1; n <= N; ++n) chiZ[i][n] = ch.values[n - 1];
  }
  if (delta && measured_min < *delta - 1e-12)
    throw std::runtime_error("count_correlated_quadruples: hypothesis fails at h=" + std::to_string(worst_h) +
                             " (correlation " + std::to_string(measured_min) + " < delta)");
  rep.delta = delta.value_or(measured_min);
  rep.threshold_used = c * std::pow(rep.eta, 4) * rep.delta * rep.delta;
  rep.bound = std::pow(rep.eta, 8) * std::pow(rep.delta, 4) * std::pow(static_cast<double>(N), 3) / 2.0;

  // Value -> index lookup for the h4 membership test.
  std::vector<std::int32_t> idx_of(N + 1, -1);
  for (std::size_t i = 0; i < m; ++i) idx_of[H.H[i]] = static_cast<std::int32_t>(i);

  // Pairwise product arrays P[a][b][p] = chi_a(p) conj(chi_b(p)), cached when
  // they fit; otherwise formed on the fly per (h1,h3) row.
  const bool cache_products = static_cast<double>(m) * m * Nprime <= 3e7;
  std::vector<std::vector<cplx>> P;
  if (cache_products) {
    P.resize(m * m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) {
        auto& row = P[a * m + b];
        row.resize(Nprime);
        for (std::int64_t p = 0; p < Nprime; ++p) row[p] = chiZ[a][p] * std::conj(chiZ[b][p]);
      }
  }
  auto product_row = [&](std::size_t a, std::size_t b, std::vector<cplx>& scratch) -> const std::vector<cplx>& {
    if (cache_products) return P[a * m + b];
    scratch.resize(Nprime);
    for (std::int64_t p = 0; p < Nprime; ++p) scratch[p] = chiZ[a][p] * std::conj(chiZ[b][p]);
    return scratch;
  };

  const double thresh = rep.threshold_used - 1e-12;
  std::vector<std::int64_t> hit_partial(m, 0), all_partial(m, 0);
  parallel_blocks(static_cast<std::int64_t>(m), [&](std::int64_t lo, std::int64_t hi) {
    std::vector<cplx> scratchA, scratchB;
    for (std::int64_t i1 = lo; i1 < hi; ++i1) {
      const std::int64_t h1 = H.H[i1];
      std::int64_t hits = 0, all = 0;
      for (std::size_t i3 = 0; i3 < m; ++i3) {
        const std::vector<cplx>& A = product_row(i1, i3, scratchA);
        for (std::size_t i2 = 0; i2 < m; ++i2) {
          const std::int64_t h4 = h1 + H.H[i2] - H.H[i3];
          if (h4 < 1 || h4 > N || idx_of[h4] < 0) continue;
          const std::size_t i4 = static_cast<std::size_t>(idx_of[h4]);
          ++all;
          const std::vector<cplx>& B = product_row(i2, i4, scratchB);
          std::int64_t d = (h1 - h4) % Nprime;
          if (d < 0) d += Nprime;
          cplx s(0.0, 0.0);
          std::int64_t q = d;
          for (std::int64_t p = 0; p < Nprime; ++p) {
            s += A[p] * B[q];
            if (++q == Nprime) q = 0;
          }
          if (std::abs(s) / static_cast<double>(Nprime) >= thresh) ++hits;
        }
      }
      hit_partial[i1] = hits;
      all_partial[i1] = all;
    }
  });
  for (std::size_t i = 0; i < m; ++i) {
    rep.count += hit_partial[i];
    rep.additive_quadruples += all_partial[i];
  }
  return rep;
}

}  // namespace gowerslab::gowers
