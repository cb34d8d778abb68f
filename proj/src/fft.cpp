#include "gowerslab/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>

namespace gowerslab {

namespace {

struct PlanEntry {
  fftw_plan plan;
  fftw_complex* in;
  fftw_complex* out;
};

std::mutex g_plan_mutex;
std::map<std::pair<std::int64_t, int>, PlanEntry> g_plans;

fftw_plan get_plan(std::int64_t n, int sign) {
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto key = std::make_pair(n, sign);
  auto it = g_plans.find(key);
  if (it != g_plans.end()) return it->second.plan;
  PlanEntry e;
  e.in = fftw_alloc_complex(static_cast<std::size_t>(n));
  e.out = fftw_alloc_complex(static_cast<std::size_t>(n));
  e.plan = fftw_plan_dft_1d(static_cast<int>(n), e.in, e.out, sign, FFTW_ESTIMATE);
  g_plans.emplace(key, e);
  return e.plan;
}

// new-array execution on per-call buffers: thread-safe and deterministic
std::vector<std::complex<double>> run_dft(const std::vector<std::complex<double>>& in, int sign) {
  std::int64_t n = static_cast<std::int64_t>(in.size());
  fftw_plan plan = get_plan(n, sign);
  fftw_complex* a = fftw_alloc_complex(in.size());
  fftw_complex* b = fftw_alloc_complex(in.size());
  std::memcpy(a, reinterpret_cast<const double*>(in.data()), in.size() * sizeof(fftw_complex));
  fftw_execute_dft(plan, a, b);
  std::vector<std::complex<double>> out(in.size());
  std::memcpy(reinterpret_cast<double*>(out.data()), b, in.size() * sizeof(fftw_complex));
  fftw_free(a);
  fftw_free(b);
  return out;
}

}  // namespace

std::vector<std::complex<double>> dft_forward(const std::vector<std::complex<double>>& in) {
  return run_dft(in, FFTW_FORWARD);
}

std::vector<std::complex<double>> cyclic_autocorr(const std::vector<std::complex<double>>& f) {
  std::size_t M = f.size();
  std::vector<std::complex<double>> F = run_dft(f, FFTW_FORWARD);
  for (auto& v : F) v = std::norm(v);
  std::vector<std::complex<double>> c = run_dft(F, FFTW_BACKWARD);
  double inv = 1.0 / static_cast<double>(M);
  for (auto& v : c) v *= inv;
  return c;
}

std::vector<std::complex<double>> linear_autocorr(const std::vector<std::complex<double>>& w) {
  std::size_t W = w.size();
  std::vector<std::complex<double>> out(2 * W - 1);
  if (W <= 48) {
    for (std::size_t sh = 0; sh < W; ++sh) {  // t = sh >= 0
      std::complex<double> acc{};
      for (std::size_t x = 0; x + sh < W; ++x) acc += w[x + sh] * std::conj(w[x]);
      out[W - 1 + sh] = acc;
      if (sh) out[W - 1 - sh] = std::conj(acc);
    }
    return out;
  }
  std::size_t L = 1;
  while (L < 2 * W) L <<= 1;
  std::vector<std::complex<double>> pad(L);
  std::copy(w.begin(), w.end(), pad.begin());
  std::vector<std::complex<double>> F = run_dft(pad, FFTW_FORWARD);
  for (auto& v : F) v = std::norm(v);
  std::vector<std::complex<double>> c = run_dft(F, FFTW_BACKWARD);
  double inv = 1.0 / static_cast<double>(L);
  for (std::size_t t = 0; t < W; ++t) out[W - 1 + t] = c[t] * inv;
  for (std::size_t t = 1; t < W; ++t) out[W - 1 - t] = c[L - t] * inv;
  return out;
}

}  // namespace gowerslab
