#include "gowerslab/seqfn.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace gowerslab {

SeqFn SeqFn::interval(std::int64_t N) {
  if (N < 1) throw std::invalid_argument("interval length must be positive");
  SeqFn f;
  f.dom = Dom::Interval;
  f.len = N;
  f.values.assign(static_cast<std::size_t>(N), cplx{});
  return f;
}

SeqFn SeqFn::cyclic(std::int64_t M) {
  if (M < 2) throw std::invalid_argument("cyclic modulus must be >= 2");
  SeqFn f;
  f.dom = Dom::Cyclic;
  f.len = M;
  f.values.assign(static_cast<std::size_t>(M), cplx{});
  return f;
}

void SeqFn::check_one_bounded(double slack) const {
  if (static_cast<std::int64_t>(values.size()) != len)
    throw std::invalid_argument("value array length does not match domain size");
  double lim = (1.0 + slack) * (1.0 + slack);
  for (const cplx& v : values) {
    if (std::norm(v) > lim) throw std::invalid_argument("sequence is not 1-bounded");
  }
}

SeqFn embed_interval(const SeqFn& f, int k, std::optional<std::int64_t> M_tilde) {
  if (!f.is_interval()) throw std::invalid_argument("embed_interval needs an interval function");
  if (k < 1 || k > 4) throw std::invalid_argument("k must be in 1..4");
  std::int64_t min_m = f.len << k;
  std::int64_t M = M_tilde.value_or(min_m);
  if (M < min_m) throw std::invalid_argument("embedding modulus below 2^k * N");
  SeqFn g = SeqFn::cyclic(M);
  for (std::int64_t n = 1; n <= f.len; ++n)
    g.values[static_cast<std::size_t>(n)] = f.values[static_cast<std::size_t>(n - 1)];
  return g;
}

SeqFn mult_derivative(const SeqFn& f, std::int64_t h) {
  if (f.is_interval()) throw std::invalid_argument("mult_derivative is defined on cyclic domains");
  std::int64_t M = f.len;
  h %= M;
  if (h < 0) h += M;
  SeqFn g = SeqFn::cyclic(M);
  for (std::int64_t x = 0; x < M; ++x) {
    std::int64_t y = x + h;
    if (y >= M) y -= M;
    g.values[static_cast<std::size_t>(x)] =
        f.values[static_cast<std::size_t>(y)] * std::conj(f.values[static_cast<std::size_t>(x)]);
  }
  return g;
}

SeqFn phase_seq(SeqFn::Dom dom, std::int64_t len, const std::function<double(std::int64_t)>& phase_cycles) {
  SeqFn f = dom == SeqFn::Dom::Interval ? SeqFn::interval(len) : SeqFn::cyclic(len);
  std::int64_t base = dom == SeqFn::Dom::Interval ? 1 : 0;
  for (std::int64_t i = 0; i < len; ++i)
    f.values[static_cast<std::size_t>(i)] = e_cycles(phase_cycles(base + i));
  return f;
}

std::vector<double> poly_phases(const std::vector<Rational>& coeffs, std::int64_t start, std::int64_t count) {
  // Exact forward-difference stepping mod 1. Denominators never grow past the
  // lcm of the coefficient denominators, so each step is a cheap mpq addition
  // and the fractional part is exact at every n.
  if (coeffs.size() > 4) throw std::invalid_argument("polynomial degree must be <= 3");
  std::size_t d = coeffs.empty() ? 0 : coeffs.size() - 1;
  std::vector<Rational> exact(d + 1);  // exact[i] = P(start + i) before reduction
  for (std::size_t i = 0; i <= d; ++i) {
    Rational acc(0), pw(1);
    Rational n(static_cast<long>(start + static_cast<std::int64_t>(i)));
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      acc += coeffs[j] * pw;
      pw *= n;
    }
    exact[i] = acc;
  }
  std::vector<Rational> diff(d + 1);
  for (std::size_t lvl = 0; lvl <= d; ++lvl) {
    if (lvl > 0)
      for (std::size_t i = 0; i + 1 < exact.size(); ++i) exact[i] = exact[i + 1] - exact[i];
    diff[lvl] = sfrac(exact[0]);
  }
  const Rational one(1);
  std::vector<double> out(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = to_double(diff[0]);
    for (std::size_t lvl = 0; lvl < d; ++lvl) {
      diff[lvl] += diff[lvl + 1];
      if (diff[lvl] >= one) diff[lvl] -= one;
    }
  }
  return out;
}

std::vector<double> poly_phases(const std::vector<double>& coeffs, std::int64_t start, std::int64_t count) {
  // Difference table seeded from the closed forms of the forward differences
  // and stepped in long double. Each double coefficient carries at most 53
  // mantissa bits, so for moderate start the table entries are dyadic with
  // headroom inside the 64-bit long double mantissa and the mod-1 stepping is
  // exact; the worst case is bounded by per-step rounding, ~n^3 ulp/6.
  if (coeffs.size() > 4) throw std::invalid_argument("polynomial degree must be <= 3");
  std::size_t d = coeffs.empty() ? 0 : coeffs.size() - 1;
  const long double a0 = coeffs.empty() ? 0.0L : static_cast<long double>(coeffs[0]);
  const long double a1 = d >= 1 ? static_cast<long double>(coeffs[1]) : 0.0L;
  const long double a2 = d >= 2 ? static_cast<long double>(coeffs[2]) : 0.0L;
  const long double a3 = d >= 3 ? static_cast<long double>(coeffs[3]) : 0.0L;
  const long double s = static_cast<long double>(start);
  std::vector<long double> diff(d + 1);
  auto reduce = [](long double x) {
    long double f = x - std::floor(x);
    if (f >= 1.0L || f < 0.0L) f = 0.0L;
    return f;
  };
  diff[0] = reduce(((a3 * s + a2) * s + a1) * s + a0);
  if (d >= 1) diff[1] = reduce(a1 + a2 * (2.0L * s + 1.0L) + a3 * ((3.0L * s + 3.0L) * s + 1.0L));
  if (d >= 2) diff[2] = reduce(2.0L * a2 + a3 * (6.0L * s + 6.0L));
  if (d >= 3) diff[3] = reduce(6.0L * a3);
  std::vector<double> out(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = static_cast<double>(diff[0]);
    for (std::size_t lvl = 0; lvl < d; ++lvl) {
      diff[lvl] += diff[lvl + 1];
      if (diff[lvl] >= 1.0L) diff[lvl] -= 1.0L;
    }
  }
  return out;
}

SeqFn purepoly_seq(SeqFn::Dom dom, std::int64_t len, const std::vector<Rational>& coeffs) {
  SeqFn f = dom == SeqFn::Dom::Interval ? SeqFn::interval(len) : SeqFn::cyclic(len);
  std::int64_t base = dom == SeqFn::Dom::Interval ? 1 : 0;
  std::vector<double> ph = poly_phases(coeffs, base, len);
  for (std::int64_t i = 0; i < len; ++i)
    f.values[static_cast<std::size_t>(i)] = e_cycles(ph[static_cast<std::size_t>(i)]);
  return f;
}

void save_csv(const SeqFn& f, std::ostream& out) {
  out << "index,re,im\n";
  std::int64_t base = f.is_interval() ? 1 : 0;
  char buf[96];
  for (std::int64_t i = 0; i < f.len; ++i) {
    const cplx& v = f.values[static_cast<std::size_t>(i)];
    std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g\n",
                  static_cast<long long>(base + i), v.real(), v.imag());
    out << buf;
  }
}

SeqFn load_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty csv");
  std::vector<cplx> vals;
  std::int64_t first_index = -1;
  std::int64_t expect = -1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string tok;
    if (!std::getline(row, tok, ',')) throw std::invalid_argument("bad csv row: " + line);
    std::int64_t idx = std::stoll(tok);
    if (!std::getline(row, tok, ',')) throw std::invalid_argument("bad csv row: " + line);
    double re = std::stod(tok);
    if (!std::getline(row, tok, ',')) throw std::invalid_argument("bad csv row: " + line);
    double im = std::stod(tok);
    if (first_index < 0) {
      first_index = idx;
      if (idx != 0 && idx != 1) throw std::invalid_argument("csv index must start at 0 or 1");
      expect = idx;
    }
    if (idx != expect) throw std::invalid_argument("csv indices must be contiguous");
    ++expect;
    vals.emplace_back(re, im);
  }
  if (vals.empty()) throw std::invalid_argument("csv has no data rows");
  SeqFn f = first_index == 1 ? SeqFn::interval(static_cast<std::int64_t>(vals.size()))
                             : SeqFn::cyclic(static_cast<std::int64_t>(vals.size()));
  f.values = std::move(vals);
  return f;
}

}  // namespace gowerslab
