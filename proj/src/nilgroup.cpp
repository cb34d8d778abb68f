#include "gowerslab/nilgroup.hpp"

#include <stdexcept>
#include <string>
#include <type_traits>

namespace gowerslab::nil {

namespace {
#include "generated/free3_law.inc"

template <class S>
S from_int(std::int64_t n) {
  return S(static_cast<long>(n));
}

}  // namespace

int dim2(int k) {
  if (k < 1) throw std::invalid_argument("generator count must be positive");
  return k + k * (k - 1) / 2;
}

int pair_index(int k, int i, int ip) {
  if (!(1 <= i && i < ip && ip <= k)) throw std::invalid_argument("pair index wants 1 <= i < i' <= k");
  return k + (ip - 1) * (ip - 2) / 2 + (i - 1);
}

template <class S>
Malcev2<S> identity2(int k) {
  Malcev2<S> g;
  g.k = k;
  g.t.assign(static_cast<std::size_t>(dim2(k)), S(0));
  return g;
}

template <class S>
Malcev2<S> mul2(const Malcev2<S>& a, const Malcev2<S>& b) {
  if (a.k != b.k || a.t.size() != b.t.size() || a.t.size() != static_cast<std::size_t>(dim2(a.k)))
    throw std::invalid_argument("mul2: dimension mismatch");
  Malcev2<S> s = identity2<S>(a.k);
  for (int i = 0; i < a.k; ++i) s.t[i] = a.t[i] + b.t[i];
  for (int ip = 2; ip <= a.k; ++ip)
    for (int i = 1; i < ip; ++i) {
      const int idx = pair_index(a.k, i, ip);
      s.t[idx] = a.t[idx] + b.t[idx] + a.t[ip - 1] * b.t[i - 1];
    }
  return s;
}

template <class S>
Malcev2<S> inverse2(const Malcev2<S>& a) {
  Malcev2<S> x = identity2<S>(a.k);
  for (int i = 0; i < a.k; ++i) x.t[i] = -a.t[i];
  for (int ip = 2; ip <= a.k; ++ip)
    for (int i = 1; i < ip; ++i) {
      const int idx = pair_index(a.k, i, ip);
      x.t[idx] = a.t[ip - 1] * a.t[i - 1] - a.t[idx];
    }
  return x;
}

template <class S>
Reduced2<S> reduce2(const Malcev2<S>& g) {
  Reduced2<S> r{identity2<S>(g.k), identity2<S>(g.k)};
  for (int i = 0; i < g.k; ++i) {
    r.reduced.t[i] = sfrac(g.t[i]);
    r.gamma.t[i] = -sfloor(g.t[i]);
  }
  for (int ip = 2; ip <= g.k; ++ip)
    for (int i = 1; i < ip; ++i) {
      const int idx = pair_index(g.k, i, ip);
      S v = g.t[idx] - g.t[ip - 1] * sfloor(g.t[i - 1]);
      r.reduced.t[idx] = sfrac(v);
      r.gamma.t[idx] = -sfloor(v);
    }
  return r;
}

template <class S>
Malcev2<S> polyseq2_eval(const PolySeq2<S>& ps, std::int64_t n) {
  const int k = static_cast<int>(ps.xi.size());
  if (ps.q.size() != static_cast<std::size_t>(dim2(k) - k))
    throw std::invalid_argument("polyseq2_eval: need one quadratic per pair coordinate");
  Malcev2<S> g = identity2<S>(k);
  const S N = from_int<S>(n);
  for (int i = 0; i < k; ++i) g.t[i] = ps.xi[i] * N;
  for (std::size_t p = 0; p < ps.q.size(); ++p) {
    const auto& q = ps.q[p];
    g.t[k + p] = q.a * N * N + q.b * N + q.c;
  }
  return g;
}

template <class S>
S nilchar2_group(const PolySeq2<S>& ps, int i, int ip, std::int64_t n) {
  const int k = static_cast<int>(ps.xi.size());
  const int idx = pair_index(k, i, ip);
  return reduce2(polyseq2_eval(ps, n)).reduced.t[idx];
}

template <class S>
S nilchar2_closed(const PolySeq2<S>& ps, int i, int ip, std::int64_t n) {
  const int k = static_cast<int>(ps.xi.size());
  const int idx = pair_index(k, i, ip);
  const auto& q = ps.q[idx - k];
  const S N = from_int<S>(n);
  const S xin = ps.xi[i - 1] * N, xipn = ps.xi[ip - 1] * N;
  S v = xin * sfloor(xipn) + (q.a - ps.xi[i - 1] * ps.xi[ip - 1]) * N * N + q.b * N + q.c + sfrac(xin) * sfrac(xipn);
  return sfrac(v);
}

const std::array<const char*, 14>& coord3_names() {
  static const std::array<const char*, 14> names = {"t1",  "t2",  "t3",  "t21",  "t211", "t31",  "t311",
                                                    "t32", "t322", "t212", "t312", "t213", "t313", "t323"};
  return names;
}

int coord3_index(std::string_view name) {
  const auto& names = coord3_names();
  for (int i = 0; i < 14; ++i)
    if (name == names[i]) return i;
  return -1;
}

template <class S>
Malcev3<S> identity3() {
  Malcev3<S> g;
  for (auto& v : g) v = S(0);
  return g;
}

template <class S>
Malcev3<S> mul3(const Malcev3<S>& a, const Malcev3<S>& b) {
  return free3_mul(a, b);
}

template <class S>
Malcev3<S> inverse3(const Malcev3<S>& a) {
  return free3_inv(a);
}

template <class S>
Malcev3<S> horizontal3(const S& a, const S& b, const S& c) {
  Malcev3<S> g = identity3<S>();
  g[0] = a;
  g[1] = b;
  g[2] = c;
  return g;
}

template <class S>
Malcev3<S> power3(const Malcev3<S>& g, std::int64_t n) {
  if constexpr (std::is_same_v<S, double>) {
    if (n > 1000 || n < -1000) throw std::domain_error("power3: float mode capped at |n| <= 1000");
  }
  if (n < 0) return inverse3(power3(g, -n));
  Malcev3<S> result = identity3<S>();
  Malcev3<S> base = g;
  while (n > 0) {
    if (n & 1) result = mul3(result, base);
    n >>= 1;
    if (n > 0) base = mul3(base, base);
  }
  return result;
}

template <class S>
Reduced3<S> reduce3(const Malcev3<S>& g) {
  // Peeling e_m^{-[t_m]} fixes every coordinate before index m (sliding the
  // peel into normal position only spawns commutators that live at later
  // indices), so a single in-order pass reduces everything.
  Reduced3<S> r{g, identity3<S>()};
  for (int m = 0; m < 14; ++m) {
    S fl = sfloor(r.reduced[m]);
    if (fl == S(0)) continue;
    Malcev3<S> peel = identity3<S>();
    peel[m] = -fl;
    r.reduced = mul3(r.reduced, peel);
    r.gamma = mul3(r.gamma, peel);
  }
  return r;
}

template <class S>
S s312_reduced(const Malcev3<S>& g) {
  S v = g[10] - g[7] * sfloor(g[0]) - g[5] * sfloor(g[1]) + g[2] * sfloor(g[0]) * sfloor(g[1]);
  return sfrac(v);
}

template <class S>
S f312_orbit_group(const S& alpha, const S& beta, const S& gamma, std::int64_t n) {
  return reduce3(power3(horizontal3(alpha, beta, gamma), n)).reduced[10];
}

template <class S>
S f312_orbit_closed(const S& alpha, const S& beta, const S& gamma, std::int64_t n) {
  const S N = from_int<S>(n);
  const S C2 = N * (N - S(1)) / S(2);
  const S C3 = N * (N - S(1)) * (N - S(2)) / S(6);
  const S fa = sfloor(alpha * N), fb = sfloor(beta * N);
  S v = alpha * beta * gamma * (S(2) * C3 + C2) - C2 * beta * gamma * fa - C2 * alpha * gamma * fb + N * gamma * fa * fb;
  return sfrac(v);
}

// ---- explicit instantiations for the two scalar modes ----

template Malcev2<Rational> identity2<Rational>(int);
template Malcev2<double> identity2<double>(int);
template Malcev2<Rational> mul2(const Malcev2<Rational>&, const Malcev2<Rational>&);
template Malcev2<double> mul2(const Malcev2<double>&, const Malcev2<double>&);
template Malcev2<Rational> inverse2(const Malcev2<Rational>&);
template Malcev2<double> inverse2(const Malcev2<double>&);
template Reduced2<Rational> reduce2(const Malcev2<Rational>&);
template Reduced2<double> reduce2(const Malcev2<double>&);
template Malcev2<Rational> polyseq2_eval(const PolySeq2<Rational>&, std::int64_t);
template Malcev2<double> polyseq2_eval(const PolySeq2<double>&, std::int64_t);
template Rational nilchar2_group(const PolySeq2<Rational>&, int, int, std::int64_t);
template double nilchar2_group(const PolySeq2<double>&, int, int, std::int64_t);
template Rational nilchar2_closed(const PolySeq2<Rational>&, int, int, std::int64_t);
template double nilchar2_closed(const PolySeq2<double>&, int, int, std::int64_t);
template Malcev3<Rational> identity3<Rational>();
template Malcev3<double> identity3<double>();
template Malcev3<Rational> mul3(const Malcev3<Rational>&, const Malcev3<Rational>&);
template Malcev3<double> mul3(const Malcev3<double>&, const Malcev3<double>&);
template Malcev3<Rational> inverse3(const Malcev3<Rational>&);
template Malcev3<double> inverse3(const Malcev3<double>&);
template Malcev3<Rational> horizontal3(const Rational&, const Rational&, const Rational&);
template Malcev3<double> horizontal3(const double&, const double&, const double&);
template Malcev3<Rational> power3(const Malcev3<Rational>&, std::int64_t);
template Malcev3<double> power3(const Malcev3<double>&, std::int64_t);
template Reduced3<Rational> reduce3(const Malcev3<Rational>&);
template Reduced3<double> reduce3(const Malcev3<double>&);
template Rational s312_reduced(const Malcev3<Rational>&);
template double s312_reduced(const Malcev3<double>&);
template Rational f312_orbit_group(const Rational&, const Rational&, const Rational&, std::int64_t);
template double f312_orbit_group(const double&, const double&, const double&, std::int64_t);
template Rational f312_orbit_closed(const Rational&, const Rational&, const Rational&, std::int64_t);
template double f312_orbit_closed(const double&, const double&, const double&, std::int64_t);

}  // namespace gowerslab::nil
