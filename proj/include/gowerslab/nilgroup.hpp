#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "gowerslab/scalar.hpp"

// Exact arithmetic on free nilpotent groups in Mal'cev coordinates: the free
// 2-step group on k generators and the free 3-step group on 3 generators.
// Everything is templated on the scalar S in {Rational, double}; rational mode
// is exact, float mode accumulates O(n^2) ulp error in iterated products and
// power3<double> refuses n beyond 1000 for that reason.
//
// Template definitions live in the .cpp (explicitly instantiated for Rational
// and double); the 3-step multiplication law is machine-generated, see
// tools/gen_free3_law.py.

namespace gowerslab::nil {

// -------- free 2-step group on k generators --------
//
// Coordinates (t_1..t_k, t_[2,1], t_[3,1], t_[3,2], ..., t_[k,k-1]): k
// horizontal entries, then one entry per pair i < i', grouped by i'.
// Multiplication: s_i = t_i + u_i,  s_[i',i] = t_[i',i] + u_[i',i] + t_i' u_i.
template <class S>
struct Malcev2 {
  int k = 0;
  std::vector<S> t;  // size k + k(k-1)/2
};

// index of t_[i',i] within Malcev2::t, generators 1-based, i < ip <= k
int pair_index(int k, int i, int ip);
int dim2(int k);  // k + k(k-1)/2

template <class S>
Malcev2<S> identity2(int k);
template <class S>
Malcev2<S> mul2(const Malcev2<S>& a, const Malcev2<S>& b);
template <class S>
Malcev2<S> inverse2(const Malcev2<S>& a);

// g * gamma lands in the fundamental domain [0,1)^dim; gamma has integer
// coordinates. reduced_i = {t_i}, reduced_[i',i] = {t_[i',i] - t_i' [t_i]}.
template <class S>
struct Reduced2 {
  Malcev2<S> reduced;
  Malcev2<S> gamma;
};
template <class S>
Reduced2<S> reduce2(const Malcev2<S>& g);

// polynomial sequence g(n) = (xi_1 n, ..., xi_k n, q_[2,1](n), ...), each q a
// quadratic a n^2 + b n + c; degree-2 adapted (second discrete derivatives
// have zero horizontal part, third derivatives are the identity)
template <class S>
struct PolySeq2 {
  struct Quad {
    S a{}, b{}, c{};
  };
  std::vector<S> xi;
  std::vector<Quad> q;  // aligned with the pair coordinates
};

template <class S>
Malcev2<S> polyseq2_eval(const PolySeq2<S>& ps, std::int64_t n);

// Vertical character phase at coordinate [i',i], in cycles.
//   group path:  reduce2(g(n)) read at [i',i]
//   closed form: xi_i n [xi_i' n] + (a - xi_i xi_i') n^2 + b n + c
//                + {xi_i n}{xi_i' n}   (mod 1)
// The two agree identically; rational mode checks this exactly. The final
// fractional-product term is the cost of swapping which frequency sits inside
// the floor, and is what the group path's -xi_i' n [xi_i n] turns into.
template <class S>
S nilchar2_group(const PolySeq2<S>& ps, int i, int ip, std::int64_t n);
template <class S>
S nilchar2_closed(const PolySeq2<S>& ps, int i, int ip, std::int64_t n);

// -------- free 3-step group on 3 generators --------
//
// 14 coordinates in the order
//   t1 t2 t3 t21 t211 t31 t311 t32 t322 t212 t312 t213 t313 t323
template <class S>
using Malcev3 = std::array<S, 14>;

const std::array<const char*, 14>& coord3_names();
int coord3_index(std::string_view name);  // -1 if unknown

template <class S>
Malcev3<S> identity3();
template <class S>
Malcev3<S> mul3(const Malcev3<S>& a, const Malcev3<S>& b);
template <class S>
Malcev3<S> inverse3(const Malcev3<S>& a);

// square-and-multiply; negative n via the inverse. Float mode throws
// std::domain_error for |n| > 1000 (error growth O(n^2) ulp).
template <class S>
Malcev3<S> power3(const Malcev3<S>& g, std::int64_t n);

// horizontal element e1^a e2^b e3^c
template <class S>
Malcev3<S> horizontal3(const S& a, const S& b, const S& c);

// successive peeling in coordinate order: peeling index m changes only
// coordinates at later indices, so one pass lands every coordinate in [0,1).
template <class S>
struct Reduced3 {
  Malcev3<S> reduced;
  Malcev3<S> gamma;  // integer coordinates, g * gamma == reduced
};
template <class S>
Reduced3<S> reduce3(const Malcev3<S>& g);

// t312 coordinate after reduction, directly from the coordinates of g:
//   {t312 - t32 [t1] - t31 [t2] + t3 [t1][t2]}
// (what reduce3 computes at index t312; exposed for the closed-form checks)
template <class S>
S s312_reduced(const Malcev3<S>& g);

// Phase of the t312 vertical character along the orbit n -> g^n for
// g = e1^alpha e2^beta e3^gamma, in cycles.
//   group path:  power3 then s312_reduced
//   closed form: {abc(2C(n,3)+C(n,2)) - C(n,2)bc[an] - C(n,2)ac[bn]
//                 + n c [an][bn]}
template <class S>
S f312_orbit_group(const S& alpha, const S& beta, const S& gamma, std::int64_t n);
template <class S>
S f312_orbit_closed(const S& alpha, const S& beta, const S& gamma, std::int64_t n);

}  // namespace gowerslab::nil
