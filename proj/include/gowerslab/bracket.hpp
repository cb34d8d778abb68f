#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "gowerslab/scalar.hpp"

namespace gowerslab::bracket {

// Expression tree over one integer variable with rational parameters, closed
// under +, *, scalar multiples, floor and fractional part. Immutable; nodes
// are shared.
class BracketExpr {
 public:
  using Ptr = std::shared_ptr<const BracketExpr>;

  static Ptr constant(Rational c);
  static Ptr var();
  static Ptr sum(std::vector<Ptr> terms);
  static Ptr product(std::vector<Ptr> factors);
  static Ptr floor_of(Ptr x);
  static Ptr frac_of(Ptr x);
  static Ptr scale(Rational c, Ptr x);

  Rational eval(const Rational& n) const;  // exact
  double eval(double n) const;

 private:
  enum class Kind { Constant, Var, Sum, Product, Floor, Frac, Scale };
  BracketExpr(Kind k, Rational c, std::vector<Ptr> kids) : kind_(k), coef_(std::move(c)), kids_(std::move(kids)) {}

  Kind kind_;
  Rational coef_;
  std::vector<Ptr> kids_;
};

Rational eval_mod1(const BracketExpr::Ptr& e, std::int64_t n);
double eval_mod1_float(const BracketExpr::Ptr& e, std::int64_t n);

// X floor(Y) - (XY - {X}{Y} - floor(X) Y + floor(X) floor(Y)). Identically
// zero; the module's master identity, from which the lemma corrections below
// are derived.
Rational key_identity_residual(const Rational& X, const Rational& Y);
double key_identity_residual(double X, double Y);

// For phi(X,Y) = X floor(Y):
//   phi(X, Y1+Y2) - phi(X,Y1) - phi(X,Y2) == {X}{Y1} + {X}{Y2} - {X}{Y1+Y2} (mod 1)
// Returns the mod-1 residual (identically zero).
Rational phi_additivity_residual(const Rational& X, const Rational& Y1, const Rational& Y2);

// Bracket-quadratic identities, each exact mod 1 once the explicit lower-order
// corrections are included:
//   i   : (a1+a2) n [b n]  ==  a1 n [b n] + a2 n [b n]                 (exact, no correction)
//   ii  : a n [(b1+b2) n]  ==  a n [b1 n] + a n [b2 n]
//                              + {a n}{b1 n} + {a n}{b2 n} - {a n}{(b1+b2) n}
//   iii : a n [b n]        ==  -b n [a n] + a b n^2 - {a n}{b n}
//   iv  : g n [g n]        ==  2 g'^2 n^2 - 2 {g' n}^2 + 2 {g n}{g' n} - {g n}^2
//         with g reduced to [0,1) and g' := g/2 its exact half
// ([.] = floor, {.} = fractional part, everything mod 1.)
enum class LemmaCase { i, ii, iii, iv };

struct LemmaParams {
  Rational alpha1, alpha2;  // case i
  Rational alpha;           // cases ii, iii
  Rational beta;            // cases i, iii
  Rational beta1, beta2;    // case ii
  Rational gamma;           // case iv
};

struct LemmaReport {
  bool pass = true;
  std::int64_t checked = 0;
  std::int64_t fail_n = 0;  // first failing n (or first failing grid point, flattened)
  Rational lhs, rhs;        // phases mod 1 at the first failure
};

LemmaReport verify_bracket_lemma(LemmaCase c, const LemmaParams& p, std::int64_t n_lo, std::int64_t n_hi);

// [a n][b n] c n == {a n}{b n}{c n} - a n [b n][c n] - b n [a n][c n]
//   + a b n^2 [c n] + a c n^2 [b n] + b c n^2 [a n] - a b c n^3   (mod 1).
// Returns the mod-1 residual (identically zero).
Rational three_bracket_residual(const Rational& a, const Rational& b, const Rational& c, std::int64_t n);

// T(x,y,z) = sum_j {alpha_j x} (beta_j/3) y {gamma_j z} + sum_j (alpha'_j/3) {beta'_j x} y z,
// with the symmetrized variant replacing the first sum by
// sum_j {alpha_j x} btilde_j (y {gamma_j z} + z {gamma_j y}), btilde_j in [0,1/2)
// the exact half of the canonical representative of beta_j/3. When beta_j/3 is
// already in [0,1) this makes Tsym(h,n,n) = T(h,n,n) exactly.
struct TrilinearForm {
  struct BracketTerm {
    Rational alpha, beta_over3, gamma;
  };
  struct PlainTerm {
    Rational alphap_over3, betap;
  };
  std::vector<BracketTerm> bracket_terms;
  std::vector<PlainTerm> plain_terms;
  bool symmetrized = false;
  std::vector<Rational> beta_tilde;  // aligned with bracket_terms when symmetrized
};

TrilinearForm symmetrize_trilinear(const TrilinearForm& T);

Rational eval_trilinear(const TrilinearForm& T, std::int64_t x, std::int64_t y, std::int64_t z);

// Tsym(x,y,z) == Tsym(x,z,y) over (y,z) in [1,range]^2 at the given x.
LemmaReport check_trilinear_symmetry(const TrilinearForm& Tsym, std::int64_t x, std::int64_t range);

// {T(h,n,n)} == {Tsym(h,n,n)} over (h,n) in [1,range]^2.
LemmaReport check_trilinear_diagonal(const TrilinearForm& T, const TrilinearForm& Tsym, std::int64_t range);

}  // namespace gowerslab::bracket
