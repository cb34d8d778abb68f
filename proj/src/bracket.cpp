#include "gowerslab/bracket.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace gowerslab::bracket {

BracketExpr::Ptr BracketExpr::constant(Rational c) {
  return Ptr(new BracketExpr(Kind::Constant, std::move(c), {}));
}
BracketExpr::Ptr BracketExpr::var() { return Ptr(new BracketExpr(Kind::Var, Rational(0), {})); }
BracketExpr::Ptr BracketExpr::sum(std::vector<Ptr> terms) {
  return Ptr(new BracketExpr(Kind::Sum, Rational(0), std::move(terms)));
}
BracketExpr::Ptr BracketExpr::product(std::vector<Ptr> factors) {
  return Ptr(new BracketExpr(Kind::Product, Rational(0), std::move(factors)));
}
BracketExpr::Ptr BracketExpr::floor_of(Ptr x) { return Ptr(new BracketExpr(Kind::Floor, Rational(0), {std::move(x)})); }
BracketExpr::Ptr BracketExpr::frac_of(Ptr x) { return Ptr(new BracketExpr(Kind::Frac, Rational(0), {std::move(x)})); }
BracketExpr::Ptr BracketExpr::scale(Rational c, Ptr x) {
  return Ptr(new BracketExpr(Kind::Scale, std::move(c), {std::move(x)}));
}

Rational BracketExpr::eval(const Rational& n) const {
  switch (kind_) {
    case Kind::Constant: return coef_;
    case Kind::Var: return n;
    case Kind::Sum: {
      Rational s(0);
      for (const Ptr& k : kids_) s += k->eval(n);
      return s;
    }
    case Kind::Product: {
      Rational p(1);
      for (const Ptr& k : kids_) p *= k->eval(n);
      return p;
    }
    case Kind::Floor: return sfloor(kids_[0]->eval(n));
    case Kind::Frac: return sfrac(kids_[0]->eval(n));
    case Kind::Scale: return coef_ * kids_[0]->eval(n);
  }
  throw std::logic_error("unreachable");
}

double BracketExpr::eval(double n) const {
  switch (kind_) {
    case Kind::Constant: return to_double(coef_);
    case Kind::Var: return n;
    case Kind::Sum: {
      double s = 0;
      for (const Ptr& k : kids_) s += k->eval(n);
      return s;
    }
    case Kind::Product: {
      double p = 1;
      for (const Ptr& k : kids_) p *= k->eval(n);
      return p;
    }
    case Kind::Floor: return std::floor(kids_[0]->eval(n));
    case Kind::Frac: return sfrac(kids_[0]->eval(n));
    case Kind::Scale: return to_double(coef_) * kids_[0]->eval(n);
  }
  throw std::logic_error("unreachable");
}

Rational eval_mod1(const BracketExpr::Ptr& e, std::int64_t n) {
  return sfrac(e->eval(Rational(static_cast<long>(n))));
}

double eval_mod1_float(const BracketExpr::Ptr& e, std::int64_t n) {
  return sfrac(e->eval(static_cast<double>(n)));
}

Rational key_identity_residual(const Rational& X, const Rational& Y) {
  Rational fX = sfloor(X), fY = sfloor(Y);
  return X * fY - (X * Y - sfrac(X) * sfrac(Y) - fX * Y + fX * fY);
}

double key_identity_residual(double X, double Y) {
  double fX = std::floor(X), fY = std::floor(Y);
  return X * fY - (X * Y - sfrac(X) * sfrac(Y) - fX * Y + fX * fY);
}

Rational phi_additivity_residual(const Rational& X, const Rational& Y1, const Rational& Y2) {
  Rational lhs = X * sfloor(Y1 + Y2) - X * sfloor(Y1) - X * sfloor(Y2);
  Rational rhs = sfrac(X) * sfrac(Y1) + sfrac(X) * sfrac(Y2) - sfrac(X) * sfrac(Y1 + Y2);
  return smod1(lhs - rhs);
}

namespace {

Rational nq(std::int64_t n) { return Rational(static_cast<long>(n)); }

// both sides of the selected identity at integer n, as un-reduced reals
std::pair<Rational, Rational> lemma_sides(LemmaCase c, const LemmaParams& p, std::int64_t n) {
  const Rational N = nq(n);
  switch (c) {
    case LemmaCase::i: {
      Rational fl = sfloor(p.beta * N);
      return {(p.alpha1 + p.alpha2) * N * fl, p.alpha1 * N * fl + p.alpha2 * N * fl};
    }
    case LemmaCase::ii: {
      Rational an = p.alpha * N;
      Rational b1n = p.beta1 * N, b2n = p.beta2 * N;
      Rational lhs = an * sfloor(b1n + b2n);
      Rational rhs = an * sfloor(b1n) + an * sfloor(b2n) + sfrac(an) * sfrac(b1n) +
                     sfrac(an) * sfrac(b2n) - sfrac(an) * sfrac(b1n + b2n);
      return {lhs, rhs};
    }
    case LemmaCase::iii: {
      Rational an = p.alpha * N, bn = p.beta * N;
      Rational lhs = an * sfloor(bn);
      Rational rhs = -bn * sfloor(an) + p.alpha * p.beta * N * N - sfrac(an) * sfrac(bn);
      return {lhs, rhs};
    }
    case LemmaCase::iv: {
      Rational g = sfrac(p.gamma);  // the identity is for the canonical representative
      Rational gp = g / 2;
      Rational gn = g * N, gpn = gp * N;
      Rational lhs = gn * sfloor(gn);
      Rational rhs = Rational(2) * gp * gp * N * N - Rational(2) * sfrac(gpn) * sfrac(gpn) +
                     Rational(2) * sfrac(gn) * sfrac(gpn) - sfrac(gn) * sfrac(gn);
      return {lhs, rhs};
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

LemmaReport verify_bracket_lemma(LemmaCase c, const LemmaParams& p, std::int64_t n_lo, std::int64_t n_hi) {
  LemmaReport rep;
  for (std::int64_t n = n_lo; n <= n_hi; ++n) {
    auto [lhs, rhs] = lemma_sides(c, p, n);
    ++rep.checked;
    if (smod1(lhs - rhs) != 0) {
      rep.pass = false;
      rep.fail_n = n;
      rep.lhs = sfrac(lhs);
      rep.rhs = sfrac(rhs);
      return rep;
    }
  }
  return rep;
}

Rational three_bracket_residual(const Rational& a, const Rational& b, const Rational& c, std::int64_t n) {
  const Rational N = nq(n);
  Rational an = a * N, bn = b * N, cn = c * N;
  Rational fa = sfloor(an), fb = sfloor(bn), fc = sfloor(cn);
  Rational lhs = fa * fb * cn;
  Rational rhs = sfrac(an) * sfrac(bn) * sfrac(cn) - an * fb * fc - bn * fa * fc + a * b * N * N * fc +
                 a * c * N * N * fb + b * c * N * N * fa - a * b * c * N * N * N;
  return smod1(lhs - rhs);
}

TrilinearForm symmetrize_trilinear(const TrilinearForm& T) {
  TrilinearForm S = T;
  S.symmetrized = true;
  S.beta_tilde.clear();
  for (const auto& t : T.bracket_terms) S.beta_tilde.push_back(sfrac(t.beta_over3) / 2);
  return S;
}

Rational eval_trilinear(const TrilinearForm& T, std::int64_t x, std::int64_t y, std::int64_t z) {
  const Rational X = nq(x), Y = nq(y), Z = nq(z);
  Rational acc(0);
  for (std::size_t j = 0; j < T.bracket_terms.size(); ++j) {
    const auto& t = T.bracket_terms[j];
    Rational ax = sfrac(t.alpha * X);
    if (T.symmetrized) {
      acc += ax * T.beta_tilde[j] * (Y * sfrac(t.gamma * Z) + Z * sfrac(t.gamma * Y));
    } else {
      acc += ax * t.beta_over3 * Y * sfrac(t.gamma * Z);
    }
  }
  for (const auto& t : T.plain_terms) acc += t.alphap_over3 * sfrac(t.betap * X) * Y * Z;
  return acc;
}

LemmaReport check_trilinear_symmetry(const TrilinearForm& Tsym, std::int64_t x, std::int64_t range) {
  if (!Tsym.symmetrized) throw std::invalid_argument("check_trilinear_symmetry expects a symmetrized form");
  LemmaReport rep;
  const std::size_t m = Tsym.bracket_terms.size();
  const Rational X = nq(x);
  // per-term caches: {alpha_j x} is constant, {gamma_j z} depends only on z
  std::vector<Rational> ax(m);
  for (std::size_t j = 0; j < m; ++j) ax[j] = sfrac(Tsym.bracket_terms[j].alpha * X);
  std::vector<std::vector<Rational>> gz(m, std::vector<Rational>(static_cast<std::size_t>(range) + 1));
  for (std::size_t j = 0; j < m; ++j)
    for (std::int64_t z = 1; z <= range; ++z) gz[j][static_cast<std::size_t>(z)] = sfrac(Tsym.bracket_terms[j].gamma * nq(z));
  Rational plain(0);
  for (const auto& t : Tsym.plain_terms) plain += t.alphap_over3 * sfrac(t.betap * X);

  // explicit return type: a deduced one would be a lazy gmp expression
  // referencing locals that die at return
  auto value = [&](std::int64_t y, std::int64_t z) -> Rational {
    Rational acc(0);
    const Rational Y = nq(y), Z = nq(z);
    for (std::size_t j = 0; j < m; ++j)
      acc += ax[j] * Tsym.beta_tilde[j] * (Y * gz[j][static_cast<std::size_t>(z)] + Z * gz[j][static_cast<std::size_t>(y)]);
    return acc + plain * Y * Z;
  };
  for (std::int64_t y = 1; y <= range; ++y)
    for (std::int64_t z = y; z <= range; ++z) {
      ++rep.checked;
      Rational a = value(y, z), b = value(z, y);
      if (a != b) {
        rep.pass = false;
        rep.fail_n = (y - 1) * range + z;
        rep.lhs = sfrac(a);
        rep.rhs = sfrac(b);
        return rep;
      }
    }
  return rep;
}

LemmaReport check_trilinear_diagonal(const TrilinearForm& T, const TrilinearForm& Tsym, std::int64_t range) {
  if (T.symmetrized || !Tsym.symmetrized)
    throw std::invalid_argument("check_trilinear_diagonal expects (plain, symmetrized) in that order");
  if (T.bracket_terms.size() != Tsym.bracket_terms.size() || T.plain_terms.size() != Tsym.plain_terms.size())
    throw std::invalid_argument("check_trilinear_diagonal: mismatched forms");
  LemmaReport rep;
  const std::size_t m = T.bracket_terms.size();
  std::vector<std::vector<Rational>> gn(m, std::vector<Rational>(static_cast<std::size_t>(range) + 1));
  for (std::size_t j = 0; j < m; ++j)
    for (std::int64_t n = 1; n <= range; ++n) gn[j][static_cast<std::size_t>(n)] = sfrac(T.bracket_terms[j].gamma * nq(n));

  for (std::int64_t h = 1; h <= range; ++h) {
    const Rational H = nq(h);
    std::vector<Rational> ax(m);
    for (std::size_t j = 0; j < m; ++j) ax[j] = sfrac(T.bracket_terms[j].alpha * H);
    Rational plain(0);
    for (const auto& t : T.plain_terms) plain += t.alphap_over3 * sfrac(t.betap * H);
    for (std::int64_t n = 1; n <= range; ++n) {
      const Rational N = nq(n);
      Rational a(0), b(0);
      for (std::size_t j = 0; j < m; ++j) {
        const Rational& g = gn[j][static_cast<std::size_t>(n)];
        a += ax[j] * T.bracket_terms[j].beta_over3 * N * g;
        b += ax[j] * Tsym.beta_tilde[j] * (N * g + N * g);
      }
      a += plain * N * N;
      b += plain * N * N;
      ++rep.checked;
      if (smod1(a - b) != 0) {
        rep.pass = false;
        rep.fail_n = (h - 1) * range + n;
        rep.lhs = sfrac(a);
        rep.rhs = sfrac(b);
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace gowerslab::bracket
