#include "gowerslab/bracket.hpp"

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

using namespace gowerslab;
using namespace gowerslab::bracket;

namespace {

// small-denominator rationals for exact identity sweeps
Rational rnd_q(std::mt19937_64& rng, int max_den = 30, int lo = -10, int hi = 10) {
  std::uniform_int_distribution<int> den(1, max_den);
  const int d = den(rng);
  std::uniform_int_distribution<int> num(lo * d, hi * d);
  return rational(num(rng), d);
}

}  // namespace

TEST_CASE("expression tree: exact and float evaluation") {
  auto n = BracketExpr::var();
  auto half_frac = BracketExpr::frac_of(BracketExpr::scale(Rational(1, 2), n));
  CHECK(eval_mod1(half_frac, 3) == Rational(1, 2));
  CHECK(eval_mod1_float(half_frac, 3) == doctest::Approx(0.5).epsilon(1e-12));

  // 0.3 n [0.7 n] at n = 4: 1.2 * 2 = 2.4, so 2/5 mod 1 (and 0 at n = 0)
  auto e = BracketExpr::product(
      {BracketExpr::scale(Rational(3, 10), n), BracketExpr::floor_of(BracketExpr::scale(Rational(7, 10), n))});
  CHECK(e->eval(Rational(4)) == Rational(12, 5));
  CHECK(eval_mod1(e, 4) == Rational(2, 5));
  CHECK(eval_mod1(e, 0) == Rational(0));
  CHECK(std::abs(eval_mod1_float(e, 4) - 0.4) < 1e-12);

  auto s = BracketExpr::sum({BracketExpr::constant(Rational(5, 3)), n});
  CHECK(eval_mod1(s, 2) == Rational(2, 3));
  CHECK(s->eval(2.0) == doctest::Approx(11.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("key identity: X[Y] = XY - {X}{Y} - [X]Y + [X][Y]") {
  std::mt19937_64 rng(0x5eedb4acULL);
  for (int t = 0; t < 2000; ++t) {
    CHECK(key_identity_residual(rnd_q(rng), rnd_q(rng)) == Rational(0));
  }
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  double worst = 0;
  for (int t = 0; t < 10000; ++t) {
    worst = std::max(worst, std::abs(key_identity_residual(u(rng), u(rng))));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("floor additivity correction is a pure fractional-part term") {
  std::mt19937_64 rng(0xf10a2ULL);
  for (int t = 0; t < 500; ++t) {
    CHECK(phi_additivity_residual(rnd_q(rng), rnd_q(rng), rnd_q(rng)) == Rational(0));
  }
}

TEST_CASE("lemma case i: left coefficient splits exactly") {
  LemmaParams p;
  p.alpha1 = Rational(1, 2);
  p.alpha2 = Rational(1, 3);
  p.beta = Rational(2, 7);
  auto rep = verify_bracket_lemma(LemmaCase::i, p, -100, 100);
  CHECK(rep.pass);
  CHECK(rep.checked == 201);
}

TEST_CASE("lemma case ii: right split with cross fractional corrections") {
  LemmaParams p;
  p.alpha = Rational(1, 2);
  p.beta1 = Rational(1, 3);
  p.beta2 = Rational(3, 4);
  CHECK(verify_bracket_lemma(LemmaCase::ii, p, 1, 1000).pass);

  std::mt19937_64 rng(0xca5e22ULL);
  for (int t = 0; t < 50; ++t) {
    p.alpha = rnd_q(rng, 12, -3, 3);
    p.beta1 = rnd_q(rng, 12, -3, 3);
    p.beta2 = rnd_q(rng, 12, -3, 3);
    CHECK(verify_bracket_lemma(LemmaCase::ii, p, -20, 20).pass);
  }
}

TEST_CASE("lemma case iii: swap identity") {
  LemmaParams p;
  p.alpha = Rational(1, 3);
  p.beta = Rational(1, 7);
  auto rep = verify_bracket_lemma(LemmaCase::iii, p, 1, 1000);
  CHECK(rep.pass);
  CHECK(rep.checked == 1000);

  std::mt19937_64 rng(0xca5e33ULL);
  for (int t = 0; t < 50; ++t) {
    p.alpha = rnd_q(rng, 12, -3, 3);
    p.beta = rnd_q(rng, 12, -3, 3);
    CHECK(verify_bracket_lemma(LemmaCase::iii, p, -20, 20).pass);
  }
}

TEST_CASE("lemma case iv: self-pairing via the exact half") {
  LemmaParams p;
  p.gamma = Rational(2, 5);
  CHECK(verify_bracket_lemma(LemmaCase::iv, p, 1, 1000).pass);

  // identical after reduction to [0,1); the raw identity is false for 7/5
  p.gamma = Rational(7, 5);
  CHECK(verify_bracket_lemma(LemmaCase::iv, p, 1, 1000).pass);

  std::mt19937_64 rng(0xca5e44ULL);
  for (int t = 0; t < 50; ++t) {
    p.gamma = rnd_q(rng, 12, -3, 3);
    CHECK(verify_bracket_lemma(LemmaCase::iv, p, -20, 20).pass);
  }
}

TEST_CASE("triple bracket expansion") {
  CHECK(three_bracket_residual(Rational(1, 3), Rational(1, 5), Rational(1, 7), 4) == Rational(0));
  CHECK(three_bracket_residual(Rational(1, 2), Rational(1, 3), Rational(1, 5), 7) == Rational(0));
  std::mt19937_64 rng(0x3b2acULL);
  std::uniform_int_distribution<std::int64_t> ns(-15, 15);
  for (int t = 0; t < 300; ++t) {
    CHECK(three_bracket_residual(rnd_q(rng, 12, -3, 3), rnd_q(rng, 12, -3, 3), rnd_q(rng, 12, -3, 3), ns(rng)) ==
          Rational(0));
  }
}

TEST_CASE("trilinear form: symmetrization and point values") {
  TrilinearForm T;
  T.bracket_terms.push_back({Rational(1, 3), Rational(1, 3), Rational(1, 5)});
  auto S = symmetrize_trilinear(T);
  REQUIRE(S.symmetrized);
  REQUIRE(S.beta_tilde.size() == 1);
  CHECK(S.beta_tilde[0] == Rational(1, 6));

  // {1/3 * 2} * (1/3) * 3 * {4/5} = 8/15, and the symmetrized value agrees here
  CHECK(eval_trilinear(T, 2, 3, 4) == Rational(8, 15));
  CHECK(eval_trilinear(S, 2, 3, 4) == Rational(8, 15));
  CHECK(eval_trilinear(S, 2, 4, 3) == Rational(8, 15));

  // the half is taken of the canonical representative
  TrilinearForm T2;
  T2.bracket_terms.push_back({Rational(1, 3), Rational(4, 3), Rational(1, 5)});
  CHECK(symmetrize_trilinear(T2).beta_tilde[0] == Rational(1, 6));
}

TEST_CASE("trilinear form: symmetry and diagonal checks") {
  TrilinearForm T;
  T.bracket_terms.push_back({Rational(1, 2), Rational(1, 3), Rational(1, 5)});
  T.bracket_terms.push_back({Rational(2, 7), Rational(5, 6), Rational(3, 11)});
  T.plain_terms.push_back({Rational(1, 3), Rational(4, 9)});
  auto S = symmetrize_trilinear(T);

  auto sym = check_trilinear_symmetry(S, 5, 40);
  CHECK(sym.pass);
  CHECK(sym.checked == 820);  // y <= z triangle

  auto diag = check_trilinear_diagonal(T, S, 60);
  CHECK(diag.pass);
  CHECK(diag.checked == 3600);

  CHECK_THROWS_AS(check_trilinear_symmetry(T, 5, 10), std::invalid_argument);
  CHECK_THROWS_AS(check_trilinear_diagonal(S, T, 10), std::invalid_argument);

  TrilinearForm empty;
  auto Se = symmetrize_trilinear(empty);
  CHECK(eval_trilinear(empty, 3, 4, 5) == Rational(0));
  CHECK(check_trilinear_symmetry(Se, 1, 5).pass);
  CHECK(check_trilinear_diagonal(empty, Se, 5).pass);
}
