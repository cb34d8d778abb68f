#!/usr/bin/env python3
"""Independent check of the bracket identities implemented in src/bracket.cpp.

All identities are exact statements about rationals mod 1; this script
verifies them with Fraction arithmetic over randomized small-denominator
parameters so the C++ versions can assert residual == 0 with confidence.
"""

import random
from fractions import Fraction as F
from math import floor


def frac(x: F) -> F:
    return x - floor(x)


def mod1_zero(x: F) -> bool:
    return frac(x) == 0


def rnd(maxden=12, lo=-3, hi=3) -> F:
    den = random.randint(1, maxden)
    num = random.randint(lo * den, hi * den)
    return F(num, den)


def key_identity(X: F, Y: F) -> F:
    return X * floor(Y) - (X * Y - frac(X) * frac(Y) - floor(X) * Y + floor(X) * floor(Y))


def case_i(a1: F, a2: F, b: F, n: int) -> F:
    fl = floor(b * n)
    return (a1 + a2) * n * fl - (a1 * n * fl + a2 * n * fl)


def case_ii(a: F, b1: F, b2: F, n: int) -> F:
    an = a * n
    lhs = an * floor((b1 + b2) * n)
    rhs = (an * floor(b1 * n) + an * floor(b2 * n)
           + frac(an) * frac(b1 * n) + frac(an) * frac(b2 * n) - frac(an) * frac((b1 + b2) * n))
    return lhs - rhs


def case_iii(a: F, b: F, n: int) -> F:
    an, bn = a * n, b * n
    return an * floor(bn) - (-bn * floor(an) + a * b * n * n - frac(an) * frac(bn))


def case_iv(g: F, n: int) -> F:
    g = frac(g)
    gp = g / 2
    gn, gpn = g * n, gp * n
    lhs = gn * floor(gn)
    rhs = 2 * gp * gp * n * n - 2 * frac(gpn) ** 2 + 2 * frac(gn) * frac(gpn) - frac(gn) ** 2
    return lhs - rhs


def three_bracket(a: F, b: F, c: F, n: int) -> F:
    an, bn, cn = a * n, b * n, c * n
    fa, fb, fc = floor(an), floor(bn), floor(cn)
    lhs = fa * fb * cn
    rhs = (frac(an) * frac(bn) * frac(cn) - an * fb * fc - bn * fa * fc
           + a * b * n * n * fc + a * c * n * n * fb + b * c * n * n * fa - a * b * c * n ** 3)
    return lhs - rhs


def trilinear(terms, plain, sym, x, y, z):
    acc = F(0)
    for (al, b3, ga, bt) in terms:
        if sym:
            acc += frac(al * x) * bt * (y * frac(ga * z) + z * frac(ga * y))
        else:
            acc += frac(al * x) * b3 * y * frac(ga * z)
    for (a3, bp) in plain:
        acc += a3 * frac(bp * x) * y * z
    return acc


def main() -> None:
    random.seed(20240817)
    for _ in range(20000):
        assert key_identity(rnd(30, -10, 10), rnd(30, -10, 10)) == 0
    for _ in range(300):
        a1, a2, a, b, b1, b2, g = (rnd() for _ in range(7))
        for n in range(-25, 26):
            assert mod1_zero(case_i(a1, a2, b, n))
            assert mod1_zero(case_ii(a, b1, b2, n))
            assert mod1_zero(case_iii(a, b, n))
            assert mod1_zero(case_iv(g, n))
            assert mod1_zero(three_bracket(a, b, g, n))
    print("key identity + lemma cases i-iv + triple bracket: all residuals zero")

    for trial in range(50):
        terms = [(rnd(), frac(rnd()), rnd(), None) for _ in range(3)]
        terms = [(al, b3, ga, frac(b3) / 2) for (al, b3, ga, _) in terms]
        plain = [(rnd(), rnd()) for _ in range(2)]
        for _ in range(200):
            x, y, z = (random.randint(1, 50) for _ in range(3))
            s1 = trilinear(terms, plain, True, x, y, z)
            s2 = trilinear(terms, plain, True, x, z, y)
            assert s1 == s2
            d1 = trilinear(terms, plain, False, x, y, y)
            d2 = trilinear(terms, plain, True, x, y, y)
            assert d1 == d2  # exact equality, beta/3 canonical
    print("trilinear symmetrization: (y,z)-symmetry and diagonal equality hold")


if __name__ == "__main__":
    main()
