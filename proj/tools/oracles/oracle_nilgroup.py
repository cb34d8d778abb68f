#!/usr/bin/env python3
"""Independent checks for the nilpotent-group module.

The 3-step computations here deliberately use only the partial multiplication
law (s1, s2, s3, s21, s31, s32, s312) -- that subset is closed under
multiplication, so iterated products of horizontal elements can be tracked
without the full 14-coordinate law. Frozen values printed at the end go into
tests/test_nilgroup.cpp.
"""

import random
from fractions import Fraction as F
from math import floor


def frac(x):
    return x - floor(x)


def rnd(maxden=10, lo=-2, hi=2):
    d = random.randint(1, maxden)
    return F(random.randint(lo * d, hi * d), d)


# ---- 2-step, k=2: coords (t1, t2, t21) ----

def mul2(a, b):
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[1] * b[0])


def reduce2(g):
    return (frac(g[0]), frac(g[1]), frac(g[2] - g[1] * floor(g[0])))


def nilchar2_group(xi1, xi2, qa, qb, qc, n):
    g = (xi1 * n, xi2 * n, qa * n * n + qb * n + qc)
    return reduce2(g)[2]


def nilchar2_closed(xi1, xi2, qa, qb, qc, n):
    xin, xipn = xi1 * n, xi2 * n
    return frac(xin * floor(xipn) + (qa - xi1 * xi2) * n * n + qb * n + qc + frac(xin) * frac(xipn))


# ---- 3-step partial law: coords (t1,t2,t3,t21,t31,t32,t312) ----

def pmul3(t, u):
    return (
        t[0] + u[0],
        t[1] + u[1],
        t[2] + u[2],
        t[3] + u[3] + t[1] * u[0],
        t[4] + u[4] + t[2] * u[0],
        t[5] + u[5] + t[2] * u[1],
        t[6] + u[6] + t[5] * u[0] + t[4] * u[1] + t[2] * u[0] * u[1],
    )


def ppow(g, n):
    acc = (F(0),) * 7
    for _ in range(n):
        acc = pmul3(acc, g)
    return acc


def s312_reduced(t):
    return frac(t[6] - t[5] * floor(t[0]) - t[4] * floor(t[1]) + t[2] * floor(t[0]) * floor(t[1]))


def C(n, k):
    num, den = 1, 1
    for i in range(k):
        num *= n - i
        den *= i + 1
    return F(num, den)


def f312_closed(a, b, c, n):
    return frac(a * b * c * (2 * C(n, 3) + C(n, 2)) - C(n, 2) * b * c * floor(a * n)
                - C(n, 2) * a * c * floor(b * n) + n * c * floor(a * n) * floor(b * n))


def main():
    random.seed(20240818)

    # 2-step dual path, random sequences
    for _ in range(200):
        xi1, xi2, qa, qb, qc = (rnd() for _ in range(5))
        for n in range(-30, 31):
            assert nilchar2_group(xi1, xi2, qa, qb, qc, n) == nilchar2_closed(xi1, xi2, qa, qb, qc, n)
    print("nilchar2 dual path: exact agreement (200 random sequences, n in [-30,30])")

    # Heisenberg orbit g = (2a, 1, 0): phase(n) = {a n^2 - a n}; theta fit from n=1
    for _ in range(50):
        a = rnd(20)
        acc = (F(0),) * 3
        phases = [F(0)]
        for n in range(1, 60):
            acc = mul2(acc, (2 * a, F(1), F(0)))
            phases.append(reduce2(acc)[2])
        theta = phases[1] - a
        for n in range(60):
            assert frac(a * n * n + theta * n) == phases[n]
    print("Heisenberg orbit: phase == {a n^2 + theta n} with theta fitted at n=1")

    # power closed forms on the partial-law subsystem
    for _ in range(40):
        a, b, c = rnd(), rnd(), rnd()
        g = (a, b, c, F(0), F(0), F(0), F(0))
        acc = (F(0),) * 7
        for n in range(0, 80):
            assert acc[3] == C(n, 2) * a * b
            assert acc[4] == C(n, 2) * a * c
            assert acc[5] == C(n, 2) * b * c
            assert acc[6] == a * b * c * (2 * C(n, 3) + C(n, 2))
            assert s312_reduced(acc) == f312_closed(a, b, c, n)
            acc = pmul3(acc, g)
    print("power3 closed forms + F312 dual path: exact on partial-law subsystem")

    # beta = gamma = 1, alpha -> 6 alpha: phase == {-alpha n^3 + alpha n}
    for _ in range(40):
        al = rnd(30)
        for n in range(0, 80):
            assert f312_closed(6 * al, F(1), F(1), n) == frac(-al * n**3 + al * n)
    print("f312(6a,1,1): phase == {-a n^3 + a n}")

    # cubic model fitted exactly from n=1,2,3 extends to all n mod 1
    for _ in range(40):
        al = rnd(30)
        p = [f312_closed(6 * al, F(1), F(1), n) for n in range(0, 60)]
        # solve m(n) = c3 n^3 + c2 n^2 + c1 n through n = 1, 2, 3
        c3 = (p[3] - 3 * p[2] + 3 * p[1]) / 6
        c2 = (p[2] - 2 * p[1]) / 2 - 3 * c3
        c1 = p[1] - c3 - c2
        for n in range(60):
            assert frac(c3 * n**3 + c2 * n**2 + c1 * n) == p[n]
    print("cubic fit from n=1,2,3 reproduces the orbit mod 1")

    # linear orbit (an, bn, cn, 0,...): s312 == {c n [an][bn]}
    for _ in range(100):
        a, b, c = rnd(), rnd(), rnd()
        for n in range(-20, 21):
            t = (a * n, b * n, c * n, F(0), F(0), F(0), F(0))
            assert s312_reduced(t) == frac(c * n * floor(a * n) * floor(b * n))
    print("linear orbit: s312 == {c n [an][bn]}")

    # frozen values for the C++ tests
    a, b, c = F(1, 5), F(1, 3), F(1, 7)
    print("f312 group phase (1/5,1/3,1/7) n=50 :", s312_reduced(ppow((a, b, c, F(0), F(0), F(0), F(0)), 50)))
    print("f312 group phase (1/5,1/3,1/7) n=200:", s312_reduced(ppow((a, b, c, F(0), F(0), F(0), F(0)), 200)))
    print("nilchar2 (1/3,1/7,q=0) n=500       :", nilchar2_group(F(1, 3), F(1, 7), F(0), F(0), F(0), 500))
    print("nilchar2 (1/3,1/7,q=0) n=137       :", nilchar2_group(F(1, 3), F(1, 7), F(0), F(0), F(0), 137))


if __name__ == "__main__":
    main()
