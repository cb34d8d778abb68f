#!/usr/bin/env python3
"""Reference values for the seqfn/gowers tests.

Everything here is computed straight from the defining averages (no FFT, no
norm recursion), in Python, so the C++ fast paths are checked against an
independent implementation. Run it and paste the printed constants into the
tests when they change (they should not).
"""

import cmath
import math
from fractions import Fraction

import numpy as np

TWOPI = 2.0 * math.pi

# Deterministic "generic" 1-bounded test function, reproduced verbatim in the
# C++ tests (same expression order; libm makes the values bit-identical).
A = 0.41421356237309515
B = 0.7320508075688772
C = 0.14285714285714285
AMP = 0.7548776662466927


def frac(x: float) -> float:
    return x - math.floor(x)


def test_fn_value(n: int, j: int) -> complex:
    nn = float(n + 3 * j)
    amp = 0.5 + 0.5 * math.sin(TWOPI * frac(nn * AMP))
    ph = frac(A * nn * nn * nn + B * nn * nn + C * nn)
    return amp * cmath.exp(1j * TWOPI * ph)


def test_fn_cyclic(M: int, j: int) -> np.ndarray:
    return np.array([test_fn_value(x, j) for x in range(M)])


def test_fn_interval(N: int, j: int) -> np.ndarray:
    return np.array([test_fn_value(n, j) for n in range(1, N + 1)])


def u_power_direct(f: np.ndarray, k: int) -> float:
    """E_{x,h_1..h_k} Delta_{h_1}..Delta_{h_k} f(x), by literal enumeration."""
    M = len(f)
    levels = [f]

    def rec(cur, depth):
        if depth == 0:
            return cur.sum()
        s = 0j
        for h in range(M):
            s += rec(np.roll(cur, -h) * np.conj(cur), depth - 1)
        return s

    total = rec(f, k)
    assert abs(total.imag) < 1e-7 * M ** (k + 1)
    return total.real / M ** (k + 1)


def main() -> None:
    print("== cyclic norms, Z_32, j=0 ==")
    f32 = test_fn_cyclic(32, 0)
    powers = {}
    for k in (1, 2, 3, 4):
        p = u_power_direct(f32, k)
        powers[k] = p
        print(f"U{k}(Z_32) norm = {p ** (1.0 / 2 ** k):.15f}   (power {p:.15e})")
    assert powers[1] ** (1 / 2) <= powers[2] ** (1 / 4) <= powers[3] ** (1 / 8) <= powers[4] ** (1 / 16) + 1e-15

    print("== interval norm, [16], j=1, k=2 ==")
    f16 = test_fn_interval(16, 1)
    for Mt in (64, 69):
        emb = np.zeros(Mt, dtype=complex)
        emb[1:17] = f16
        one = np.zeros(Mt, dtype=complex)
        one[1:17] = 1.0
        ratio = u_power_direct(emb, 2) / u_power_direct(one, 2)
        print(f"U2[16] with ambient {Mt}: norm = {ratio ** 0.25:.15f}")

    print("== inner product, Z_8, k=2, (j=0,1,2,3) ==")
    M = 8
    fs = [test_fn_cyclic(M, j) for j in range(4)]
    g = [np.conj(fs[w]) if bin(w).count("1") % 2 else fs[w] for w in range(4)]
    total = 0j
    for h1 in range(M):
        for h2 in range(M):
            for x in range(M):
                total += (g[0][x] * g[1][(x + h1) % M] * g[2][(x + h2) % M]
                          * g[3][(x + h1 + h2) % M])
    ip = total / M**3
    print(f"inner product = {ip.real:.15f} {ip.imag:+.15f}i")

    print("== correlated quadruples, N=64, f=e((sqrt2-1)n^2 + n/7) ==")
    N = 64
    Np = 2 * N + 1
    fq = np.array([cmath.exp(1j * TWOPI * frac(A * n * n + C * n)) for n in range(1, N + 1)])

    def chi(h):
        z = np.zeros(Np, dtype=complex)
        for n in range(1, N - h + 1):
            z[n] = fq[n + h - 1] * np.conj(fq[n - 1])
        return z

    chiZ = {h: chi(h) for h in range(1, N + 1)}

    for H in (list(range(1, 49)), list(range(1, 65)), [10]):
        eta = len(H) / N
        delta = min((N - h) / N for h in H)
        thresh = 0.01 * eta**4 * delta**2
        P = {(a, b): chiZ[a] * np.conj(chiZ[b]) for a in H for b in H}
        Hset = set(H)
        hits = additive = 0
        for h1 in H:
            for h3 in H:
                Aarr = P[(h1, h3)]
                for h2 in H:
                    h4 = h1 + h2 - h3
                    if h4 not in Hset:
                        continue
                    additive += 1
                    d = (h1 - h4) % Np
                    s = np.dot(Aarr, np.roll(P[(h2, h4)], -d))
                    if abs(s) / Np >= thresh - 1e-12:
                        hits += 1
        bound = eta**8 * delta**4 * N**3 / 2
        print(f"|H|={len(H)}: delta={delta} thresh={thresh:.9e} additive={additive} "
              f"hits={hits} bound={bound:.6f} pass={hits >= bound}")

    print("== exact polynomial phases ==")
    for n in (97, 10**6 + 1):
        v = Fraction(1, 3) * n * n + Fraction(1, 7) * n
        fr = v - (v.numerator // v.denominator)
        print(f"frac(n^2/3 + n/7) at n={n}: {fr} = {float(fr):.15f}")


if __name__ == "__main__":
    main()
