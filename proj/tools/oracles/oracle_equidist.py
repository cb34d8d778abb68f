#!/usr/bin/env python3
"""Independent values for the equidistribution module tests."""

import cmath
import itertools
from fractions import Fraction as F


def weyl(coeffs, N):
    s = 0j
    for n in range(1, N + 1):
        ph = coeffs[0] + coeffs[1] * n + coeffs[2] * n * n + coeffs[3] * n ** 3
        s += cmath.exp(2j * cmath.pi * ph)
    return s / N


def dist_to_z(x):
    f = x - int(x // 1)
    return min(f, 1 - f)


def main():
    v = weyl((0.0, 0.0, 0.25, 0.0), 16)
    print(f"weyl a2=1/4 N=16: {v.real:.15f} {v.imag:.15f}")

    # golden-ratio conjugate orbit: max Weyl-sum modulus over the frequency box
    alpha = 0.6180339887
    N = 10**4
    best = 0.0
    for m in range(1, 11):
        best = max(best, abs(weyl((0.0, m * alpha, 0.0, 0.0), N)))
    print(f"golden orbit max |E| over m=1..10, N=1e4: {best:.15f}")

    # exhaustive: no relation for 0.1234567 with |m| <= 5, tol 1e-6
    a = 0.1234567
    worst = 1.0
    for m in range(1, 6):
        worst = min(worst, dist_to_z(m * a))
    print(f"min ||m * 0.1234567|| over m=1..5: {worst:.9f}  (tol 1e-6 -> none)")

    # pair relation search order probe: (1/2, 1/2) -> first hit should be (1,-1)
    hits = []
    for s in range(1, 4):
        for m in itertools.product(range(-s, s + 1), repeat=2):
            if max(abs(x) for x in m) != s:
                continue
            first = next((x for x in m if x != 0), 0)
            if first <= 0:
                continue
            if dist_to_z(m[0] * 0.5 + m[1] * 0.5) <= 1e-9:
                hits.append(m)
    print("relation hits for (1/2,1/2) in canonical order:", hits[:4])

    # exact check of the augmented-solve example bound
    # A=[[1,1]], b=[2] -> x=(2,0)
    print("solve [[1,1]] b=[2] -> pivot solution (2, 0), bound 2")


if __name__ == "__main__":
    main()
