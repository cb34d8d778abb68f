#!/usr/bin/env python3
"""Independent oracle for the sumset-structure module.

Brute-force set arithmetic (python sets / numpy convolutions) recomputing the
values frozen into tests/test_additive.cpp. Test instances are built from
explicit congruence rules so that C++ and python construct identical sets
without sharing an RNG.
"""
from fractions import Fraction
import numpy as np


def cong_set(N, a, b, m, c):
    """{ e in [1,N] : (a*e + b) mod m < c }"""
    return [e for e in range(1, N + 1) if (a * e + b) % m < c]


def iterated(A, k, l):
    S = {0}
    for _ in range(k):
        S = {s + a for s in S for a in A}
    for _ in range(l):
        S = {s - a for s in S for a in A}
    return sorted(S)


def find_lev(A, N, k):
    D = set(iterated(A, k, k))
    dmax = N // len(A)
    for d in range(1, dmax + 1):
        if all(i * d in D for i in range(N)):
            return d
    return None


def oplus(P):
    out = set()
    byx, byy = {}, {}
    for x, y in P:
        byx.setdefault(x, []).append(y)
        byy.setdefault(y, []).append(x)
    for x, ys in byx.items():
        for y1 in ys:
            for y2 in ys:
                out.add((x, y1 + y2))
                out.add((x, y1 - y2))
    for y, xs in byy.items():
        for x1 in xs:
            for x2 in xs:
                out.add((x1 + x2, y))
                out.add((x1 - x2, y))
    return out


def product_progression(P, N, k):
    alpha = len(P) / N**2
    dmax = max(1, int(np.floor(4.0 / alpha**2 + 1e-9)))
    W = max((N - 1) * dmax, N)
    side = 2 * W + 1
    grid = np.zeros((side, side), dtype=bool)
    for x, y in P:
        if abs(x) <= W and abs(y) <= W:
            grid[x + W, y + W] = True

    def square(g):
        out = np.zeros_like(g)
        for axis in range(2):
            gg = g if axis == 0 else g.T
            oo = np.zeros_like(gg)
            for i in range(side):
                f = gg[i].astype(np.int64)
                if not f.any():
                    continue
                plus = np.convolve(f, f)            # index i1+i2
                minus = np.correlate(f, f, "full")  # index i1-i2+side-1
                row = np.zeros(side, dtype=bool)
                # window index t corresponds to idx t+W in both
                row |= plus[W:W + side] > 0
                row |= minus[W:W + side] > 0
                oo[i] = row
            if axis == 0:
                out |= oo
            else:
                out |= oo.T
        return out

    copies = 1
    while copies < k:
        nxt = square(grid)
        copies *= 2
        if copies >= 4 and np.array_equal(nxt, grid):
            break
        grid = nxt
    for d in range(1, dmax + 1):
        for dp in range(1, dmax + 1):
            if all(grid[i * d + W, j * dp + W] for i in range(N) for j in range(N)):
                return (d, dp)
    return None


def energy(S1, S2, S3, S4, G):
    count = 0
    for p1 in S1:
        for p2 in S2:
            for p3 in S3:
                for p4 in S4:
                    if p1[0] + p2[0] == p3[0] + p4[0] and (p1[1] + p2[1]) % G == (p3[1] + p4[1]) % G:
                        count += 1
    return count


def round_grid(v, eps):
    G = int(np.floor(1.0 / eps + 1e-9))
    r = int(np.ceil(v * G - 0.5)) % G
    return Fraction(r, G)


def main():
    # 2A-2A against the quadruple loop
    A = cong_set(120, 7, 3, 11, 5)
    D = iterated(A, 2, 2)
    brute = sorted({a + b - c - d for a in A for b in A for c in A for d in A})
    assert D == brute
    print(f"cong(120,7,3,11,5): |A|={len(A)} |2A-2A|={len(D)} min={D[0]} max={D[-1]} "
          f"sum={sum(D)}")

    # Lev examples
    evens = [e for e in range(1, 101) if e % 2 == 0]
    print("lev evens N=100 k=4:", find_lev(evens, 100, 4))
    for (a, b, m, c) in [(5, 2, 13, 4), (3, 1, 10, 3), (17, 5, 23, 6)]:
        N = 80
        A = cong_set(N, a, b, m, c)
        alpha = len(A) / N
        k = int(np.ceil(2 / alpha))
        d = find_lev(A, N, k)
        print(f"lev cong({N},{a},{b},{m},{c}): |A|={len(A)} k={k} d={d} "
              f"(bound {N // len(A)})")

    # bilinear single pair
    print("oplus {(1,1)}:", sorted(oplus({(1, 1)})))
    # a congruence pair set: freeze the size and a checksum
    P = [(x, y) for x in range(1, 13) for y in range(1, 13) if (3 * x + 5 * y) % 7 < 3]
    Q = oplus(P)
    print(f"oplus cong-12: |P|={len(P)} |Q|={len(Q)} sum={sum(x + 2 * y for x, y in Q)}")

    # product progressions
    full = [(x, y) for x in range(1, 7) for y in range(1, 7)]
    print("product full [6]^2 k=16:", product_progression(set(full), 6, 16))
    ev = [(x, y) for x in range(1, 7) for y in range(1, 7) if x % 2 == 0 and y % 2 == 0]
    print("product evens [6]^2 k=8192:", product_progression(set(ev), 6, 8192))
    dense = [(x, y) for x in range(1, 9) for y in range(1, 9) if (x * y) % 5 != 1]
    print(f"product cong-8 (alpha={len(dense)/64}): k=2048 ->",
          product_progression(set(dense), 8, 2048))

    # additive energy of a linear graph
    n, G = 10, 17
    S = [(x, (3 * x) % G) for x in range(1, n + 1)]
    print("energy linear graph n=10 G=17:", energy(S, S, S, S, G), "formula", (2 * n**3 + n) // 3)
    T1 = [(0, 0), (1, 3)]
    T2 = [(2, 5)]
    T3 = [(1, 1)]
    T4 = [(1, 7), (2, 2)]
    print("energy mixed:", energy(T1, T2, T3, T4, G))

    # rounding
    print("round 0.3 eps 0.25:", round_grid(0.3, 0.25))
    print("round 0.125 eps 0.25:", round_grid(0.125, 0.25))
    print("round 0.9 eps 0.25:", round_grid(0.9, 0.25))
    print("round 0.63 eps 0.3:", round_grid(0.63, 0.3))


if __name__ == "__main__":
    main()
