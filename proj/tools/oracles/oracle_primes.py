"""Independent checker for the prime 5-AP census and the singular constant.

Sieve + counting with numpy; the truncated product in 50-digit decimal.
"""
import numpy as np
from decimal import Decimal, getcontext

getcontext().prec = 50


def sieve(n):
    isp = np.ones(n + 1, dtype=bool)
    isp[:2] = False
    for p in range(2, int(n ** 0.5) + 1):
        if isp[p]:
            isp[p * p:: p] = False
    return isp, np.flatnonzero(isp).astype(np.int64)


def gamma(P, primes):
    v = Decimal(27) / Decimal(16)
    for p in primes:
        p = int(p)
        if p < 5:
            continue
        if p > P:
            break
        v *= Decimal(p) ** 3 * Decimal(p - 4) / Decimal(p - 1) ** 4
    return v


def count_5aps(N, isp, primes):
    ps = primes[primes <= N]
    total = 0
    for i, p1 in enumerate(ps):
        dmax = (N - p1) // 4
        hi = np.searchsorted(ps, p1 + dmax, side="right")
        d = ps[i + 1: hi] - p1
        if len(d) == 0:
            continue
        ok = isp[p1 + 2 * d] & isp[p1 + 3 * d] & isp[p1 + 4 * d]
        total += int(ok.sum())
    return total


isp, primes = sieve(2 * 10 ** 6)
print("pi(1e5) =", int((primes <= 10 ** 5).sum()))
print("pi(1e4) =", int((primes <= 10 ** 4).sum()))

for P in (5, 7, 1000, 10 ** 5, 10 ** 6):
    print(f"gamma({P}) = {gamma(P, primes)}")

for N in (28, 29, 1000, 10 ** 4, 10 ** 5, 2 * 10 ** 5):
    print(f"count({N}) = {count_5aps(N, isp, primes)}")

g5 = float(gamma(10 ** 5, primes))
import math
for N in (10 ** 5, 2 * 10 ** 5):
    pred = g5 * N * N / math.log(N) ** 5
    print(f"prediction({N}) = {pred:.6f}  ratio = {count_5aps(N, isp, primes) / pred:.6f}")
