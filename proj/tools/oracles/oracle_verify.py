"""Independent checker for the cross-module verification harness.

Interval Gowers norms are computed here by an FFT/Parseval identity
(U^{k}^{2^k} * Mtilde^{k+1} = sum over nested-derivative rows of sum_k |row_hat|^4),
a different algorithm from the production windowed nested sum.
"""
import math
import numpy as np


def frac(x):
    return x - np.floor(x)


# ---------- interval Gowers norms ----------

def u2_pow(g):
    M = len(g)
    return (np.abs(np.fft.fft(g)) ** 4).sum() / M ** 3


def u3_pow(g):
    # (1/M^5) sum_h1 sum_k |fft(Delta_h1 g)(k)|^4, h1 restricted to overlap
    M = len(g)
    total = 0.0
    for h1 in range(M):
        v = np.roll(g, -h1) * np.conj(g)
        if not v.any():
            continue
        total += (np.abs(np.fft.fft(v)) ** 4).sum()
    return total / M ** 5


def u4_pow(g):
    M = len(g)
    total = 0.0
    for h1 in range(M):
        v = np.roll(g, -h1) * np.conj(g)
        if not v.any():
            continue
        rows = []
        for h2 in range(M):
            w = np.roll(v, -h2) * np.conj(v)
            if w.any():
                rows.append(w)
        mat = np.fft.fft(np.array(rows), axis=1)
        total += (np.abs(mat) ** 4).sum()
    return total / M ** 6


def interval_norm(vals, k):
    N = len(vals)
    M = (1 << k) * N
    g = np.zeros(M, dtype=complex)
    g[1: N + 1] = vals
    ind = np.zeros(M, dtype=complex)
    ind[1: N + 1] = 1.0
    pw = {2: u2_pow, 3: u3_pow, 4: u4_pow}[k]
    return (pw(g) / pw(ind)) ** (1.0 / (1 << k))


# self-check the identity against literal nested sums on a tiny case
rng = np.random.default_rng(7)
tiny = np.exp(2j * np.pi * rng.random(8))
M = 8
direct = 0.0
for x in range(M):
    for h1 in range(M):
        for h2 in range(M):
            for h3 in range(M):
                p = 1.0 + 0j
                for w in range(8):
                    v = tiny[(x + (w & 1) * h1 + ((w >> 1) & 1) * h2 + ((w >> 2) & 1) * h3) % M]
                    p *= np.conj(v) if bin(w).count("1") % 2 else v
                direct += p.real
direct /= M ** 4
assert abs(direct - u3_pow(tiny)) < 1e-9, (direct, u3_pow(tiny))
print("identity self-check ok")

al, be, ga = 0.6180339887498949, 0.41421356237309515, 0.32471795724474602
n = np.arange(1, 257, dtype=float)
c2 = n * (n - 1) / 2
c3 = n * (n - 1) * (n - 2) / 6
ph = (al * be * ga * (2 * c3 + c2) - c2 * be * ga * np.floor(al * n)
      - c2 * al * ga * np.floor(be * n) + n * ga * np.floor(al * n) * np.floor(be * n))
f312 = np.exp(2j * np.pi * frac(ph))
for N in (64, 128, 256):
    print(f"U4[{N}] bracket312 = {interval_norm(f312[:N], 4):.12f}")

lin = np.exp(2j * np.pi * frac(0.7071067811865476 * n))
print(f"U2[64] linear = {interval_norm(lin[:64], 2):.12f}")
quad = np.exp(2j * np.pi * frac(0.31830988618367 * n * n + 0.1 * n))
print(f"U3[64] quadratic = {interval_norm(quad[:64], 3):.12f}")

# ---------- L1 approximation, case iii ----------

N3, alpha3, beta3, eps3 = 4096, 0.37, 0.6180339887498949, 0.05
nn = np.arange(1, N3 + 1, dtype=float)
weyl = [abs(np.exp(2j * np.pi * m * beta3 * nn).mean()) for m in range(1, 11)]
print(f"case iii weyl max |m|<=10: {max(weyl):.12f}")
win = eps3 / 10
x = frac(beta3 * nn)
F = np.exp(2j * np.pi * alpha3 * x)
lo, hi = np.exp(2j * np.pi * alpha3 * win), np.exp(2j * np.pi * alpha3 * (1 - win))
t = np.where(x >= 1 - win, (x - (1 - win)) / (2 * win), (x + win) / (2 * win))
Ft = np.where((x < win) | (x > 1 - win), (1 - t) * hi + t * lo, F)
l1 = np.abs(F - Ft).mean()
print(f"case iii l1 = {l1:.12f}  lipschitz = {abs(hi - lo) / (2 * win):.6f}")

half = [abs(np.exp(2j * np.pi * m * 0.5 * nn).mean()) for m in range(1, 11)]
print(f"case iii beta=1/2 weyl: m=1 {half[0]:.3f} m=2 {half[1]:.3f}")

# ---------- L1 approximation, case iv ----------

G = 256
xs = 2 * np.arange(G) / G


def sigma(v):
    t = v - 1.0
    return np.where(v <= 1.0, v, 1 + t - 20 * t ** 3 + 30 * t ** 4 - 12 * t ** 5)


H = np.exp(2j * np.pi * np.outer(sigma(xs), sigma(xs)))
Hhat = np.fft.fft2(H)
kk = np.fft.fftfreq(G, 1.0 / G).astype(int)
for K in (8, 16, 32, 64):
    mask = (np.abs(kk)[:, None] <= K) & (np.abs(kk)[None, :] <= K)
    SK = np.fft.ifft2(Hhat * mask)
    print(f"case iv K={K} grid sup = {np.abs(H - SK).max():.9f}")

N4, alpha4, beta4 = 512, 0.41421356237309515, 0.6180339887498949
m4 = np.arange(1, N4 + 1, dtype=float)
ox, oy = frac(alpha4 * m4), frac(beta4 * m4)
K = 32
mask = (np.abs(kk)[:, None] <= K) & (np.abs(kk)[None, :] <= K)
C = (Hhat * mask) / G ** 2
kidx = np.where(np.abs(kk) <= K)[0]
kval = kk[kidx]
E1 = np.exp(1j * np.pi * np.outer(kval, ox))
E2 = np.exp(1j * np.pi * np.outer(kval, oy))
Cs = C[np.ix_(kidx, kidx)]
S = (E1 * (Cs @ E2)).sum(axis=0)
exact = np.exp(2j * np.pi * ox * oy)
print(f"case iv l1 (K=32) = {np.abs(exact - S).mean():.12f}")

# ---------- case v intervals ----------

bet5 = 3.0 / 512
floors = np.floor(bet5 * np.arange(1, 513))
m = 1 + int((np.diff(floors) != 0).sum())
print(f"case v intervals m = {m}, floors {sorted(set(int(v) for v in floors))}")

# ---------- pipeline ----------

N = 64
alq, beq = 0.2951, 0.117
nv = np.arange(N + 1, dtype=float)  # index by n, 1..64 used
fv = np.exp(2j * np.pi * frac(alq * nv * nv + beq * nv))
chi = np.zeros((N + 1, 2 * N + 1), dtype=complex)  # chi[h][n], n in Z_129
for h in range(1, N + 1):
    for nn_ in range(1, N - h + 1):
        chi[h][nn_] = fv[nn_ + h] * np.conj(fv[nn_])

print(f"additive quadruples [64]^4 = {(2 * 64**3 + 64) // 3}, [48]^4 = {(2 * 48**3 + 48) // 3}")

eta, dmeas = 48 / 64, 16 / 64
thr = 0.01 * eta ** 4 * dmeas ** 2
cnt = 0
Np = 2 * N + 1
for h1 in range(1, 49):
    for h3 in range(1, 49):
        A = chi[h1] * np.conj(chi[h3])
        for h2 in range(1, 49):
            h4 = h1 + h2 - h3
            if not 1 <= h4 <= 48:
                continue
            B = chi[h2] * np.conj(chi[h4])
            corr = abs((A * np.roll(B, -(h1 - h4))).sum()) / Np
            if corr >= thr - 1e-12:
                cnt += 1
print(f"H=[48] threshold {thr:.12g} count {cnt}")

ns = np.arange(1, N + 1, dtype=float)
for (h1, h2, h3, h4) in [(1, 1, 1, 1), (1, 2, 1, 2), (1, 2, 2, 1)]:
    P = chi[h1][1: N + 1] * chi[h2][1: N + 1] * np.conj(chi[h3][1: N + 1] * chi[h4][1: N + 1])
    avec = np.arange(N * N)
    A = np.exp(-2j * np.pi * np.outer(avec, ns * ns) / (N * N)) * P[None, :]
    Fm = np.abs(np.fft.fft(A, axis=1)) / N
    flat = np.round(Fm, 12).ravel()
    best = int(flat.argmax())
    print(f"sample ({h1},{h2},{h3},{h4}): best corr {Fm.ravel()[best]:.9f} at a={best // N} b={best % N}")
