#!/usr/bin/env python3
"""Independent oracle for the Bohr-set module.

Recomputes, with a fresh implementation (numpy FFT, brute-force membership),
the values frozen into tests/test_bohr.cpp:
  - member counts for several (S, rho, N);
  - the regular-radius scan outcome for an adversarial single frequency;
  - psi2 mass / l1 Fourier mass of the cutoff decomposition.
"""
import math
import numpy as np

EDGE = 1e-9


def dist_to_z(x):
    f = x - math.floor(x)
    return min(f, 1.0 - f)


def members(S, rho, N):
    top = math.floor(rho * N + EDGE)
    out = []
    for n in range(1, top + 1):
        if all(dist_to_z(n * th) <= rho + EDGE for th in S):
            out.append(n)
    return out


def find_regular(S, rho0, N, C_reg=100.0, shells=4):
    d = max(1, len(S))
    kappas = []
    for j in range(shells):
        k = 1.0 / (d * (1 << j))
        kappas += [k, -k]
    cands = [rho0 * 2.0 ** (i / 63.0) for i in range(64)]
    scores = []
    for rho in cands:
        base = len(members(S, rho, N))
        if base < 1:
            scores.append(float("inf"))
            continue
        worst = 0.0
        for k in kappas:
            if abs(k) > 1.0 / d + 1e-15:
                continue
            sz = len(members(S, (1.0 + k) * rho, N)) if (1.0 + k) * rho > 0 else 0
            worst = max(worst, abs(sz / base - 1.0) / (d * abs(k)))
        scores.append(worst)
    passing = [(c, s) for c, s in zip(cands, scores) if s <= C_reg]
    rejected = [c for c, s in zip(cands, scores) if s > C_reg]
    return passing, rejected, cands, scores


def cutoff(S, rho, N, eps):
    B = members(S, rho, N)
    maxB = B[-1]
    inB = set(B)
    rp = rho / 2.0
    while rp * N >= 1.0:
        Bp = members(S, rp, N)
        if not Bp:
            break
        lo = 1 - Bp[-1]
        psi1 = {}
        for n in range(lo, maxB + 1):
            psi1[n] = sum(1 for b in Bp if n + b in inB) / len(Bp)
        mass = sum(abs((1.0 if n in inB else 0.0) - psi1[n]) for n in range(lo, maxB + 1))
        if mass <= eps * N:
            M = max(4 * N, maxB - lo + 1)
            arr = np.zeros(M)
            for i, n in enumerate(range(lo, maxB + 1)):
                arr[i] = psi1[n]
            hat = np.fft.fft(arr)
            l1 = float(np.abs(hat).sum() / M)
            return rp, mass, l1, len(B), len(Bp)
        rp /= 2.0
    raise RuntimeError("no rho-prime")


def main():
    # membership counts
    print("S={}, rho=0.3, N=100:", len(members([], 0.3, 100)), "first/last",
          members([], 0.3, 100)[0], members([], 0.3, 100)[-1])
    print("S={1/2}, rho=0.3, N=100:", len(members([0.5], 0.3, 100)))
    m = members([0.41421356, 0.7182818], 0.17, 2000)
    print("S={0.41421356,0.7182818}, rho=0.17, N=2000: count", len(m), "max", m[-1],
          "sum", sum(m))

    # regular search, generic frequency
    passing, rejected, _, _ = find_regular([0.41421356], 0.05, 10000)
    print("regular sqrt2 rho0=0.05 N=1e4: found", f"{passing[0][0]:.17g}",
          "score", f"{passing[0][1]:.17g}", "rejected", len(rejected))

    # adversarial 1/5 frequency with tight C_reg
    passing, rejected, cands, scores = find_regular([0.2], 0.15, 200, C_reg=3.0)
    if passing:
        print("regular 1/5 rho0=0.15 N=200 C=3: found", f"{passing[0][0]:.17g}",
              "score", f"{passing[0][1]:.17g}", "rejected", len(rejected),
              "max rejected", f"{max(rejected):.17g}")
    else:
        print("regular 1/5: none; best", min(scores))

    # none-found case
    passing, rejected, cands, scores = find_regular([], 0.1, 1000, C_reg=0.05)
    print("S={} C=0.05: passing", len(passing), "best score", f"{min(scores):.17g}")

    # cutoff decomposition
    rho = 0.30000012345
    rp, mass, l1, nB, nBp = cutoff([0.5], rho, 400, 0.1)
    print(f"cutoff S={{1/2}} rho={rho} N=400 eps=0.1: rho'={rp:.17g} mass={mass:.12g} "
          f"l1={l1:.12g} |B|={nB} |B'|={nBp} sqrt={math.sqrt(nB/nBp):.12g}")

    rp, mass, l1, nB, nBp = cutoff([], 0.9999999999, 300, 0.25)
    print(f"cutoff S={{}} rho~1 N=300 eps=0.25: rho'={rp:.17g} mass={mass:.12g} l1={l1:.12g}")


if __name__ == "__main__":
    main()
