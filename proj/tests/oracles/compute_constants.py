#!/usr/bin/env python3
"""Offline reference values frozen into the C++ tests.

Independent of the C++ code: mpmath for constants and the gamma cdf,
plain Python enumeration with fractions for grid unreliabilities.
Run: python3 tests/oracles/compute_constants.py
"""
from fractions import Fraction
from itertools import product
import math

import mpmath as mp

mp.mp.dps = 60


def upsilon(eps, delta):
    eps, delta = mp.mpf(eps), mp.mpf(delta)
    return 4 * (mp.e - 2) * mp.log(2 / delta) / eps**2


def upsilon2(eps, delta):
    e = mp.mpf(eps)
    return 2 * (1 + mp.sqrt(e)) * (1 + 2 * mp.sqrt(e)) * (1 + mp.log(mp.mpf(3) / 2) / mp.log(2 / mp.mpf(delta))) * upsilon(eps, delta)


def coverage(k, eps):
    eps = mp.mpf(eps)
    lo, hi = (k - 1) / (1 + eps), (k - 1) / (1 - eps)
    return mp.gammainc(k, 0, hi, regularized=True) - mp.gammainc(k, 0, lo, regularized=True)


def choose_k(eps, delta):
    k = 2
    while coverage(k, eps) < 1 - mp.mpf(delta):
        k += 1
    return k


def grid(side, pattern, p):
    idx = lambda r, c: r * side + c
    edges = []
    for r in range(side):
        for c in range(side):
            if c + 1 < side:
                edges.append((idx(r, c), idx(r, c + 1)))
            if r + 1 < side:
                edges.append((idx(r, c), idx(r + 1, c)))
    n = side * side
    if pattern == "two":
        terms = [0, n - 1]
    elif pattern == "all":
        terms = list(range(n))
    else:
        terms = [idx(r, c) for r in range(side) for c in range(side) if (r + c) % 2 == 0]
    return n, edges, terms, p


def unreliability(n, edges, terms, p):
    total = Fraction(0)
    for states in product((0, 1), repeat=len(edges)):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (u, v), up in zip(edges, states):
            if up:
                parent[find(u)] = find(v)
        if len({find(t) for t in terms}) > 1:
            w = Fraction(1)
            for up in states:
                w *= (1 - p) if up else p
            total += w
    return total


if __name__ == "__main__":
    u = upsilon(0.2, 0.2)
    print("upsilon(0.2,0.2)  =", mp.nstr(u, 30))
    print("upsilon1(0.2,0.2) =", mp.nstr(1 + 1.2 * u, 30), "ceil", int(mp.ceil(1 + mp.mpf("1.2") * u)))
    print("upsilon2(0.2,0.2) =", mp.nstr(upsilon2(0.2, 0.2), 30))
    for eps, delta in [(0.2, 0.05), (0.2, 0.2), (0.1, 0.05), (0.3, 0.1), (0.05, 0.01), (0.5, 0.5)]:
        k = choose_k(eps, delta)
        print(f"choose_k({eps},{delta}) = {k}  coverage(k-1)={mp.nstr(coverage(k - 1, eps), 12)}"
              f"  coverage(k)={mp.nstr(coverage(k, eps), 12)}")
    print("mom r(0.2) =", math.ceil(2 * math.log(5) / math.log(4 / 3)))
    for side, pattern, p in [(3, "two", Fraction(1, 8)), (2, "two", Fraction(1, 2)), (3, "all", Fraction(1, 8))]:
        val = unreliability(*grid(side, pattern, p))
        print(f"grid {side} {pattern} p={p}: {val.numerator}/{val.denominator}")
