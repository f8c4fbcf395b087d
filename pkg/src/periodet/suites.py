"""Seeded random inputs and batch identity checks shared by the CLI and tests."""
from __future__ import annotations

import math
import random
from fractions import Fraction

import numpy as np

from .algebra import INF, Poly, RationalFunction
from .chow import boundary_class, weil_reciprocity_check
from .connection import LogConnection
from .gamma import delta, gamma, gamma_of_rf, partial_shift
from .jacobi import gauss_sums_all, _field
from .periods import expected_monodromy_eigenvalues, match_eigenvalues, monodromy, plan_for


def random_fraction(rng: random.Random, num: int = 9, den: int = 7, integral: bool = True
                    ) -> Fraction:
    while True:
        x = Fraction(rng.randint(-num, num), rng.randint(1, den))
        if integral or x.denominator != 1:
            return x


def random_split_rf(rng: random.Random, max_deg: int = 4, pool: int = 6) -> RationalFunction:
    """A nonzero rational function whose zeros and poles are small rationals."""
    c = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4))
    f = RationalFunction(Poly([c]))
    for _ in range(rng.randint(0, max_deg)):
        f = f * RationalFunction(Poly.linear(Fraction(rng.randint(-pool, pool), rng.randint(1, 3))))
    for _ in range(rng.randint(0, max_deg)):
        f = f / RationalFunction(Poly.linear(Fraction(rng.randint(-pool, pool), rng.randint(1, 3))))
    return f


def random_gamma_rf(rng: random.Random, max_factors: int = 4) -> RationalFunction:
    """Roots are non-integral rationals or conjugate pairs, distinct modulo Z."""
    used: set[Fraction] = set()
    f = RationalFunction(Poly([Fraction(rng.randint(1, 5), rng.randint(1, 5))]))
    for _ in range(rng.randint(1, max_factors)):
        while True:
            a = random_fraction(rng, 12, 9, integral=False)
            if a - math.floor(a) not in used:
                used.add(a - math.floor(a))
                break
        if rng.random() < 0.3:
            # (T - a)^2 + b^2 with complex roots a +- bi
            b = Fraction(rng.randint(1, 5), rng.randint(1, 3))
            lin = Poly.linear(a)
            factor = RationalFunction(lin * lin + Poly([b * b]))
        else:
            factor = RationalFunction(Poly.linear(a))
        f = f * factor if rng.random() < 0.6 else f / factor
    return f


def gamma_partial_delta_suite(n: int = 100, seed: int = 42) -> float:
    """Max of ``|Gamma(partial f) Delta(f) - 1|`` over ``n`` random ``f``."""
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(n):
        f = random_gamma_rf(rng)
        val = gamma_of_rf(partial_shift(f)) * float(delta(f))
        worst = max(worst, abs(val - 1))
    return worst


def gauss_multiplication_suite(ms=(2, 3, 5), n: int = 50, seed: int = 42) -> float:
    """Max relative error of ``Gamma(s) = m^{s-1} prod Gamma((s+l)/m) / Gamma((1+l)/m)``."""
    rng = random.Random(seed)
    worst = 0.0
    for m in ms:
        for _ in range(n):
            s = complex(rng.uniform(0.1, 6), rng.uniform(-3, 3))
            rhs = m ** (s - 1)
            for ell in range(m):
                rhs *= gamma((s + ell) / m) / gamma((1 + ell) / m)
            lhs = gamma(s)
            worst = max(worst, abs(rhs / lhs - 1))
    return worst


def reciprocity_suite(n: int = 100, seed: int = 42) -> int:
    """Number of failures of exact Weil reciprocity over ``n`` random split pairs."""
    rng = random.Random(seed)
    return sum(not weil_reciprocity_check(random_split_rf(rng), random_split_rf(rng))
               for _ in range(n))


def random_D(rng: random.Random) -> list:
    pts = sorted({Fraction(rng.randint(-4, 4), rng.randint(1, 2)) for _ in range(rng.randint(1, 3))})
    return pts + ([INF] if rng.random() < 0.6 else [])


def boundary_exactness_suite(n: int = 100, seed: int = 42) -> int:
    """Number of random ``f`` whose boundary class is not zero."""
    rng = random.Random(seed)
    bad = 0
    for _ in range(n):
        f = random_split_rf(rng)
        bad += not boundary_class(f, random_D(rng)).is_zero()
    return bad


def monodromy_catalog() -> list[LogConnection]:
    """Ten diagonalizable connections of rank 1 to 3 with 1 to 4 finite points."""
    h = Fraction(1, 2)
    raw = [
        ((0,), [[[h]]]),
        ((0, 1), [[["1/3"]], [["1/4"]]]),
        ((0, 1, 3), [[["1/3"]], [["-2/5"]], [["7/3"]]]),
        ((0,), [[["1/2", 0], [0, "1/3"]]]),
        ((0, 1), [[["1/2", 1], [0, "1/3"]], [["1/4", 0], [0, "1/5"]]]),
        ((-1, 1), [[[0, "1/3"], ["-1/3", 0]], [["1/5", 0], [0, "2/5"]]]),
        ((0, 2), [[["1/7", "2/3"], ["1/2", "1/5"]], [["-1/3", 0], ["1/4", "1/6"]]]),
        ((-2, "1/2", 3), [[["1/3", 0], [0, "1/4"]], [["1/5", "1/2"], [0, "3/7"]],
                          [["2/9", 0], ["1/3", "-1/6"]]]),
        ((0, 1), [[["1/2", 0, 0], [0, "1/3", 0], [0, 0, "1/5"]],
                  [["1/7", 1, 0], [0, "2/7", 1], [0, 0, "3/7"]]]),
        ((-3, -1, 1, 3), [[["1/4"]], [["1/5"]], [["1/6"]], [["-1/7"]]]),
    ]
    from .algebra import QMatrix
    return [LogConnection(tuple(Fraction(p) for p in pts),
                          tuple(QMatrix.of(m) for m in mats), label=f"mono-{i}")
            for i, (pts, mats) in enumerate(raw)]


def monodromy_suite(conns=None, tol: float = 1e-12) -> float:
    """Worst eigenvalue distance to ``exp(-2 pi i spec(res))`` over all points and infinity."""
    worst = 0.0
    for conn in conns or monodromy_catalog():
        plan = plan_for(conn)
        for x in list(conn.points) + [INF]:
            M = monodromy(conn, x, plan, tol)
            worst = max(worst, match_eigenvalues(np.linalg.eigvals(M),
                                                 expected_monodromy_eigenvalues(conn, x)))
    return worst


def prime_powers(limit: int) -> list[tuple[int, int]]:
    import sympy
    out = []
    for p in sympy.primerange(2, limit + 1):
        e, q = 1, p
        while q <= limit:
            out.append((p, e))
            e, q = e + 1, q * p
    return sorted(out, key=lambda pe: pe[0] ** pe[1])


def gauss_moduli_suite(limit: int = 10_000) -> tuple[float, int]:
    """Worst ``| |g|^2 / Q - 1 |`` over all nontrivial characters of all ``F_Q``, ``Q <= limit``."""
    worst, count = 0.0, 0
    for p, e in prime_powers(limit):
        F = _field(p, e)
        g = gauss_sums_all(F)[1:]
        if len(g):
            worst = max(worst, float(np.max(np.abs(np.abs(g) ** 2 / F.q - 1))))
            count += len(g)
    return worst, count
