"""Characters, Gauss sums and Jacobi sums over finite fields.

Fractions ``a`` in Q/Z with denominator dividing ``Q - 1`` are characters of
``F_Q^x`` through ``chi_a(g^j) = exp(2 pi i a j)`` for the field's generator.
Gauss sums follow the normalization ``g(a) = -sum chi_a^{-1}(x) psi(Tr x)``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np
import sympy

from .finite_field import GF
from .gamma import gamma


class CharacterError(ValueError):
    pass


class DegenerateCharacterError(CharacterError):
    """Trivial character where a nontrivial one is needed; carries the classical value."""

    def __init__(self, message: str, value=None):
        super().__init__(message)
        self.value = value


def frac_mod1(a) -> Fraction:
    a = Fraction(a)
    return a - math.floor(a)


# --------------------------------------------------------------------------
# formal sums of fractions
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class BSupportElement:
    """A formal sum ``sum n_a [a]`` of fractions in ``[0, 1)``."""

    terms: Mapping[Fraction, int]
    p: int | None = None

    def __post_init__(self):
        clean: dict[Fraction, int] = {}
        for a, n in dict(self.terms).items():
            a = frac_mod1(a)
            clean[a] = clean.get(a, 0) + int(n)
        clean = {a: n for a, n in sorted(clean.items()) if n}
        if self.p is not None:
            bad = [a for a in clean if a.denominator % self.p == 0]
            if bad:
                raise CharacterError(f"denominators of {bad} are divisible by p = {self.p}")
        object.__setattr__(self, "terms", clean)

    @classmethod
    def of(cls, *fractions, p: int | None = None) -> "BSupportElement":
        out: dict[Fraction, int] = {}
        for a in fractions:
            a = frac_mod1(a)
            out[a] = out.get(a, 0) + 1
        return cls(out, p)

    def __add__(self, other: "BSupportElement") -> "BSupportElement":
        t = dict(self.terms)
        for a, n in other.terms.items():
            t[a] = t.get(a, 0) + n
        return BSupportElement(t, self.p or other.p)

    def __neg__(self) -> "BSupportElement":
        return BSupportElement({a: -n for a, n in self.terms.items()}, self.p)

    @property
    def conductor(self) -> int:
        return math.lcm(*(a.denominator for a in self.terms)) if self.terms else 1

    def is_degree_zero(self) -> bool:
        return frac_mod1(sum((n * a for a, n in self.terms.items()), Fraction(0))) == 0

    def scaled(self, q: int) -> "BSupportElement":
        return BSupportElement({frac_mod1(q * a): n for a, n in self.terms.items()}, self.p)

    def is_frobenius_closed(self, q: int) -> bool:
        return self.scaled(q).terms == self.terms

    def orbits(self, q: int) -> list[tuple[Fraction, int, int]]:
        """``(representative, orbit length f, multiplicity)`` under ``a -> q a``."""
        if not self.is_frobenius_closed(q):
            raise CharacterError("formal sum is not stable under multiplication by q")
        seen: set[Fraction] = set()
        out = []
        for a, n in self.terms.items():
            if a in seen:
                continue
            orbit = [a]
            b = frac_mod1(q * a)
            while b != a:
                orbit.append(b)
                b = frac_mod1(q * b)
            seen.update(orbit)
            out.append((a, len(orbit), n))
        return out

    def __repr__(self) -> str:
        return " + ".join(f"{n}[{a}]" if n != 1 else f"[{a}]" for a, n in self.terms.items()) or "0"


def fractional_bracket(alpha: BSupportElement) -> Fraction:
    """``sum n_a <a>`` with ``<a>`` in ``[0, 1)``."""
    return sum((n * a for a, n in alpha.terms.items()), Fraction(0))


def gamma_c(alpha: BSupportElement) -> complex:
    """``prod Gamma(1 - <a>)^{n_a}``."""
    out = 1 + 0j
    for a, n in alpha.terms.items():
        out *= gamma(1 - float(a)) ** n
    return out


# --------------------------------------------------------------------------
# cyclotomic integers
# --------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _cyclotomic(m: int) -> tuple[int, ...]:
    x = sympy.Symbol("x")
    coeffs = sympy.Poly(sympy.cyclotomic_poly(m, x), x).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


def _reduce(coeffs: list[int], m: int) -> tuple[int, ...]:
    phi = _cyclotomic(m)
    d = len(phi) - 1
    c = list(coeffs)
    for k in range(len(c) - 1, d - 1, -1):
        t = c[k]
        if t:
            for j in range(d + 1):
                c[k - d + j] -= t * phi[j]
    c = c[:d] + [0] * max(0, d - len(c))
    return tuple(c)


@dataclass(frozen=True)
class CyclotomicInt:
    """Element of ``Z[zeta_m]`` with ``zeta_m = exp(2 pi i / m)``, reduced mod Phi_m."""

    m: int
    coeffs: tuple[int, ...]

    @classmethod
    def from_exponents(cls, m: int, counts: Iterable[int]) -> "CyclotomicInt":
        """``sum_k counts[k] zeta^k`` for k = 0..m-1."""
        return cls(m, _reduce([int(c) for c in counts], m))

    @classmethod
    def integer(cls, m: int, n: int) -> "CyclotomicInt":
        return cls.from_exponents(m, [n])

    def __add__(self, other: "CyclotomicInt") -> "CyclotomicInt":
        self._same(other)
        return CyclotomicInt(self.m, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CyclotomicInt":
        return CyclotomicInt(self.m, tuple(-a for a in self.coeffs))

    def __sub__(self, other: "CyclotomicInt") -> "CyclotomicInt":
        return self + (-other)

    def __mul__(self, other: "CyclotomicInt") -> "CyclotomicInt":
        self._same(other)
        prod = [0] * (2 * len(self.coeffs))
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        return CyclotomicInt(self.m, _reduce(prod, self.m))

    def conj(self) -> "CyclotomicInt":
        counts = [0] * self.m
        for k, c in enumerate(self.coeffs):
            counts[(-k) % self.m] += c
        return CyclotomicInt.from_exponents(self.m, counts)

    def norm_squared(self) -> "CyclotomicInt":
        """``J * conj(J)``, i.e. ``|J|^2`` as an element of the ring."""
        return self * self.conj()

    def rational_integer(self) -> int | None:
        if all(c == 0 for c in self.coeffs[1:]):
            return self.coeffs[0]
        return None

    def __complex__(self) -> complex:
        z = cmath.exp(2j * math.pi / self.m)
        return complex(sum(c * z ** k for k, c in enumerate(self.coeffs)))

    def _same(self, other):
        if self.m != other.m:
            raise ValueError("cyclotomic integers of different conductors")

    def as_list(self) -> list[int]:
        return list(self.coeffs)


# --------------------------------------------------------------------------
# characters and Gauss sums
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class MultCharacter:
    field: GF
    a: Fraction

    @property
    def order(self) -> int:
        return self.a.denominator

    def exponent(self, x: int) -> int:
        """``chi(x) = zeta_order^exponent``."""
        return self.a.numerator * self.field.discrete_log(x) % self.order

    def __call__(self, x: int) -> complex:
        if x == 0:
            return 0j
        return cmath.exp(2j * math.pi * self.exponent(x) / self.order)

    def __mul__(self, other: "MultCharacter") -> "MultCharacter":
        return mult_character(self.field, self.a + other.a)


def mult_character(field: GF, a) -> MultCharacter:
    a = frac_mod1(a)
    if (field.q - 1) % a.denominator:
        raise CharacterError(f"denominator of {a} does not divide {field.q - 1}")
    return MultCharacter(field, a)


def psi_values(field: GF, c: int = 1) -> np.ndarray:
    """``psi_c(x) = exp(2 pi i c Tr(x) / p)`` for all codes ``x``."""
    if c % field.p == 0:
        raise CharacterError("additive character must be nontrivial")
    return np.exp(2j * np.pi * ((c * field.trace_table) % field.p) / field.p)


def gauss_sums_all(field: GF, c: int = 1) -> np.ndarray:
    """``G[s] = g(s / (Q - 1))`` for every s, via one FFT over discrete logs."""
    psi = psi_values(field, c)
    seq = psi[field.exp_table]
    # sum_j conj(chi_a(g^j)) psi(g^j) = sum_j exp(-2 pi i s j / N) seq[j]
    return -np.fft.fft(seq)


@lru_cache(maxsize=64)
def _field(p: int, e: int) -> GF:
    return GF(p, e)


@lru_cache(maxsize=64)
def _gauss_table(field: GF, c: int) -> np.ndarray:
    return gauss_sums_all(field, c)


def gauss_sum(field: GF, a, c: int = 1, direct: bool = False) -> complex:
    """``g(a) = -sum_{x != 0} chi_a^{-1}(x) psi_c(Tr x)`` over ``field``."""
    chi = mult_character(field, a)
    if chi.a == 0:
        raise DegenerateCharacterError("trivial character: the sum equals 1", value=1)
    N = field.q - 1
    s = chi.a.numerator * (N // chi.order)
    if not direct:
        return complex(_gauss_table(field, c)[s])
    psi = psi_values(field, c)
    total = 0j
    for x in range(1, field.q):
        total += chi(x).conjugate() * psi[x]
    return -total


def multiplicative_order(q: int, m: int) -> int:
    if math.gcd(q, m) != 1:
        raise CharacterError(f"{q} is not prime to {m}")
    f, x = 1, q % m
    while x != 1 % m:
        x = x * q % m
        f += 1
    return f


def orbit_gauss_sum(p: int, e: int, a, c: int = 1) -> complex:
    """Gauss sum of ``a`` over ``E_f``, ``f`` the order of ``q = p^e`` modulo den(a)."""
    a = frac_mod1(a)
    f = multiplicative_order(p ** e, a.denominator)
    return gauss_sum(_field(p, e * f), a, c)


def _one_minus(field: GF) -> np.ndarray:
    d = (-field.digits) % field.p
    d[:, 0] = (d[:, 0] + 1) % field.p
    return d @ (field.p ** np.arange(field.e))


def jacobi_sum_exact(field: GF, a, b) -> CyclotomicInt:
    """``J(a, b) = -sum_{u != 0, 1} chi_a^{-1}(u) chi_b^{-1}(1 - u)`` in ``Z[zeta_m]``.

    With the inverses, ``g(a) g(b) = J(a, b) g(a + b)`` for the Gauss sums above.
    """
    a, b = frac_mod1(a), frac_mod1(b)
    for x in (a, b):
        if (field.q - 1) % x.denominator:
            raise CharacterError(f"denominator of {x} does not divide {field.q - 1}")
    if a == 0 or b == 0 or frac_mod1(a + b) == 0:
        raw = _jacobi_raw(field, a, b)
        raise DegenerateCharacterError(
            f"degenerate pair ({a}, {b}); the raw sum is {complex(raw):.6g}", value=raw)
    return _jacobi_raw(field, a, b)


def _jacobi_raw(field: GF, a: Fraction, b: Fraction) -> CyclotomicInt:
    m = max(2, math.lcm(a.denominator, b.denominator))
    ka, kb = int(a * m), int(b * m)
    logs = field.log_table
    u = np.arange(2, field.q) if field.e == 1 else np.array(
        [x for x in range(1, field.q) if x != 1])
    one_minus = _one_minus(field)[u]
    keep = one_minus != 0
    u, v = u[keep], one_minus[keep]
    expo = (-(ka * logs[u] + kb * logs[v])) % m
    counts = -np.bincount(expo, minlength=m)
    return CyclotomicInt.from_exponents(m, counts.tolist())


def jacobi_sum_weil(field: GF, a, b) -> CyclotomicInt:
    """``j(a, b) = sum_{x + y + 1 = 0} chi_a(x) chi_b(y)``, the Fermat-curve normalization.

    Related to :func:`jacobi_sum_exact` by ``j(a, b) = -chi_{a+b}(-1) J(-a, -b)``.
    """
    a, b = frac_mod1(a), frac_mod1(b)
    for x in (a, b):
        if (field.q - 1) % x.denominator:
            raise CharacterError(f"denominator of {x} does not divide {field.q - 1}")
    m = max(2, math.lcm(a.denominator, b.denominator))
    ka, kb = int(a * m), int(b * m)
    logs = field.log_table
    x = np.arange(1, field.q)
    # y = -1 - x
    d = (-field.digits[x]) % field.p
    d[:, 0] = (d[:, 0] - 1) % field.p
    y = d @ (field.p ** np.arange(field.e))
    keep = y != 0
    x, y = x[keep], y[keep]
    expo = (ka * logs[x] + kb * logs[y]) % m
    return CyclotomicInt.from_exponents(m, np.bincount(expo, minlength=m).tolist())


def jacobi_J_k(alpha: BSupportElement, p: int, e: int = 1, c: int = 1) -> complex:
    """``prod over q-orbits of g(a, psi)^{n_a}`` over ``E_f``, for ``alpha`` of degree zero."""
    q = p ** e
    if not alpha.is_degree_zero():
        raise CharacterError("formal sum is not of degree zero")
    if alpha.conductor % p == 0:
        raise CharacterError("support must be prime to p")
    out = 1 + 0j
    for a, f, n in alpha.orbits(q):
        if a == 0:
            continue
        out *= orbit_gauss_sum(p, e, a, c) ** n
    return out


@dataclass(frozen=True)
class JacobiReport:
    value: complex
    alternate: complex | None
    nearest_integer: int
    rounding_error: float
    psi_agreement: float | None


def jacobi_J_k_report(alpha: BSupportElement, p: int, e: int = 1) -> JacobiReport:
    v = jacobi_J_k(alpha, p, e, 1)
    alt = jacobi_J_k(alpha, p, e, 2) if p > 2 else None
    n = round(v.real)
    agree = abs(v - alt) / max(1.0, abs(v)) if alt is not None else None
    return JacobiReport(v, alt, n, abs(v - n), agree)


def sign_table_expected(m: int, q: int) -> int | None:
    """``J([a/m] + [-a/m])`` at a prime ``q`` prime to 2m, from the case table."""
    if math.gcd(q, 2 * m) != 1:
        return None
    if q % m == 1 % m:
        if m % 2 == 1 or q % (2 * m) == 1:
            return q
        return -q
    if q % m == m - 1:
        if m % 2 == 1 or q % (2 * m) == 2 * m - 1:
            return q
        return -q
    return None


def sign_table_corrected(m: int, q: int) -> int | None:
    """The table with the inert rows negated.

    For ``q = -1 mod m`` the pair ``[a] + [-a]`` is a single Frobenius orbit of
    length 2, so ``J_k`` is one Gauss sum over ``F_{q^2}`` carrying the leading
    minus sign of the normalization ``g = -sum``; the table lists the classical
    sum without it.  Split rows are a product of two sums and the signs cancel.
    """
    v = sign_table_expected(m, q)
    if v is None or m <= 2:
        return v
    return v if q % m == 1 else -v


def conjugate_pair(m: int, a: int = 1) -> BSupportElement:
    if math.gcd(a, m) != 1:
        raise CharacterError("a must be prime to m")
    return BSupportElement.of(Fraction(a, m), Fraction(-a, m))


# --------------------------------------------------------------------------
# Fermat curves
# --------------------------------------------------------------------------

def fermat_brute_count(m: int, field: GF) -> int:
    """Projective points of ``x^m + y^m + z^m = 0`` over ``field`` (prime fields)."""
    if field.e != 1:
        raise CharacterError("brute-force count implemented over prime fields")
    q = field.q
    pw = np.array([pow(x, m, q) for x in range(q)], dtype=np.int64)
    count = 0
    # z = 1 chart: affine points
    s = (pw[:, None] + pw[None, :] + 1) % q
    count += int(np.count_nonzero(s == 0))
    # z = 0, y = 1 chart
    count += int(np.count_nonzero((pw + 1) % q == 0))
    # z = y = 0 would force x = 0
    return count


def fermat_point_count(m: int, q: int) -> tuple[int, int]:
    """``(brute-force count, q + 1 + sum j(a, b))`` with exact Weil-normalized sums."""
    if not sympy.isprime(q):
        raise CharacterError("q must be prime for the brute-force count")
    if (q - 1) % m:
        raise CharacterError("need q = 1 mod m")
    if q > 10_000:
        raise CharacterError("brute force infeasible")
    field = _field(q, 1)
    count = fermat_brute_count(m, field)
    total = CyclotomicInt.integer(m, 0)
    for i in range(1, m):
        for j in range(1, m):
            if (i + j) % m:
                total = total + lift(jacobi_sum_weil(field, Fraction(i, m), Fraction(j, m)), m)
    val = total.rational_integer()
    if val is None:
        raise ArithmeticError("Jacobi-sum total is not a rational integer")
    return count, q + 1 + val


def lift(J: CyclotomicInt, m: int) -> CyclotomicInt:
    """Re-express ``J`` in ``Z[zeta_m]`` when its conductor divides ``m``."""
    if m % J.m:
        raise ValueError(f"conductor {J.m} does not divide {m}")
    step = m // J.m
    counts = [0] * m
    for k, c in enumerate(J.coeffs):
        counts[(k * step) % m] += c
    return CyclotomicInt.from_exponents(m, counts)
