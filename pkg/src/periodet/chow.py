"""Tame symbols, Weil reciprocity and the relative Picard group of P^1 mod D.

Closed points of P^1 over Q are represented by a rational number, by ``INF``
or, for points of higher degree, by a monic square-free polynomial whose
roots all carry the same orders (a block of a gcd-free basis).  Symbol values
at such blocks are reduced to Q by the norm.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .algebra import (
    INF,
    Point,
    Poly,
    RationalFunction,
    as_point,
    fmt_point,
    is_inf,
    norm_mod,
    ord_and_lead,
    poly_gcd,
    rational_roots,
    squarefree_decomposition,
)

ClosedPoint = Point | Poly


class ChowError(ValueError):
    pass


# --------------------------------------------------------------------------
# closed points
# --------------------------------------------------------------------------

def _as_closed(x) -> ClosedPoint:
    if isinstance(x, Poly):
        if x.degree < 1:
            raise ChowError("a closed point needs a polynomial of positive degree")
        x = x.monic()
        return -x.coeffs[0] if x.degree == 1 else x
    return as_point(x)


def point_degree(x: ClosedPoint) -> int:
    return x.degree if isinstance(x, Poly) else 1


def _poly_order(p: Poly, pi: Poly) -> int:
    n = 0
    while True:
        q, r = divmod(p, pi)
        if not r.is_zero():
            return n
        p, n = q, n + 1


def order_at(f: RationalFunction, x: ClosedPoint) -> int:
    if isinstance(x, Poly):
        return _poly_order(f.num, x) - _poly_order(f.den, x)
    return ord_and_lead(f, x)[0]


def gcd_free_basis(polys: Iterable[Poly]) -> list[Poly]:
    """Pairwise coprime monic square-free blocks on which every input has constant order."""
    blocks: list[Poly] = []
    for p in polys:
        if p.degree > 0:
            blocks.extend(f for f, _ in squarefree_decomposition(p))
    changed = True
    while changed:
        changed = False
        for i in range(len(blocks)):
            for j in range(i + 1, len(blocks)):
                a, b = blocks[i], blocks[j]
                g = poly_gcd(a, b)
                if g.degree == 0:
                    continue
                parts = [g, (a // g).monic(), (b // g).monic()]
                blocks = [blk for k, blk in enumerate(blocks) if k not in (i, j)]
                blocks.extend(q for q in parts if q.degree > 0)
                changed = True
                break
            if changed:
                break
    return sorted(set(blocks), key=lambda q: (q.degree, [str(c) for c in q.coeffs]))


def support(*fs: RationalFunction) -> list[ClosedPoint]:
    """Closed points where some ``f`` has a zero or pole, plus infinity."""
    pts: list[ClosedPoint] = []
    for b in gcd_free_basis(p for f in fs for p in (f.num, f.den)):
        for r in rational_roots(b):
            pts.append(r)
            b = b // Poly.linear(r)
        if b.degree > 0:
            pts.append(_as_closed(b))
    pts.append(INF)
    return pts


# --------------------------------------------------------------------------
# tame symbols
# --------------------------------------------------------------------------

def tame_symbol(g: RationalFunction, f: RationalFunction, x) -> Fraction:
    """``(-1)^{mn} g^n f^{-m}`` at ``x`` with ``m = ord g``, ``n = ord f``.

    At a block of degree > 1 the value is the norm down to Q.
    """
    if g.is_zero() or f.is_zero():
        raise ChowError("tame symbol of the zero function")
    x = _as_closed(x) if isinstance(x, Poly) else as_point(x)
    if isinstance(x, Poly):
        m, n = order_at(g, x), order_at(f, x)
        h = g ** n / f ** m
        val = norm_mod(h.num, x) / norm_mod(h.den, x)
        return (-1) ** ((m * n * x.degree) % 2) * val
    m, lg = ord_and_lead(g, x)
    n, lf = ord_and_lead(f, x)
    return (-1) ** ((m * n) % 2) * lg ** n / lf ** m


def symbol_product(g: RationalFunction, f: RationalFunction) -> Fraction:
    out = Fraction(1)
    for x in support(g, f):
        out *= tame_symbol(g, f, x)
    return out


def weil_reciprocity_check(g: RationalFunction, f: RationalFunction) -> bool:
    return symbol_product(g, f) == 1


# --------------------------------------------------------------------------
# adelic boundary and normal forms
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class AdeleElement:
    """``(ord, unit)`` at a point of D; ``unit`` is ``None`` away from D."""

    point: ClosedPoint
    ord: int
    unit: Fraction | None = None

    def __post_init__(self):
        if self.unit is not None:
            u = Fraction(self.unit)
            if u == 0:
                raise ChowError("unit part must be nonzero")
            object.__setattr__(self, "unit", u)

    @property
    def degree(self) -> int:
        return self.ord * point_degree(self.point)

    def __repr__(self) -> str:
        p = self.point if isinstance(self.point, Poly) else fmt_point(self.point)
        return f"AdeleElement({p}, ord={self.ord}, unit={self.unit})"


def _sort_key(x: ClosedPoint):
    if isinstance(x, Poly):
        return (2, x.degree, [str(c) for c in x.coeffs])
    return (1, 0, []) if is_inf(x) else (0, x, [])


def sorted_points(D: Iterable) -> list[Point]:
    pts = {as_point(x) for x in D}
    return sorted(pts, key=_sort_key)


def boundary(f: RationalFunction, D: Iterable) -> list[AdeleElement]:
    """Boundary of ``f``: ``(ord, lead)`` at every point of D, the order elsewhere."""
    if f.is_zero():
        raise ChowError("boundary of the zero function")
    Dset = sorted_points(D)
    out = [AdeleElement(x, *ord_and_lead(f, x)) for x in Dset]
    for x in support(f):
        if not isinstance(x, Poly) and x in Dset:
            continue
        n = order_at(f, x)
        if n:
            _check_off_D(x, Dset)
            out.append(AdeleElement(x, n))
    return out


def _check_off_D(x: ClosedPoint, D: list[Point]):
    if isinstance(x, Poly):
        for p in D:
            if not is_inf(p) and x(p) == 0:
                raise ChowError("a block of the support meets D")


@dataclass(frozen=True)
class RelChowClass:
    """Normal form in CH^1(P^1 mod D).

    The whole degree sits at the first point ``p0`` of D (finite points in
    increasing order, infinity last) with unit 1 there; ``units`` holds the
    remaining points of D.
    """

    D: tuple[Point, ...]
    degree: int
    units: Mapping[Point, Fraction]
    witnesses: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "units", dict(self.units))

    @property
    def base(self) -> Point:
        return self.D[0]

    def is_zero(self) -> bool:
        return self.degree == 0 and all(u == 1 for u in self.units.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, RelChowClass):
            return NotImplemented
        return (self.D == other.D and self.degree == other.degree
                and self.units == other.units)

    def __hash__(self) -> int:
        return hash((self.D, self.degree, tuple(sorted(self.units.items(), key=lambda kv: _sort_key(kv[0])))))

    def as_dict(self) -> dict:
        return {"D": [fmt_point(x) for x in self.D], "degree": self.degree,
                "units": {fmt_point(x): str(u) for x, u in self.units.items()}}


def _mover(y: ClosedPoint, p0: Point) -> RationalFunction:
    """A function with divisor ``[y] - deg(y) [p0]``."""
    pi = y if isinstance(y, Poly) else (None if is_inf(y) else Poly.linear(y))
    if is_inf(p0):
        return RationalFunction(pi)
    lin = Poly.linear(p0)
    if pi is None:  # y = infinity
        return RationalFunction(Poly([1]), lin)
    return RationalFunction(pi, lin ** pi.degree)


def _accumulate(cycle: Iterable[AdeleElement], D: list[Point]):
    ords: dict[ClosedPoint, int] = {}
    units: dict[Point, Fraction] = {x: Fraction(1) for x in D}
    for e in cycle:
        x = e.point
        if isinstance(x, Poly) and x.degree == 1:
            x = -x.monic().coeffs[0]
        if not isinstance(x, Poly) and x in units:
            units[x] *= e.unit if e.unit is not None else 1
        elif e.unit is not None:
            raise ChowError(f"unit data at {x}, which is not in D")
        ords[x] = ords.get(x, 0) + e.ord
    return ords, units


def chow_normal_form(cycle: Sequence[AdeleElement], D: Iterable) -> RelChowClass:
    D = sorted_points(D)
    if not D:
        raise ChowError("D must be nonempty")
    p0 = D[0]
    ords, units = _accumulate(cycle, D)
    witnesses = []
    for y in sorted(ords, key=_sort_key):
        n = ords[y]
        if y == p0 or n == 0:
            continue
        f = _mover(y, p0) ** n
        witnesses.append(f)
        for e in boundary(f, D):
            if not isinstance(e.point, Poly) and e.point in units:
                units[e.point] /= e.unit
    degree = sum(n * point_degree(y) for y, n in ords.items())
    c = units[p0]
    normal = {x: u / c for x, u in units.items() if x != p0}
    return RelChowClass(tuple(D), degree, normal, tuple(witnesses))


def boundary_class(f: RationalFunction, D: Iterable) -> RelChowClass:
    return chow_normal_form(boundary(f, D), D)


def point_class(x, D: Iterable) -> RelChowClass:
    return chow_normal_form([AdeleElement(_as_closed(x), 1)], D)


def canonical_cycle(D: Iterable) -> list[AdeleElement]:
    """``-(sum_{x finite} (t - x)[x] + (-t)[inf])`` as adele elements."""
    D = sorted_points(D)
    if INF not in D:
        raise ChowError("the relative canonical class is built with infinity in D")
    out = []
    for x in D:
        if is_inf(x):
            # -t has order -1 and leading coefficient -1 at infinity
            out.append(AdeleElement(x, 1, Fraction(-1)))
        else:
            out.append(AdeleElement(x, -1, Fraction(1)))
    return out


def relative_canonical_class(D: Iterable) -> RelChowClass:
    D = sorted_points(D)
    return chow_normal_form(canonical_cycle(D), D)


# --------------------------------------------------------------------------
# analytic symbol for rank-one connections
# --------------------------------------------------------------------------

def analytic_symbol_pair(conn, element: AdeleElement, plan=None, symbol: complex | None = None
                         ) -> complex:
    """``exp(a (-n pi i + log u)) C^n`` with ``C = lim phi(t) (t - x)^a``.

    ``phi`` is the flat section equal to 1 at the base point, so ``C`` is
    the inverse of the regularized determinant symbol at ``x``.
    """
    from .periods import plan_for, regularized_symbol

    if conn.rank != 1:
        raise ChowError("analytic symbols are implemented for rank one")
    x = element.point
    a = float(conn.residue_at(x)[0, 0])
    u = Fraction(1) if element.unit is None else element.unit
    n = element.ord
    if n:
        if symbol is None:
            plan = plan or plan_for(conn)
            symbol = regularized_symbol(conn, x, plan)
        C = 1 / symbol
    else:
        C = 1
    return cmath.exp(a * (-n * math.pi * 1j + cmath.log(float(u)))) * C ** n


def exact_symbol_of_integral_connection(exponents: Mapping[Point, int], base: complex,
                                        element: AdeleElement) -> complex:
    """Tame symbol ``(phi, f)_x`` for ``phi = g / g(b)``, ``g = prod (t - x)^{-a_x}``."""
    num, den = Poly([1]), Poly([1])
    for x, a in exponents.items():
        lin = Poly.linear(x)
        if a < 0:
            num = num * lin ** (-a)
        elif a > 0:
            den = den * lin ** a
    g = RationalFunction(num, den)
    x = as_point(element.point)
    u = Fraction(1) if element.unit is None else element.unit
    f = RationalFunction(Poly([u])) * RationalFunction(Poly.linear(x)) ** element.ord
    gb = complex(g.num(complex(base)) / g.den(complex(base)))
    return complex(tame_symbol(g, f, x)) * gb ** (-element.ord)


# --------------------------------------------------------------------------
# Fermat configuration on P^n mod the coordinate hyperplanes
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class FermatClass:
    """Class in the presentation ``F^x -> (F^x)^{n+2} -> CH^n -> Z -> 0``.

    Units are normalized by the diagonal action so that the first entry is 1.
    """

    n: int
    degree: int
    units: tuple[Fraction, ...]

    @classmethod
    def make(cls, n: int, degree: int, units: Sequence) -> "FermatClass":
        us = [Fraction(u) for u in units]
        if len(us) != n + 2 or any(u == 0 for u in us):
            raise ChowError("need n + 2 nonzero units")
        return cls(n, degree, tuple(u / us[0] for u in us))

    def power(self, k: int) -> "FermatClass":
        return FermatClass.make(self.n, self.degree * k, [u ** k for u in self.units])


def fermat_configuration_chern(n: int, coords: Sequence) -> FermatClass:
    """Top chern class ``[x] + (t_i)_i`` of the log cotangent bundle with residues."""
    t = [Fraction(c) for c in coords]
    if len(t) != n + 2:
        raise ChowError(f"expected {n + 2} coordinates")
    if sum(t) != 0:
        raise ChowError("coordinates must sum to zero")
    if any(c == 0 for c in t):
        raise ChowError("coordinates must be nonzero")
    return FermatClass.make(n, 1, t)


def fermat_relative_canonical(n: int, coords: Sequence) -> FermatClass:
    return fermat_configuration_chern(n, coords).power((-1) ** n)


def fermat_pairing_scaling(a: Sequence, coords: Sequence) -> tuple[Fraction, bool]:
    """How ``prod t_i^{a_i}`` changes under ``t -> lambda t``.

    Returns the exponent ``sum a_i`` of ``lambda`` and whether it is an integer,
    in which case the pairing with a degree-zero formal sum is well defined on
    the class (the change is a rational number).
    """
    s = sum((Fraction(x) for x in a), Fraction(0))
    if len(a) != len(coords):
        raise ChowError("one exponent per coordinate")
    return s, s.denominator == 1


# --------------------------------------------------------------------------
# heuristic rationality check
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class RatioHeuristic:
    ratio: complex
    guess: Fraction | None
    error: float

    @property
    def recognized(self) -> bool:
        return self.guess is not None


def recognize_rational(z: complex, max_den: int = 10_000, tol: float = 1e-9
                       ) -> tuple[Fraction | None, float]:
    if abs(z.imag) > tol:
        return None, abs(z.imag)
    guess = Fraction(z.real).limit_denominator(max_den)
    err = abs(z.real - float(guess))
    if err > tol or guess == 0:
        return None, err
    return guess, err


def theorem2_ratio_heuristic(conn, plan=None, tol: float = 1e-12,
                             gamma_perturbation: float = 1.0) -> RatioHeuristic:
    """Assembled ``period / (Gamma * symbols)`` and its rational recognition.

    A heuristic: recognition at denominator <= 1e4 is evidence, not proof.
    """
    from .periods import verify_theorem_T

    rep = verify_theorem_T(conn, plan, tol)
    ratio = rep.det_Hc / (rep.gamma_side * gamma_perturbation * rep.symbol_side)
    guess, err = recognize_rational(complex(ratio))
    return RatioHeuristic(complex(ratio), guess, err)
