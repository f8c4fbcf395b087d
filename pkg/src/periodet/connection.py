"""Logarithmic connections on the projective line in Fuchsian normal form.

A connection of rank r on the trivial bundle is stored by its residues
``B_i`` at finite rational points ``lambda_i``; the connection form is
``A(t) dt = sum_i B_i dt / (t - lambda_i)`` and the residue at infinity is
``-sum_i B_i`` (minus ``n_inf * Id`` after a twist at infinity).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from .algebra import (
    INF,
    Point,
    Poly,
    QMatrix,
    as_fraction,
    as_point,
    char_poly,
    complex_roots,
    fmt_point,
    is_inf,
    rational_roots,
)

EIGEN_MARGIN = 1e-9


class ConnectionDataError(ValueError):
    """Invalid connection data or an undefined operation on it."""


class BoundaryCaseError(ConnectionDataError):
    """An eigenvalue real part sits within the admissibility margin of 0."""


@dataclass(frozen=True)
class ExtensionTwist:
    """Integer multiples ``n_x`` of boundary points (finite support)."""

    multiples: Mapping[Point, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {as_point(k): int(v) for k, v in dict(self.multiples).items() if int(v) != 0}
        object.__setattr__(self, "multiples", clean)

    def at(self, x: Point) -> int:
        return self.multiples.get(x, 0)

    def __add__(self, other: "ExtensionTwist") -> "ExtensionTwist":
        keys = set(self.multiples) | set(other.multiples)
        return ExtensionTwist({k: self.at(k) + other.at(k) for k in keys})


@dataclass(frozen=True)
class LogConnection:
    points: tuple[Fraction, ...]
    residues: tuple[QMatrix, ...]
    include_infinity: bool = True
    infinity_twist: int = 0
    label: str = ""

    def __post_init__(self):
        pts = tuple(as_fraction(p) for p in self.points)
        res = tuple(r if isinstance(r, QMatrix) else QMatrix.of(r) for r in self.residues)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "residues", res)
        if len(set(pts)) != len(pts):
            raise ConnectionDataError("singular points must be distinct")
        if len(pts) != len(res):
            raise ConnectionDataError("one residue matrix per singular point")
        if not res:
            raise ConnectionDataError("at least one finite singular point is required")
        r = res[0].rows
        if r < 1 or any(not m.is_square or m.rows != r for m in res):
            raise ConnectionDataError("residues must be square matrices of a common size")

    @classmethod
    def rank_one(cls, points: Sequence, exponents: Sequence, **kw) -> "LogConnection":
        return cls(tuple(as_fraction(p) for p in points),
                   tuple(QMatrix.of([[e]]) for e in exponents), **kw)

    @property
    def rank(self) -> int:
        return self.residues[0].rows

    @property
    def degree(self) -> int:
        """Number of finite singular points."""
        return len(self.points)

    def declared_points(self) -> list[Point]:
        return list(self.points) + ([INF] if self.include_infinity else [])

    # residues ------------------------------------------------------------
    def residue_at(self, x) -> QMatrix:
        x = as_point(x)
        if is_inf(x):
            total = QMatrix.zero(self.rank)
            for b in self.residues:
                total = total + b
            return (-total) - QMatrix.identity(self.rank).scale(self.infinity_twist)
        for p, b in zip(self.points, self.residues):
            if p == x:
                return b
        return QMatrix.zero(self.rank)

    def char_poly_at(self, x) -> Poly:
        return char_poly(self.residue_at(x))

    def trace_sum(self) -> Fraction:
        """Sum of residue traces over all points including infinity."""
        return sum((self.residue_at(x).trace() for x in self.points), Fraction(0)) + \
            self.residue_at(INF).trace()

    # numerics ------------------------------------------------------------
    @cached_property
    def residue_arrays(self) -> np.ndarray:
        return np.stack([b.to_numpy() for b in self.residues])

    @cached_property
    def point_array(self) -> np.ndarray:
        return np.array([complex(p) for p in self.points])

    def matrix_at(self, t: complex) -> np.ndarray:
        """``A(t)`` with ``A(t) dt`` the connection form."""
        w = 1.0 / (t - self.point_array)
        return np.tensordot(w, self.residue_arrays, axes=1)

    def trace_at(self, t: complex) -> complex:
        return complex(np.sum(np.array([float(b.trace()) for b in self.residues]) /
                              (t - self.point_array)))

    # twisting ------------------------------------------------------------
    def twist(self, tw: ExtensionTwist | Mapping) -> "LogConnection":
        """Residues ``B_x - n_x Id``; the multiple at infinity is bookkept separately."""
        if not isinstance(tw, ExtensionTwist):
            tw = ExtensionTwist(tw)
        ident = QMatrix.identity(self.rank)
        unknown = [x for x in tw.multiples if not is_inf(x) and x not in self.points]
        if unknown:
            raise ConnectionDataError(f"twist at non-singular points {unknown}")
        res = tuple(b - ident.scale(tw.at(p)) for p, b in zip(self.points, self.residues))
        return replace(self, residues=res, infinity_twist=self.infinity_twist + tw.at(INF))

    def dual(self) -> "LogConnection":
        """Residues ``1 - B_x^T``: small at a point iff the dual is big there."""
        ident = QMatrix.identity(self.rank)
        res = tuple(ident - b.transpose() for b in self.residues)
        # at infinity: 1 - res_inf^T = 1 + sum B^T + n_inf = -sum(1 - B^T) + (d + 1 + n_inf)
        return replace(self, residues=res,
                       infinity_twist=-(self.degree + 1 + self.infinity_twist))

    # extension predicates -----------------------------------------------
    def _integer_roots(self, x) -> list[int]:
        return [int(r) for r in rational_roots(self.char_poly_at(x)) if r.denominator == 1]

    def small_at(self, x) -> bool:
        return not any(n <= 0 for n in self._integer_roots(x))

    def big_at(self, x) -> bool:
        return not any(n >= 1 for n in self._integer_roots(x))

    def is_small(self) -> bool:
        return all(self.small_at(x) for x in self.declared_points())

    def is_big(self) -> bool:
        return all(self.big_at(x) for x in self.declared_points())

    def __repr__(self) -> str:
        pts = ", ".join(fmt_point(p) for p in self.points)
        return f"LogConnection(rank={self.rank}, points=[{pts}], label={self.label!r})"


def eigenvalues(m: QMatrix) -> list[tuple[complex, int, Fraction | None]]:
    """Eigenvalues with multiplicity; exact when rational."""
    p = char_poly(m)
    out: list[tuple[complex, int, Fraction | None]] = []
    rat = rational_roots(p)
    rest = p
    for r, mult in rat.items():
        out.append((complex(r), mult, r))
        rest = rest // Poly.linear(r) ** mult
    if rest.degree > 0:
        out.extend((z, mult, None) for z, mult in complex_roots(rest))
    return out


def canonical_normalize(conn: LogConnection) -> tuple[LogConnection, ExtensionTwist]:
    """Twist every declared point so that residue eigenvalues lie in (0, 1].

    Requires rational eigenvalues and, at each point, a common integer shift.
    """
    shifts: dict[Point, int] = {}
    for x in conn.declared_points():
        p = conn.char_poly_at(x)
        rat = rational_roots(p)
        if sum(rat.values()) != p.degree:
            raise ConnectionDataError(f"irrational residue eigenvalues at {fmt_point(x)}")
        wanted = {math.ceil(r) - 1 for r in rat}
        if len(wanted) != 1:
            raise ConnectionDataError(
                f"non-uniform eigenvalue shifts at one point ({fmt_point(x)}: {sorted(rat)})")
        n = wanted.pop()
        if n:
            shifts[x] = n
    tw = ExtensionTwist(shifts)
    return conn.twist(tw), tw


def theorem_t_admissible(conn: LogConnection) -> bool:
    """Finite residues have eigenvalues with Re > 0, the residue at infinity Re < 0."""
    ok = True
    checks = [(x, 1) for x in conn.points] + [(INF, -1)]
    for x, sign in checks:
        for z, _, exact in eigenvalues(conn.residue_at(x)):
            re = float(exact) if exact is not None else z.real
            if exact is not None and exact == 0 or abs(re) < EIGEN_MARGIN:
                raise BoundaryCaseError(
                    f"eigenvalue {z} at {fmt_point(x)} has real part within {EIGEN_MARGIN} of 0")
            if sign * re <= 0:
                ok = False
    return ok
