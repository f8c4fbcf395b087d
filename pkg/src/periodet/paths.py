"""Path systems in the punctured plane and the branch ledger.

All singular points are real, so the default plan lives in the lower half
plane: a base point ``b`` below everything, for each singular point a
horizontal leg at height ``Im b`` followed by a vertical leg up to the anchor
``lambda - i*rho`` on the boundary of the point's disc.  The union of these
legs is a tree, hence simply connected, and no leg meets a foreign disc.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np


class PathError(ValueError):
    pass


@dataclass(frozen=True)
class Segment:
    start: complex
    end: complex

    def point(self, s: float) -> complex:
        return self.start + (self.end - self.start) * s

    def velocity(self, s: float) -> complex:
        return self.end - self.start

    @property
    def length(self) -> float:
        return abs(self.end - self.start)

    def reversed(self) -> "Segment":
        return Segment(self.end, self.start)


@dataclass(frozen=True)
class Arc:
    center: complex
    radius: float
    theta0: float
    theta1: float

    def point(self, s: float) -> complex:
        th = self.theta0 + (self.theta1 - self.theta0) * s
        return self.center + self.radius * cmath.exp(1j * th)

    def velocity(self, s: float) -> complex:
        th = self.theta0 + (self.theta1 - self.theta0) * s
        return 1j * self.radius * (self.theta1 - self.theta0) * cmath.exp(1j * th)

    @property
    def start(self) -> complex:
        return self.point(0.0)

    @property
    def end(self) -> complex:
        return self.point(1.0)

    @property
    def length(self) -> float:
        return abs(self.radius * (self.theta1 - self.theta0))

    def reversed(self) -> "Arc":
        return Arc(self.center, self.radius, self.theta1, self.theta0)


Piece = Segment | Arc


@dataclass(frozen=True)
class Path:
    pieces: tuple[Piece, ...]

    @property
    def start(self) -> complex:
        return self.pieces[0].start

    @property
    def end(self) -> complex:
        return self.pieces[-1].end

    @property
    def length(self) -> float:
        return sum(p.length for p in self.pieces)

    def reversed(self) -> "Path":
        return Path(tuple(p.reversed() for p in reversed(self.pieces)))

    def __add__(self, other: "Path") -> "Path":
        return Path(self.pieces + other.pieces)

    @classmethod
    def polyline(cls, vertices: Sequence[complex]) -> "Path":
        pieces = tuple(Segment(complex(a), complex(b)) for a, b in zip(vertices, vertices[1:])
                       if a != b)
        return cls(pieces)

    def sample(self, n: int = 64) -> np.ndarray:
        return np.array([p.point(s) for p in self.pieces for s in np.linspace(0, 1, n)])


def continue_log(log0: complex, path: Path, center: complex, samples: int = 8) -> complex:
    """Continue a value of ``log(t - center)`` along ``path``.

    Each step is short enough (a segment, or an arc chopped into pieces of
    angle < pi seen from ``center``) that the principal log of the ratio is
    the correct increment.
    """
    cur = log0
    prev = path.start
    for piece in path.pieces:
        steps = samples if isinstance(piece, Arc) else 1
        for s in np.linspace(0, 1, steps + 1)[1:]:
            nxt = piece.point(float(s))
            if isinstance(piece, Segment):
                _check_segment_avoids(prev, nxt, center)
            cur = cur + cmath.log((nxt - center) / (prev - center))
            prev = nxt
    return cur


def _check_segment_avoids(a: complex, b: complex, c: complex, eps: float = 1e-14):
    d = b - a
    if d == 0:
        return
    s = max(0.0, min(1.0, ((c - a) * d.conjugate()).real / abs(d) ** 2))
    if abs(a + s * d - c) <= eps * max(1.0, abs(c)):
        raise PathError(f"segment {a} -> {b} passes through the singular point {c}")


@dataclass(frozen=True)
class PathPlan:
    """Base point, discs, anchors, legs and continued logarithms.

    ``logs[x][k]`` is the value of ``log(t - lambda_k)`` at the anchor of ``x``
    continued from the principal value at the base point; ``center_logs[x][k]``
    continues it further (radially) to ``lambda_x`` itself for ``k != x``.
    """

    points: tuple[complex, ...]
    base: complex
    radius: float
    anchors: tuple[complex, ...]
    legs: tuple[Path, ...]
    base_logs: tuple[complex, ...]
    logs: tuple[tuple[complex, ...], ...]
    center_logs: tuple[tuple[complex, ...], ...]
    infinity_direction: complex = field(default=-1j)

    def index(self, x) -> int:
        for i, p in enumerate(self.points):
            if p == complex(x):
                return i
        raise PathError(f"{x} is not a singular point of the plan")

    def loop(self, i: int) -> Path:
        """Leg to the anchor, once positively around the disc, back to the base."""
        lam, a = self.points[i], self.anchors[i]
        th0 = cmath.phase(a - lam)
        circle = Path((Arc(lam, self.radius, th0, th0 + 2 * math.pi),))
        return self.legs[i] + circle + self.legs[i].reversed()

    def radial(self, i: int) -> Segment:
        """Anchor to the singular point."""
        return Segment(self.anchors[i], self.points[i])

    def infinity_ray(self, length: float) -> Path:
        return Path((Segment(self.base, self.base + length * self.infinity_direction),))


def default_radius(points: Sequence[complex]) -> float:
    if len(points) < 2:
        return 0.25 * max(1.0, max(abs(p) for p in points))
    dmin = min(abs(a - b) for i, a in enumerate(points) for b in points[i + 1:])
    return dmin / 4


def build_plan(points: Sequence, base: complex | None = None, disc_scale: float = 1.0) -> PathPlan:
    """The deterministic comb-shaped plan for real singular points."""
    pts = tuple(complex(p) for p in points)
    if any(p.imag != 0 for p in pts):
        raise PathError("the default plan needs real singular points")
    if not 0 < disc_scale <= 1:
        raise PathError("disc_scale must lie in (0, 1]")
    rho = default_radius(pts) * disc_scale
    if base is None:
        base = -1j * (1 + max(abs(p) for p in pts))
    base = complex(base)
    if base.imag >= -2 * rho:
        raise PathError(f"base point {base} must lie below every disc (Im b < {-2 * rho:g})")

    anchors = tuple(p - 1j * rho for p in pts)
    legs = tuple(Path.polyline([base, complex(p.real, base.imag), a]) for p, a in zip(pts, anchors))
    base_logs = tuple(cmath.log(base - p) for p in pts)
    logs, center_logs = [], []
    for i, leg in enumerate(legs):
        row = tuple(continue_log(base_logs[k], leg, pts[k]) for k in range(len(pts)))
        logs.append(row)
        radial = Path((Segment(anchors[i], pts[i]),))
        crow = tuple(
            continue_log(row[k], radial, pts[k]) if k != i else row[k] for k in range(len(pts)))
        center_logs.append(crow)
    return PathPlan(points=pts, base=base, radius=rho, anchors=anchors, legs=legs,
                    base_logs=base_logs, logs=tuple(logs), center_logs=tuple(center_logs))
