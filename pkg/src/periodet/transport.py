"""Flat-section transport along piecewise paths.

Flat sections are columns of ``F`` with ``F' = -A F``.  Dual flat sections are
rows of ``W = F^{-1}``, which satisfy ``W' = W A``.  Every piece of a path is
parametrized over ``s in [0, 1]`` and integrated with DOP853.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .paths import Path, Segment

DEFAULT_TOL = 1e-12


class TransportError(RuntimeError):
    pass


@dataclass
class TransportStats:
    pieces: int = 0
    nfev: int = 0
    steps: int = 0
    max_step_error: float = 0.0
    notes: list[str] = field(default_factory=list)

    def merge(self, other: "TransportStats") -> "TransportStats":
        return TransportStats(self.pieces + other.pieces, self.nfev + other.nfev,
                              self.steps + other.steps,
                              max(self.max_step_error, other.max_step_error),
                              self.notes + other.notes)

    def as_dict(self) -> dict:
        return {"pieces": self.pieces, "nfev": self.nfev, "steps": self.steps}


def _min_distance(path: Path, points: np.ndarray) -> float:
    if len(points) == 0:
        return np.inf
    best = np.inf
    for piece in path.pieces:
        if isinstance(piece, Segment):
            a, d = piece.start, piece.end - piece.start
            if d == 0:
                continue
            s = np.clip(((points - a) * np.conj(d)).real / abs(d) ** 2, 0, 1)
            best = min(best, float(np.min(np.abs(a + s * d - points))))
        else:
            best = min(best, float(np.min(np.abs(np.abs(points - piece.center) - piece.radius))))
    return best


def _integrate(rhs, y0: np.ndarray, tol: float, where: str, stats: TransportStats):
    sol = solve_ivp(rhs, (0.0, 1.0), y0, method="DOP853", rtol=tol, atol=tol * 1e-2)
    if not sol.success:
        raise TransportError(f"integration failed on {where}: {sol.message}")
    stats.pieces += 1
    stats.nfev += sol.nfev
    stats.steps += len(sol.t) - 1
    return sol.y[:, -1]


def transport(conn, path: Path, Y0: np.ndarray | None = None, tol: float = DEFAULT_TOL,
              stats: TransportStats | None = None, min_clearance: float = 0.0) -> np.ndarray:
    """Continue the column solutions ``Y' = -A Y`` from ``path.start`` to ``path.end``."""
    r = conn.rank
    Y = np.eye(r, dtype=complex) if Y0 is None else np.array(Y0, dtype=complex)
    stats = stats if stats is not None else TransportStats()
    clearance = _min_distance(path, conn.point_array)
    if clearance <= min_clearance or clearance == 0:
        raise TransportError(f"path comes within {clearance:.3g} of a singular point")
    B, lam = conn.residue_arrays, conn.point_array
    ncols = Y.shape[1]
    for k, piece in enumerate(path.pieces):
        def rhs(s, y, piece=piece):
            t = piece.point(s)
            A = np.tensordot(1.0 / (t - lam), B, axes=1)
            return (-(A @ y.reshape(r, ncols)) * piece.velocity(s)).ravel()
        Y = _integrate(rhs, Y.ravel(), tol, f"piece {k} ({piece.start:.4g} -> {piece.end:.4g})",
                       stats).reshape(r, ncols)
    return Y


def dual_transport(conn, path: Path, W0: np.ndarray | None = None, tol: float = DEFAULT_TOL,
                   weights: Sequence[Callable[[complex], complex]] = (),
                   stats: TransportStats | None = None
                   ) -> tuple[np.ndarray, list[np.ndarray]]:
    """Continue ``W' = W A`` and accumulate ``int W(t) g(t) dt`` for each weight ``g``."""
    r = conn.rank
    W = np.eye(r, dtype=complex) if W0 is None else np.array(W0, dtype=complex)
    stats = stats if stats is not None else TransportStats()
    if _min_distance(path, conn.point_array) == 0:
        raise TransportError("path passes through a singular point")
    B, lam = conn.residue_arrays, conn.point_array
    m = len(weights)
    state = np.concatenate([W.ravel(), np.zeros(m * r * r, dtype=complex)])
    for k, piece in enumerate(path.pieces):
        def rhs(s, y, piece=piece):
            t = piece.point(s)
            v = piece.velocity(s)
            A = np.tensordot(1.0 / (t - lam), B, axes=1)
            Wc = y[: r * r].reshape(r, r)
            out = [((Wc @ A) * v).ravel()]
            out.extend((Wc * (g(t) * v)).ravel() for g in weights)
            return np.concatenate(out)
        state = _integrate(rhs, state, tol, f"piece {k}", stats)
    W = state[: r * r].reshape(r, r)
    integrals = [state[r * r * (j + 1): r * r * (j + 2)].reshape(r, r) for j in range(m)]
    return W, integrals


def scalar_log_integral(f: Callable[[complex], complex], path: Path, tol: float = DEFAULT_TOL
                        ) -> complex:
    """``int_path f(t) dt`` with the same integrator (used for Abel cross-checks)."""
    total = 0j
    for piece in path.pieces:
        sol = solve_ivp(lambda s, y, piece=piece: np.array([f(piece.point(s)) * piece.velocity(s)]),
                        (0.0, 1.0), np.zeros(1, dtype=complex), method="DOP853",
                        rtol=tol, atol=tol * 1e-2)
        if not sol.success:
            raise TransportError(sol.message)
        total += sol.y[0, -1]
    return complex(total)
