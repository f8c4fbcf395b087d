"""Periods of logarithmic connections and the Gamma/symbol product formula.

Conventions
-----------
* Columns of ``F`` are flat (``F' = -A F``) and ``F(b) = I`` at the base point.
* Rows of ``W = F^{-1}`` are dual flat sections.
* De Rham side: ``xi^{(x,k)}`` puts ``e_k`` at ``x`` and ``-e_k`` at the last
  point, giving the form ``(dt/(t - lambda_x) - dt/(t - lambda_d)) e_k``.
* Betti side: the chain ``delta_x`` runs from ``lambda_x`` to the base point
  along the leg of ``x`` and on to ``lambda_d`` along the leg of ``d``.
* ``D = det W`` and the regularized symbols are
  ``S_x = lim D(t) (t - lambda_x)^{-Tr B_x}`` and
  ``S_inf = lim D(t) t^{Tr B_inf}``, with branches from the path ledger.
"""
from __future__ import annotations

import cmath
import math
import time
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .algebra import INF, QMatrix, is_inf
from .connection import ConnectionDataError, LogConnection, theorem_t_admissible
from .gamma import gamma_factor
from .local import ResonanceError, local_integral, local_limit, radial_integral_fallback
from .paths import Arc, Path, PathPlan, Segment, build_plan
from .transport import DEFAULT_TOL, TransportStats, dual_transport, scalar_log_integral, transport

# Relates the raw determinant to the normalized one; pinned on the Beta case.
NORMALIZATION = 1.0


@dataclass(frozen=True)
class DeRhamVector:
    point: int
    k: int
    rank: int
    last: int

    def weight(self, t: complex, lam: np.ndarray) -> complex:
        return 1.0 / (t - lam[self.point]) - 1.0 / (t - lam[self.last])

    def vector(self) -> list[list[int]]:
        out = [[0] * self.rank for _ in range(self.last + 1)]
        out[self.point][self.k] = 1
        out[self.last][self.k] = -1
        return out


@dataclass(frozen=True)
class BettiClass:
    point: int
    k: int
    frame: np.ndarray = field(compare=False, repr=False)


@dataclass
class PeriodReport:
    det_Hc: complex
    gamma_side: complex
    symbol_side: complex
    residual: float
    diagnostics: dict = field(default_factory=dict)

    @property
    def rhs(self) -> complex:
        return self.gamma_side * self.symbol_side

    def as_dict(self) -> dict:
        return {
            "det_Hc": [self.det_Hc.real, self.det_Hc.imag],
            "gamma_side": [self.gamma_side.real, self.gamma_side.imag],
            "symbol_side": [self.symbol_side.real, self.symbol_side.imag],
            "residual": self.residual,
            "diagnostics": self.diagnostics,
        }


def plan_for(conn: LogConnection, base: complex | None = None, disc_scale: float = 1.0,
             order: list[int] | None = None) -> PathPlan:
    return build_plan([float(p) for p in conn.points], base=base, disc_scale=disc_scale)


# --------------------------------------------------------------------------
# monodromy
# --------------------------------------------------------------------------

def infinity_loop(plan: PathPlan) -> Path:
    """From the base point down to a big circle, once around infinity, back."""
    R = 2 * max(abs(plan.base), max(abs(p) for p in plan.points) + 1)
    start = complex(plan.base.real, -R) if abs(plan.base.real) < R else plan.base
    th0 = cmath.phase(start)
    R0 = abs(start)
    # positive around infinity is clockwise in t
    circle = Path((Arc(0j, R0, th0, th0 - 2 * math.pi),))
    leg = Path((Segment(plan.base, start),))
    return leg + circle + leg.reversed()


def monodromy(conn: LogConnection, x, plan: PathPlan | None = None, tol: float = DEFAULT_TOL,
              stats: TransportStats | None = None) -> np.ndarray:
    """Transport of the fundamental matrix around the standard loop of ``x``."""
    plan = plan or plan_for(conn)
    if is_inf(x):
        loop = infinity_loop(plan)
    else:
        loop = plan.loop(plan.index(float(x)))
    return transport(conn, loop, np.eye(conn.rank, dtype=complex), tol, stats=stats)


def expected_monodromy_eigenvalues(conn: LogConnection, x) -> np.ndarray:
    ev = np.linalg.eigvals(conn.residue_at(x).to_numpy().astype(complex))
    return np.exp(-2j * math.pi * ev)


def match_eigenvalues(a: np.ndarray, b: np.ndarray) -> float:
    """Max distance under the best greedy matching (sizes are tiny)."""
    rest = list(b)
    worst = 0.0
    for z in sorted(a, key=lambda z: (z.real, z.imag)):
        j = int(np.argmin([abs(z - w) for w in rest]))
        worst = max(worst, abs(z - rest.pop(j)))
    return worst


# --------------------------------------------------------------------------
# bases
# --------------------------------------------------------------------------

def _require_invertible_infinity(conn: LogConnection):
    if conn.residue_at(INF).det() == 0:
        raise ConnectionDataError("the residue at infinity is singular")


def de_rham_basis(conn: LogConnection) -> list[DeRhamVector]:
    _require_invertible_infinity(conn)
    d, r = conn.degree, conn.rank
    return [DeRhamVector(x, k, r, d - 1) for x in range(d - 1) for k in range(r)]


def betti_basis(conn: LogConnection, plan: PathPlan | None = None, tol: float = DEFAULT_TOL
                ) -> list[BettiClass]:
    plan = plan or plan_for(conn)
    out = []
    for x in range(conn.degree - 1):
        F = transport(conn, plan.legs[x], None, tol)
        out.extend(BettiClass(x, k, F) for k in range(conn.rank))
    return out


# --------------------------------------------------------------------------
# periods
# --------------------------------------------------------------------------

def _laurent_at(lam: np.ndarray, x: int, poles: list[tuple[int, float]], order: int
                ) -> list[complex]:
    """Coefficients of ``z * sum_j c_j / (t - lambda_j)`` at ``t = lambda_x + z``."""
    e = [0j] * order
    for j, c in poles:
        if j == x:
            e[0] += c
            continue
        a = lam[x] - lam[j]
        for n in range(order - 1):
            e[n + 1] += c * (-1) ** n / a ** (n + 1)
    return e


@dataclass
class _EndData:
    W: np.ndarray
    leg_integrals: list[np.ndarray]
    disc_integrals: list[np.ndarray]


def _end_data(conn: LogConnection, plan: PathPlan, i: int, basis: list[DeRhamVector],
              tol: float, stats: TransportStats) -> _EndData:
    lam = conn.point_array
    cols = sorted({v.point for v in basis})
    weights = [lambda t, c=c: 1.0 / (t - lam[c]) - 1.0 / (t - lam[-1]) for c in cols]
    W, legs = dual_transport(conn, plan.legs[i], None, tol, weights, stats)
    zb = plan.anchors[i] - plan.points[i]
    log_zb = plan.logs[i][i]
    d = conn.degree
    try:
        laurent = [_laurent_at(lam, i, [(c, 1.0), (d - 1, -1.0)], 200) for c in cols]
        discs = local_integral(conn, i, zb, log_zb, W, laurent)
    except ResonanceError:
        ev = np.linalg.eigvals(conn.residue_arrays[i])
        sigma = float(min(ev.real))
        discs = radial_integral_fallback(conn, i, zb, W, weights, sigma)
        stats.notes.append(f"resonant residue at point {i}: series replaced by quadrature")
    return _EndData(W, legs, discs)


def period_matrix(conn: LogConnection, plan: PathPlan | None = None, tol: float = DEFAULT_TOL,
                  stats: TransportStats | None = None) -> np.ndarray:
    """Raw period matrix, rows indexed by (x, j) Betti classes, columns by (x', k) forms."""
    plan = plan or plan_for(conn)
    stats = stats if stats is not None else TransportStats()
    basis = de_rham_basis(conn)
    d, r = conn.degree, conn.rank
    ends = [_end_data(conn, plan, i, basis, tol, stats) for i in range(d)]
    last = ends[d - 1]
    n = r * (d - 1)
    M = np.zeros((n, n), dtype=complex)
    for x in range(d - 1):
        e = ends[x]
        for c in range(d - 1):
            block = (e.disc_integrals[c] - e.leg_integrals[c]
                     + last.leg_integrals[c] - last.disc_integrals[c])
            M[x * r:(x + 1) * r, c * r:(c + 1) * r] = block
    return M


def period_pairing(conn: LogConnection, plan: PathPlan | None = None, tol: float = DEFAULT_TOL,
                   stats: TransportStats | None = None) -> tuple[np.ndarray, complex]:
    M = period_matrix(conn, plan, tol, stats)
    return M, complex(np.linalg.det(M)) * NORMALIZATION


def beta_quadrature(a: float, b: float) -> float:
    """Independent oracle ``int_0^1 t^{a-1} (1-t)^{b-1} dt`` by adaptive quadrature."""
    # split at 1/2 and let QUADPACK's algebraic-weight rule absorb the endpoints
    left, _ = quad(lambda t: (1 - t) ** (b - 1), 0, 0.5, weight="alg", wvar=(a - 1, 0),
                   epsabs=1e-14, epsrel=1e-13)
    right, _ = quad(lambda t: t ** (a - 1), 0.5, 1, weight="alg", wvar=(0, b - 1),
                    epsabs=1e-14, epsrel=1e-13)
    return left + right


# --------------------------------------------------------------------------
# regularized symbols
# --------------------------------------------------------------------------

def _traces(conn: LogConnection) -> list[complex]:
    return [complex(float(b.trace())) for b in conn.residues]


def regularized_symbol(conn: LogConnection, x, plan: PathPlan | None = None,
                       method: str = "ledger", tol: float = DEFAULT_TOL) -> complex:
    """``lim D(t) (t - lambda_x)^{-Tr B_x}`` (``x`` finite) or ``lim D(t) t^{Tr B_inf}``.

    ``method`` is ``"ledger"`` (closed form from continued logs), ``"quadrature"``
    (scalar line integral of the regularized trace form) or ``"transport"``
    (determinant of the local constant from matrix transport).
    """
    plan = plan or plan_for(conn)
    tr = _traces(conn)
    b = plan.base
    if is_inf(x):
        tr_inf = complex(float(conn.residue_at(INF).trace()))
        s = sum(tr[k] * cmath.log(b / (b - plan.points[k])) for k in range(conn.degree))
        return cmath.exp(s + tr_inf * cmath.log(b))
    i = plan.index(float(x))
    if method == "ledger":
        s = sum(tr[k] * (plan.center_logs[i][k] - plan.base_logs[k])
                for k in range(conn.degree) if k != i)
        return cmath.exp(s - tr[i] * plan.base_logs[i])
    if method == "quadrature":
        lam = plan.points
        full = plan.legs[i] + Path((Segment(plan.anchors[i], lam[i]),))
        f = lambda t: sum(tr[k] / (t - lam[k]) for k in range(conn.degree) if k != i)
        s = scalar_log_integral(f, full, tol)
        return cmath.exp(s - tr[i] * plan.base_logs[i])
    if method == "transport":
        W, _ = dual_transport(conn, plan.legs[i], None, tol)
        zb = plan.anchors[i] - plan.points[i]
        K = local_limit(conn, i, zb, plan.logs[i][i], W)
        return complex(np.linalg.det(K))
    raise ValueError(f"unknown method {method!r}")


# --------------------------------------------------------------------------
# the identity
# --------------------------------------------------------------------------

def symbol_product(conn: LogConnection, plan: PathPlan, method: str = "ledger",
                   tol: float = DEFAULT_TOL) -> complex:
    out = 1 + 0j
    for p in conn.points:
        out *= regularized_symbol(conn, p, plan, method, tol)
    return out / regularized_symbol(conn, INF, plan, method, tol)


def gamma_and_sign_side(conn: LogConnection) -> complex:
    """Gamma factor times ``det(-res_inf) (-1)^{-Tr res_inf}``."""
    r_inf = conn.residue_at(INF)
    extra = complex(float((-r_inf).det())) * cmath.exp(-1j * math.pi * float(r_inf.trace()))
    return gamma_factor(conn) * extra


def verify_theorem_T(conn: LogConnection, plan: PathPlan | None = None,
                     tol: float = DEFAULT_TOL, symbol_method: str = "ledger") -> PeriodReport:
    if not theorem_t_admissible(conn):
        raise ConnectionDataError("connection is not admissible for the product formula")
    plan = plan or plan_for(conn)
    stats = TransportStats()
    t0 = time.perf_counter()
    _, det_hc = period_pairing(conn, plan, tol, stats)
    gamma_side = gamma_and_sign_side(conn)
    sym = symbol_product(conn, plan, symbol_method, tol)
    rhs = gamma_side * sym
    residual = abs(det_hc / rhs - 1)
    diag = {"transport": stats.as_dict(), "notes": list(stats.notes),
            "base_point": [plan.base.real, plan.base.imag], "disc_radius": plan.radius,
            "seconds": time.perf_counter() - t0}
    return PeriodReport(det_hc, gamma_side, sym, float(residual), diag)
