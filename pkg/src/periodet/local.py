"""Local dual solutions at a regular singular point.

Near ``lambda`` put ``z = t - lambda`` and ``W A = W (B/z + R(z))``.  In the
non-resonant case ``W = K z^B H(z)`` with ``H(0) = I`` and

    n H_n + B H_n - H_n B = sum_{m < n} H_m R_{n-1-m}.
"""
from __future__ import annotations

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import expm, solve_sylvester

RESONANCE_MARGIN = 1e-9


class ResonanceError(ArithmeticError):
    pass


def is_resonant(B: np.ndarray, max_shift: int) -> bool:
    ev = np.linalg.eigvals(B)
    diff = ev[:, None] - ev[None, :]
    n = np.round(diff.real)
    return bool(np.any((n >= 1) & (n <= max_shift) & (np.abs(diff - n) < RESONANCE_MARGIN)))


def _regular_part(conn, i: int, order: int) -> list[np.ndarray]:
    """Taylor coefficients ``R_n`` of ``sum_{k != i} B_k / (z + lambda_i - lambda_k)``."""
    r = conn.rank
    lam = conn.point_array
    out = [np.zeros((r, r), dtype=complex) for _ in range(order)]
    for k in range(len(lam)):
        if k == i:
            continue
        c = lam[i] - lam[k]
        Bk = conn.residue_arrays[k]
        for n in range(order):
            out[n] = out[n] + ((-1) ** n / c ** (n + 1)) * Bk
    return out


def frobenius_series(conn, i: int, order: int) -> list[np.ndarray]:
    B = conn.residue_arrays[i].astype(complex)
    if is_resonant(B, order):
        raise ResonanceError("residue eigenvalues differ by a positive integer")
    r = conn.rank
    R = _regular_part(conn, i, order)
    H = [np.eye(r, dtype=complex)]
    for n in range(1, order):
        rhs = sum(H[m] @ R[n - 1 - m] for m in range(n))
        H.append(solve_sylvester(B + n * np.eye(r), -B, rhs))
    return H


def _series_order(conn, i: int, zb: complex, tol: float) -> int:
    lam = conn.point_array
    others = [abs(lam[i] - lam[k]) for k in range(len(lam)) if k != i]
    ratio = abs(zb) / min(others) if others else 0.0
    if ratio >= 0.9:
        raise ValueError("anchor too far from the singular point for the local series")
    if ratio == 0:
        return 2
    return int(np.ceil(np.log(tol * (1 - ratio)) / np.log(ratio))) + 8


def local_integral(conn, i: int, zb: complex, log_zb: complex, W_anchor: np.ndarray,
                   laurent: list[list[complex]], tol: float = 1e-15) -> list[np.ndarray]:
    """``int_{lambda}^{lambda + zb} W(t) g(t) dt`` for each weight.

    Each ``laurent[j]`` lists coefficients ``e_0, e_1, ...`` of ``z * g_j(z)``
    (``e_0`` is the residue).  ``W_anchor`` is the dual solution at the anchor
    and ``log_zb`` the ledger value of ``log zb``.
    """
    order = _series_order(conn, i, zb, tol)
    H = frobenius_series(conn, i, order)
    B = conn.residue_arrays[i].astype(complex)
    r = conn.rank
    zB = expm(B * log_zb)
    Hb = sum(h * zb ** n for n, h in enumerate(H))
    K = W_anchor @ np.linalg.inv(zB @ Hb)
    out = []
    for e in laurent:
        e = list(e) + [0] * max(0, order - len(e))
        acc = np.zeros((r, r), dtype=complex)
        for m in range(order):
            G = sum(H[j] * e[m - j] for j in range(m + 1) if e[m - j] != 0)
            if isinstance(G, int):
                continue
            acc = acc + np.linalg.solve(B + m * np.eye(r), G) * zb ** m
        out.append(K @ zB @ acc)
    return out


def local_limit(conn, i: int, zb: complex, log_zb: complex, W_anchor: np.ndarray,
                tol: float = 1e-15) -> np.ndarray:
    """The constant ``K`` with ``W = K z^B H(z)`` near the point."""
    order = _series_order(conn, i, zb, tol)
    H = frobenius_series(conn, i, order)
    B = conn.residue_arrays[i].astype(complex)
    Hb = sum(h * zb ** n for n, h in enumerate(H))
    return W_anchor @ np.linalg.inv(expm(B * log_zb) @ Hb)


def radial_integral_fallback(conn, i: int, zb: complex, W_anchor: np.ndarray, weights,
                             sigma: float, tol: float = 1e-10, eps: float = 1e-9
                             ) -> list[np.ndarray]:
    """Resonant case: substitute ``z = zb * s^(1/sigma)`` and integrate toward ``s = eps``.

    The truncated piece is of size ``eps``; accuracy is therefore about 1e-5
    to 1e-8 depending on the logarithmic factors.
    """
    r = conn.rank
    lam = conn.point_array
    Bs = conn.residue_arrays

    def rhs(s, y):
        z = zb * s ** (1 / sigma)
        dz = zb * (1 / sigma) * s ** (1 / sigma - 1)
        t = lam[i] + z
        A = np.tensordot(1.0 / (t - lam), Bs, axes=1)
        W = y[: r * r].reshape(r, r)
        parts = [(W @ A * dz).ravel()]
        parts.extend((W * (g(t) * dz)).ravel() for g in weights)
        return np.concatenate(parts)

    y0 = np.concatenate([W_anchor.ravel(), np.zeros(len(weights) * r * r, dtype=complex)])
    sol = solve_ivp(rhs, (1.0, eps), y0, method="DOP853", rtol=tol, atol=tol * 1e-2)
    if not sol.success:
        raise RuntimeError(sol.message)
    y = sol.y[:, -1]
    # integral from the anchor to the point is minus the accumulated value
    return [-y[r * r * (j + 1): r * r * (j + 2)].reshape(r, r) for j in range(len(weights))]
