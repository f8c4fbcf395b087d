"""Complex Gamma function and the Gamma homomorphism on rational functions.

The homomorphism sends ``T - alpha`` to ``Gamma(alpha)``, the factor ``T + n``
(``n`` a non-negative integer) to ``(-1)^n / n!`` and constants to 1.  It is
the unique extension compatible with ``Gamma(partial f) = 1 / Delta(f)`` where
``partial f = f(T) / f(T - 1)``.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    Poly,
    QMatrix,
    RationalFunction,
    char_poly,
    complex_roots,
    rational_roots,
    squarefree_decomposition,
)

POLE_MARGIN = 1e-8
LOG_OVERFLOW = 700.0

# Godfrey's coefficients, g = 607/128, 15 terms.
_G = 607 / 128
_C = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)


class Condition(str, enum.Enum):
    OK = "ok"
    NEAR_POLE = "near_pole"
    OVERFLOW = "overflow"


class GammaPoleError(ArithmeticError):
    """Gamma evaluated at (or numerically at) a non-positive integer."""


@dataclass(frozen=True)
class GammaValue:
    value: complex
    condition: Condition = Condition.OK

    def __complex__(self) -> complex:
        return self.value


def _pole_distance(z: complex) -> float:
    if z.real > 0.5:
        return math.inf
    n = round(z.real)
    if n > 0:
        return math.inf
    return abs(z - n)


def _lanczos_log(z: complex) -> complex:
    # log Gamma(z) for Re z >= 1/2
    z = z - 1
    x = _C[0]
    for i in range(1, len(_C)):
        x += _C[i] / (z + i)
    t = z + _G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(x)


def log_gamma(z: complex) -> complex:
    """A logarithm of Gamma(z); the branch is not the principal log-gamma."""
    z = complex(z)
    if z.real >= 0.5:
        return _lanczos_log(z)
    s = cmath.sin(math.pi * z)
    if s == 0:
        raise GammaPoleError(f"Gamma has a pole at {z}")
    return math.log(math.pi) - cmath.log(s) - _lanczos_log(1 - z)


def gamma_complex(z: complex) -> GammaValue:
    """Gamma(z) with a condition flag.

    Exact non-positive integers raise :class:`GammaPoleError`; arguments within
    ``1e-8`` of one are evaluated but flagged ``near_pole``.
    """
    z = complex(z)
    if z.imag == 0 and z.real <= 0 and z.real == int(z.real):
        raise GammaPoleError(f"Gamma has a pole at {z.real:g}")
    cond = Condition.NEAR_POLE if _pole_distance(z) < POLE_MARGIN else Condition.OK
    if z.imag == 0 and z.real > 0 and z.real == int(z.real) and z.real < 171:
        return GammaValue(complex(math.factorial(int(z.real) - 1)), cond)
    lg = log_gamma(z)
    if abs(lg.real) > LOG_OVERFLOW:
        return GammaValue(cmath.exp(lg) if lg.real < 709 else complex(math.inf, 0),
                          Condition.OVERFLOW)
    if z.imag == 0:
        # real argument: keep the result real
        v = cmath.exp(lg)
        return GammaValue(complex(v.real, 0.0), cond)
    return GammaValue(cmath.exp(lg), cond)


def gamma(z: complex) -> complex:
    """Plain complex Gamma; raises on poles and near-poles."""
    g = gamma_complex(z)
    if g.condition is Condition.NEAR_POLE:
        raise GammaPoleError(f"argument {z} is within {POLE_MARGIN} of a pole")
    return g.value


# --------------------------------------------------------------------------
# The Gamma homomorphism on Q(T)^x
# --------------------------------------------------------------------------


def _gamma_of_root(alpha: complex | Fraction) -> complex:
    if isinstance(alpha, Fraction):
        if alpha.denominator == 1 and alpha <= 0:
            n = -int(alpha)
            return (-1) ** n / math.factorial(n)
        return gamma(complex(alpha))
    if _pole_distance(alpha) < POLE_MARGIN:
        raise GammaPoleError(
            f"root {alpha} is within {POLE_MARGIN} of a non-positive integer but not equal to it")
    return gamma(alpha)


def _gamma_of_poly(p: Poly) -> complex:
    if p.is_zero():
        raise ValueError("Gamma of the zero polynomial")
    out = 1 + 0j
    for factor, mult in squarefree_decomposition(p):
        rest = factor
        for r, m in rational_roots(factor).items():
            out *= _gamma_of_root(r) ** (m * mult)
            rest = rest // Poly.linear(r) ** m
        if rest.degree > 0:
            for z, m in complex_roots(rest):
                out *= _gamma_of_root(z) ** (m * mult)
    return out


def gamma_of_rf(f: RationalFunction) -> complex:
    """Gamma of a nonzero rational function (constants map to 1)."""
    if f.is_zero():
        raise ValueError("Gamma of the zero function")
    return _gamma_of_poly(f.num) / _gamma_of_poly(f.den)


def partial_shift(f: RationalFunction) -> RationalFunction:
    """``f(T) / f(T - 1)``."""
    if f.is_zero():
        raise ValueError("partial of the zero function")
    return f / f.shift(-1)


def _delta_poly(p: Poly) -> Fraction:
    # Delta T = 1 and Delta is multiplicative, so strip the power of T first.
    q = Poly(p.coeffs[p.valuation():])
    n = q.degree
    return (-1) ** n * q.coeffs[0] / q.lc


def delta(f: RationalFunction) -> Fraction:
    """The homomorphism ``Delta: Q(T)^x -> Q^x``."""
    if f.is_zero():
        raise ValueError("Delta of the zero function")
    return _delta_poly(f.num) / _delta_poly(f.den)


def gamma_of_matrix(m: QMatrix) -> complex:
    """``Gamma(det(T - M))``."""
    return _gamma_of_poly(char_poly(m))


# --------------------------------------------------------------------------
# Aggregates attached to a logarithmic connection
# --------------------------------------------------------------------------


def phi_aggregate(conn) -> RationalFunction:
    """Product of residue characteristic polynomials over the declared divisor.

    On a curve every boundary component is a point with Euler number 1.
    """
    out = Poly([1])
    for x in conn.declared_points():
        out = out * conn.char_poly_at(x)
    return RationalFunction(out)


def gamma_of_connection(conn) -> complex:
    return gamma_of_rf(phi_aggregate(conn))


def gamma_factor(conn) -> complex:
    """``prod_x Gamma(res_x) * (-1)^{Tr res_inf} * Gamma(1 - res_inf)^{-1}``.

    ``(-1)^s`` means ``exp(pi i s)`` with the trace taken exactly over Q.
    """
    out = 1 + 0j
    for x in conn.points:
        out *= gamma_of_matrix(conn.residue_at(x))
    r_inf = conn.residue_at(math.inf)
    out *= cmath.exp(1j * math.pi * float(r_inf.trace()))
    out /= gamma_of_matrix(QMatrix.identity(conn.rank) - r_inf)
    return out
