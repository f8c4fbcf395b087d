"""Exact arithmetic over Q: polynomials, rational functions, small dense matrices.

Rationals are plain :class:`fractions.Fraction`.  The point at infinity of the
projective line is represented by ``math.inf`` so that points sort and hash
together with finite rational points.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

INF = math.inf

Number = Union[int, Fraction]
Point = Union[Fraction, float]  # a Fraction or INF


class RootFindingError(ArithmeticError):
    """Numeric root polishing did not reach the requested residual."""


def as_fraction(x) -> Fraction:
    """Parse ints, Fractions and ``"num/den"`` strings exactly."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {x!r} as an exact rational")


def as_point(x) -> Point:
    if isinstance(x, float) and math.isinf(x) and x > 0:
        return INF
    if isinstance(x, str) and x.strip().lower() in ("inf", "infinity", "oo", "∞"):
        return INF
    return as_fraction(x)


def is_inf(x) -> bool:
    return isinstance(x, float) and math.isinf(x)


def fmt_point(x: Point) -> str:
    return "inf" if is_inf(x) else str(x)


# --------------------------------------------------------------------------
# Polynomials
# --------------------------------------------------------------------------


class Poly:
    """Univariate polynomial over Q, coefficients stored lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def linear(cls, root) -> "Poly":
        """The monic factor ``T - root``."""
        return cls([-as_fraction(root), 1])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Poly":
        p = cls([1])
        for r in roots:
            p = p * cls.linear(r)
        return p

    # basic properties ---------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        c = self.lc
        return Poly(a / c for a in self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if self.is_zero():
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("T" if i == 1 else f"T^{i}")
                terms.append(f"{c}*{mono}" if mono else f"{c}")
        return "Poly(" + " + ".join(reversed(terms)) + ")"

    # ring operations ----------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Poly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly([1]), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        lc = other.lc
        dq = other.degree
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] / lc
            q[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return Poly(q), Poly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    # calculus and evaluation -------------------------------------------
    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0j
        for c in reversed(self.coeffs):
            acc = acc * x + (c if isinstance(acc, Fraction) else complex(c))
        return acc

    def shift(self, c) -> "Poly":
        """Return ``p(T + c)``."""
        c = as_fraction(c)
        out = Poly()
        shifted = Poly([c, 1])
        for a in reversed(self.coeffs):
            out = out * shifted + a
        return out

    def reverse(self, n: int | None = None) -> "Poly":
        """``T^n p(1/T)`` with ``n`` defaulting to the degree."""
        n = self.degree if n is None else n
        cs = list(self.coeffs) + [Fraction(0)] * (n + 1 - len(self.coeffs))
        return Poly(reversed(cs))

    def valuation(self) -> int:
        """Order of vanishing at T = 0."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise ValueError("valuation of the zero polynomial")

    def to_complex(self) -> np.ndarray:
        return np.array([complex(c) for c in self.coeffs], dtype=complex)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (the zero polynomial if both vanish)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def resultant(a: Poly, b: Poly) -> Fraction:
    """Resultant ``Res(a, b)`` by the Euclidean recursion."""
    if a.is_zero() or b.is_zero():
        return Fraction(0)
    if a.degree == 0:
        return a.lc ** b.degree
    if b.degree == 0:
        return b.lc ** a.degree
    if a.degree < b.degree:
        sign = -1 if (a.degree * b.degree) % 2 else 1
        return sign * resultant(b, a)
    r = a % b
    if r.is_zero():
        return Fraction(0)
    # Res(a,b) = (-1)^{deg a deg b} lc(b)^{deg a - deg r} Res(b, r)
    sign = -1 if (a.degree * b.degree) % 2 else 1
    return sign * b.lc ** (a.degree - r.degree) * resultant(b, r)


def norm_mod(h: Poly, pi: Poly) -> Fraction:
    """Norm of ``h mod pi`` from the etale algebra ``Q[T]/(pi)`` down to Q.

    For monic square-free ``pi`` this is ``prod h(theta)`` over the roots,
    i.e. ``Res(pi, h)``.
    """
    pi = pi.monic()
    return resultant(pi, h)


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: ``p = lc * prod f_i^i`` with monic square-free ``f_i``."""
    if p.is_zero():
        raise ValueError("square-free decomposition of 0")
    out: list[tuple[Poly, int]] = []
    if p.degree == 0:
        return out
    a = p.monic()
    b = a.derivative()
    c = poly_gcd(a, b)
    w = a // c
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        z = w // y
        if z.degree > 0:
            out.append((z.monic(), i))
        i += 1
        w = y
        c = c // y
    return out


def rational_roots(p: Poly) -> dict[Fraction, int]:
    """Exact rational roots with multiplicity.

    Candidates come from numeric roots of the square-free parts and are
    confirmed by exact evaluation, so nothing irrational is ever returned.
    """
    out: dict[Fraction, int] = {}
    for f, mult in squarefree_decomposition(p):
        g = f
        cands = _numeric_roots_sqfree(g) if g.degree > 0 else []
        for z in cands:
            if abs(z.imag) > 1e-6 * max(1.0, abs(z)):
                continue
            for den_cap in (10**3, 10**6, 10**12):
                r = Fraction(z.real).limit_denominator(den_cap)
                if g(r) == 0:
                    out[r] = out.get(r, 0) + mult
                    g = g // Poly.linear(r)
                    break
            if g.degree <= 0:
                break
    return out


def _numeric_roots_sqfree(p: Poly, polish_iter: int = 60) -> list[complex]:
    if p.degree <= 0:
        return []
    if p.degree == 1:
        c0, c1 = p.coeffs
        return [complex(-c0 / c1)]
    cs = p.monic().to_complex()
    roots = np.roots(cs[::-1])
    dp = p.derivative()
    polished = []
    for z in roots:
        z = complex(z)
        for _ in range(polish_iter):
            fz = p(z)
            dfz = dp(z)
            if dfz == 0:
                break
            step = fz / dfz
            z -= step
            if abs(step) <= 1e-17 * max(1.0, abs(z)):
                break
        polished.append(z)
    return polished


def complex_roots(p: Poly, tol: float = 1e-10) -> list[tuple[complex, int]]:
    """Numeric roots of ``p`` with multiplicities.

    Multiplicities come from the exact square-free decomposition; rational
    roots are returned exactly (as complex numbers of their exact values).
    Raises :class:`RootFindingError` when the scaled residual stays above
    ``tol`` after Newton polishing.
    """
    if p.is_zero():
        raise ValueError("roots of the zero polynomial")
    out: list[tuple[complex, int]] = []
    for f, mult in squarefree_decomposition(p):
        rest = f
        for r in rational_roots(f):
            out.append((complex(r), mult))
            rest = rest // Poly.linear(r)
        if rest.degree <= 0:
            continue
        scale = float(max(abs(c) for c in rest.coeffs))
        for z in _numeric_roots_sqfree(rest):
            resid = abs(rest(z)) / (scale * max(1.0, abs(z)) ** rest.degree)
            if resid > tol:
                raise RootFindingError(f"root {z} of {rest} has residual {resid:.3e} > {tol:.1e}")
            if abs(z.imag) < 1e-14 * max(1.0, abs(z)):
                z = complex(z.real, 0.0)
            out.append((z, mult))
    return _conjugate_symmetrize(out)


def _conjugate_symmetrize(roots: list[tuple[complex, int]]) -> list[tuple[complex, int]]:
    # Real-coefficient input: pair each root with its conjugate partner exactly.
    used = [False] * len(roots)
    out = list(roots)
    for i, (z, m) in enumerate(roots):
        if used[i] or z.imag == 0:
            continue
        best, bj = None, -1
        for j in range(len(roots)):
            if j != i and not used[j] and roots[j][1] == m:
                d = abs(roots[j][0] - z.conjugate())
                if best is None or d < best:
                    best, bj = d, j
        if bj >= 0 and best < 1e-8 * max(1.0, abs(z)):
            zz = complex((z.real + roots[bj][0].real) / 2, (z.imag - roots[bj][0].imag) / 2)
            out[i] = (zz, m)
            out[bj] = (zz.conjugate(), m)
            used[i] = used[bj] = True
    return out


# --------------------------------------------------------------------------
# Rational functions
# --------------------------------------------------------------------------


class RationalFunction:
    """Element of Q(T) kept as ``num/den`` with ``den`` monic and coprime to ``num``."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, Poly) else Poly.const(num)
        den = Poly([1]) if den is None else (den if isinstance(den, Poly) else Poly.const(den))
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), Poly([1])
            return
        g = poly_gcd(num, den)
        num, den = num // g, den // g
        c = den.lc
        self.num = Poly(a / c for a in num.coeffs)
        self.den = Poly(a / c for a in den.coeffs)

    @classmethod
    def from_factors(cls, const=1, factors: dict | None = None) -> "RationalFunction":
        """``const * prod (T - root)^mult`` over a ``{root: mult}`` map."""
        num, den = Poly.const(const), Poly([1])
        for root, m in (factors or {}).items():
            lin = Poly.linear(root)
            if m > 0:
                num = num * lin ** m
            elif m < 0:
                den = den * lin ** (-m)
        return cls(num, den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            other = RationalFunction(other)
        return self.num * other.den == other.num * self.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RationalFunction({self.num!r} / {self.den!r})"

    def _coerce(self, other) -> "RationalFunction":
        return other if isinstance(other, RationalFunction) else RationalFunction(other)

    def __mul__(self, other):
        other = self._coerce(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __add__(self, other):
        other = self._coerce(other)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __pow__(self, n: int):
        if n >= 0:
            return RationalFunction(self.num ** n, self.den ** n)
        if self.is_zero():
            raise ZeroDivisionError("negative power of zero")
        return RationalFunction(self.den ** (-n), self.num ** (-n))

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def shift(self, c) -> "RationalFunction":
        """``f(T + c)``."""
        return RationalFunction(self.num.shift(c), self.den.shift(c))

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0


def rf_normalize(num: Poly, den: Poly) -> RationalFunction:
    return RationalFunction(num, den)


def ord_and_lead(f: RationalFunction, x: Point) -> tuple[int, Fraction]:
    """Order and leading coefficient of ``f`` at ``x``.

    At a finite point the uniformizer is ``T - x``; at infinity it is
    ``S = 1/T``.
    """
    if f.is_zero():
        raise ValueError("order of the zero function")
    if is_inf(x):
        return f.den.degree - f.num.degree, f.num.lc / f.den.lc
    num, den = f.num.shift(x), f.den.shift(x)
    vn, vd = num.valuation(), den.valuation()
    return vn - vd, num.coeffs[vn] / den.coeffs[vd]


# --------------------------------------------------------------------------
# Matrices over Q
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class QMatrix:
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(as_fraction(a) for a in row) for row in self.entries)
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("ragged matrix")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def of(cls, rows: Sequence[Sequence]) -> "QMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls.of([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n: int, m: int | None = None) -> "QMatrix":
        return cls.of([[0] * (n if m is None else m) for _ in range(n)])

    @classmethod
    def diag(cls, values: Sequence) -> "QMatrix":
        n = len(values)
        return cls.of([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __add__(self, other: "QMatrix") -> "QMatrix":
        return QMatrix.of([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return QMatrix.of([[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __neg__(self) -> "QMatrix":
        return QMatrix.of([[-a for a in r] for r in self.entries])

    def scale(self, c) -> "QMatrix":
        c = as_fraction(c)
        return QMatrix.of([[c * a for a in r] for r in self.entries])

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        cols = list(zip(*other.entries))
        return QMatrix.of([[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols]
                           for r in self.entries])

    def transpose(self) -> "QMatrix":
        return QMatrix.of(list(zip(*self.entries)))

    def trace(self) -> Fraction:
        return sum((self.entries[i][i] for i in range(min(self.rows, self.cols))), Fraction(0))

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.entries for a in r)

    def det(self) -> Fraction:
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        a = [list(r) for r in self.entries]
        n = len(a)
        det = Fraction(1)
        for k in range(n):
            piv = next((i for i in range(k, n) if a[i][k] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                det = -det
            det *= a[k][k]
            for i in range(k + 1, n):
                f = a[i][k] / a[k][k]
                if f:
                    for j in range(k, n):
                        a[i][j] -= f * a[k][j]
        return det

    def to_numpy(self) -> np.ndarray:
        return np.array([[complex(a) for a in r] for r in self.entries], dtype=complex).reshape(
            self.rows, self.cols)

    def to_strings(self) -> list[list[str]]:
        return [[str(a) for a in r] for r in self.entries]


def char_poly(m: QMatrix) -> Poly:
    """``det(T - M)`` by the Faddeev-LeVerrier recursion (exact over Q)."""
    if not m.is_square:
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = m.rows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    ident = QMatrix.identity(n)
    mk = QMatrix.zero(n)
    for k in range(1, n + 1):
        mk = m @ mk + ident.scale(coeffs[n - k + 1])
        coeffs[n - k] = -(m @ mk).trace() / k
    return Poly(coeffs)
