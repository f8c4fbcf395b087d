"""Finite fields F_{p^e} with exp/log tables.

Elements are encoded as integers ``sum c_i p^i`` where ``c_i`` are the
coefficients of the residue class modulo the defining polynomial.  All
tables are built once in the constructor and never mutated afterwards.
"""
from __future__ import annotations

from functools import cached_property

import numpy as np
import sympy


class FieldError(ValueError):
    pass


# --- polynomial helpers over F_p (lists, lowest degree first) -------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = [x % p for x in a]
    _trim(a)
    dm = len(m) - 1
    inv = pow(m[-1], -1, p)
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv % p
        shift = len(a) - 1 - dm
        for j, b in enumerate(m):
            a[shift + j] = (a[shift + j] - c * b) % p
        _trim(a)
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _ppowmod(a: list[int], n: int, m: list[int], p: int) -> list[int]:
    result, base = [1], _pmod(a, m, p)
    while n:
        if n & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        n >>= 1
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim([x % p for x in a]), _trim([x % p for x in b])
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _psub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible(modulus: list[int], p: int) -> bool:
    """Rabin's test: ``T^{p^e} = T`` and ``gcd(T^{p^{e/l}} - T, f) = 1`` for primes ``l | e``."""
    m = _trim([c % p for c in modulus])
    e = len(m) - 1
    if e < 1:
        return False
    if e == 1:
        return True
    x = [0, 1]
    if _psub(_ppowmod(x, p ** e, m, p), x, p):
        return False
    for ell in sympy.primefactors(e):
        h = _psub(_ppowmod(x, p ** (e // ell), m, p), x, p)
        g = _pgcd(m, h, p)
        if len(g) - 1 > 0:
            return False
    return True


def _first_irreducible(p: int, e: int) -> list[int]:
    # lexicographic search over monic polynomials of degree e
    for code in range(p ** e):
        cs = [(code // p ** i) % p for i in range(e)] + [1]
        if cs[0] == 0 and e > 1:
            continue
        if is_irreducible(cs, p):
            return cs
    raise FieldError(f"no irreducible polynomial of degree {e} over F_{p}")


class GF:
    """The field with ``p**e`` elements.

    >>> F = GF(7, 1, generator=3)
    >>> F.discrete_log(2)
    2
    """

    def __init__(self, p: int, e: int = 1, modulus: list[int] | None = None,
                 generator: int | None = None):
        if not sympy.isprime(p):
            raise FieldError(f"{p} is not prime")
        if e < 1:
            raise FieldError("extension degree must be positive")
        self.p, self.e = p, e
        self.q = p ** e
        if modulus is None:
            modulus = [0, 1] if e == 1 else _first_irreducible(p, e)
        modulus = _trim([int(c) % p for c in modulus])
        if len(modulus) - 1 != e:
            raise FieldError(f"modulus has degree {len(modulus) - 1}, expected {e}")
        if not is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over F_{p}")
        inv = pow(modulus[-1], -1, p)
        self.modulus = [c * inv % p for c in modulus]
        self._order_primes = sympy.primefactors(self.q - 1) if self.q > 2 else []
        if generator is None:
            generator = self._find_generator()
        elif not self._is_generator(generator):
            raise FieldError(f"{generator} does not generate F_{self.q}^x")
        self.generator = int(generator)
        self._build_tables()

    # encoding ------------------------------------------------------------
    def to_coeffs(self, x: int) -> list[int]:
        return [(x // self.p ** i) % self.p for i in range(self.e)]

    def from_coeffs(self, cs) -> int:
        return sum((int(c) % self.p) * self.p ** i for i, c in enumerate(cs))

    def _polymul_code(self, a: int, b: int) -> int:
        prod = _pmod(_pmul(_trim(self.to_coeffs(a)), _trim(self.to_coeffs(b)), self.p),
                     self.modulus, self.p)
        return self.from_coeffs(prod)

    def _polypow_code(self, a: int, n: int) -> int:
        r = _ppowmod(_trim(self.to_coeffs(a)), n, self.modulus, self.p)
        return self.from_coeffs(r)

    def _is_generator(self, g: int) -> bool:
        if not 0 < g < self.q:
            return False
        if self._polypow_code(g, self.q - 1) != 1:
            return False
        return all(self._polypow_code(g, (self.q - 1) // ell) != 1 for ell in self._order_primes)

    def _find_generator(self) -> int:
        for g in range(1, self.q):
            if self._is_generator(g):
                return g
        raise FieldError("no generator found")  # unreachable for a field

    def _build_tables(self):
        n = self.q - 1
        exp = np.empty(n, dtype=np.int64)
        log = np.full(self.q, -1, dtype=np.int64)
        x = 1
        if self.e == 1:
            for k in range(n):
                exp[k] = x
                x = x * self.generator % self.p
        else:
            g = _trim(self.to_coeffs(self.generator))
            cur = [1]
            for k in range(n):
                exp[k] = self.from_coeffs(cur)
                cur = _pmod(_pmul(cur, g, self.p), self.modulus, self.p)
        log[exp] = np.arange(n)
        if np.any(log[1:] < 0):
            raise FieldError("log table is not a bijection")
        exp.setflags(write=False)
        log.setflags(write=False)
        self.exp_table, self.log_table = exp, log

    # arithmetic ----------------------------------------------------------
    @cached_property
    def digits(self) -> np.ndarray:
        """``digits[x, i]`` is the i-th coefficient of element ``x``."""
        codes = np.arange(self.q)
        return np.stack([(codes // self.p ** i) % self.p for i in range(self.e)], axis=1)

    def add(self, a: int, b: int) -> int:
        return self.from_coeffs(x + y for x, y in zip(self.to_coeffs(a), self.to_coeffs(b)))

    def neg(self, a: int) -> int:
        return self.from_coeffs(-x for x in self.to_coeffs(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp_table[(self.log_table[a] + self.log_table[b]) % (self.q - 1)])

    def power(self, a: int, n: int) -> int:
        if a == 0:
            if n <= 0:
                raise ZeroDivisionError("0 to a non-positive power")
            return 0
        return int(self.exp_table[(self.log_table[a] * n) % (self.q - 1)])

    def inverse(self, a: int) -> int:
        return self.power(a, -1)

    def discrete_log(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("discrete log of 0")
        return int(self.log_table[a])

    def frobenius(self, a: int, k: int = 1) -> int:
        return self.power(a, self.p ** k) if a else 0

    def trace(self, a: int) -> int:
        """Absolute trace to F_p, returned as an integer in ``[0, p)``."""
        acc = [0] * self.e
        for k in range(self.e):
            for i, c in enumerate(self.to_coeffs(self.frobenius(a, k))):
                acc[i] += c
        if any(c % self.p for c in acc[1:]):
            raise FieldError("trace left F_p; tables are inconsistent")
        return acc[0] % self.p

    @cached_property
    def trace_table(self) -> np.ndarray:
        """Absolute traces of all elements, indexed by code."""
        out = np.zeros(self.q, dtype=np.int64)
        n = self.q - 1
        idx = np.arange(n)
        acc = np.zeros((n, self.e), dtype=np.int64)
        for k in range(self.e):
            acc += self.digits[self.exp_table[(idx * self.p ** k) % n]]
        acc %= self.p
        if np.any(acc[:, 1:]):
            raise FieldError("trace left F_p; tables are inconsistent")
        out[self.exp_table] = acc[:, 0]
        out.setflags(write=False)
        return out

    @cached_property
    def add_one_table(self) -> np.ndarray:
        """``x + c`` for c in F_p embedded as constants, as an array ``[c, x]``."""
        d = self.digits.copy()
        out = np.empty((self.p, self.q), dtype=np.int64)
        weights = self.p ** np.arange(self.e)
        for c in range(self.p):
            dd = d.copy()
            dd[:, 0] = (dd[:, 0] + c) % self.p
            out[c] = dd @ weights
        return out

    def elements(self) -> range:
        return range(self.q)

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.e}, modulus={self.modulus}, generator={self.generator})"
