import pytest
import sympy
from hypothesis import given, strategies as st

from periodet.finite_field import GF, FieldError

FIELDS = [(2, 1), (3, 2), (5, 1), (5, 2), (7, 1), (2, 4), (3, 3), (13, 1)]


def test_discrete_log_example():
    F = GF(7, 1, generator=3)
    assert F.discrete_log(2) == 2
    assert F.power(3, 2) == 2


def test_gf25_has_24_logs():
    F = GF(5, 2, modulus=[2, 0, 1])
    assert sorted(F.discrete_log(x) for x in range(1, F.q)) == list(range(24))


@pytest.mark.parametrize("p,e", FIELDS)
def test_trace_of_one(p, e):
    assert GF(p, e).trace(1) == e % p


@pytest.mark.parametrize("p,e", FIELDS)
def test_generator_order(p, e):
    F = GF(p, e)
    n = F.q - 1
    assert F.power(F.generator, n) == 1
    for r in sympy.primefactors(n):
        assert F.power(F.generator, n // r) != 1


@pytest.mark.parametrize("p,e", [(3, 2), (5, 2), (2, 4), (3, 3)])
def test_frobenius_permutes_roots_of_modulus(p, e):
    F = GF(p, e)
    t = F.from_coeffs([0, 1])  # class of T, a root of the modulus

    def modulus_at(x):
        acc = 0
        for c in reversed(F.modulus):
            acc = F.add(F.mul(acc, x), F.from_coeffs([c]))
        return acc

    roots = {F.frobenius(t, k) for k in range(e)}
    assert len(roots) == e and all(modulus_at(r) == 0 for r in roots)


@pytest.mark.parametrize("p,e", FIELDS)
def test_trace_is_additive_and_frobenius_sum(p, e):
    F = GF(p, e)
    for x in range(0, F.q, max(1, F.q // 17)):
        s = 0
        for k in range(e):
            s = F.add(s, F.frobenius(x, k))
        assert F.from_coeffs([F.trace(x)]) == s


@given(st.sampled_from(FIELDS), st.data())
def test_field_axioms(pe, data):
    F = GF(*pe)
    x, y, z = (data.draw(st.integers(0, F.q - 1)) for _ in range(3))
    assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))
    if x:
        assert F.mul(x, F.inverse(x)) == 1
        assert F.power(F.generator, F.discrete_log(x)) == x


def test_rejects_bad_input():
    with pytest.raises(FieldError):
        GF(6)
    with pytest.raises(FieldError):
        GF(5, 2, modulus=[1, 0, 1])  # T^2 + 1 = (T - 2)(T + 2) over F_5
    with pytest.raises(FieldError):
        GF(7, 1, generator=2)
