from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from knotoid.scalar import (
    I,
    ONE,
    W,
    ZERO,
    CycScalar,
    LaurentPoly,
    PolySyntaxError,
    poly_parse,
    var,
)
from strategies import cyc, laurent, nonzero_cyc


def test_root_of_unity_relations():
    w = CycScalar.root(1)
    assert w ** 8 == CycScalar(1)
    assert w ** 4 == CycScalar(-1)
    assert CycScalar.root(2) * CycScalar.root(2) == CycScalar(-1)
    assert W * W == I


@given(cyc, cyc, cyc)
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == CycScalar(0)


@given(nonzero_cyc)
def test_inverse(a):
    assert a * a.inverse() == CycScalar(1)
    assert a.norm() > 0


@given(cyc, st.integers(0, 7))
def test_galois_is_a_ring_map(a, k):
    g = 2 * k + 1
    assert (a * a).galois(g) == a.galois(g) * a.galois(g)


@given(laurent(), laurent(), laurent())
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == ZERO


@given(laurent())
def test_print_parse_roundtrip(p):
    assert poly_parse(str(p)) == p


@given(laurent(max_terms=3), laurent(max_terms=3))
def test_exact_division_recovers_factor(p, q):
    if not q:
        return
    assert (p * q).exact_div(q) == p


def test_inexact_division_reports_remainder():
    with pytest.raises(ArithmeticError) as exc:
        poly_parse("q^2 + 1").exact_div(poly_parse("q + 1"))
    assert exc.value.remainder


@pytest.mark.parametrize(
    "text, expected",
    [
        ("A^-3 + A", var("A", -3) + var("A")),
        ("(q - q^-1)^2", var("q", 2) - 2 + var("q", -2)),
        ("s^{1/2}*s^{1/2}", var("s")),
        ("w^2", I),
        ("1/2*q", var("q") * Fraction(1, 2)),
    ],
)
def test_parse(text, expected):
    assert poly_parse(text) == expected


@pytest.mark.parametrize("bad", ["q^", "(q", "x + 1", "q^^2", "2**"])
def test_parse_errors(bad):
    with pytest.raises(PolySyntaxError):
        poly_parse(bad)


def test_substitute():
    p = poly_parse("A^2 + A^-2")
    assert p.substitute(A=ONE) == LaurentPoly.const(2)
    assert poly_parse("q - q^-1").substitute(q=var("q", -1)) == poly_parse("q^-1 - q")


def test_half_integer_exponents():
    assert var("q", Fraction(1, 2)) ** 2 == var("q")
    assert str(var("s", Fraction(-3, 2))) == "s^{-3/2}"
