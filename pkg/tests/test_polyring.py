from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chowring.polyring import (
    GF,
    QQ,
    ZZ,
    CoefficientRing,
    NotDivisible,
    PolynomialRing,
    RingMismatchError,
    ZZ_localized,
    eliminate,
    exact_divide,
    from_json,
    parse_polynomial,
    substitute,
)

R = PolynomialRing(ZZ, ["x", "y", "z"])


def polys(ring=R, max_exp=3, coeffs=st.integers(-20, 20)):
    mono = st.tuples(*[st.integers(0, max_exp)] * ring.nvars)
    return st.dictionaries(mono, coeffs, max_size=5).map(ring.from_dict)


# ---- coefficient rings


def test_parse_rings():
    assert CoefficientRing.parse("GF(7)") == GF(7)
    assert CoefficientRing.parse("ZZ_(2)") == ZZ_localized(2)
    assert str(ZZ_localized(2)) == "ZZ_(2)"
    with pytest.raises(ValueError):
        CoefficientRing.parse("RR")
    with pytest.raises(ValueError):
        GF(4)


def test_coercion():
    assert GF(2)(3) == 1
    assert GF(5)(Fraction(1, 2)) == 3
    assert QQ("2/4") == Fraction(1, 2)
    assert ZZ_localized(2)(Fraction(1, 3)) == Fraction(1, 3)
    with pytest.raises(ValueError):
        ZZ(Fraction(1, 2))
    with pytest.raises(ValueError):
        ZZ_localized(2)(Fraction(1, 2))
    with pytest.raises(ValueError):
        GF(3)(Fraction(1, 3))


def test_units_and_division():
    L = ZZ_localized(2)
    assert L.is_unit(3) and not L.is_unit(6)
    assert L.inverse(3) == Fraction(1, 3)
    assert L.divide(8, 3) == Fraction(8, 3)
    with pytest.raises(NotDivisible):
        L.divide(1, 2)
    with pytest.raises(NotDivisible):
        ZZ.divide(3, 2)
    assert ZZ.divide(-6, 3) == -2
    assert GF(7).divide(1, 3) == 5
    assert L.residue(Fraction(1, 3), 2) == 1


# ---- ring axioms


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == R.zero
    assert a * R.one == a


@settings(max_examples=40, deadline=None)
@given(polys(), polys())
def test_exact_divide_inverts_multiplication(a, b):
    if b.is_zero():
        return
    assert exact_divide(a * b, b) == a


@settings(max_examples=40, deadline=None)
@given(polys())
def test_text_and_json_round_trip(a):
    assert parse_polynomial(a.to_text(), R) == a
    assert from_json(a.to_json()) == a


@settings(max_examples=30, deadline=None)
@given(polys(coeffs=st.integers(0, 1)), polys(coeffs=st.integers(0, 1)))
def test_frobenius_mod_2(a, b):
    F = PolynomialRing(GF(2), ["x", "y", "z"])
    a, b = a.map_coefficients(GF(2)), b.map_coefficients(GF(2))
    assert a.ring == F
    assert (a + b) ** 2 == a ** 2 + b ** 2


# ---- concrete values


def test_binomial_expansion():
    p = parse_polynomial("(x+y)^3", R)
    assert p.to_text() == "1*x^3 + 3*x^2*y + 3*x*y^2 + 1*y^3"
    assert p.is_homogeneous() and p.homogeneous_degree() == 3


def test_weighted_degrees():
    S = PolynomialRing(ZZ, ["c2", "c4", "c7"], [2, 4, 7])
    p = parse_polynomial("c2^2 - 4*c4", S)
    assert p.homogeneous_degree() == 4
    assert not parse_polynomial("c2 + c4", S).is_homogeneous()
    assert len(S.monomials_of_degree(8)) == 3  # c2^4, c2^2 c4, c4^2


def test_eliminate_and_substitute():
    p = parse_polynomial("x^2 + x*y + z", R)
    assert eliminate(p, ["y"]) == parse_polynomial("x^2 + z", R)
    T = PolynomialRing(QQ, ["t"])
    t = T.gen("t")
    img = substitute(p, {"x": t, "y": t, "z": Fraction(1, 2)}, T)
    assert img == parse_polynomial("2*t^2 + 1/2", T)


def test_laurent_inverse():
    L = PolynomialRing(ZZ, ["a"], laurent=True)
    a = L.gen("a")
    assert a * a ** -1 == L.one
    with pytest.raises(ValueError):
        R.gen("x") ** -1


def test_errors():
    S = PolynomialRing(ZZ, ["x"])
    with pytest.raises(RingMismatchError):
        R.gen("x") + S.gen("x")
    with pytest.raises(NotDivisible):
        exact_divide(parse_polynomial("x^2 + 1", R), parse_polynomial("x + 2", R))
    with pytest.raises(ZeroDivisionError):
        exact_divide(R.one, R.zero)
    with pytest.raises(KeyError):
        parse_polynomial("x + w", R)
    with pytest.raises(ValueError):
        PolynomialRing(ZZ, ["x", "x"])
