"""Phase polynomials on the integers: evaluation, shifts, cocycle quotients."""

import json
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from conftest import exact_polys, float_polys
from weylalg.phase import PhasePolynomial, cocycle_quotient, evaluate, multiply, parse_coeffs, shift
from weylalg.torus import ModeError, TorusPoint

P = PhasePolynomial


def direct(p: PhasePolynomial, n: int) -> F:
    # oracle: sum theta_i n^i with unreduced big integers, reduced once at the end
    return sum((c.phase * n**i for i, c in enumerate(p.coeffs)), F(0)) % 1


@pytest.mark.parametrize("coeffs, n, want", [
    ([0, F(1, 4)], 2, F(1, 2)),
    ([F(2, 5)], 12345, F(2, 5)),
    ([0, 0, F(1, 8)], 3, F(1, 8)),
])
def test_eval_examples(coeffs, n, want):
    assert evaluate(P(coeffs), n) == TorusPoint(want)


def test_eval_value_quarter():
    assert P([0, F(1, 4)]).value(2) == -1


@pytest.mark.parametrize("coeffs, s, want", [
    ([0, F(1, 4)], 1, [F(1, 4), F(1, 4)]),
    ([F(1, 3), F(1, 5), F(1, 7)], 0, [F(1, 3), F(1, 5), F(1, 7)]),
    ([0, 0, F(1, 8)], 1, [F(1, 8), F(1, 4), F(1, 8)]),
])
def test_shift_examples(coeffs, s, want):
    assert shift(P(coeffs), s) == P(want)


@pytest.mark.parametrize("coeffs, s, want", [
    ([0, 0, F(1, 8)], 1, [F(1, 8), F(1, 4)]),
    ([0, F(3, 11)], 1, [F(3, 11)]),
    ([F(5, 9)], 4, [0]),
])
def test_cocycle_examples(coeffs, s, want):
    assert cocycle_quotient(P(coeffs), s) == P(want)


@pytest.mark.parametrize("a, b, want", [
    ([0, F(1, 4)], [0, F(3, 4)], [0]),
    ([F(1, 6), F(1, 2)], [0], [F(1, 6), F(1, 2)]),
    ([0, F(1, 3)], [0, 0, F(1, 2)], [0, F(1, 3), F(1, 2)]),
])
def test_multiply_examples(a, b, want):
    got = multiply(P(a), P(b))
    assert got == P(want)
    assert got.degree == len(want) - 1


def test_degree_canonical():
    assert P([F(1, 3), 0, 1, F(2, 2)]).degree == 0
    assert P([0, F(1, 2), 0]).degree == 1


@given(exact_polys(), st.integers(-10**6, 10**6))
def test_eval_matches_direct_sum(p, n):
    assert p(n).phase == direct(p, n)


@given(exact_polys(), st.integers(-50, 50), st.integers(-30, 30))
def test_shift_correctness(p, s, n):
    assert shift(p, s)(n) == p(n + s)


@given(exact_polys(), st.integers(-50, 50), st.integers(-30, 30))
def test_cocycle_identity(p, s, n):
    assert p(n + s) == p(n) * cocycle_quotient(p, s)(n)


@given(exact_polys(), st.integers(-50, 50).filter(bool))
def test_degree_reduction(p, s):
    if p.degree >= 1:
        assert cocycle_quotient(p, s).degree <= p.degree - 1


@given(exact_polys(), exact_polys(), st.integers(-20, 20))
def test_product_rule(p, q, s):
    assert cocycle_quotient(p * q, s) == cocycle_quotient(p, s) * cocycle_quotient(q, s)


@given(exact_polys(), st.integers(-20, 20), st.integers(-20, 20))
def test_conjugation(p, s, n):
    assert p.conjugate()(n) == p(n).inverse()
    assert abs(p.conjugate().value(n) - p.value(n).conjugate()) < 1e-12
    assert cocycle_quotient(p.conjugate(), s) == cocycle_quotient(p, s).conjugate()


@given(exact_polys(), st.integers(-40, 40), st.integers(-40, 40))
def test_shift_composition(p, s, t):
    assert shift(shift(p, s), t) == shift(p, s + t)


@given(float_polys(), st.integers(-20, 20), st.integers(-50, 50))
def test_float_cocycle_identity(p, s, n):
    lhs, rhs = p(n + s), p(n) * cocycle_quotient(p, s)(n)
    assert abs(lhs.value - rhs.value) < 1e-9


@given(st.one_of(exact_polys(), float_polys()))
def test_json_round_trip(p):
    assert P.from_json(json.loads(json.dumps(p.to_json()))) == p


def test_json_format():
    assert P([0, F(1, 4)]).to_json() == {"mode": "exact", "coeffs": [["0", "1"], ["1", "4"]]}
    assert P([0.0, 0.31], "float").to_json() == {"mode": "float", "coeffs": [0.0, 0.31]}


def test_big_integer_json():
    p = P([F(1, 10**30 + 7)])
    assert P.from_json(json.loads(json.dumps(p.to_json()))) == p


def test_mixed_modes_rejected():
    with pytest.raises(ModeError):
        parse_coeffs("1/4,0.3")
    with pytest.raises(ModeError):
        P([0, F(1, 4)]) * P([0, 0.25], "float")
