"""Certificates, verification against samples, F_1 recovery and the distality probe."""

import cmath
import json
import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import exact_points, exact_polys
from weylalg.certify import (SIGMA_NOTE, DistalityCertificate, NotInF1Error, SampledFunction,
                             certify, distality_probe, recover_f1, verify_certificate)
from weylalg.phase import PhasePolynomial as P
from weylalg.torus import TorusPoint


def test_certify_examples():
    c = certify(P([0, F(1, 4)]))
    assert c.chain == (P([0, F(1, 4)]), P([F(1, 4)])) and c.depth == 1
    c = certify(P([F(2, 3)]))
    assert c.chain == (P([F(2, 3)]),) and c.depth == 0
    c = certify(P([0, 0, F(1, 8)]))
    assert c.chain == (P([0, 0, F(1, 8)]), P([F(1, 8), F(1, 4)]), P([F(1, 4)])) and c.depth == 2


def test_certify_chain_matches_sampled_ratios():
    # f(n+1)/f(n) recomputed pointwise from evaluations
    c = certify(P([0, 0, F(1, 8)]))
    for n in range(-20, 20):
        assert c.chain[1](n) == c.chain[0](n + 1) / c.chain[0](n)


@given(exact_polys())
def test_certificate_invariants(p):
    c = certify(p)
    assert c.depth == p.degree and c.check_chain()
    degs = [q.degree for q in c.chain]
    assert all(a > b for a, b in zip(degs, degs[1:])) and degs[-1] == 0


def test_verify_exact_zero_error():
    p = P([0, F(1, 4)])
    r = verify_certificate(SampledFunction.from_polynomial(p, 16), certify(p), [1, -1, 5], 1e-9)
    assert r.passed and r.max_error == 0 and r.exact
    assert r.to_json()["note"] == SIGMA_NOTE


def test_verify_detects_injected_defect():
    p = P([0, F(1, 4)])
    f = SampledFunction.from_polynomial(p, 16, as_complex=True)
    f = f.with_value(3, f[3] * cmath.exp(0.01j))
    r = verify_certificate(f, certify(p), [1], 1e-9)
    assert not r.passed
    bad = r.failures()[0]
    assert bad.worst_n in (2, 3)


def test_verify_float_quadratic():
    p = P([0, 0, 0.31], "float")
    # samples recomputed directly with numpy as the oracle
    n = np.arange(-100, 101)
    samples = np.exp(2j * np.pi * 0.31 * n.astype(float) ** 2)
    f = SampledFunction(100, dict(zip(n.tolist(), samples.tolist())))
    r = verify_certificate(f, certify(p), [1, -1, 5, 17], 1e-9)
    assert r.passed and r.max_error < 1e-9


def test_verify_window_too_small():
    p = P([0, F(1, 4)])
    with pytest.raises(ValueError):
        verify_certificate(SampledFunction.from_polynomial(p, 4), certify(p), [5])


def test_non_unimodular_rejected():
    with pytest.raises(ValueError):
        SampledFunction(1, [1, 1.1, 1])


@given(exact_polys(5), st.lists(st.integers(-10, 10), min_size=1, max_size=5))
def test_verify_property(p, shifts):
    r = verify_certificate(SampledFunction.from_polynomial(p, 12), certify(p), shifts)
    assert r.passed and r.max_error == 0


@given(exact_polys(4))
def test_level_nesting(p):
    # a depth-k certificate still verifies when claimed at depth k+1
    c = certify(p)
    up = DistalityCertificate(c.chain, c.depth + 1)
    assert up.check_chain()
    assert verify_certificate(SampledFunction.from_polynomial(p, 8), up, [1, 3]).passed


@given(exact_polys(3), exact_polys(3))
def test_depth_of_products(p, q):
    d = certify(p * q).depth
    if p.degree != q.degree:
        assert d == max(p.degree, q.degree)
    elif p.coeffs[-1] * q.coeffs[-1] == TorusPoint(0) and p.degree > 0:
        assert d < p.degree
    else:
        assert d == p.degree


def test_certificate_json_round_trip():
    c = certify(P([F(1, 5), F(2, 7), F(1, 9)]))
    assert DistalityCertificate.from_json(json.loads(json.dumps(c.to_json()))) == c


def test_recover_examples():
    vals = [1j**n * cmath.exp(2j * math.pi / 3) for n in range(-6, 7)]
    lam, lam1 = recover_f1(SampledFunction(6, dict(zip(range(-6, 7), vals))))
    assert abs(lam.phase - 0.25) < 1e-12 and abs(lam1.phase - 1 / 3) < 1e-12
    lam, lam1 = recover_f1(SampledFunction.from_polynomial(P([F(1, 3), F(1, 4)]), 6))
    assert (lam, lam1) == (TorusPoint(F(1, 4)), TorusPoint(F(1, 3)))
    assert recover_f1(SampledFunction.from_polynomial(P([0]), 4)) == (TorusPoint(0), TorusPoint(0))


def test_recover_rejects_quadratic():
    with pytest.raises(NotInF1Error) as exc:
        recover_f1(SampledFunction.from_polynomial(P([0, 0, F(1, 8)]), 6))
    assert exc.value.n == -1


def test_recover_checks_backward_value_first():
    p = P([0, F(1, 5)])
    f = SampledFunction.from_polynomial(p, 5).with_value(-1, TorusPoint(F(1, 2)))
    f = f.with_value(4, TorusPoint(F(1, 2)))
    with pytest.raises(NotInF1Error) as exc:
        recover_f1(f)
    assert exc.value.n == -1


@given(exact_points(), exact_points())
def test_recover_left_inverse(lam, lam1):
    assert recover_f1(SampledFunction.from_polynomial(P([lam1, lam]), 5)) == (lam, lam1)


def probe_oracle(p, a, b, S, M):
    # plain double loop over shifts and the truncated window
    best = math.inf
    for s in range(-S, S + 1):
        d = sum(2.0 ** -abs(n) * abs(p.value(n + s + a) - p.value(n + s + b)) for n in range(-M, M + 1))
        best = min(best, d)
    return best


def test_probe_linear_example():
    p = P([0, F(1, 4)])
    r = distality_probe(p, [(0, 1)], 32, 32)
    assert r.delta > 0.5
    assert r.delta == pytest.approx(probe_oracle(p, 0, 1, 32, 32), rel=1e-12)


def test_probe_rejects_identical_translates():
    with pytest.raises(ValueError):
        distality_probe(P([F(1, 3)]), [(0, 5)])
    # (n+4)^2/8 - n^2/8 = n + 2 is an integer, so these translates coincide
    with pytest.raises(ValueError):
        distality_probe(P([0, 0, F(1, 8)]), [(0, 4)], 64, 16)


def test_probe_quadratic_pairs():
    p = P([0, 0, F(1, 8)])
    r = distality_probe(p, [(0, 1), (0, 3)], 64, 16)
    assert r.delta > 0
    for pair in r.pairs:
        assert pair.delta == pytest.approx(probe_oracle(p, pair.a, pair.b, 64, 16), rel=1e-12)
        assert -64 <= pair.argmin <= 64
