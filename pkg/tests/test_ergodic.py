"""Birkhoff averages, the finite-difference kernel and equidistribution reports."""

import cmath
import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import exact_polys
from weylalg import ergodic
from weylalg.ergodic import (CHUNK, birkhoff_average, direct_values, equidistribution_report,
                             rational_average_closed_form, reseed_period, residues,
                             star_discrepancy, weyl_kernel)
from weylalg.phase import PhasePolynomial as P

GOLDEN = 0.6180339887498949
SQRT_HALF = 0.7071067811865476


def naive_average(p, N):
    # oracle: exact phase per n, one transcendental call each, fsum
    vals = [cmath.exp(2j * math.pi * float(p.exact_phase(n))) for n in range(N)]
    return complex(math.fsum(v.real for v in vals), math.fsum(v.imag for v in vals)) / N


def test_constant_average_is_one():
    for N in (1, 7, 100_000):
        assert birkhoff_average(P([0]), N).final.average == 1
        assert abs(birkhoff_average(P([F(1, 3)]), N).final.average) == pytest.approx(1, abs=1e-15)


def test_fifth_root_full_period():
    assert birkhoff_average(P([0, F(1, 5)]), 5).final.average == 0


def test_geometric_bound():
    N = 10_000
    p = P([0, SQRT_HALF], "float")
    avg = birkhoff_average(p, N).final.average
    w = cmath.exp(2j * math.pi * SQRT_HALF)
    closed = (1 - w**N) / (1 - w) / N
    assert abs(avg - closed) < 1e-12
    assert abs(avg) <= 1 / (N * abs(1 - w))


@settings(max_examples=40)
@given(exact_polys(4, 12), st.integers(1, 3000))
def test_rational_closed_form(p, N):
    assert birkhoff_average(p, N).final.average == rational_average_closed_form(p, N)
    assert abs(rational_average_closed_form(p, N) - naive_average(p, N)) < 1e-12


@settings(max_examples=25)
@given(exact_polys(3, 10), st.integers(1, 400))
def test_eventually_periodic_sums(p, N):
    # N * avg(N + D) - N*avg(N) equals one full period sum
    D, _ = p.common_denominator()
    period = naive_average(p, D) * D
    total = lambda n: rational_average_closed_form(p, n) * n
    assert abs(total(N + D) - total(N) - period) < 1e-9


def test_modulus_bounded_and_checkpoints_increasing():
    s = birkhoff_average(P([0, 0, SQRT_HALF], "float"), 300_000, [10, 1000, 10, 200_000])
    ns = [c.n for c in s.checkpoints]
    assert ns == sorted(set(ns)) == [10, 1000, 200_000, 300_000]
    assert all(abs(c.average) <= 1 for c in s.checkpoints)


def test_checkpoints_agree_with_separate_runs():
    p = P([0, 0, 0.3183098861837907], "float")
    s = birkhoff_average(p, 3 * CHUNK + 5, [1000, CHUNK, CHUNK + 17])
    for n in (1000, CHUNK, CHUNK + 17):
        assert s.at(n).average == birkhoff_average(p, n).final.average


@pytest.mark.parametrize("coeffs", [[0, GOLDEN], [0, 0, SQRT_HALF]])
def test_irrational_decay(coeffs):
    s = birkhoff_average(P(coeffs, "float"), 10**6, [10**3])
    assert abs(s.final.average) < 0.05
    assert abs(s.final.average) < abs(s.at(1000).average)


def test_thread_count_invariance():
    p = P([0, 0, 0.12345678901], "float")
    runs = [birkhoff_average(p, 5 * CHUNK + 3, [777, 2 * CHUNK], workers=w).to_json() for w in (1, 2, 5)]
    assert runs[0] == runs[1] == runs[2]


def test_env_thread_default(monkeypatch):
    monkeypatch.setenv(ergodic.THREADS_ENV, "3")
    assert ergodic.default_workers() == 3
    monkeypatch.setenv(ergodic.THREADS_ENV, "junk")
    assert ergodic.default_workers() == 1


def test_kernel_degree1_and_exact():
    p = P([0, SQRT_HALF], "float")
    assert np.abs(weyl_kernel(p, 5000) - direct_values(p, 5000)).max() < 1e-12
    q = P([0, 0, F(1, 8)])
    want = np.array([q.value(n) for n in range(10_000)])
    assert (weyl_kernel(q, 10_000) == want).all()


@pytest.mark.parametrize("degree", [1, 2, 3, 4, 5])
def test_kernel_accuracy(degree):
    p = P([0.1 * (j + 1) + 0.0123 * j * j for j in range(degree)] + [SQRT_HALF], "float")
    N = 200_000 if degree > 3 else 10**6
    assert np.abs(weyl_kernel(p, N) - direct_values(p, N)).max() < 1e-9


def test_kernel_split_invariance():
    p = P([0, 0.2, 0, SQRT_HALF], "float")
    whole = weyl_kernel(p, 5000)
    parts = np.concatenate([weyl_kernel(p, 1234), weyl_kernel(p, 5000 - 1234, 1234)])
    assert (whole == parts).all()


def test_reseed_periods():
    assert reseed_period(1) == reseed_period(2) == 1024
    assert reseed_period(5) < reseed_period(3) < 1024


@given(exact_polys(5, 64), st.integers(-10**6, 10**6))
def test_residues_match_evaluation(p, start):
    D, r = residues(p, 50, start)
    for i in (0, 17, 49):
        assert F(int(r[i]), D) == p.exact_phase(start + i)


def test_residues_large_denominators():
    for D in (2**64, 3**40, 2**70 + 1):
        p = P([F(1, D), F(3, D), F(5, D)])
        Dp, r = residues(p, 20, -7)
        assert all(F(int(r[i]), Dp) == p.exact_phase(i - 7) for i in range(20))


def test_star_discrepancy_oracle():
    rng = np.random.default_rng(0)
    x = rng.random(200)
    # brute force over anchors at the points and just after them
    xs = np.sort(x)
    best = 0.0
    for a in np.concatenate([xs, [1.0]]):
        best = max(best, abs((x < a).sum() / 200 - a), abs((x <= a).sum() / 200 - a))
    assert star_discrepancy(x) == pytest.approx(best, abs=1e-15)
    assert star_discrepancy(np.array([0.5])) == 0.5


def test_equidistribution_examples():
    r = equidistribution_report(P([0, F(1, 2)]), 1000, 10)
    assert r.degenerate and not r.equidistributed and r.atoms == 2
    r = equidistribution_report(P([0, GOLDEN], "float"), 10**5, 100)
    assert r.equidistributed and r.max_bin_deviation < 0.05 * r.expected
    ph = np.modf(GOLDEN * np.arange(10**5))[0]
    assert r.counts == np.bincount((ph * 100).astype(int), minlength=100).tolist()


def test_discrepancy_decreases():
    r = equidistribution_report(P([0, 0, math.sqrt(2)], "float"), 10**5, 100, [10**3, 10**4, 10**5])
    d = [r.discrepancy_checkpoints[n] for n in (10**3, 10**4, 10**5)]
    assert d[0] > d[1] > d[2]


def test_csv_columns():
    text = birkhoff_average(P([0, F(1, 7)]), 100, [10]).to_csv()
    lines = text.splitlines()
    assert lines[0] == "N,re(avg),im(avg),|avg|" and len(lines) == 3
    n, re, im, mod = lines[1].split(",")
    assert int(n) == 10 and float(mod) == pytest.approx(math.hypot(float(re), float(im)))


def test_bad_arguments():
    with pytest.raises(ValueError):
        birkhoff_average(P([0]), 0)
    with pytest.raises(ValueError):
        equidistribution_report(P([0, GOLDEN], "float"), 100, 1)
    with pytest.raises(ValueError):
        rational_average_closed_form(P([0, GOLDEN], "float"), 10)
