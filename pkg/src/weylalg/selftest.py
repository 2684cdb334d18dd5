"""Bundled invariant suite, run by ``weylalg selftest``.

Every check draws from a fixed seed and reports no timings, so two runs give
byte-identical reports.  A check returns None on success or a JSON-ready
counterexample.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction
from typing import Callable

import numpy as np

from weylalg import bicyclic, ergodic, finsgp, rings
from weylalg.certify import SampledFunction, certify, distality_probe, recover_f1, verify_certificate
from weylalg.phase import PhasePolynomial
from weylalg.torus import EXACT, TorusPoint

Check = Callable[[random.Random, str], "dict | None"]


def random_poly(rng: random.Random, degree: int, mode: str = EXACT, max_den: int = 16) -> PhasePolynomial:
    if mode == EXACT:
        coeffs = [Fraction(rng.randrange(d), d) for d in (rng.randint(1, max_den) for _ in range(degree + 1))]
        return PhasePolynomial(coeffs, EXACT)
    return PhasePolynomial([rng.randrange(1 << 20) / (1 << 20) for _ in range(degree + 1)], "float")


def random_exact_phase(rng: random.Random, max_den: int = 12) -> TorusPoint:
    d = rng.randint(1, max_den)
    return TorusPoint(Fraction(rng.randrange(d), d))


def _close(a: TorusPoint, b: TorusPoint, mode: str) -> bool:
    return a == b if mode == EXACT else abs(a.value - b.value) < 1e-9


def check_torus(rng, mode):
    q = TorusPoint(Fraction(1, 4))
    cases = [
        (q * q, TorusPoint(Fraction(1, 2))),
        (TorusPoint(Fraction(3, 4)) * TorusPoint(Fraction(1, 2)), q),
        (TorusPoint(Fraction(1, 3)) ** -1, TorusPoint(Fraction(2, 3))),
        (TorusPoint(Fraction(1, 7)) ** 7_000_000_000, TorusPoint(0)),
    ]
    for i, (got, want) in enumerate(cases):
        if got != want:
            return {"case": i, "got": str(got), "want": str(want)}
    return None


def check_phase_calculus(rng, mode):
    for _ in range(40):
        p = random_poly(rng, rng.randint(0, 4), mode)
        q = random_poly(rng, rng.randint(0, 4), mode)
        s, t = rng.randint(-9, 9), rng.randint(-9, 9)
        for n in range(-6, 7):
            if not _close(p.shift(s)(n), p(n + s), mode):
                return {"law": "shift", "p": p.to_json(), "s": s, "n": n}
            if not _close(p(n + s), p(n) * p.cocycle_quotient(s)(n), mode):
                return {"law": "cocycle", "p": p.to_json(), "s": s, "n": n}
            if not _close(p.conjugate()(n), p(n).inverse(), mode):
                return {"law": "conjugate", "p": p.to_json(), "n": n}
        if s and p.degree >= 1 and p.cocycle_quotient(s).degree > p.degree - 1:
            return {"law": "degree", "p": p.to_json(), "s": s}
        if mode == EXACT:
            if (p * q).cocycle_quotient(s) != p.cocycle_quotient(s) * q.cocycle_quotient(s):
                return {"law": "product", "p": p.to_json(), "q": q.to_json(), "s": s}
            if p.shift(s).shift(t) != p.shift(s + t):
                return {"law": "shift-composition", "p": p.to_json(), "s": s, "t": t}
            if p.conjugate().cocycle_quotient(s) != p.cocycle_quotient(s).conjugate():
                return {"law": "conjugate-cocycle", "p": p.to_json(), "s": s}
    return None


def check_certificates(rng, mode):
    for _ in range(30):
        p = random_poly(rng, rng.randint(0, 5), mode)
        cert = certify(p)
        f = SampledFunction.from_polynomial(p, 14)
        report = verify_certificate(f, cert, range(-10, 11))
        if not report.passed or cert.depth != p.degree:
            return {"p": p.to_json(), "max_error": report.max_error}
        if not verify_certificate(f, cert.raised(cert.depth + 1), [1, -3]).passed:
            return {"p": p.to_json(), "law": "F_k inside F_k+1"}
    return None


def check_recover_f1(rng, mode):
    for _ in range(20):
        lam, lam1 = random_exact_phase(rng), random_exact_phase(rng)
        p = PhasePolynomial([lam1, lam])
        got = recover_f1(SampledFunction.from_polynomial(p, 6))
        if got != (lam, lam1):
            return {"lam": str(lam), "lam1": str(lam1), "got": [str(g) for g in got]}
    return None


def check_distality(rng, mode):
    for _ in range(4):
        p = random_poly(rng, rng.randint(1, 3))
        for _ in range(40):
            a, b = rng.randint(-8, 8), rng.randint(-8, 8)
            try:
                report = distality_probe(p, [(a, b)], shift_range=16, truncation=8)
            except ValueError:
                continue
            if not report.delta > 0:
                return {"p": p.to_json(), "pair": [a, b], "delta": report.delta}
            break
    return None


def check_bicyclic_monoid(rng, mode):
    E = bicyclic.BicyclicElement
    if bicyclic.bc_mul(bicyclic.P, bicyclic.Q) != bicyclic.ONE:
        return {"law": "pq = 1"}
    if bicyclic.bc_mul(bicyclic.Q, bicyclic.P) == bicyclic.ONE:
        return {"law": "qp != 1"}
    for _ in range(300):
        a, b, c = (E(rng.randint(0, 1000), rng.randint(0, 1000)) for _ in range(3))
        if bicyclic.bc_mul(bicyclic.bc_mul(a, b), c) != bicyclic.bc_mul(a, bicyclic.bc_mul(b, c)):
            return {"law": "associativity", "witness": [list(a), list(b), list(c)]}
        if bicyclic.bc_mul(bicyclic.ONE, a) != a or bicyclic.bc_mul(a, bicyclic.ONE) != a:
            return {"law": "identity", "witness": list(a)}
    return None


def check_bicyclic_families(rng, mode):
    elems = bicyclic.window(8)
    for _ in range(10):
        lam, mu, nu = (random_exact_phase(rng) for _ in range(3))
        f = bicyclic.BicyclicF2(lam, mu, nu)
        f_p, f_q = f.cocycle_partners()
        for x in elems:
            if f(bicyclic.bc_mul(x, bicyclic.P)) != f_p(x) * f(x):
                return {"law": "R_p f = f_p f", "x": list(x)}
            if f(bicyclic.bc_mul(x, bicyclic.Q)) != f_q(x) * f(x):
                return {"law": "R_q f = f_q f", "x": list(x)}
        g = bicyclic.BicyclicF1(mu, nu)
        if not bicyclic.lemma5_check(g):
            return {"law": "f(p) f(q) = f(1)^2", "mu": str(mu), "nu": str(nu)}
        if any(g(x) != g.as_f2()(x) for x in elems):
            return {"law": "F1 inside F2", "mu": str(mu), "nu": str(nu)}
    for rel in ("p", "q"):
        if not bicyclic.idempotent_collapse(rel, 4).constants_only:
            return {"law": "idempotent collapse", "relation": rel}
    return None


def check_finite_semigroups(rng, mode):
    FS = finsgp.FiniteSemigroup
    for n in range(2, 5):
        if not finsgp.solve_f1(FS.right_zero(n)).is_constants_only():
            return {"table": "right-zero", "n": n}
        sol = finsgp.solve_f1(FS.left_zero(n))
        if sol.function_dimension != n or sol.torsion:
            return {"table": "left-zero", "n": n}
    for n in range(1, 8):
        G = FS.cyclic(n)
        if len(finsgp.characters(G)) != n or finsgp.character_span_dimension(G) != n:
            return {"table": "cyclic", "n": n}
    for S in (FS.right_zero(3), FS.left_zero(3), FS.cyclic(4), FS.abelian([2, 2])):
        sol = finsgp.solve_f1(S)
        if not finsgp.idempotent_fixed_check(S, sol).passed:
            return {"law": "idempotents fix F_1", "table": S.table.tolist()}
        f, c = sol.random_point(rng)
        bad = finsgp.check_f1_point(S, f, c)
        if bad is not None:
            return {"law": "F_1 replay", "table": S.table.tolist(), "pair": list(bad)}
        if not finsgp.solve_fk(S, 2).nesting_verified:
            return {"law": "F_1 inside F_2", "table": S.table.tolist()}
    return None


def check_rings(rng, mode):
    for _ in range(6):
        moduli = tuple(rng.randint(2, 8) for _ in range(rng.randint(1, 2)))
        R = rings.RingSpec(moduli)
        chi = rings.Character(R, tuple(rng.randrange(n) for n in moduli))
        q = rings.RingPolynomial(R, [tuple(rng.randrange(n) for n in moduli) for _ in range(rng.randint(1, 4))])
        cert = rings.certify_ring(chi, q)
        if not cert.passed:
            return {"moduli": list(moduli), "poly": q.to_json(), "replay": [r.to_json() for r in cert.replays]}
        if rings.additivity_failure(chi) is not None:
            return {"law": "additivity", "moduli": list(moduli)}
    return None


def check_ergodic(rng, mode):
    for _ in range(5):
        p = random_poly(rng, rng.randint(0, 3), EXACT, max_den=12)
        N = rng.randint(1, 5000)
        got = ergodic.birkhoff_average(p, N).final.average
        want = ergodic.rational_average_closed_form(p, N)
        if got != want:
            return {"law": "closed form", "p": p.to_json(), "N": N, "got": repr(got), "want": repr(want)}
    p = PhasePolynomial([0, 0, 0, 0.7071067811865476])
    err = float(np.abs(ergodic.weyl_kernel(p, 20000) - ergodic.direct_values(p, 20000)).max())
    if err > 1e-9:
        return {"law": "kernel accuracy", "error": err}
    q = PhasePolynomial([0, 0, 0.7071067811865476])
    a = ergodic.birkhoff_average(q, 200_000, [1000], workers=1).to_json()
    b = ergodic.birkhoff_average(q, 200_000, [1000], workers=3).to_json()
    if a != b:
        return {"law": "thread determinism"}
    return None


CHECKS: list[tuple[str, Check]] = [
    ("torus-arithmetic", check_torus),
    ("phase-calculus", check_phase_calculus),
    ("certificates", check_certificates),
    ("recover-f1", check_recover_f1),
    ("distality-probe", check_distality),
    ("bicyclic-monoid", check_bicyclic_monoid),
    ("bicyclic-families", check_bicyclic_families),
    ("finite-semigroups", check_finite_semigroups),
    ("ring-characters", check_rings),
    ("ergodic-harness", check_ergodic),
]


def run_selftest(mode: str = EXACT, seed: int = 20100101) -> tuple[bool, str]:
    """Run every check; return (all passed, report text)."""
    lines = [f"weylalg selftest (mode={mode}, seed={seed})", ""]
    width = max(len(name) for name, _ in CHECKS)
    first_failure = None
    passed = 0
    for name, check in CHECKS:
        rng = random.Random(f"{seed}:{name}")
        try:
            result = check(rng, mode)
        except Exception as exc:  # a crash is a failure with its message as witness
            result = {"exception": f"{type(exc).__name__}: {exc}"}
        ok = result is None
        passed += ok
        lines.append(f"{name:<{width}}  {'PASS' if ok else 'FAIL'}")
        if not ok and first_failure is None:
            first_failure = {"check": name, "counterexample": result}
    lines += ["", f"{passed}/{len(CHECKS)} checks passed"]
    if first_failure is not None:
        lines += ["", "first counterexample:", json.dumps(first_failure, indent=2, sort_keys=True)]
    return first_failure is None, "\n".join(lines) + "\n"
