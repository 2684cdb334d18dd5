"""Certificates of membership in the level-k hierarchy on (Z, +).

Only translations are used as the operators sigma.  General elements of the
enveloping semigroup are ultrafilter limits of translations and cannot be
represented finitely; for phase polynomials the translation cocycle depends
polynomially on the shift, so one symbolic chain covers every limit point.
Reports carry :data:`SIGMA_NOTE` so this restriction is never silent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from weylalg.phase import PhasePolynomial
from weylalg.torus import EXACT, TorusPoint

SIGMA_NOTE = (
    "sigma ranges over translations n -> n+s only; "
    "limit operators of the enveloping semigroup are not represented"
)

DEFAULT_TOL = 1e-9

Sample = Union[TorusPoint, complex]


class NotInF1Error(ValueError):
    """Sampled function is not of the form n -> lam**n * lam1."""

    def __init__(self, n: int, error: float):
        super().__init__(f"sample at n={n} deviates from lam**n * lam1 by {error:.3g}")
        self.n = n
        self.error = error


@dataclass(frozen=True)
class DistalityCertificate:
    """Chain f, f_1, (f_1)_1, ... of shift-1 cocycle quotients ending in a constant.

    ``depth`` is the level being claimed; it is at least the degree of the head.
    """

    chain: tuple[PhasePolynomial, ...]
    depth: int

    def __post_init__(self):
        if not self.chain:
            raise ValueError("empty certificate chain")
        if self.depth < self.chain[0].degree:
            raise ValueError("depth below the degree of the certified polynomial")

    @property
    def head(self) -> PhasePolynomial:
        return self.chain[0]

    def check_chain(self) -> bool:
        """Links are successive shift-1 quotients, degrees drop, last is constant."""
        for a, b in zip(self.chain, self.chain[1:]):
            if a.degree == 0 or a.cocycle_quotient(1) != b or b.degree >= a.degree:
                return False
        return self.chain[-1].is_constant() and len(self.chain) - 1 <= self.depth

    def cocycle(self, s: int) -> PhasePolynomial:
        """f_s for translation by s, recomputed from the chain head."""
        return self.head.cocycle_quotient(s)

    def raised(self, depth: int) -> "DistalityCertificate":
        """Same witness viewed as a claim at a higher level (F_k inside F_{k+1})."""
        return DistalityCertificate(self.chain, depth)

    def to_json(self) -> dict:
        return {"depth": self.depth, "chain": [p.to_json() for p in self.chain]}

    @classmethod
    def from_json(cls, obj: dict) -> "DistalityCertificate":
        chain = tuple(PhasePolynomial.from_json(p) for p in obj["chain"])
        return cls(chain, int(obj["depth"]))


def certify(p: PhasePolynomial, depth: int | None = None) -> DistalityCertificate:
    chain = [p]
    while not chain[-1].is_constant():
        chain.append(chain[-1].cocycle_quotient(1))
    return DistalityCertificate(tuple(chain), p.degree if depth is None else depth)


class SampledFunction:
    """Values of a function on the window [-M, M]."""

    def __init__(self, window: int, values: Mapping[int, Sample] | Sequence[Sample],
                 tol: float = DEFAULT_TOL):
        if window < 0:
            raise ValueError("window must be non-negative")
        if not isinstance(values, Mapping):
            values = dict(zip(range(-window, window + 1), values))
        missing = [n for n in range(-window, window + 1) if n not in values]
        if missing:
            raise ValueError(f"missing samples, first at n={missing[0]}")
        self.window = window
        self.values = {n: values[n] for n in range(-window, window + 1)}
        for n, v in self.values.items():
            if not isinstance(v, TorusPoint) and abs(abs(v) - 1) > tol:
                raise ValueError(f"sample at n={n} is not unimodular (|f|={abs(v)!r})")

    @classmethod
    def from_polynomial(cls, p: PhasePolynomial, window: int, as_complex: bool = False):
        vals = {n: p(n) for n in range(-window, window + 1)}
        if as_complex:
            vals = {n: v.value for n, v in vals.items()}
        return cls(window, vals)

    @property
    def exact(self) -> bool:
        return all(isinstance(v, TorusPoint) and v.exact for v in self.values.values())

    def __getitem__(self, n: int) -> Sample:
        return self.values[n]

    def complex_values(self) -> dict[int, complex]:
        return {n: complex(v) for n, v in self.values.items()}

    def with_value(self, n: int, value: Sample) -> "SampledFunction":
        vals = dict(self.values)
        vals[n] = value
        return SampledFunction(self.window, vals)

    def to_json(self) -> dict:
        vals = []
        for n in range(-self.window, self.window + 1):
            v = self.values[n]
            if isinstance(v, TorusPoint):
                vals.append({"phase": v.to_json()})
            else:
                vals.append([complex(v).real, complex(v).imag])
        return {"window": self.window, "values": vals}

    @classmethod
    def from_json(cls, obj: dict) -> "SampledFunction":
        vals = []
        for v in obj["values"]:
            if isinstance(v, dict):
                vals.append(TorusPoint.from_json(v["phase"]))
            else:
                vals.append(complex(v[0], v[1]))
        return cls(int(obj["window"]), vals)


def _as_torus(v: Sample) -> TorusPoint:
    return v if isinstance(v, TorusPoint) else TorusPoint.from_complex(complex(v))


def _discrepancy(actual: Sample, predicted: TorusPoint) -> float:
    """|actual - predicted|; exactly 0.0 for equal exact phases."""
    if isinstance(actual, TorusPoint) and actual.mode == predicted.mode == EXACT:
        if actual == predicted:
            return 0.0
        return abs(1 - (actual / predicted).value)
    return abs(complex(actual) - predicted.value)


def _cocycle_error(f: SampledFunction, fs: PhasePolynomial, n: int, s: int) -> float:
    lhs, base = f[n + s], f[n]
    if isinstance(base, TorusPoint) and base.mode == fs.mode:
        return _discrepancy(lhs, fs(n) * base)
    return abs(complex(lhs) - fs(n).value * complex(base))


@dataclass
class ShiftResult:
    shift: int
    max_error: float
    worst_n: int | None
    checked: int

    def to_json(self) -> dict:
        return {"shift": self.shift, "max_error": self.max_error,
                "worst_n": self.worst_n, "checked": self.checked}


@dataclass
class VerificationReport:
    depth: int
    tol: float
    chain_ok: bool
    exact: bool = False
    shifts: list[ShiftResult] = field(default_factory=list)
    note: str = SIGMA_NOTE

    @property
    def max_error(self) -> float:
        return max((r.max_error for r in self.shifts), default=0.0)

    @property
    def passed(self) -> bool:
        return self.chain_ok and not self.failures()

    def failures(self) -> list[ShiftResult]:
        # exact mode demands equality, the tolerance only applies to floats
        limit = 0.0 if self.exact else self.tol
        return [r for r in self.shifts if r.max_error > limit]

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "tol": self.tol,
            "chain_ok": self.chain_ok,
            "exact": self.exact,
            "passed": self.passed,
            "max_error": self.max_error,
            "shifts": [r.to_json() for r in self.shifts],
            "note": self.note,
        }


def verify_certificate(f: SampledFunction, cert: DistalityCertificate,
                       shifts: Iterable[int], tol: float = DEFAULT_TOL) -> VerificationReport:
    """Check f(n+s) = f_s(n) f(n) on every n with n, n+s in the window."""
    report = VerificationReport(depth=cert.depth, tol=tol, chain_ok=cert.check_chain(),
                                exact=f.exact and cert.head.exact)
    M = f.window
    for s in shifts:
        if abs(s) > M:
            raise ValueError(f"window M={M} too small for shift {s}")
        fs = cert.cocycle(s)
        worst, worst_n, checked = 0.0, None, 0
        for n in range(max(-M, -M - s), min(M, M - s) + 1):
            err = _cocycle_error(f, fs, n, s)
            checked += 1
            if worst_n is None or err > worst:
                worst, worst_n = err, n
        report.shifts.append(ShiftResult(s, worst, worst_n, checked))
    return report


def recover_f1(f: SampledFunction, tol: float = DEFAULT_TOL) -> tuple[TorusPoint, TorusPoint]:
    """Recover (lam, lam1) with f(n) = lam**n * lam1, or raise NotInF1Error.

    The backward value f(-1) = lam**-1 * lam1 is checked first, then n = 1, 2, ...
    and n = -2, -3, ... interleaved by increasing |n|.
    """
    if f.window < 2:
        raise ValueError("recover_f1 needs a window of at least 2")
    lam1 = _as_torus(f[0])
    lam = _as_torus(f[1]) / lam1
    order = [-1] + [m for k in range(2, f.window + 1) for m in (k, -k)]
    for n in order:
        err = _discrepancy(f[n], lam**n * lam1)
        if err > (0.0 if f.exact else tol):
            raise NotInF1Error(n, err)
    return lam, lam1


@dataclass
class PairSeparation:
    a: int
    b: int
    delta: float
    argmin: int

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "delta": self.delta, "argmin": self.argmin}


@dataclass
class ProbeReport:
    shift_range: int
    truncation: int
    pairs: list[PairSeparation]
    note: str = "finite-truncation evidence only; delta does not bound the true infimum"

    @property
    def delta(self) -> float:
        return min(p.delta for p in self.pairs)

    def to_json(self) -> dict:
        return {"S": self.shift_range, "M": self.truncation, "delta": self.delta,
                "pairs": [p.to_json() for p in self.pairs], "note": self.note}


def distality_probe(p: PhasePolynomial, pairs: Sequence[tuple[int, int]],
                    shift_range: int = 64, truncation: int = 16,
                    weight_base: float = 2.0) -> ProbeReport:
    """Minimum over |s| <= S of d_M(R_s g, R_s h) for translates g = R_a f, h = R_b f.

    d_M(u, v) = sum_{|n| <= M} weight_base**-|n| |u(n) - v(n)|.  Raises
    ValueError when g and h agree on the whole scanned domain.
    """
    if not pairs:
        raise ValueError("no translate pairs given")
    S, M = shift_range, truncation
    lo = -S - M + min(min(a, b) for a, b in pairs)
    hi = S + M + max(max(a, b) for a, b in pairs)
    vals = np.array([p(n).value for n in range(lo, hi + 1)])
    n = np.arange(-M, M + 1)
    weights = weight_base ** (-np.abs(n).astype(float))
    s = np.arange(-S, S + 1)
    grid = s[:, None] + n[None, :] - lo
    results = []
    for a, b in pairs:
        if translates_identical(p, a, b, S + M):
            raise ValueError(f"translates by {a} and {b} coincide on the scanned window")
        dist = np.abs(vals[grid + a] - vals[grid + b]) @ weights
        i = int(np.argmin(dist))
        results.append(PairSeparation(a, b, float(dist[i]), int(s[i])))
    return ProbeReport(S, M, results)


def translates_identical(p: PhasePolynomial, a: int, b: int, radius: int) -> bool:
    """True if f(m+a) = f(m+b) for every |m| <= radius."""
    if a == b:
        return True
    q = p.shift(a) * p.shift(b).conjugate()
    if p.exact:
        return all(q(m).is_one() for m in range(-radius, radius + 1))
    return all(abs(q(m).value - 1) < 1e-12 for m in range(-radius, radius + 1))

