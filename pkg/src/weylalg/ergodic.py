"""Birkhoff averages and Weyl sums of phase polynomials.

Numerical evidence only: convergence of (1/N) sum f(n) is the computable
shadow of unique ergodicity, not a proof of it.  Float-mode coefficients are
treated as the exact dyadic rationals stored in the doubles; no claim is made
about the irrational numbers they approximate.

Summation contract: the stream is cut into chunks of ``CHUNK`` terms, each
chunk is summed with ``math.fsum`` (correctly rounded), and chunk sums are
combined with ``math.fsum`` in index order.  Results are therefore identical
for any number of worker threads.
"""

from __future__ import annotations

import cmath
import csv
import functools
import io
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from weylalg.phase import PhasePolynomial
from weylalg.torus import root_of_unity

CHUNK = 1 << 16
RESEED = 1 << 10
THREADS_ENV = "WEYLALG_THREADS"
_MAX_TABLE = 1 << 20
_SCALAR_TABLE = 1 << 16
_DRIFT_EPS = 1.7e-16  # measured per-step growth constant of cumprod rounding


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _forward_differences(values: list) -> list:
    """[Delta^0 v(0), Delta^1 v(0), ...] from v(0..k)."""
    out, row = [], list(values)
    while row:
        out.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]
    return out


def _start_differences(p: PhasePolynomial, start: int) -> list[Fraction]:
    vals = [Fraction(p.exact_phase(start + i)) for i in range(p.degree + 1)]
    return [d % 1 for d in _forward_differences(vals)]


def _levels_uint64(diffs: list[int], count: int) -> np.ndarray:
    # arithmetic mod 2**64 wraps exactly in uint64
    level = np.full(count, diffs[-1], dtype=np.uint64)
    for d in reversed(diffs[:-1]):
        acc = np.empty(count, dtype=np.uint64)
        acc[0] = d
        if count > 1:
            acc[1:] = np.uint64(d) + np.cumsum(level[:-1], dtype=np.uint64)
        level = acc
    return level


def _levels_mod(diffs: list[int], count: int, D: int) -> np.ndarray:
    level = np.full(count, diffs[-1] % D, dtype=np.int64)
    for d in reversed(diffs[:-1]):
        acc = np.empty(count, dtype=np.int64)
        acc[0] = d % D
        if count > 1:
            acc[1:] = (d + np.cumsum(level[:-1])) % D
        level = acc
    return level


def residues(p: PhasePolynomial, count: int, start: int = 0) -> tuple[int, np.ndarray]:
    """Exact residues r(n) with p(n) = r(n)/D mod 1 for n in [start, start+count).

    Uses the finite-difference recurrence on integers, never evaluating
    powers of n.
    """
    D, _ = p.common_denominator()
    if count <= 0:
        return D, np.zeros(0, dtype=np.int64)
    if D == 1:
        return D, np.zeros(count, dtype=np.int64)
    diffs = [int(d * D) for d in _start_differences(p, start)]
    E = D.bit_length() - 1
    if D == 1 << E and E <= 64:
        scale = 64 - E
        scaled = [(d << scale) % (1 << 64) for d in diffs]
        out = _levels_uint64(scaled, count)
        return D, out >> np.uint64(scale) if scale else out
    if D < (1 << 62):
        block = max(1, (1 << 62) // D)
        if block >= count:
            return D, _levels_mod(diffs, count, D)
        parts = [residues(p, min(block, count - i), start + i)[1] for i in range(0, count, block)]
        return D, np.concatenate(parts)
    # huge denominators: plain Python integers
    out = np.empty(count, dtype=object)
    level = list(diffs)
    for i in range(count):
        out[i] = level[0]
        for j in range(len(level) - 1):
            level[j] = (level[j] + level[j + 1]) % D
    return D, out


def phase_stream(p: PhasePolynomial, count: int, start: int = 0) -> np.ndarray:
    """frac(p(n)) as float64, computed from the exact residues (direct evaluation)."""
    D, r = residues(p, count, start)
    if r.dtype == object:
        return np.array([float(Fraction(int(x), D)) for x in r])
    ph = r.astype(np.float64) / float(D)
    ph[ph >= 1.0] = 0.0
    return ph


def direct_values(p: PhasePolynomial, count: int, start: int = 0) -> np.ndarray:
    return np.exp(2j * np.pi * phase_stream(p, count, start))


@functools.lru_cache(maxsize=8)
def _root_table(D: int) -> np.ndarray:
    # small tables reuse the scalar path so exact-mode values match evaluation bit for bit
    if D <= _SCALAR_TABLE:
        table = np.array([root_of_unity(r, D) for r in range(D)], dtype=np.complex128)
    else:
        table = np.exp(2j * np.pi * np.arange(D) / D)
    table.flags.writeable = False
    return table


def reseed_period(degree: int, target: float = 1e-10) -> int:
    """Largest power of two <= RESEED keeping recurrence drift below ``target``.

    Rounding of the top multiplier grows like eps * B**k / k! after B steps.
    """
    B = RESEED
    while B > 1 and _DRIFT_EPS * B**degree / math.factorial(degree) > target:
        B //= 2
    return B


def weyl_kernel(p: PhasePolynomial, count: int, start: int = 0,
                reseed: int | None = None) -> np.ndarray:
    """exp(2 pi i p(n)) for n in [start, start+count) by finite-difference recurrence.

    Level j holds exp(2 pi i Delta^j p(n)); each step multiplies level j by
    level j+1 (one complex multiply per level, done with cumprod).  Every
    ``reseed`` steps (a power of two, degree dependent by default), measured
    from n = 0, the multipliers are rebuilt from the exact differences, which
    restores unit modulus and removes phase drift.
    Exact mode reads roots of unity from a table instead.
    """
    if p.exact:
        D, r = residues(p, count, start)
        if D <= _MAX_TABLE and r.dtype != object:
            return _root_table(D)[r.astype(np.int64)]
        return np.exp(2j * np.pi * np.array([float(Fraction(int(x), D)) for x in r]))
    reseed = reseed_period(p.degree) if reseed is None else reseed
    offset = start % reseed
    if offset:
        # run from the aligned block start so values never depend on the caller's split
        return weyl_kernel(p, count + offset, start - offset, reseed)[offset:]
    D, _ = p.common_denominator()
    diffs = [int(d * D) for d in _start_differences(p, start)]
    out = np.empty(count, dtype=np.complex128)
    pos = 0
    while pos < count:
        n0 = start + pos
        length = min(reseed - n0 % reseed, count - pos)
        mult = [cmath.exp(2j * math.pi * float(Fraction(d, D))) for d in diffs]
        level = np.full(length, mult[-1], dtype=np.complex128)
        for w in reversed(mult[:-1]):
            acc = np.empty(length, dtype=np.complex128)
            acc[0] = w
            if length > 1:
                acc[1:] = w * np.cumprod(level[:-1])
            level = acc
        out[pos:pos + length] = level
        diffs = _advance(diffs, length, D)
        pos += length
    return out


def _advance(diffs: list[int], steps: int, D: int) -> list[int]:
    """Exact differences at n + steps from those at n: sum_i C(steps, i) Delta^(j+i)."""
    k = len(diffs)
    binom = [math.comb(steps, i) for i in range(k)]
    return [sum(binom[i] * diffs[j + i] for i in range(k - j)) % D for j in range(k)]


@dataclass
class Checkpoint:
    n: int
    average: complex
    max_modulus_deviation: float

    @property
    def modulus(self) -> float:
        return abs(self.average)

    def to_json(self) -> dict:
        return {"N": self.n, "re": self.average.real, "im": self.average.imag,
                "abs": self.modulus, "max_modulus_deviation": self.max_modulus_deviation}


@dataclass
class AverageSeries:
    polynomial: PhasePolynomial
    checkpoints: list[Checkpoint] = field(default_factory=list)

    @property
    def mode(self) -> str:
        return self.polynomial.mode

    @property
    def final(self) -> Checkpoint:
        return self.checkpoints[-1]

    def at(self, n: int) -> Checkpoint:
        return next(c for c in self.checkpoints if c.n == n)

    def to_json(self) -> dict:
        return {"polynomial": self.polynomial.to_json(), "mode": self.mode,
                "checkpoints": [c.to_json() for c in self.checkpoints]}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["N", "re(avg)", "im(avg)", "|avg|"])
        for c in self.checkpoints:
            w.writerow([c.n, repr(c.average.real), repr(c.average.imag), repr(c.modulus)])
        return buf.getvalue()


def _clamp(z: complex) -> complex:
    # rounding can push a sum of unit vectors a hair past modulus 1
    m = abs(z)
    return z / m if m > 1.0 else z


def histogram_sum(counts: np.ndarray, D: int) -> complex:
    """sum_r counts[r] exp(2 pi i r / D), with full residue cycles removed exactly."""
    counts = np.asarray(counts, dtype=np.int64)
    if D >= 2:
        counts = counts - counts.min()
    nz = np.nonzero(counts)[0]
    if len(nz) == 0:
        return 0j
    roots = _root_table(D)[nz]
    c = counts[nz].astype(np.float64)
    return complex(math.fsum(c * roots.real), math.fsum(c * roots.imag))


def _chunk_float(p: PhasePolynomial, start: int, length: int, cuts: Sequence[int]):
    vals = weyl_kernel(p, length, start)
    dev = np.abs(np.abs(vals) - 1.0)
    total = complex(math.fsum(vals.real), math.fsum(vals.imag))
    partial = {c: (complex(math.fsum(vals.real[:c]), math.fsum(vals.imag[:c])),
                   float(dev[:c].max()) if c else 0.0) for c in cuts}
    return total, float(dev.max()), partial


def _chunk_exact(p: PhasePolynomial, start: int, length: int, cuts: Sequence[int]):
    D, r = residues(p, length, start)
    r = r.astype(np.int64)
    total = np.bincount(r, minlength=D)
    partial = {c: np.bincount(r[:c], minlength=D) for c in cuts}
    return total, partial


def _plan(N: int, checkpoints: Sequence[int]):
    cps = sorted({int(c) for c in checkpoints if 1 <= c <= N} | {N})
    chunks = []
    for start in range(0, N, CHUNK):
        length = min(CHUNK, N - start)
        cuts = [c - start for c in cps if start < c < start + length]
        chunks.append((start, length, cuts))
    return cps, chunks


def birkhoff_average(p: PhasePolynomial, N: int, checkpoints: Sequence[int] = (),
                     workers: int | None = None) -> AverageSeries:
    """(1/N) sum_{n<N} exp(2 pi i p(n)) with snapshots at the given checkpoints."""
    if N < 1:
        raise ValueError("N must be at least 1")
    workers = default_workers() if workers is None else max(1, workers)
    cps, chunks = _plan(N, checkpoints)
    exact = p.exact and p.common_denominator()[0] <= _MAX_TABLE
    job = _chunk_exact if exact else _chunk_float
    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(lambda c: job(p, *c), chunks))
    else:
        results = [job(p, *c) for c in chunks]

    series = AverageSeries(p)
    D = p.common_denominator()[0]
    for cp in cps:
        if exact:
            hist = np.zeros(D, dtype=np.int64)
            for (start, length, _), (total, partial) in zip(chunks, results):
                if start + length <= cp:
                    hist += total
                elif start < cp:
                    hist += partial[cp - start]
            series.checkpoints.append(Checkpoint(cp, _clamp(histogram_sum(hist, D) / cp), 0.0))
        else:
            sums, dev = [], 0.0
            for (start, length, _), (total, tdev, partial) in zip(chunks, results):
                if start + length <= cp:
                    sums.append(total)
                    dev = max(dev, tdev)
                elif start < cp:
                    s, d = partial[cp - start]
                    sums.append(s)
                    dev = max(dev, d)
            avg = complex(math.fsum(z.real for z in sums), math.fsum(z.imag for z in sums)) / cp
            series.checkpoints.append(Checkpoint(cp, _clamp(avg), dev))
    return series


def rational_average_closed_form(p: PhasePolynomial, N: int) -> complex:
    """Period-sum formula for exact p: p(n + D) = p(n) mod 1 with D the common denominator."""
    if not p.exact:
        raise ValueError("closed form needs exact rational phases")
    D, ints = p.common_denominator()

    def r(n):
        acc = 0
        for c in reversed(ints):
            acc = (acc * n + c) % D
        return acc

    q, rem = divmod(N, D)
    hist = np.zeros(D, dtype=np.int64)
    for n in range(D):
        hist[r(n)] += q + (1 if n < rem else 0)
    return _clamp(histogram_sum(hist, D) / N)


def star_discrepancy(points: np.ndarray) -> float:
    """Exact one-dimensional star discrepancy of points in [0, 1)."""
    x = np.sort(np.asarray(points, dtype=np.float64))
    n = len(x)
    i = np.arange(1, n + 1)
    return float(max((i / n - x).max(), (x - (i - 1) / n).max()))


@dataclass
class EquidistributionReport:
    n: int
    bins: int
    counts: list[int]
    atoms: int
    star_discrepancy: float
    discrepancy_checkpoints: dict[int, float] = field(default_factory=dict)

    @property
    def expected(self) -> float:
        return self.n / self.bins

    @property
    def max_bin_deviation(self) -> float:
        return float(max(abs(c - self.expected) for c in self.counts))

    @property
    def relative_deviation(self) -> float:
        return self.max_bin_deviation / self.expected

    @property
    def chi_square(self) -> float:
        e = self.expected
        return float(sum((c - e) ** 2 / e for c in self.counts))

    @property
    def degenerate(self) -> bool:
        """Finitely many values, too few to fill the bins (e.g. rational phases)."""
        return self.atoms < self.bins

    @property
    def equidistributed(self) -> bool:
        return not self.degenerate and self.relative_deviation < 0.05

    def to_json(self) -> dict:
        return {
            "N": self.n,
            "bins": self.bins,
            "expected": self.expected,
            "max_bin_deviation": self.max_bin_deviation,
            "relative_deviation": self.relative_deviation,
            "chi_square": self.chi_square,
            "star_discrepancy": self.star_discrepancy,
            "discrepancy_checkpoints": {str(k): v for k, v in self.discrepancy_checkpoints.items()},
            "atoms": self.atoms,
            "degenerate": self.degenerate,
            "equidistributed": self.equidistributed,
            "counts": self.counts,
        }


def equidistribution_report(p: PhasePolynomial, N: int, bins: int = 100,
                            checkpoints: Sequence[int] = ()) -> EquidistributionReport:
    """Histogram and star discrepancy of frac(p(n)), 0 <= n < N."""
    if bins < 2:
        raise ValueError("need at least two bins")
    D, r = residues(p, N)
    ph = phase_stream(p, N)
    idx = np.minimum((ph * bins).astype(np.int64), bins - 1)
    counts = np.bincount(idx, minlength=bins)
    atoms = len(np.unique(r))
    disc = {int(c): star_discrepancy(ph[:int(c)]) for c in sorted(checkpoints) if 1 <= c <= N}
    return EquidistributionReport(N, bins, [int(c) for c in counts], atoms,
                                  star_discrepancy(ph), disc)
