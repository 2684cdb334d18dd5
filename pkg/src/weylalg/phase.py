"""Phase polynomials on (Z, +).

``PhasePolynomial([t0, t1, ..., tk])`` is the unimodular function
``n -> exp(2*pi*i*(t0 + t1*n + ... + tk*n**k))``.  Products of the
generators ``n -> lam**(n**i)`` are exactly these functions, so the degree-k
polynomials are the concrete form of the level-k hierarchy on Z.

All arithmetic is done on exact rationals.  Float-mode coefficients are
converted to the exact value of the stored double, processed exactly, and
rounded back once.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from weylalg.torus import EXACT, FLOAT, TorusPoint, coerce_phases, ModeError


def _exact(tp: TorusPoint) -> Fraction:
    return Fraction(tp.phase)


def _pack(values: Sequence[Fraction], mode: str) -> tuple[TorusPoint, ...]:
    if mode == EXACT:
        return tuple(TorusPoint(v) for v in values)
    return tuple(TorusPoint(float(v % 1)) for v in values)


def _binom_shift(coeffs: Sequence[Fraction], s: int) -> list[Fraction]:
    """Coefficients of n -> p(n + s), reduced mod 1."""
    k = len(coeffs) - 1
    out = []
    for j in range(k + 1):
        acc = Fraction(0)
        for i in range(j, k + 1):
            c = coeffs[i]
            if c == 0:
                continue
            den = c.denominator
            # only C(i,j) s^(i-j) mod den matters
            mult = math.comb(i, j) * pow(s, i - j, den) % den
            acc += c * mult
        out.append(acc % 1)
    return out


class PhasePolynomial:
    """Immutable phase polynomial with canonical (trimmed) degree."""

    __slots__ = ("_coeffs", "_scaled")

    def __init__(self, coeffs: Iterable = (0,), mode: str | None = None):
        points = coerce_phases(list(coeffs) or [0], mode)
        modes = {p.mode for p in points}
        if len(modes) > 1:
            raise ModeError("mixed-mode coefficients")
        while len(points) > 1 and points[-1].is_one():
            points.pop()
        self._coeffs = tuple(points)
        self._scaled = None

    @classmethod
    def constant(cls, phase=0, mode: str = EXACT) -> "PhasePolynomial":
        return cls([phase], mode)

    @property
    def coeffs(self) -> tuple[TorusPoint, ...]:
        return self._coeffs

    @property
    def phases(self) -> list:
        return [c.phase for c in self._coeffs]

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    @property
    def mode(self) -> str:
        return self._coeffs[0].mode

    @property
    def exact(self) -> bool:
        return self.mode == EXACT

    def is_constant(self) -> bool:
        return self.degree == 0

    def _fractions(self) -> list[Fraction]:
        return [_exact(c) for c in self._coeffs]

    def _same_mode(self, other: "PhasePolynomial") -> None:
        if self.mode != other.mode:
            raise ModeError(f"cannot combine {self.mode} and {other.mode} polynomials")

    def exact_phase(self, n: int) -> Fraction:
        """p(n) mod 1 as an exact rational (integer Horner over the common denominator)."""
        if self._scaled is None:
            fr = self._fractions()
            L = math.lcm(*(c.denominator for c in fr))
            self._scaled = (L, tuple(c.numerator * (L // c.denominator) for c in reversed(fr)))
        L, nums = self._scaled
        n %= L
        acc = 0
        for a in nums:
            acc = (acc * n + a) % L
        return Fraction(acc, L)

    def __call__(self, n: int) -> TorusPoint:
        value = self.exact_phase(n)
        return TorusPoint(value if self.exact else float(value))

    eval = __call__

    def value(self, n: int) -> complex:
        return self(n).value

    def shift(self, s: int) -> "PhasePolynomial":
        """Return q with q(n) = p(n + s)."""
        return PhasePolynomial(_pack(_binom_shift(self._fractions(), s), self.mode))

    def cocycle_quotient(self, s: int = 1) -> "PhasePolynomial":
        """Phase polynomial of f(n + s) / f(n); its degree is at most deg - 1."""
        old = self._fractions()
        new = _binom_shift(old, s)
        diff = [(a - b) % 1 for a, b in zip(new, old)]
        # the leading terms cancel identically
        if len(diff) > 1:
            diff.pop()
        return PhasePolynomial(_pack(diff, self.mode))

    def __mul__(self, other: "PhasePolynomial") -> "PhasePolynomial":
        if not isinstance(other, PhasePolynomial):
            return NotImplemented
        self._same_mode(other)
        a, b = self._coeffs, other._coeffs
        width = max(len(a), len(b))
        zero = TorusPoint(0 if self.exact else 0.0)
        a = a + (zero,) * (width - len(a))
        b = b + (zero,) * (width - len(b))
        return PhasePolynomial([x * y for x, y in zip(a, b)])

    def conjugate(self) -> "PhasePolynomial":
        return PhasePolynomial([c.inverse() for c in self._coeffs])

    def pad(self, degree: int) -> list[TorusPoint]:
        """Coefficient list padded with zero phases up to ``degree``."""
        zero = TorusPoint(0 if self.exact else 0.0)
        return list(self._coeffs) + [zero] * (degree - self.degree)

    def common_denominator(self) -> tuple[int, list[int]]:
        """Return D and integer numerators a_i with theta_i = a_i / D."""
        fr = self._fractions()
        den = 1
        for f in fr:
            den = math.lcm(den, f.denominator)
        return den, [int(f * den) for f in fr]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PhasePolynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        inner = ", ".join(repr(c)[len("TorusPoint("):-1] for c in self._coeffs)
        return f"PhasePolynomial([{inner}], mode={self.mode!r})"

    def to_json(self) -> dict:
        return {"mode": self.mode, "coeffs": [c.to_json() for c in self._coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "PhasePolynomial":
        mode = obj["mode"]
        if mode not in (EXACT, FLOAT):
            raise ValueError(f"unknown mode {mode!r}")
        points = [TorusPoint.from_json(c) for c in obj["coeffs"]]
        return cls(points, mode)


def evaluate(p: PhasePolynomial, n: int) -> TorusPoint:
    return p(n)


def shift(p: PhasePolynomial, s: int) -> PhasePolynomial:
    return p.shift(s)


def cocycle_quotient(p: PhasePolynomial, s: int) -> PhasePolynomial:
    return p.cocycle_quotient(s)


def multiply(p: PhasePolynomial, q: PhasePolynomial) -> PhasePolynomial:
    return p * q


def parse_coeffs(text: str, mode: str | None = None) -> PhasePolynomial:
    """Parse ``"0,1/4"`` or ``"0,0,0.31"`` into a PhasePolynomial."""
    parts = [t for t in text.split(",") if t.strip()]
    if not parts:
        raise ValueError("empty coefficient list")
    return PhasePolynomial(parts, mode)
