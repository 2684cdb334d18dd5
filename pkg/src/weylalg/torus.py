"""Points of the circle group stored as phases in [0, 1).

A :class:`TorusPoint` represents ``exp(2*pi*i*phase)``.  Two arithmetic modes
exist: *exact* (``fractions.Fraction`` phases, bit-exact equality) and *float*
(double phases, for irrational coefficients).  Mixing modes in one operation
raises :class:`ModeError`.
"""

from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from typing import Iterable, Sequence, Union

Phase = Union[Fraction, float]

EXACT = "exact"
FLOAT = "float"

_QUARTER_VALUES = {
    Fraction(0): complex(1, 0),
    Fraction(1, 4): complex(0, 1),
    Fraction(1, 2): complex(-1, 0),
    Fraction(3, 4): complex(0, -1),
}


def root_of_unity(num: int, den: int) -> complex:
    """exp(2 pi i num/den), exact at quarter turns."""
    num %= den
    if 4 * num % den == 0:
        return _QUARTER_VALUES[Fraction(num, den)]
    return cmath.exp(2j * math.pi * (num / den))


class ModeError(ValueError):
    """Exact and float phases were combined."""


def _reduce(phase) -> Phase:
    if isinstance(phase, bool):
        raise TypeError("bool is not a phase")
    if isinstance(phase, int):
        return Fraction(0)
    if isinstance(phase, Fraction):
        return Fraction(phase.numerator % phase.denominator, phase.denominator)
    if isinstance(phase, float):
        if not math.isfinite(phase):
            raise ValueError(f"phase must be finite, got {phase!r}")
        r = phase % 1.0
        # x % 1.0 rounds to 1.0 for tiny negative x
        if r >= 1.0:
            r = 0.0
        return r + 0.0
    raise TypeError(f"unsupported phase type {type(phase).__name__}")


class TorusPoint:
    """A unimodular complex number ``exp(2*pi*i*phase)``."""

    __slots__ = ("_phase",)

    def __init__(self, phase: Union[Phase, int] = 0):
        if isinstance(phase, int) and not isinstance(phase, bool):
            phase = Fraction(phase)
        self._phase = _reduce(phase)

    @property
    def phase(self) -> Phase:
        return self._phase

    @property
    def mode(self) -> str:
        return EXACT if isinstance(self._phase, Fraction) else FLOAT

    @property
    def exact(self) -> bool:
        return isinstance(self._phase, Fraction)

    @classmethod
    def from_complex(cls, z: complex) -> "TorusPoint":
        return cls(cmath.phase(z) / (2 * math.pi))

    def _check(self, other: "TorusPoint") -> None:
        if not isinstance(other, TorusPoint):
            raise TypeError(f"expected TorusPoint, got {type(other).__name__}")
        if self.mode != other.mode:
            raise ModeError(f"cannot combine {self.mode} and {other.mode} phases")

    @classmethod
    def _ratio(cls, num: int, den: int) -> "TorusPoint":
        # integer fast path for exact arithmetic
        obj = object.__new__(cls)
        obj._phase = Fraction(num % den, den)
        return obj

    def __mul__(self, other: "TorusPoint") -> "TorusPoint":
        self._check(other)
        if self.exact:
            a, b = self._phase, other._phase
            return TorusPoint._ratio(a.numerator * b.denominator + b.numerator * a.denominator,
                                     a.denominator * b.denominator)
        return TorusPoint(self._phase + other._phase)

    def __truediv__(self, other: "TorusPoint") -> "TorusPoint":
        self._check(other)
        if self.exact:
            a, b = self._phase, other._phase
            return TorusPoint._ratio(a.numerator * b.denominator - b.numerator * a.denominator,
                                     a.denominator * b.denominator)
        return TorusPoint(self._phase - other._phase)

    def __pow__(self, e: int) -> "TorusPoint":
        if not isinstance(e, int):
            raise TypeError("torus exponents must be integers")
        if self.exact:
            num, den = self._phase.numerator, self._phase.denominator
            return TorusPoint._ratio(num * (e % den), den)
        # exact product of the stored double with a big integer, rounded once
        return TorusPoint(float(Fraction(self._phase) * e % 1))

    def inverse(self) -> "TorusPoint":
        if self.exact:
            return TorusPoint._ratio(-self._phase.numerator, self._phase.denominator)
        return TorusPoint(-self._phase)

    conjugate = inverse

    def is_one(self) -> bool:
        return self._phase == 0

    @property
    def value(self) -> complex:
        if self.exact:
            return root_of_unity(self._phase.numerator, self._phase.denominator)
        return cmath.exp(2j * math.pi * float(self._phase))

    def __complex__(self) -> complex:
        return self.value

    def __eq__(self, other) -> bool:
        if not isinstance(other, TorusPoint):
            return NotImplemented
        return self.mode == other.mode and self._phase == other._phase

    def __hash__(self) -> int:
        return hash((self.mode, self._phase))

    def __repr__(self) -> str:
        return f"TorusPoint({format_phase(self._phase)})"

    def to_json(self):
        if self.exact:
            return [str(self._phase.numerator), str(self._phase.denominator)]
        return self._phase

    @classmethod
    def from_json(cls, obj) -> "TorusPoint":
        if isinstance(obj, list):
            num, den = obj
            return cls(Fraction(int(num), int(den)))
        if isinstance(obj, (int, float)) and not isinstance(obj, bool):
            return cls(float(obj))
        raise ValueError(f"bad phase encoding {obj!r}")


def torus_mul(a: TorusPoint, b: TorusPoint) -> TorusPoint:
    return a * b


def torus_product(points: Sequence[TorusPoint], exponents: Sequence[int]) -> TorusPoint:
    """prod points[i] ** exponents[i], one reduction in exact mode."""
    if points and all(p.exact for p in points):
        den = math.lcm(*(p.phase.denominator for p in points))
        num = sum(p.phase.numerator * (den // p.phase.denominator) * e for p, e in zip(points, exponents))
        return TorusPoint._ratio(num, den)
    acc = None
    for p, e in zip(points, exponents):
        acc = p**e if acc is None else acc * p**e
    return acc if acc is not None else TorusPoint(0)


def torus_pow(a: TorusPoint, e: int) -> TorusPoint:
    return a**e


def format_phase(phase: Phase) -> str:
    if isinstance(phase, Fraction):
        return str(phase)
    return repr(phase)


_FRACTION_RE = re.compile(r"^\s*([+-]?\d+)\s*/\s*(\d+)\s*$")
_INT_RE = re.compile(r"^\s*[+-]?\d+\s*$")


def parse_phase(text: str) -> Union[Fraction, float, int]:
    """Parse ``"num/den"`` (exact), a decimal (float) or a bare integer.

    Bare integers are mode-neutral and come back as ``int``.
    """
    m = _FRACTION_RE.match(text)
    if m:
        den = int(m.group(2))
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(m.group(1)), den)
    if _INT_RE.match(text):
        return int(text)
    try:
        return float(text)
    except ValueError:
        raise ValueError(f"cannot parse phase {text!r}") from None


def infer_mode(values: Iterable) -> str | None:
    """Return the single mode implied by ``values`` (None if all neutral)."""
    modes = set()
    for v in values:
        if isinstance(v, TorusPoint):
            modes.add(v.mode)
        elif isinstance(v, float):
            modes.add(FLOAT)
        elif isinstance(v, Fraction) and v.denominator != 1:
            modes.add(EXACT)
    if len(modes) > 1:
        raise ModeError("exact and float phases mixed in one input")
    return modes.pop() if modes else None


def to_torus(value, mode: str) -> TorusPoint:
    """Coerce a phase-like value into a TorusPoint of the given mode."""
    if isinstance(value, TorusPoint):
        if value.mode != mode:
            raise ModeError(f"expected {mode} phase, got {value.mode}")
        return value
    if isinstance(value, str):
        value = parse_phase(value)
    if mode == EXACT:
        if isinstance(value, float):
            raise ModeError(f"float phase {value!r} in exact mode")
        return TorusPoint(Fraction(value))
    if isinstance(value, Fraction) and value.denominator != 1:
        raise ModeError(f"exact phase {value} in float mode")
    return TorusPoint(float(value))


def coerce_phases(values: Iterable, mode: str | None = None) -> list[TorusPoint]:
    values = [parse_phase(v) if isinstance(v, str) else v for v in values]
    inferred = infer_mode(values)
    if mode is None:
        mode = inferred or EXACT
    elif inferred is not None and inferred != mode:
        raise ModeError(f"{inferred} phases given in {mode} mode")
    return [to_torus(v, mode) for v in values]
