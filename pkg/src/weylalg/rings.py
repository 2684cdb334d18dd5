"""Additive characters of finite commutative rings composed with polynomials.

The ring is ``Z/N1 x ... x Z/Nd``.  For a character chi and a polynomial q
over the ring, ``t -> chi(q(t))`` satisfies

    chi(q(t + s)) = chi(q(t)) * chi((q(t + s) - q(t)))

and ``t -> q(t + s) - q(t)`` has lower degree, so repeated differencing
certifies membership in F_{deg q}.  On a finite ring every enveloping operator
is a translation, which makes the check exhaustive over all (t, s).
Infinite rings are out of reach here: their operators are limits along
subsequences that cannot be enumerated.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from weylalg.torus import TorusPoint

Element = tuple[int, ...]


@dataclass(frozen=True)
class RingSpec:
    moduli: tuple[int, ...]

    def __post_init__(self):
        if not self.moduli or any(n < 1 for n in self.moduli):
            raise ValueError("moduli must be positive integers")
        object.__setattr__(self, "moduli", tuple(int(n) for n in self.moduli))

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    @property
    def zero(self) -> Element:
        return tuple(0 for _ in self.moduli)

    @property
    def one(self) -> Element:
        return tuple(1 % n for n in self.moduli)

    def embed(self, k: int) -> Element:
        return tuple(k % n for n in self.moduli)

    def element(self, value) -> Element:
        if isinstance(value, int):
            return self.embed(value)
        value = tuple(value)
        if len(value) != len(self.moduli):
            raise ValueError(f"element {value} has wrong arity for {self.moduli}")
        return tuple(v % n for v, n in zip(value, self.moduli))

    def add(self, x: Element, y: Element) -> Element:
        return tuple((a + b) % n for a, b, n in zip(x, y, self.moduli))

    def sub(self, x: Element, y: Element) -> Element:
        return tuple((a - b) % n for a, b, n in zip(x, y, self.moduli))

    def mul(self, x: Element, y: Element) -> Element:
        return tuple(a * b % n for a, b, n in zip(x, y, self.moduli))

    def scale(self, k: int, x: Element) -> Element:
        return tuple(k * a % n for a, n in zip(x, self.moduli))

    def power(self, x: Element, e: int) -> Element:
        return tuple(pow(a, e, n) for a, n in zip(x, self.moduli))

    def elements(self) -> list[Element]:
        return list(itertools.product(*(range(n) for n in self.moduli)))

    def element_array(self) -> np.ndarray:
        """All elements as an (order, d) int64 array, lexicographic order."""
        grids = np.meshgrid(*(np.arange(n) for n in self.moduli), indexing="ij")
        return np.stack([g.ravel() for g in grids], axis=1).astype(np.int64)

    def index_of(self, arr: np.ndarray) -> np.ndarray:
        """Lexicographic indices of the rows of an (m, d) element array."""
        idx = np.zeros(arr.shape[0], dtype=np.int64)
        for j, n in enumerate(self.moduli):
            idx = idx * n + arr[:, j]
        return idx


@dataclass(frozen=True)
class Character:
    """chi_a(x) = exp(2 pi i sum a_j x_j / N_j)."""

    ring: RingSpec
    weights: Element

    def __post_init__(self):
        object.__setattr__(self, "weights", self.ring.element(self.weights))

    @property
    def modulus(self) -> int:
        """Common denominator L of all character phases."""
        return math.lcm(*self.ring.moduli)

    def phase(self, x: Element) -> Fraction:
        return sum((Fraction(a * b, n) for a, b, n in zip(self.weights, x, self.ring.moduli)),
                   Fraction(0)) % 1

    def __call__(self, x: Element) -> TorusPoint:
        return TorusPoint(self.phase(x))

    def int_phases(self, arr: np.ndarray) -> np.ndarray:
        """Phases times L (exact integers mod L) for an element array."""
        L = self.modulus
        out = np.zeros(arr.shape[0], dtype=np.int64)
        for j, (a, n) in enumerate(zip(self.weights, self.ring.moduli)):
            out = (out + (a * (L // n) % L) * (arr[:, j] % n)) % L
        return out


class RingPolynomial:
    """q(t) = sum c_i t**i with coefficients in a RingSpec."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: RingSpec, coeffs: Iterable):
        cs = [ring.element(c) for c in coeffs] or [ring.zero]
        while len(cs) > 1 and cs[-1] == ring.zero:
            cs.pop()
        self.ring = ring
        self.coeffs: tuple[Element, ...] = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_constant(self) -> bool:
        return self.degree == 0

    def __call__(self, t: Element) -> Element:
        acc = self.ring.zero
        for c in reversed(self.coeffs):
            acc = self.ring.add(self.ring.mul(acc, t), c)
        return acc

    def evaluate_array(self, arr: np.ndarray) -> np.ndarray:
        out = np.zeros_like(arr)
        mods = np.array(self.ring.moduli, dtype=np.int64)
        for c in reversed(self.coeffs):
            out = (out * arr + np.array(c, dtype=np.int64)) % mods
        return out

    def shift(self, s: Element) -> "RingPolynomial":
        """q(t + s) by binomial expansion."""
        R, k = self.ring, self.degree
        out = []
        for j in range(k + 1):
            acc = R.zero
            for i in range(j, k + 1):
                term = R.scale(math.comb(i, j), R.mul(R.power(s, i - j), self.coeffs[i]))
                acc = R.add(acc, term)
            out.append(acc)
        return RingPolynomial(R, out)

    def __add__(self, other: "RingPolynomial") -> "RingPolynomial":
        R = self.ring
        width = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [R.zero] * (width - len(self.coeffs))
        b = list(other.coeffs) + [R.zero] * (width - len(other.coeffs))
        return RingPolynomial(R, [R.add(x, y) for x, y in zip(a, b)])

    def __sub__(self, other: "RingPolynomial") -> "RingPolynomial":
        R = self.ring
        return self + RingPolynomial(R, [R.sub(R.zero, c) for c in other.coeffs])

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingPolynomial):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.ring, self.coeffs))

    def __repr__(self) -> str:
        return f"RingPolynomial({self.ring.moduli}, {list(self.coeffs)})"

    def to_json(self) -> list:
        if len(self.ring.moduli) == 1:
            return [c[0] for c in self.coeffs]
        return [list(c) for c in self.coeffs]


def char_poly_fn(chi: Character, q: RingPolynomial) -> dict[Element, TorusPoint]:
    """Exact table of t -> chi(q(t)) over the whole ring."""
    return {t: chi(q(t)) for t in q.ring.elements()}


def cocycle_reduce(q: RingPolynomial, s: Element) -> RingPolynomial:
    """t -> q(t + s) - q(t); degree drops by at least one for deg q >= 1."""
    d = q.shift(s) - q
    if q.degree >= 1 and d.degree >= q.degree:
        raise ArithmeticError("leading terms failed to cancel")
    return d


@dataclass
class LinkReplay:
    level: int
    degree: int
    pairs_checked: int
    degree_drops: bool
    failure: dict | None = None

    @property
    def passed(self) -> bool:
        return self.degree_drops and self.failure is None

    def to_json(self) -> dict:
        return {"level": self.level, "degree": self.degree, "pairs_checked": self.pairs_checked,
                "degree_drops": self.degree_drops, "passed": self.passed, "failure": self.failure}


@dataclass
class RingCertificate:
    character: Character
    chain: list[RingPolynomial]
    shifts: list[Element]
    replays: list[LinkReplay] = field(default_factory=list)

    @property
    def depth(self) -> int:
        return self.chain[0].degree

    @property
    def passed(self) -> bool:
        return self.chain[-1].is_constant() and all(r.passed for r in self.replays)

    def to_json(self) -> dict:
        return {
            "moduli": list(self.character.ring.moduli),
            "character": list(self.character.weights),
            "depth": self.depth,
            "chain": [p.to_json() for p in self.chain],
            "shifts": [list(s) for s in self.shifts],
            "replay": [r.to_json() for r in self.replays],
            "passed": self.passed,
            "note": "finite ring: every enveloping operator is a translation, replay is exhaustive",
        }


def replay_link(chi: Character, q: RingPolynomial, level: int = 0) -> LinkReplay:
    """Check chi(q(t+s)) = chi(q(t)) chi(Delta_s q(t)) for all (t, s) and that every Delta_s drops degree."""
    R = q.ring
    T = R.element_array()
    f = chi.int_phases(q.evaluate_array(T))
    L = chi.modulus
    mods = np.array(R.moduli, dtype=np.int64)
    drops = True
    failure = None
    for s_idx, s in enumerate(R.elements()):
        d = cocycle_reduce(q, s)
        if q.degree >= 1 and d.degree >= q.degree:
            drops = False
        shifted = R.index_of((T + np.array(s, dtype=np.int64)) % mods)
        fs = chi.int_phases(d.evaluate_array(T))
        bad = np.nonzero((f[shifted] - f - fs) % L)[0]
        if len(bad) and failure is None:
            t = tuple(int(x) for x in T[bad[0]])
            failure = {"t": list(t), "s": list(s)}
    return LinkReplay(level, q.degree, R.order**2, drops, failure)


def certify_ring(chi: Character, q: RingPolynomial, shift: Element | None = None,
                 replay: bool = True) -> RingCertificate:
    """Differencing chain q, Delta_s q, ... down to a constant, with exhaustive replay."""
    R = q.ring
    s = R.one if shift is None else R.element(shift)
    chain, shifts = [q], []
    while not chain[-1].is_constant():
        nxt = cocycle_reduce(chain[-1], s)
        if nxt.degree >= chain[-1].degree:
            raise ArithmeticError("differencing did not lower the degree")
        chain.append(nxt)
        shifts.append(s)
    cert = RingCertificate(chi, chain, shifts)
    if replay:
        cert.replays = [replay_link(chi, link, level) for level, link in enumerate(chain)]
    return cert


def additivity_failure(chi: Character, block: int = 512) -> tuple[Element, Element] | None:
    """First (x, y) with chi(x + y) != chi(x) chi(y), scanning R x R in blocks."""
    R = chi.ring
    T = R.element_array()
    L = chi.modulus
    ph = chi.int_phases(T).astype(np.int64 if L >= 1 << 30 else np.int32)
    strides = np.cumprod((R.moduli[1:] + (1,))[::-1])[::-1]
    cols = [T[:, j].astype(np.int32) for j in range(len(R.moduli))]
    for start in range(0, len(T), block):
        stop = min(start + block, len(T))
        idx = np.zeros((stop - start, len(T)), dtype=np.int32)
        for col, n, stride in zip(cols, R.moduli, strides):
            s = col[start:stop, None] + col[None, :]
            s -= n * (s >= n)  # components are already reduced, one subtraction suffices
            idx += s * np.int32(stride)
        d = ph[idx] - ph[start:stop, None] - ph[None, :]
        # phases lie in [0, L), so d is 0 mod L exactly when d is 0 or -L
        bad = np.argwhere((d != 0) & (d != -L))
        if len(bad):
            i, j = bad[0]
            return tuple(int(v) for v in T[start + i]), tuple(int(v) for v in T[j])
    return None


def parse_ring_args(moduli: str, weights: str, poly: str) -> tuple[Character, RingPolynomial]:
    """Parse CLI strings: ``"12"`` / ``"4,3"``, ``"5"``, ``"2,0,0,1"`` (c0..ck).

    Polynomial coefficients are integers embedded diagonally, or ``;``-separated
    tuples like ``"1:2;0:1"`` for product rings.
    """
    R = RingSpec(tuple(int(x) for x in moduli.split(",")))
    w = [int(x) for x in weights.split(",")]
    chi = Character(R, tuple(w) if len(w) > 1 else R.embed(w[0]))
    if ";" in poly or ":" in poly:
        coeffs = [tuple(int(v) for v in c.split(":")) for c in poly.split(";")]
        coeffs = [R.element(c if len(c) > 1 else c[0]) for c in coeffs]
    else:
        coeffs = [R.embed(int(x)) for x in poly.split(",")]
    return chi, RingPolynomial(R, coeffs)
