"""The bicyclic monoid <p, q | pq = 1> and its explicit F_1 / F_2 families.

Elements are normal forms ``q**m p**n`` stored as ``BicyclicElement(m, n)``.
Functions in the families depend only on ``r = m - n``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from weylalg.finsgp import F1Solution, solve_f1_constraints
from weylalg.torus import TorusPoint, torus_product


class BicyclicElement(NamedTuple):
    m: int  # power of q
    n: int  # power of p

    def __mul__(self, other: "BicyclicElement") -> "BicyclicElement":  # type: ignore[override]
        return bc_mul(self, other)

    @property
    def r(self) -> int:
        return self.m - self.n

    def word(self) -> str:
        return "q" * self.m + "p" * self.n


ONE = BicyclicElement(0, 0)
P = BicyclicElement(0, 1)
Q = BicyclicElement(1, 0)


def bc_mul(a: BicyclicElement, b: BicyclicElement) -> BicyclicElement:
    # q^a.m p^a.n q^b.m p^b.n: the middle p^a.n q^b.m cancels t = min(a.n, b.m) pairs
    t = min(a.n, b.m)
    return BicyclicElement(a.m + b.m - t, a.n + b.n - t)


def element(m: int, n: int) -> BicyclicElement:
    if m < 0 or n < 0:
        raise ValueError("normal-form exponents must be non-negative")
    return BicyclicElement(m, n)


def left_translate(s: BicyclicElement, x: BicyclicElement) -> BicyclicElement:
    return bc_mul(s, x)


def right_translate(s: BicyclicElement, x: BicyclicElement) -> BicyclicElement:
    return bc_mul(x, s)


def window(size: int) -> list[BicyclicElement]:
    return [BicyclicElement(m, n) for m in range(size + 1) for n in range(size + 1)]


@dataclass(frozen=True)
class BicyclicF1:
    """f(q^m p^n) = mu**r * nu**(1 - r)."""

    mu: TorusPoint
    nu: TorusPoint

    def __call__(self, x: BicyclicElement) -> TorusPoint:
        r = x.m - x.n
        return torus_product((self.mu, self.nu), (r, 1 - r))

    def as_f2(self) -> "BicyclicF2":
        """The same function inside the F_2 family: lam = nu**2 / mu."""
        return BicyclicF2(self.nu**2 / self.mu, self.mu, self.nu)


@dataclass(frozen=True)
class BicyclicF2:
    """f(q^m p^n) = lam**((r^2-r)/2) * mu**((r^2+r)/2) * nu**(1-r^2)."""

    lam: TorusPoint
    mu: TorusPoint
    nu: TorusPoint

    def __call__(self, x: BicyclicElement) -> TorusPoint:
        r = x.m - x.n
        return torus_product((self.lam, self.mu, self.nu), ((r * r - r) // 2, (r * r + r) // 2, 1 - r * r))

    def cocycle_partners(self) -> tuple[BicyclicF1, BicyclicF1]:
        return f2_cocycle_partners(self)


def f1_eval(f: BicyclicF1, x: BicyclicElement) -> TorusPoint:
    return f(x)


def f2_eval(f: BicyclicF2, x: BicyclicElement) -> TorusPoint:
    return f(x)


def f2_cocycle_partners(f: BicyclicF2) -> tuple[BicyclicF1, BicyclicF1]:
    """(f_p, f_q) in F_1 with f(x p) = f_p(x) f(x) and f(x q) = f_q(x) f(x)."""
    fp_, fq_, f1_ = f(P), f(Q), f(ONE)
    f_p = BicyclicF1(mu=fq_.inverse() * f1_, nu=fp_ / f1_)
    f_q = BicyclicF1(mu=fp_ * fq_**2 * f1_**-3, nu=fq_ / f1_)
    return f_p, f_q


def lemma5_check(f: BicyclicF1, tol: float = 1e-12) -> bool:
    """f(p) f(q) == f(1)**2; exact equality in exact mode."""
    lhs, rhs = f(P) * f(Q), f(ONE) ** 2
    if lhs.exact:
        return lhs == rhs
    return abs(lhs.value - rhs.value) <= tol


@dataclass
class CollapseReport:
    relation: str | None
    window: int
    elements: int
    classes: int
    solution: F1Solution
    class_of: dict[BicyclicElement, int] = field(repr=False, default_factory=dict)
    note: str = ("window of normal forms q^m p^n with m, n <= W; products leaving the "
                 "window are ignored, so this is evidence rather than proof")

    @property
    def function_dimension(self) -> int:
        return self.solution.function_dimension

    @property
    def constants_only(self) -> bool:
        return self.solution.is_constants_only()

    def forced_equal(self) -> bool:
        """Every solution has f(p) = f(1) = f(q)."""
        a, b, c = (self.class_of[x] for x in (P, ONE, Q))
        # free generators scale by arbitrary theta: compare integer coefficients
        free_ok = all(g[a] == g[b] == g[c] for g in self.solution.free)
        torsion_ok = all(Fraction(h[a] - h[b]) % 1 == 0 == Fraction(h[b] - h[c]) % 1
                         for h, _ in self.solution.torsion)
        return free_ok and torsion_ok

    def matches_f1_family(self, trials: int = 5) -> bool:
        """Random solutions agree with mu**r nu**(1-r), mu = f(q), nu = f(1)."""
        rng = random.Random(0)
        for _ in range(trials):
            f, _ = self.solution.random_point(rng)
            fam = BicyclicF1(TorusPoint(f[self.class_of[Q]]), TorusPoint(f[self.class_of[ONE]]))
            if any(TorusPoint(f[c]) != fam(x) for x, c in self.class_of.items()):
                return False
        return True

    def to_json(self) -> dict:
        return {
            "relation": self.relation,
            "window": self.window,
            "elements": self.elements,
            "classes": self.classes,
            "function_dimension": self.function_dimension,
            "torsion_orders": self.solution.torsion_orders,
            "constants_only": self.constants_only,
            "forced_f_p_eq_f_1_eq_f_q": self.forced_equal(),
            "note": self.note,
        }


_RELATIONS = {
    "p": (BicyclicElement(0, 2), P),
    "q": (BicyclicElement(2, 0), Q),
    None: None,
}


def idempotent_collapse(which: str | None, size: int = 6) -> CollapseReport:
    """Solve F_1 on a window of the bicyclic monoid with p^2 = p (or q^2 = q) imposed.

    The relation is closed into a congruence on the window (products leaving
    the window are skipped), then f(xt) = c_t f(x) is solved on the classes.
    ``which=None`` imposes nothing and should recover the (mu, nu) family.
    """
    if which not in _RELATIONS:
        raise ValueError("relation must be 'p', 'q' or None")
    elems = window(size)
    index = {x: i for i, x in enumerate(elems)}
    parent = list(range(len(elems)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    pending = []
    if _RELATIONS[which] is not None:
        a, b = _RELATIONS[which]
        pending.append((index[a], index[b]))
    members = {i: [i] for i in range(len(elems))}
    while pending:
        i, j = pending.pop()
        ri, rj = find(i), find(j)
        if ri == rj:
            continue
        if ri > rj:
            ri, rj = rj, ri
        parent[rj] = ri
        # congruence: x ~ y implies xz ~ yz and zx ~ zy for generators z
        for x in members[ri]:
            for y in members[rj]:
                for z in (P, Q):
                    for u, v in ((elems[x] * z, elems[y] * z), (z * elems[x], z * elems[y])):
                        if u in index and v in index:
                            pending.append((index[u], index[v]))
        members[ri] += members.pop(rj)

    roots = sorted({find(i) for i in range(len(elems))})
    cls = {r: c for c, r in enumerate(roots)}
    class_of = {x: cls[find(i)] for i, x in enumerate(elems)}
    triples = sorted({(class_of[x], class_of[t], class_of[x * t])
                      for x in elems for t in elems if x * t in index})
    sol = solve_f1_constraints(len(roots), triples)
    return CollapseReport(which, size, len(elems), len(roots), sol, class_of)
