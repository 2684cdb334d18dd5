"""Finite semigroups given by multiplication tables.

For a finite discrete semigroup every function is continuous and the
enveloping operators are exactly the right translations ``R_t f(s) = f(st)``,
so the hierarchy F_k is computable with no approximation:

* :func:`solve_f1` propagates ``f(st) = c_t f(s)`` over a spanning forest of
  the right Cayley graph and solves the leftover cycle conditions on the
  eigenvalues ``c_t`` exactly (integer Smith form over the torus).
* :func:`solve_fk` iterates the definition with annihilator lattices:
  F_k = {f : A_{k-1} (R_t f - f) = 0 mod 1 for all t}, starting from the
  constants.

Families are reported as free torus parameters plus finite torsion
generators; phases are exact rationals throughout.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from weylalg._lattice import row_basis, torus_solutions

DEFAULT_DEPTH_LIMIT = 3


class NonAssociativeError(ValueError):
    def __init__(self, witness: tuple[int, int, int]):
        s, t, u = witness
        super().__init__(f"table is not associative: ({s}*{t})*{u} != {s}*({t}*{u})")
        self.witness = witness


class DepthLimitError(ValueError):
    pass


class FiniteSemigroup:
    """Semigroup on {0..N-1} with ``table[s][t] = s*t``."""

    def __init__(self, table: Sequence[Sequence[int]], labels: Sequence[str] | None = None,
                 check: bool = True):
        T = np.asarray(table, dtype=np.int64)
        if T.ndim != 2 or T.shape[0] != T.shape[1] or T.shape[0] == 0:
            raise ValueError("multiplication table must be a non-empty square array")
        N = T.shape[0]
        if T.min() < 0 or T.max() >= N:
            raise ValueError("table entries must be element indices 0..N-1")
        self.table = T
        self.labels = list(labels) if labels is not None else [str(i) for i in range(N)]
        if len(self.labels) != N:
            raise ValueError("label count does not match table size")
        if check:
            witness = associativity_witness(T)
            if witness is not None:
                raise NonAssociativeError(witness)

    @property
    def size(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.size

    def mul(self, s: int, t: int) -> int:
        return int(self.table[s, t])

    def triples(self) -> list[tuple[int, int, int]]:
        N = self.size
        return [(s, t, int(self.table[s, t])) for s in range(N) for t in range(N)]

    def idempotents(self) -> list[int]:
        return [e for e in range(self.size) if self.table[e, e] == e]

    def is_commutative(self) -> bool:
        return bool((self.table == self.table.T).all())

    def identity(self) -> int | None:
        idx = np.arange(self.size)
        for e in range(self.size):
            if (self.table[e] == idx).all() and (self.table[:, e] == idx).all():
                return e
        return None

    def is_group(self) -> bool:
        # every row and column a permutation, plus associativity
        idx = np.arange(self.size)
        rows = all((np.sort(r) == idx).all() for r in self.table)
        cols = all((np.sort(c) == idx).all() for c in self.table.T)
        return rows and cols and self.identity() is not None

    # constructors

    @classmethod
    def right_zero(cls, n: int) -> "FiniteSemigroup":
        return cls([[t for t in range(n)] for _ in range(n)])

    @classmethod
    def left_zero(cls, n: int) -> "FiniteSemigroup":
        return cls([[s] * n for s in range(n)])

    @classmethod
    def cyclic(cls, n: int) -> "FiniteSemigroup":
        return cls([[(s + t) % n for t in range(n)] for s in range(n)])

    @classmethod
    def abelian(cls, orders: Sequence[int]) -> "FiniteSemigroup":
        """Z/n1 x ... x Z/nd, elements in lexicographic order."""
        elems = list(itertools.product(*(range(n) for n in orders))) or [()]
        index = {e: i for i, e in enumerate(elems)}
        table = [[index[tuple((a + b) % n for a, b, n in zip(x, y, orders))] for y in elems]
                 for x in elems]
        labels = [",".join(map(str, e)) or "e" for e in elems]
        return cls(table, labels)

    @classmethod
    def from_text(cls, text: str) -> "FiniteSemigroup":
        labels = None
        lines = []
        for raw in text.splitlines():
            line = raw.strip()
            if line.lower().startswith("labels:"):
                labels = line.split(":", 1)[1].split()
                continue
            line = line.split("#", 1)[0].strip()
            if line:
                lines.append(line)
        if not lines:
            raise ValueError("empty table file")
        n = int(lines[0])
        rows = [[int(x) for x in line.replace(",", " ").split()] for line in lines[1:]]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"expected {n} rows of {n} entries")
        return cls(rows, labels)

    @classmethod
    def load(cls, path) -> "FiniteSemigroup":
        return cls.from_text(Path(path).read_text())

    def to_text(self) -> str:
        out = []
        if self.labels != [str(i) for i in range(self.size)]:
            out.append("labels: " + " ".join(self.labels))
        out.append(str(self.size))
        out += [" ".join(str(int(x)) for x in row) for row in self.table]
        return "\n".join(out) + "\n"


def associativity_witness(T: np.ndarray) -> tuple[int, int, int] | None:
    N = T.shape[0]
    idx = np.arange(N)
    left = T[T[:, :, None], idx[None, None, :]]   # (s t) u
    right = T[idx[:, None, None], T[None, :, :]]  # s (t u)
    bad = np.argwhere(left != right)
    if len(bad):
        s, t, u = bad[0]
        return int(s), int(t), int(u)
    return None


def _frac_vec(v: Iterable) -> list[Fraction]:
    return [Fraction(x) % 1 for x in v]


@dataclass
class F1Solution:
    """F_1 family: f = sum_j theta_j * free_j + sum_i k_i * torsion_i (phases mod 1).

    Vectors have length 2N: the first N entries are f(s), the last N the
    eigenvalues c_t with R_t f = c_t f.
    """

    size: int
    free: list[list[int]]
    torsion: list[tuple[list[Fraction], int]]
    components: list[list[int]]
    translations: list[int]

    @property
    def dimension(self) -> int:
        """Number of free torus parameters."""
        return len(self.free)

    @property
    def function_dimension(self) -> int:
        """Rank of the free generators restricted to the function values."""
        if not self.free:
            return 0
        return int(np.linalg.matrix_rank(np.array([g[:self.size] for g in self.free], dtype=float)))

    @property
    def torsion_orders(self) -> list[int]:
        return [d for _, d in self.torsion]

    def point(self, thetas: Sequence = (), ks: Sequence[int] = ()) -> tuple[list[Fraction], list[Fraction]]:
        """Solution with free parameters ``thetas`` and torsion multiplicities ``ks``."""
        thetas = list(thetas) + [0] * (len(self.free) - len(thetas))
        ks = list(ks) + [0] * (len(self.torsion) - len(ks))
        x = [Fraction(0)] * (2 * self.size)
        for th, g in zip(thetas, self.free):
            x = [a + Fraction(th) * b for a, b in zip(x, g)]
        for k, (h, _) in zip(ks, self.torsion):
            x = [a + k * b for a, b in zip(x, h)]
        x = _frac_vec(x)
        return x[:self.size], x[self.size:]

    def random_point(self, rng: random.Random, max_den: int = 12):
        thetas = [Fraction(rng.randrange(max_den), max_den) for _ in self.free]
        ks = [rng.randrange(d) for _, d in self.torsion]
        return self.point(thetas, ks)

    def normalized(self, limit: int = 100_000) -> list[list[Fraction]]:
        """All solutions with zero free parameters, sorted (the torsion part)."""
        count = math.prod(self.torsion_orders)
        if count > limit:
            raise ValueError(f"{count} torsion solutions exceed the enumeration limit")
        out = {tuple(self.point((), ks)[0]) for ks in itertools.product(*(range(d) for d in self.torsion_orders))}
        return [list(f) for f in sorted(out)]

    def is_constants_only(self) -> bool:
        if self.torsion or len(self.free) != 1:
            return False
        g = self.free[0]
        f, c = g[:self.size], g[self.size:]
        return len(set(f)) == 1 and f[0] != 0 and not any(c[t] for t in self.translations)

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "dimension": self.dimension,
            "function_dimension": self.function_dimension,
            "constants_only": self.is_constants_only(),
            "free": [{"f": g[:self.size], "c": g[self.size:]} for g in self.free],
            "torsion": [{"order": d,
                         "f": [str(x) for x in h[:self.size]],
                         "c": [str(x) for x in h[self.size:]]} for h, d in self.torsion],
            "components": self.components,
        }


def solve_f1_constraints(n: int, triples: Sequence[tuple[int, int, int]]) -> F1Solution:
    """Solve f(u) = c_t f(s) for every triple (s, t, u) with u = s*t.

    ``triples`` may cover only part of a table (windowed infinite monoids).
    """
    adj: dict[int, list[tuple[int, int, int]]] = {s: [] for s in range(n)}
    for s, t, u in triples:
        adj[s].append((u, t, +1))
        adj[u].append((s, t, -1))
    for s in adj:
        adj[s].sort()
    # expr[s]: integer combination of the c_t giving f(s) - f(root(s))
    expr: dict[int, list[int]] = {}
    components = []
    for root in range(n):
        if root in expr:
            continue
        expr[root] = [0] * n
        comp = [root]
        queue = deque([root])
        while queue:
            s = queue.popleft()
            for u, t, sign in adj[s]:
                if u not in expr:
                    e = list(expr[s])
                    e[t] += sign
                    expr[u] = e
                    comp.append(u)
                    queue.append(u)
        components.append(sorted(comp))
    cycles = []
    for s, t, u in triples:
        row = [a - b for a, b in zip(expr[u], expr[s])]
        row[t] -= 1
        if any(row):
            cycles.append(row)
    c_free, c_torsion = torus_solutions(cycles, n)

    free = []
    for comp in components:
        members = set(comp)
        free.append([int(s in members) for s in range(n)] + [0] * n)
    for g in c_free:
        free.append([sum(a * b for a, b in zip(expr[s], g)) for s in range(n)] + list(g))
    torsion = []
    for h, d in c_torsion:
        phi = [sum(a * b for a, b in zip(expr[s], h)) for s in range(n)]
        torsion.append((_frac_vec(phi + list(h)), d))
    translations = sorted({t for _, t, _ in triples})
    return F1Solution(n, free, torsion, components, translations)


def solve_f1(S: FiniteSemigroup) -> F1Solution:
    return solve_f1_constraints(S.size, S.triples())


def check_f1_point(S: FiniteSemigroup, f: Sequence[Fraction], c: Sequence[Fraction]):
    """First (s, t) with f(st) != c_t f(s), or None."""
    for s, t, u in S.triples():
        if (f[u] - c[t] - f[s]) % 1 != 0:
            return s, t
    return None


@dataclass
class IdempotentCheck:
    idempotent: int
    passed: bool
    witness: str | None = None

    def to_json(self) -> dict:
        return {"idempotent": self.idempotent, "passed": self.passed, "witness": self.witness}


@dataclass
class IdempotentReport:
    checks: list[IdempotentCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"passed": self.passed, "checks": [c.to_json() for c in self.checks]}


def idempotent_fixed_check(S: FiniteSemigroup, sol: F1Solution | None = None) -> IdempotentReport:
    """R_e f = f (c_e = 1) for every idempotent e and every generator of the family."""
    sol = sol if sol is not None else solve_f1(S)
    N = S.size
    report = IdempotentReport()
    for e in S.idempotents():
        witness = None
        for j, g in enumerate(sol.free):
            if g[N + e] != 0:
                witness = f"free generator {j} has c_e = theta*{g[N + e]}"
                break
        if witness is None:
            for j, (h, d) in enumerate(sol.torsion):
                if h[N + e] % 1 != 0:
                    witness = f"torsion generator {j} (order {d}) has c_e = {h[N + e]}"
                    break
        if witness is None:
            # direct replay: f(s e) == f(s) on a generic member
            f, _ = sol.random_point(random.Random(e))
            bad = next((s for s in range(N) if f[S.mul(s, e)] != f[s]), None)
            if bad is not None:
                witness = f"f({bad}*{e}) != f({bad})"
        report.checks.append(IdempotentCheck(e, witness is None, witness))
    return report


@dataclass
class FkFamily:
    """Level-k family: functions phi with A phi = 0 mod 1, parametrized as free + torsion."""

    level: int
    size: int
    annihilator: list[list[int]]
    free: list[list[int]]
    torsion: list[tuple[list[Fraction], int]]
    nesting_verified: bool = False

    @property
    def dimension(self) -> int:
        return len(self.free)

    @property
    def torsion_orders(self) -> list[int]:
        return [d for _, d in self.torsion]

    def contains(self, phi: Sequence) -> bool:
        return all(sum(a * Fraction(x) for a, x in zip(row, phi)) % 1 == 0 for row in self.annihilator)

    def generators(self) -> list[list[Fraction]]:
        """Free generators scaled by a generic rational plus torsion generators."""
        gens = [_frac_vec(Fraction(x, 7) for x in g) for g in self.free]
        gens += [list(h) for h, _ in self.torsion]
        return gens

    def point(self, thetas: Sequence = (), ks: Sequence[int] = ()) -> list[Fraction]:
        thetas = list(thetas) + [0] * (len(self.free) - len(thetas))
        ks = list(ks) + [0] * (len(self.torsion) - len(ks))
        x = [Fraction(0)] * self.size
        for th, g in zip(thetas, self.free):
            x = [a + Fraction(th) * b for a, b in zip(x, g)]
        for k, (h, _) in zip(ks, self.torsion):
            x = [a + k * b for a, b in zip(x, h)]
        return _frac_vec(x)

    def normalized(self, limit: int = 100_000) -> list[list[Fraction]]:
        count = math.prod(self.torsion_orders)
        if count > limit:
            raise ValueError(f"{count} torsion solutions exceed the enumeration limit")
        out = {tuple(self.point((), ks)) for ks in itertools.product(*(range(d) for d in self.torsion_orders))}
        return [list(f) for f in sorted(out)]

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "size": self.size,
            "dimension": self.dimension,
            "torsion_orders": self.torsion_orders,
            "nesting_verified": self.nesting_verified,
            "free": self.free,
            "torsion": [{"order": d, "f": [str(x) for x in h]} for h, d in self.torsion],
            "annihilator": self.annihilator,
        }


def _constants_annihilator(n: int) -> list[list[int]]:
    return [[-1 if j == 0 else int(j == s) for j in range(n)] for s in range(1, n)]


def _next_annihilator(S: FiniteSemigroup, A: list[list[int]]) -> list[list[int]]:
    # rows a (P_t - I) with (P_t phi)(s) = phi(s t)
    N = S.size
    rows = []
    for t in range(N):
        col = S.table[:, t]
        for a in A:
            r = [-x for x in a]
            for s in range(N):
                r[int(col[s])] += a[s]
            rows.append(r)
    return row_basis(rows, N)


def annihilators(S: FiniteSemigroup, k: int) -> list[list[list[int]]]:
    """Annihilator bases A_0 .. A_k (A_0 cuts out the constants)."""
    out = [row_basis(_constants_annihilator(S.size), S.size)]
    for _ in range(k):
        out.append(_next_annihilator(S, out[-1]))
    return out


def solve_fk(S: FiniteSemigroup, k: int, depth_limit: int = DEFAULT_DEPTH_LIMIT) -> FkFamily:
    if k < 1:
        raise ValueError("level must be at least 1")
    if k > depth_limit:
        raise DepthLimitError(f"level {k} exceeds the depth limit {depth_limit}")
    chain = annihilators(S, k + 1)
    families = []
    for level in range(k + 1):
        free, torsion = torus_solutions(chain[level], S.size)
        families.append(FkFamily(level, S.size, chain[level], free, torsion))
    nested = all(
        all(families[j + 1].contains(g) for g in families[j].generators())
        for j in range(k)
    )
    # the level-(k+1) annihilator checks F_k inside F_{k+1}
    top = FkFamily(k + 1, S.size, chain[k + 1], [], [])
    nested = nested and all(top.contains(g) for g in families[k].generators())
    result = families[k]
    result.nesting_verified = nested
    return result


def characters(G: FiniteSemigroup) -> list[list[Fraction]]:
    """Characters of a finite abelian group as exact phase vectors."""
    if not G.is_group() or not G.is_commutative():
        raise ValueError("character computations need an abelian group table")
    e = G.identity()
    sol = solve_f1(G)
    chars = {tuple((x - f[e]) % 1 for x in f) for f in sol.normalized()}
    return [list(c) for c in sorted(chars)]


def _primes_1_mod(d: int, count: int, start: int = 10**6):
    k = max(1, start // d)
    found = 0
    while found < count:
        p = k * d + 1
        k += 1
        if p > 2 and all(p % q for q in range(2, math.isqrt(p) + 1)):
            found += 1
            yield p


def _root_of_unity(p: int, d: int) -> int:
    """Element of exact multiplicative order d in F_p (d divides p-1)."""
    prime_factors = [q for q in range(2, d + 1) if d % q == 0 and all(q % r for r in range(2, q))]
    for a in range(2, p):
        h = pow(a, (p - 1) // d, p)
        if all(pow(h, d // q, p) != 1 for q in prime_factors):
            return h
    raise ArithmeticError("no root of unity found")


def _rank_mod_p(M: list[list[int]], p: int) -> int:
    A = [row[:] for row in M]
    rank, cols = 0, len(A[0]) if A else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(A)) if A[r][c] % p), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][c], -1, p)
        A[rank] = [x * inv % p for x in A[rank]]
        for r in range(len(A)):
            if r != rank and A[r][c] % p:
                q = A[r][c]
                A[r] = [(x - q * y) % p for x, y in zip(A[r], A[rank])]
        rank += 1
    return rank


def exact_character_rank(chars: Sequence[Sequence[Fraction]], primes: int = 3) -> int:
    """Rank of the character matrix via reduction into F_p, p = 1 mod D.

    Sending a primitive D-th root of unity to one in F_p is a ring map from
    Z[zeta_D], so the F_p rank never exceeds the complex rank; the maximum over
    a few primes is the exact rank whenever it reaches the matrix size.
    """
    if not chars:
        return 0
    D = 1
    for row in chars:
        for x in row:
            D = math.lcm(D, Fraction(x).denominator)
    best = 0
    for p in _primes_1_mod(D, primes):
        h = _root_of_unity(p, D) if D > 1 else 1
        M = [[pow(h, int(Fraction(x) * D) % D, p) for x in row] for row in chars]
        best = max(best, _rank_mod_p(M, p))
    return best


def character_span_dimension(G: FiniteSemigroup) -> int:
    chars = characters(G)
    rank = exact_character_rank(chars)
    numeric = np.linalg.matrix_rank(
        np.exp(2j * np.pi * np.array([[float(x) for x in row] for row in chars])), tol=1e-8)
    if rank == len(chars) and numeric != rank:
        raise ArithmeticError(f"exact rank {rank} disagrees with numerical rank {numeric}")
    return rank
