"""Integer lattice reductions for solving A x = 0 (mod 1) over the torus."""

from __future__ import annotations

from fractions import Fraction

Matrix = list[list[int]]


def row_basis(rows: Matrix, ncols: int) -> Matrix:
    """Echelon basis of the Z-lattice spanned by ``rows`` (integer row operations)."""
    A = [list(r) for r in rows if any(r)]
    basis = []
    col = 0
    while A and col < ncols:
        active = [r for r in A if r[col] != 0]
        rest = [r for r in A if r[col] == 0]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                if r[col] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            active = nxt
        if active:
            piv = active[0]
            if piv[col] < 0:
                piv = [-a for a in piv]
            basis.append(piv)
        A = rest
        col += 1
    # reduce entries above each pivot to keep numbers small
    for i, row in enumerate(basis):
        c = next(j for j, v in enumerate(row) if v)
        for k in range(i):
            q = basis[k][c] // row[c]
            if q:
                basis[k] = [a - q * b for a, b in zip(basis[k], row)]
    return basis


def smith(rows: Matrix, ncols: int) -> tuple[list[int], Matrix]:
    """Smith form of an integer matrix: returns (diagonal, V) with U A V = diag.

    Only the column transform V (unimodular, ncols x ncols) is tracked; it is
    all that is needed to parametrize solutions of A x = 0 mod 1 as x = V y.
    """
    A = [list(r) for r in rows]
    m, n = len(A), ncols
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for row in A:
            row[dst] -= q * row[src]
        for row in V:
            row[dst] -= q * row[src]

    diag = []
    t = 0
    while t < min(m, n):
        entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        A[t], A[i] = A[i], A[t]
        swap_cols(t, j)
        while True:
            piv = A[t][t]
            changed = False
            for i in range(t + 1, m):
                q = A[i][t] // piv
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
            for j in range(t + 1, n):
                q = A[t][j] // piv
                if q:
                    add_col(j, t, q)
            leftovers = [(abs(A[i][t]), i, "r") for i in range(t + 1, m) if A[i][t]]
            leftovers += [(abs(A[t][j]), j, "c") for j in range(t + 1, n) if A[t][j]]
            if leftovers:
                _, idx, kind = min(leftovers)
                if kind == "r":
                    A[t], A[idx] = A[idx], A[t]
                else:
                    swap_cols(t, idx)
                changed = True
            else:
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if A[i][j] % piv), None)
                if bad is not None:
                    A[t] = [a + b for a, b in zip(A[t], A[bad[0]])]
                    changed = True
            if not changed:
                break
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
        diag.append(A[t][t])
        t += 1
    return diag, V


def torus_solutions(rows: Matrix, ncols: int) -> tuple[Matrix, list[tuple[list[Fraction], int]]]:
    """Parametrize {x in T^ncols : A x = 0 mod 1}.

    Returns ``(free, torsion)``: integer vectors g_j such that theta * g_j is a
    solution for every theta, and pairs (h_i, d_i) with h_i a rational vector
    of order d_i > 1.  Every solution is uniquely sum theta_j g_j + sum k_i h_i
    (k_i mod d_i).
    """
    basis = row_basis(rows, ncols)
    diag, V = smith(basis, ncols)
    free = [[V[r][c] for r in range(ncols)] for c in range(len(diag), ncols)]
    torsion = []
    for c, d in enumerate(diag):
        if d > 1:
            torsion.append(([Fraction(V[r][c], d) % 1 for r in range(ncols)], d))
    return free, torsion
