"""Exact dense linear algebra over the coefficient field (rows are lists)."""

from __future__ import annotations

from typing import List, Sequence, Tuple

Matrix = List[List[object]]


def rref(rows: Sequence[Sequence]) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    M = [list(r) for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(M)) if M[i][c]), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        inv = 1 / M[r][c]
        M[r] = [v * inv for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[0])


def nullspace(rows: Sequence[Sequence], ncols: int, one=1) -> Matrix:
    """Basis of {v : M v = 0}, one vector per free column."""
    R, pivots = rref(rows) if rows else ([], [])
    zero = one - one
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        out.append(v)
    return out


def matvec(M: Sequence[Sequence], v: Sequence, zero=0) -> List:
    return [sum((a * b for a, b in zip(row, v)), zero) for row in M]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence], zero=0) -> Matrix:
    cols = list(zip(*B)) if B else []
    return [[sum((a * b for a, b in zip(row, col)), zero) for col in cols] for row in A]


def inverse(M: Sequence[Sequence], one=1) -> Matrix:
    n = len(M)
    zero = one - one
    aug = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(M)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in R]


def complement(rows: Sequence[Sequence], dim: int, one=1) -> Matrix:
    """Unit vectors, taken greedily in index order, completing ``rows`` to a basis."""
    zero = one - one
    basis = [list(r) for r in rows]
    out = []
    for i in range(dim):
        e = [zero] * dim
        e[i] = one
        if rank(basis + [e]) > len(basis):
            basis.append(e)
            out.append(e)
        if len(basis) == dim:
            break
    return out


def prescribe(vectors: Sequence[Sequence], values: Sequence[Sequence], one=1) -> Matrix:
    """The matrix M with M v_j = values_j for a basis v_1..v_d of the source."""
    # V has the v_j as rows; each output row m solves V m = t, so m = V^{-1} t
    inv = inverse([list(v) for v in vectors], one)
    zero = one - one
    width = len(values[0]) if values else 0
    d = len(inv)
    M = []
    for k in range(width):
        t = [val[k] for val in values]
        M.append([sum((inv[i][j] * t[j] for j in range(d)), zero) for i in range(d)])
    return M
