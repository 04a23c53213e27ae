"""Exact integer linear algebra over Z.

Convention used everywhere in frobkit: a matrix ``A`` with ``rows`` rows and
``cols`` columns acts on column vectors, ``x -> A @ x``, so its cokernel is
``Z^rows / A Z^cols``.  Matrices are tuples of tuples of Python ints.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

Matrix = tuple[tuple[int, ...], ...]


def as_matrix(rows: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Matrix:
    m = tuple(tuple(int(x) for x in row) for row in rows)
    widths = {len(r) for r in m}
    if len(widths) > 1:
        raise ValueError("ragged matrix")
    if ncols is not None and m and len(m[0]) != ncols:
        raise ValueError("column count mismatch")
    return m


def shape(A: Matrix, ncols: Optional[int] = None) -> tuple[int, int]:
    if not A:
        return 0, (ncols or 0)
    return len(A), len(A[0])


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def zeros(r: int, c: int) -> Matrix:
    return tuple((0,) * c for _ in range(r))


def matmul(A: Matrix, B: Matrix) -> Matrix:
    Bt = list(zip(*B)) if B else []
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in Bt) for row in A)


def matvec(A: Matrix, x: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(a * b for a, b in zip(row, x)) for row in A)


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A)) if A else ()


def det(A: Matrix) -> int:
    """Bareiss fraction-free determinant."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rank(A: Matrix) -> int:
    return smith_normal_form(A).rank


@dataclass(frozen=True)
class SmithForm:
    """``U @ A @ V == D`` with U, V unimodular; ``Uinv`` is the inverse of U."""

    D: Matrix
    U: Matrix
    V: Matrix
    Uinv: Matrix
    rank: int

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0)))


@dataclass(frozen=True)
class CokernelInvariants:
    free_rank: int
    torsion: tuple[int, ...]

    def __str__(self) -> str:
        parts = [f"Z/{t}" for t in self.torsion]
        if self.free_rank:
            parts.insert(0, "Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def smith_normal_form(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> SmithForm:
    """Smith normal form by repeated smallest-pivot elimination.

    Pivots are chosen as the entry of smallest absolute value in the remaining
    block, ties broken by row-major position, so U and V are reproducible.
    ``ncols`` is only needed for matrices with zero rows.
    """
    A = as_matrix(A)
    m, n = shape(A, ncols)
    D = [list(r) for r in A]
    U = [list(r) for r in identity(m)]
    Uinv = [list(r) for r in identity(m)]
    V = [list(r) for r in identity(n)]

    def row_op(i: int, j: int, c: int) -> None:
        # row_i += c * row_j
        if c == 0:
            return
        D[i] = [x + c * y for x, y in zip(D[i], D[j])]
        U[i] = [x + c * y for x, y in zip(U[i], U[j])]
        for row in Uinv:
            row[j] -= c * row[i]

    def col_op(i: int, j: int, c: int) -> None:
        # col_i += c * col_j
        if c == 0:
            return
        for row in D:
            row[i] += c * row[j]
        for row in V:
            row[i] += c * row[j]

    def swap_rows(i: int, j: int) -> None:
        if i != j:
            D[i], D[j] = D[j], D[i]
            U[i], U[j] = U[j], U[i]
            for row in Uinv:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i: int, j: int) -> None:
        if i != j:
            for M in (D, V):
                for row in M:
                    row[i], row[j] = row[j], row[i]

    def negate_row(i: int) -> None:
        D[i] = [-x for x in D[i]]
        U[i] = [-x for x in U[i]]
        for row in Uinv:
            row[i] = -row[i]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = D[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    row_op(i, t, -(D[i][t] // p))
                    if D[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if D[t][j]:
                    col_op(j, t, -(D[t][j] // p))
                    if D[t][j]:
                        dirty = True
            if not dirty:
                # pivot must divide the whole remaining block
                bad = next(
                    ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                row_op(t, bad[0], 1)
                continue
            cands = [(abs(D[i][t]), i, t) for i in range(t, m) if D[i][t]]
            cands += [(abs(D[t][j]), t, j) for j in range(t, n) if D[t][j]]
            _, i, j = min(cands)
            swap_rows(t, i)
            swap_cols(t, j)
        if D[t][t] < 0:
            negate_row(t)
        t += 1

    return SmithForm(
        D=as_matrix(D),
        U=as_matrix(U),
        V=as_matrix(V),
        Uinv=as_matrix(Uinv),
        rank=t,
    )


def cokernel_invariants(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> CokernelInvariants:
    """Invariants of ``Z^rows / A Z^cols``."""
    A = as_matrix(A)
    m, _ = shape(A, ncols)
    snf = smith_normal_form(A, ncols)
    diag = snf.diagonal[: snf.rank]
    return CokernelInvariants(free_rank=m - snf.rank, torsion=tuple(d for d in diag if d > 1))


def _check_len(A: Matrix, c: Sequence[int], ncols: Optional[int]) -> None:
    m, _ = shape(A, ncols)
    if len(c) != m:
        raise ValueError(f"vector has length {len(c)}, expected {m}")


def solve_in_image(
    A: Sequence[Sequence[int]], c: Sequence[int], ncols: Optional[int] = None, snf: Optional[SmithForm] = None
) -> Optional[tuple[int, ...]]:
    """Some integer x with ``A @ x == c``, or None when c is not in the image."""
    A = as_matrix(A)
    _check_len(A, c, ncols)
    m, n = shape(A, ncols)
    snf = snf or smith_normal_form(A, ncols)
    y = matvec(snf.U, c)
    z = [0] * n
    for i in range(m):
        d = snf.D[i][i] if i < snf.rank else 0
        if d == 0:
            if y[i] != 0:
                return None
        elif y[i] % d:
            return None
        else:
            z[i] = y[i] // d
    return matvec(snf.V, z) if n else ()


def is_torsion_in_cokernel(
    A: Sequence[Sequence[int]], c: Sequence[int], ncols: Optional[int] = None, snf: Optional[SmithForm] = None
) -> bool:
    """True iff some positive multiple of c lies in ``A Z^cols``."""
    A = as_matrix(A)
    _check_len(A, c, ncols)
    snf = snf or smith_normal_form(A, ncols)
    y = matvec(snf.U, c)
    return all(v == 0 for v in y[snf.rank:])


def kernel_basis(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Matrix:
    """Columns of the returned matrix form a Z-basis of ``{x : A @ x == 0}``."""
    A = as_matrix(A)
    _, n = shape(A, ncols)
    snf = smith_normal_form(A, ncols)
    cols = [tuple(snf.V[i][j] for i in range(n)) for j in range(snf.rank, n)]
    return transpose(tuple(cols)) if cols else tuple(() for _ in range(n))
