import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frobkit import lattice

small = st.integers(-6, 6)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def test_known_cokernels():
    assert str(lattice.cokernel_invariants([[2, 0], [0, 3]])) == "Z/6"
    assert str(lattice.cokernel_invariants([[0, 1], [2, -1]])) == "Z/2"
    inv = lattice.cokernel_invariants([[1, 0, 0], [0, 1, 0], [-1, 0, 1], [0, -1, 1]])
    assert (inv.free_rank, inv.torsion) == (1, ())


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_smith_form_identity(A):
    S = lattice.smith_normal_form(A)
    assert lattice.matmul(lattice.matmul(S.U, lattice.as_matrix(A)), S.V) == S.D
    assert abs(lattice.det(S.U)) == 1 and abs(lattice.det(S.V)) == 1
    assert lattice.matmul(S.U, S.Uinv) == lattice.identity(len(A))
    d = [x for x in S.diagonal if x]
    assert all(b % a == 0 for a, b in zip(d, d[1:]))
    assert all(S.D[i][j] == 0 for i in range(len(A)) for j in range(len(A[0])) if i != j)


@settings(max_examples=100, deadline=None)
@given(matrices(), st.randoms(use_true_random=False))
def test_cokernel_permutation_invariant(A, rnd):
    base = lattice.cokernel_invariants(A)
    rows = A[:]
    rnd.shuffle(rows)
    perm = list(range(len(A[0])))
    rnd.shuffle(perm)
    B = [[r[j] for j in perm] for r in rows]
    assert lattice.cokernel_invariants(B) == base
    assert lattice.cokernel_invariants([r + [0] for r in A]) == base


@settings(max_examples=100, deadline=None)
@given(matrices(3, 3), st.lists(small, min_size=3, max_size=3))
def test_solve_and_torsion_witness(A, c):
    c = c[: len(A)]
    x = lattice.solve_in_image(A, c)
    if x is not None:
        assert lattice.matvec(lattice.as_matrix(A), x) == tuple(c)
    if lattice.is_torsion_in_cokernel(A, c):
        inv = lattice.cokernel_invariants(A)
        bound = math.prod(inv.torsion) if inv.torsion else 1
        assert any(lattice.solve_in_image(A, [k * v for v in c]) is not None for k in range(1, bound + 1))


def test_kernel_basis():
    K = lattice.kernel_basis([[1, 1, -2]])
    cols = lattice.transpose(K)
    assert len(cols) == 2
    for v in cols:
        assert v[0] + v[1] - 2 * v[2] == 0


def test_zero_and_empty_edges():
    assert lattice.cokernel_invariants([[0, 0], [0, 0]]).free_rank == 2
    assert lattice.rank([[1, 2], [2, 4]]) == 1
    with pytest.raises(ValueError):
        lattice.solve_in_image([[1, 0]], [1, 2])


def test_det_small():
    for rows in itertools.product([-1, 0, 1], repeat=4):
        A = [list(rows[:2]), list(rows[2:])]
        assert lattice.det(A) == A[0][0] * A[1][1] - A[0][1] * A[1][0]
