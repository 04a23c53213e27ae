import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frobkit import cone
from frobkit.errors import BoundTooSmall, CapExceeded, NotFullDimensional, NotPointed, RedundantFacet
from oracles import A1, QUADRIC


def test_rays_of_A1_and_quadric():
    assert sorted(cone.validate(A1).rays) == [(1, 0), (1, 2)]
    assert len(cone.validate(QUADRIC).rays) == 4


def test_validation_errors():
    with pytest.raises(NotFullDimensional):
        cone.validate([[1, 0], [-1, 0]])
    with pytest.raises(NotPointed):
        cone.validate([[1, 0, 0], [0, 1, 0]])
    with pytest.raises(RedundantFacet):
        cone.validate([[1, 0], [0, 1], [1, 1]])
    with pytest.raises(RedundantFacet):
        cone.validate([[1, 0], [0, 1], [1, 0]])


def test_non_primitive_rows_are_normalized():
    with pytest.warns(UserWarning):
        C = cone.validate([[2, 0], [0, 3]])
    assert C.V == ((1, 0), (0, 1))


@pytest.mark.parametrize("V", [A1, QUADRIC, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]])
def test_face_lattice_graded(V):
    L = cone.enumerate_faces(cone.validate(V))
    n = len(V[0])
    assert len(L.by_dim(0)) == 1 and len(L.by_dim(n)) == 1
    for f in L.faces:
        if f.dim < n:
            assert any(g.dim == f.dim + 1 and set(f.rays) < set(g.rays) for g in L.faces)


def test_face_cap():
    V = [[1 if j == i else 0 for j in range(17)] for i in range(17)]
    with pytest.raises(CapExceeded):
        cone.enumerate_faces(cone.validate(V))


def test_hilbert_basis_known():
    assert cone.hilbert_basis(cone.validate(A1), 2) == [(1, 0), (1, 1), (1, 2)]
    assert len(cone.hilbert_basis(cone.validate(QUADRIC), 2)) == 4
    assert len(cone.hilbert_basis(cone.validate([[0, 1], [5, -2]]), 4)) >= 3


def test_hilbert_basis_minimal():
    C = cone.validate([[0, 1], [3, -1]])
    H = cone.hilbert_basis(C, 4)
    sums = {tuple(x + y for x, y in zip(a, b)) for a in H for b in H}
    assert not set(H) & sums


def test_hilbert_bound_too_small():
    with pytest.raises(BoundTooSmall):
        cone.hilbert_basis(cone.validate([[0, 1], [1, 2]]), 1)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4), st.lists(st.integers(0, 2), min_size=4, max_size=4))
def test_shifted_points_monotone(a, bump):
    C = cone.validate(QUADRIC)
    window = ((-3, 3),) * 3
    b = [x + y for x, y in zip(a, bump)]
    big = set(cone.lattice_points_shifted(C, a, window))
    small = set(cone.lattice_points_shifted(C, b, window))
    assert small <= big
    assert cone.count_points_shifted(C, a, window) == len(big)


def test_points_match_brute_force():
    C = cone.validate(A1)
    a = (1, -2)
    brute = [u for u in itertools.product(range(-4, 5), repeat=2)
             if all(sum(x * y for x, y in zip(v, u)) >= ai for v, ai in zip(A1, a))]
    assert sorted(cone.lattice_points_shifted(C, a, ((-4, 4),) * 2)) == sorted(brute)
