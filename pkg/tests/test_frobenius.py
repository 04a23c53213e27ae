import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frobkit import frobenius, toric
from frobkit.errors import CapExceeded, InsufficientData
from frobkit.frobenius import FrobeniusLevel
from frobkit.rings import registry_ring
import oracles

A1_A = (5, 41, 365, 3281)  # (q^2 + 1) / 2, frozen from oracles.splitting_number
QUADRIC_A = (6, 44, 344, 2736, 21856, 174784)  # (2q^3 + q) / 3
QUADRIC_B1 = (1, 10, 84, 680, 5456, 43680)  # (q^3 - q) / 6


def test_frozen_values_agree_with_oracle():
    for e, v in enumerate(A1_A[:3], 1):
        assert oracles.splitting_number(oracles.A1, 3**e) == v
    for e, v in enumerate(QUADRIC_A[:3], 1):
        assert oracles.splitting_number(oracles.QUADRIC, 2**e) == v
        assert oracles.multiplicity(oracles.QUADRIC, [0] * 4, [1, 0, 0, 0], 2**e) == QUADRIC_B1[e - 1]


def test_splitting_numbers(A1, quadric):
    assert frobenius.splitting_numbers(A1, 4).a_e == A1_A
    assert frobenius.splitting_numbers(quadric, 6).a_e == QUADRIC_A


@pytest.mark.parametrize("name,p,e", [("A1", 3, 2), ("A1", 2, 3), ("quadric3", 2, 2), ("quadric3", 3, 1), ("cyclic5_1-2", 2, 2)])
def test_decomposition_matches_polytope_oracle(name, p, e):
    R = registry_ring(name, p)
    rng = random.Random(11)
    a = [rng.randint(-2, 2) for _ in range(R.r)]
    D = frobenius.decompose_pushforward(R, a, FrobeniusLevel(p, e))
    for c, m in D.counts.items():
        assert oracles.multiplicity(R.cone.V, a, toric.representative(R, c), p**e) == m
    assert D.total == p ** (e * R.n)


def test_level_zero_is_identity(quadric):
    D = frobenius.decompose_pushforward(quadric, (1, 0, 0, 0), FrobeniusLevel(2, 0))
    assert D.counts == {toric.class_of(quadric, (1, 0, 0, 0)): 1}


def test_cap(quadric, monkeypatch):
    with pytest.raises(CapExceeded):
        frobenius.decompose_pushforward(quadric, (0,) * 4, FrobeniusLevel(2, 4), cap=100)
    monkeypatch.setenv("FROBKIT_CAP", "64")
    with pytest.raises(CapExceeded):
        frobenius.decompose_pushforward(quadric, (0,) * 4, FrobeniusLevel(2, 3))


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_representative_independence(data):
    R = registry_ring(data.draw(st.sampled_from(["A1", "quadric3"])), 2)
    a = data.draw(st.lists(st.integers(-3, 3), min_size=R.r, max_size=R.r))
    u = data.draw(st.lists(st.integers(-3, 3), min_size=R.n, max_size=R.n))
    e = data.draw(st.integers(1, 2))
    b = [x + y for x, y in zip(a, R.div(u))]
    lv = FrobeniusLevel(2, e)
    assert frobenius.decompose_pushforward(R, a, lv).counts == frobenius.decompose_pushforward(R, b, lv).counts


@settings(max_examples=20, deadline=None)
@given(st.data())
def test_hilbert_consistency(data):
    R = registry_ring(data.draw(st.sampled_from(["A1", "quadric3", "cyclic3_1-1"])), 2)
    a = data.draw(st.lists(st.integers(-2, 2), min_size=R.r, max_size=R.r))
    direct, via = frobenius.hilbert_consistency(R, a, data.draw(st.sampled_from([2, 4])), data.draw(st.integers(1, 4)))
    assert direct == via


def test_ft_decisions(A1, quadric):
    nt = toric.class_of(A1, (0, 1))
    r = frobenius.ft_test(A1, nt)
    assert r.is_ft and (r.pre_period, r.period) == (0, 1)
    r2 = frobenius.ft_test(A1.with_p(2), nt)
    assert r2.is_ft and r2.orbit[1] == toric.trivial_class(A1)
    assert not frobenius.ft_test(quadric, toric.make_class(quadric, [1])).is_ft


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_ft_closure_and_periodicity(data):
    R = registry_ring(data.draw(st.sampled_from(["A1", "cyclic5_1-2", "quadric3", "cyclic4_1-1"])), 3)
    vec = st.lists(st.integers(-4, 4), min_size=R.r, max_size=R.r)
    a, b = toric.class_of(R, data.draw(vec)), toric.class_of(R, data.draw(vec))
    ra, rb = frobenius.ft_test(R, a), frobenius.ft_test(R, b)
    if ra.is_ft and rb.is_ft:
        assert frobenius.ft_test(R, toric.tensor_class(R, a, b)).is_ft
    if ra.is_ft:
        assert frobenius.ft_test(R, toric.dual_class(R, a)).is_ft
        e, f = ra.pre_period, ra.period
        assert frobenius.twist_class(R, a, e) == frobenius.twist_class(R, a, e + f)


def test_ft_classes_closed_under_sums_of_summands(A1):
    # every summand of a pushforward of an FT module is FT
    for a in ((0, 0), (0, 1), (1, 3)):
        D = frobenius.decompose_pushforward(A1, a, FrobeniusLevel(3, 2))
        assert all(frobenius.ft_test(A1, c).is_ft for c in D.counts)


@pytest.mark.parametrize("name,p,a,e,f", [("A1", 3, (0, 1), 1, 2), ("quadric3", 2, (1, 0, -1, 0), 2, 1), ("cyclic3_1-1", 2, (0, 1), 1, 1)])
def test_index_shift(name, p, a, e, f):
    assert frobenius.index_shift_check(registry_ring(name, p), a, e, f)


def test_abundance(quadric, A1):
    zero = (0,) * 4
    for k, want in ((1, "abundant"), (-1, "abundant"), (2, "not_abundant"), (-2, "not_abundant")):
        ab = frobenius.abundance_test(quadric, zero, toric.make_class(quadric, [k]), 6)
        assert ab.verdict == want
        if abs(k) == 1:
            assert ab.b_e == QUADRIC_B1
    ab = frobenius.abundance_test(A1, (0, 0), toric.class_of(A1, (0, 1)), 4)
    assert ab.b_e == tuple((9**e - 1) // 2 for e in range(1, 5)) and ab.verdict == "abundant"


def test_abundance_verdict_edges():
    qs = (2, 4, 8, 16)
    assert frobenius.abundance_verdict((0, 0, 0, 0), qs)[0] == "not_abundant"
    assert frobenius.abundance_verdict((1, 3, 3, 3), qs)[0] == "not_abundant"
    assert frobenius.abundance_verdict((1, 5, 9, 2), qs)[0] == "inconclusive"
    assert frobenius.abundance_verdict((1,), qs[:1])[0] == "inconclusive"


def test_sdim_and_depth_bound(A1, quadric):
    v = frobenius.estimate_sdim(frobenius.splitting_numbers(A1, 4))
    assert v.sdim == 2 and v.confident
    assert frobenius.estimate_sdim(frobenius.splitting_numbers(quadric, 6)).sdim == 3
    qs = tuple(2**e for e in range(1, 7))
    assert frobenius.depth_bound_from_abundance(3, 0, QUADRIC_B1, qs) == 3
    assert frobenius.depth_bound_from_abundance(3, 0, (0,) * 6, qs) == frobenius.NO_BOUND
    with pytest.raises(InsufficientData):
        frobenius.depth_bound_from_abundance(3, 0, (), ())
