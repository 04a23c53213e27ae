import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frobkit import toric
from frobkit.errors import PseudoReflection, ValidationError
from frobkit.rings import registry_ring


def test_class_groups(A1, quadric):
    assert str(toric.class_group(A1)) == "Z/2"
    assert str(toric.class_group(quadric)) == "Z"
    assert toric.order_of(A1, toric.class_of(A1, (0, 1))) == 2
    assert toric.order_of(quadric, toric.class_of(quadric, (1, 0, 0, 0))) == float("inf")
    assert str(toric.class_group(toric.polynomial_ring(3, 2))) == "0"


def test_cyclic_quotient_matches_A1(A1):
    R = toric.cyclic_quotient_ring(2, 2, (1, 1), 3)
    assert toric.class_group(R) == toric.class_group(A1)
    assert str(toric.class_group(toric.cyclic_quotient_ring(2, 5, (1, 2), 3))) == "Z/5"


def test_cyclic_quotient_pseudo_reflection():
    with pytest.raises(PseudoReflection):
        toric.cyclic_quotient_ring(2, 4, (2, 1), 3)


def test_cyclic_quotient_warns_when_p_divides_d():
    with pytest.warns(UserWarning):
        toric.cyclic_quotient_ring(2, 2, (1, 1), 2)


def test_prime_checked():
    with pytest.raises(ValidationError):
        toric.make_ring([[0, 1], [2, -1]], 4)


@pytest.mark.parametrize("name,p", [("A1", 3), ("quadric3", 2), ("cyclic3_1-1", 2)])
def test_linear_equivalence_invariance(name, p):
    R = registry_ring(name, p)
    rng = random.Random(7)
    for _ in range(100):
        a = [rng.randint(-4, 4) for _ in range(R.r)]
        u = [rng.randint(-4, 4) for _ in range(R.n)]
        shifted = [x + y for x, y in zip(a, R.div(u))]
        assert toric.class_of(R, shifted) == toric.class_of(R, a)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_group_laws(data):
    R = registry_ring(data.draw(st.sampled_from(["A1", "quadric3", "cyclic5_1-2"])), 3)
    vec = st.lists(st.integers(-5, 5), min_size=R.r, max_size=R.r)
    a, b, c = (toric.class_of(R, data.draw(vec)) for _ in range(3))
    T = lambda x, y: toric.tensor_class(R, x, y)  # noqa: E731
    zero = toric.trivial_class(R)
    assert T(a, b) == T(b, a)
    assert T(T(a, b), c) == T(a, T(b, c))
    assert T(a, zero) == a
    assert T(a, toric.dual_class(R, a)) == zero
    assert toric.hom_class(R, a, b) == T(toric.dual_class(R, a), b)
    assert toric.class_of(R, toric.representative(R, a)) == a


def test_make_class_roundtrip(quadric):
    for k in range(-3, 4):
        c = toric.make_class(quadric, [k])
        assert c.free_part == (k,)
        assert toric.class_of(quadric, toric.representative(quadric, c)) == c


def test_gorenstein_examples(A1, quadric):
    assert toric.canonical_class(A1) == toric.trivial_class(A1)
    assert toric.canonical_class(quadric) == toric.trivial_class(quadric)


def _translate_exists(R, a, b, window, search):
    P = set(toric.module_degrees(R, a, window))
    inner = tuple((lo + search, hi - search) for lo, hi in window)
    core_a = {u for u in P if all(lo <= x <= hi for x, (lo, hi) in zip(u, inner))}
    Q = set(toric.module_degrees(R, b, window))
    import itertools
    for t in itertools.product(range(-search, search + 1), repeat=R.n):
        if all(tuple(x + y for x, y in zip(u, t)) in Q for u in core_a) and all(
            tuple(x - y for x, y in zip(w, t)) in P
            for w in Q if all(lo <= x - y <= hi for x, y, (lo, hi) in zip(w, t, inner))
        ):
            return True
    return False


def test_isomorphism_proxy(quadric):
    window = ((-5, 5),) * 3
    a = (0, 0, 0, 0)
    same = tuple(x + y for x, y in zip(a, quadric.div((1, -1, 2))))
    assert _translate_exists(quadric, a, same, window, 3)
    assert not _translate_exists(quadric, a, (1, 0, 0, 0), window, 3)
