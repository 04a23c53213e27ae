"""Normal toric rings ``R = k[C ∩ Z^n]`` over ``F_p`` and their divisor class groups.

A coefficient vector ``a`` of length r (one entry per facet) stands for the
divisorial module ``M_a = span{x^u : <u, v_i> >= a_i}``.  Its isomorphism class
is the image of ``a`` in ``Cl(R) = Z^r / V Z^n``; classes are stored in the
coordinates given by the Smith form of V.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from . import cone as cones
from . import lattice
from .errors import PseudoReflection, ValidationError


@dataclass(frozen=True, order=True)
class DivClass:
    free_part: tuple[int, ...]
    torsion_part: tuple[int, ...]

    def __str__(self) -> str:
        parts = [str(x) for x in self.free_part] + [f"{t}" for t in self.torsion_part]
        return "(" + ", ".join(parts) + ")"

    def as_list(self) -> list[int]:
        return list(self.free_part) + list(self.torsion_part)


@dataclass(frozen=True)
class ToricRing:
    cone: cones.Cone
    p: int
    name: str = ""
    alpha: int = 0  # log_p [k : k^p]; zero for the finite field F_p

    def __post_init__(self):
        if self.p < 2 or any(self.p % k == 0 for k in range(2, math.isqrt(self.p) + 1)):
            raise ValidationError(f"p = {self.p} is not prime")

    @property
    def n(self) -> int:
        return self.cone.n

    @property
    def r(self) -> int:
        return self.cone.r

    @property
    def class_presentation(self) -> lattice.Matrix:
        """Columns are div(e_j); this is V itself under the column convention."""
        return self.cone.V

    @cached_property
    def smith(self) -> lattice.SmithForm:
        return lattice.smith_normal_form(self.cone.V)

    @cached_property
    def invariants_of_Cl(self) -> lattice.CokernelInvariants:
        return lattice.cokernel_invariants(self.cone.V)

    @cached_property
    def _torsion_slots(self) -> tuple[tuple[int, int], ...]:
        d = self.smith.diagonal
        return tuple((i, d[i]) for i in range(self.smith.rank) if d[i] > 1)

    @cached_property
    def faces(self) -> cones.FaceLattice:
        return cones.enumerate_faces(self.cone)

    def div(self, u: Sequence[int]) -> tuple[int, ...]:
        return lattice.matvec(self.cone.V, u)

    def with_p(self, p: int) -> "ToricRing":
        return ToricRing(cone=self.cone, p=p, name=self.name, alpha=self.alpha)


def make_ring(V: Sequence[Sequence[int]], p: int, name: str = "") -> ToricRing:
    return ToricRing(cone=cones.validate(V), p=p, name=name)


def polynomial_ring(n: int, p: int) -> ToricRing:
    return make_ring(lattice.identity(n), p, name=f"poly{n}")


def class_group(R: ToricRing) -> lattice.CokernelInvariants:
    return R.invariants_of_Cl


def class_of(R: ToricRing, a: Sequence[int]) -> DivClass:
    if len(a) != R.r:
        raise ValueError(f"coefficient vector has length {len(a)}, expected {R.r}")
    y = lattice.matvec(R.smith.U, a)
    return DivClass(
        free_part=tuple(y[R.smith.rank:]),
        torsion_part=tuple(y[i] % d for i, d in R._torsion_slots),
    )


def trivial_class(R: ToricRing) -> DivClass:
    return DivClass((0,) * R.invariants_of_Cl.free_rank, (0,) * len(R._torsion_slots))


def make_class(R: ToricRing, coords: Sequence[int]) -> DivClass:
    """Class from SNF coordinates: free entries first, then torsion residues."""
    f = R.invariants_of_Cl.free_rank
    if len(coords) != f + len(R._torsion_slots):
        raise ValueError(f"class needs {f} free and {len(R._torsion_slots)} torsion coordinates")
    return DivClass(
        tuple(coords[:f]),
        tuple(c % d for c, (_, d) in zip(coords[f:], R._torsion_slots)),
    )


def _from_coords(R: ToricRing, free: Sequence[int], torsion: Sequence[int]) -> DivClass:
    return DivClass(tuple(free), tuple(t % d for t, (_, d) in zip(torsion, R._torsion_slots)))


def tensor_class(R: ToricRing, a: DivClass, b: DivClass) -> DivClass:
    return _from_coords(
        R,
        [x + y for x, y in zip(a.free_part, b.free_part)],
        [x + y for x, y in zip(a.torsion_part, b.torsion_part)],
    )


def scale_class(R: ToricRing, a: DivClass, k: int) -> DivClass:
    return _from_coords(R, [k * x for x in a.free_part], [k * x for x in a.torsion_part])


def dual_class(R: ToricRing, a: DivClass) -> DivClass:
    return scale_class(R, a, -1)


def hom_class(R: ToricRing, a: DivClass, b: DivClass) -> DivClass:
    """Class of Hom(M_a, M_b), i.e. b - a."""
    return tensor_class(R, dual_class(R, a), b)


def canonical_class(R: ToricRing) -> DivClass:
    return class_of(R, (1,) * R.r)


def order_of(R: ToricRing, c: DivClass) -> float | int:
    if any(c.free_part):
        return math.inf
    order = 1
    for t, (_, d) in zip(c.torsion_part, R._torsion_slots):
        order = math.lcm(order, d // math.gcd(d, t))
    return order


def is_torsion(R: ToricRing, c: DivClass) -> bool:
    return not any(c.free_part)


def representative(R: ToricRing, c: DivClass) -> tuple[int, ...]:
    """A short coefficient vector in the class c (greedy l1 reduction by principal divisors)."""
    y = [0] * R.r
    for (i, _), t in zip(R._torsion_slots, c.torsion_part):
        y[i] = t
    y[R.smith.rank:] = c.free_part
    a = list(lattice.matvec(R.smith.Uinv, y))
    cols = [tuple(R.cone.V[i][j] for i in range(R.r)) for j in range(R.n)]
    moves = cols + [tuple(-x for x in col) for col in cols]
    norm = sum(map(abs, a))
    improved = True
    while improved:
        improved = False
        for m in moves:
            cand = [x + y for x, y in zip(a, m)]
            cn = sum(map(abs, cand))
            if cn < norm:
                a, norm, improved = cand, cn, True
    assert class_of(R, a) == c
    return tuple(a)


def module_degrees(R: ToricRing, a: Sequence[int], window: cones.Box) -> list[tuple[int, ...]]:
    return cones.lattice_points_shifted(R.cone, a, window)


def cyclic_quotient_ring(n: int, d: int, weights: Sequence[int], p: int, name: str = "") -> ToricRing:
    """Invariant ring of Z/d acting on k[x_1..x_n] with the given weights.

    The character lattice is ``{u : sum w_i u_i = 0 mod d}``; the cone is the
    positive orthant rewritten in a basis of that lattice.
    """
    if len(weights) != n or d < 1:
        raise ValidationError("need n weights and d >= 1")
    for i in range(n):
        others = [weights[j] for j in range(n) if j != i]
        if math.gcd(d, *others) != 1:
            raise PseudoReflection(f"gcd(d, w_j : j != {i + 1}) != 1; the action has pseudo-reflections")
    if d % p == 0:
        warnings.warn(f"p = {p} divides the group order {d}", stacklevel=2)
    K = lattice.kernel_basis([list(weights) + [-d]])
    B = K[:n]  # columns: a basis of the invariant character lattice
    R = make_ring(B, p, name=name or f"1/{d}({','.join(map(str, weights))})")
    expected = lattice.CokernelInvariants(0, (d,) if d > 1 else ())
    if R.invariants_of_Cl != expected:
        raise AssertionError(f"class group {R.invariants_of_Cl} is not Z/{d}")
    return R
