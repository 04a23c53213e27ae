"""Rational polyhedral cones given by primitive inner facet normals.

A cone is ``C = {u in Q^n : V u >= 0}`` where the rows of ``V`` are the
facet normals.  Everything here is exact: ray enumeration uses integer kernels,
orientations use integer determinants.
"""
from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import lattice
from .errors import BoundTooSmall, CapExceeded, NotFullDimensional, NotPointed, RedundantFacet, ValidationError

MAX_FACETS = 16

Box = Sequence[tuple[int, int]]


def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = math.gcd(*v)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


@dataclass(frozen=True)
class Cone:
    n: int
    V: lattice.Matrix
    rays: tuple[tuple[int, ...], ...]
    interior: tuple[int, ...]
    normalized: bool = False

    @property
    def r(self) -> int:
        return len(self.V)

    def contains(self, u: Sequence[int]) -> bool:
        return all(x >= 0 for x in lattice.matvec(self.V, u))

    def height(self, u: Sequence[int]) -> int:
        """Sum of facet pairings; a positive integer on nonzero lattice points of C."""
        return sum(lattice.matvec(self.V, u))


def _rays(V: lattice.Matrix, n: int) -> list[tuple[int, ...]]:
    found = set()
    for rows in itertools.combinations(range(len(V)), n - 1):
        sub = tuple(V[i] for i in rows)
        K = lattice.kernel_basis(sub, ncols=n)
        if len(K[0]) != 1:
            continue
        k = _primitive([K[i][0] for i in range(n)])
        for cand in (k, tuple(-x for x in k)):
            if all(x >= 0 for x in lattice.matvec(V, cand)):
                found.add(cand)
    return sorted(found)


def _full_dimensional(V: lattice.Matrix) -> bool:
    # V u ranges over the span of a column basis W of V, and {W y >= 0} is pointed.
    cols: list[int] = []
    for j in range(len(V[0])):
        if lattice.rank(tuple(tuple(row[c] for c in cols + [j]) for row in V)) > len(cols):
            cols.append(j)
    W = tuple(tuple(row[c] for c in cols) for row in V)
    rays = _rays(W, len(cols))
    return bool(rays) and lattice.rank(tuple(rays)) == len(cols)


def validate(V: Sequence[Sequence[int]]) -> Cone:
    """Check the facet presentation and return the cone.

    Non-primitive rows are divided by their gcd (``normalized`` is set and a
    warning is issued); every other defect raises.
    """
    V = lattice.as_matrix(V)
    if not V or not V[0]:
        raise ValidationError("need at least one facet normal and n >= 1")
    n = len(V[0])
    rows, normalized = [], False
    for row in V:
        if not any(row):
            raise ValidationError("zero facet normal")
        p = _primitive(row)
        normalized |= p != row
        rows.append(p)
    if normalized:
        warnings.warn("facet normals were not primitive and have been normalized", stacklevel=2)
    V = tuple(rows)
    if not _full_dimensional(V):
        raise NotFullDimensional("cone has empty interior")
    if lattice.rank(V) < n:
        raise NotPointed(f"facet normals have rank {lattice.rank(V)} < {n}")
    rays = _rays(V, n)
    if len(set(V)) < len(V):
        raise RedundantFacet("repeated facet normal")
    for j, v in enumerate(V):
        on = tuple(ray for ray in rays if sum(a * b for a, b in zip(v, ray)) == 0)
        if (lattice.rank(on) if on else 0) != n - 1:
            raise RedundantFacet(f"row {j} {v} does not define a facet")
    interior = tuple(map(sum, zip(*rays)))
    assert all(x > 0 for x in lattice.matvec(V, interior))
    return Cone(n=n, V=V, rays=tuple(rays), interior=interior, normalized=normalized)


# -- faces -----------------------------------------------------------------

@dataclass(frozen=True)
class Face:
    facets: frozenset[int]
    rays: tuple[int, ...]  # indices into cone.rays
    dim: int
    basis: tuple[tuple[int, ...], ...]  # oriented basis of the linear span


@dataclass(frozen=True)
class FaceLattice:
    cone: Cone
    faces: tuple[Face, ...]
    # incidence[k] maps (index of (k+1)-face, index of k-face) -> +-1
    incidence: dict[int, dict[tuple[int, int], int]] = field(default_factory=dict)

    def by_dim(self, k: int) -> list[int]:
        return [i for i, f in enumerate(self.faces) if f.dim == k]


def _oriented_basis(rays: Sequence[tuple[int, ...]]) -> tuple[tuple[int, ...], ...]:
    basis: list[tuple[int, ...]] = []
    for ray in rays:
        if lattice.rank(tuple(basis) + (ray,)) > len(basis):
            basis.append(ray)
    return tuple(basis)


def _incidence_sign(w: Sequence[int], face_basis, span_basis) -> int:
    """Orientation of (w, face_basis) relative to span_basis, both spanning the same space."""
    W = (tuple(w),) + tuple(face_basis)
    G = lattice.matmul(W, lattice.transpose(span_basis))
    d = lattice.det(G)
    if d == 0:
        raise AssertionError("degenerate incidence")
    return 1 if d > 0 else -1


def enumerate_faces(cone: Cone) -> FaceLattice:
    """All faces of the cone with signed incidences between consecutive dimensions.

    Faces are the distinct ray sets cut out by subsets of facets; a face carries
    every facet containing it.
    """
    if cone.r > MAX_FACETS:
        raise CapExceeded(f"{cone.r} facets exceeds the face-enumeration cap of {MAX_FACETS}")
    nr = len(cone.rays)
    on_facet = []
    for v in cone.V:
        mask = 0
        for k, ray in enumerate(cone.rays):
            if sum(a * b for a, b in zip(v, ray)) == 0:
                mask |= 1 << k
        on_facet.append(mask)
    full = (1 << nr) - 1
    masks = {full}
    frontier = [full]
    while frontier:
        nxt = []
        for m in frontier:
            for f in on_facet:
                c = m & f
                if c not in masks:
                    masks.add(c)
                    nxt.append(c)
        frontier = nxt

    faces = []
    for m in masks:
        idx = tuple(k for k in range(nr) if m >> k & 1)
        facets = frozenset(j for j, f in enumerate(on_facet) if m & f == m)
        rays = [cone.rays[k] for k in idx]
        basis = _oriented_basis(rays)
        faces.append(Face(facets=facets, rays=idx, dim=len(basis), basis=basis))
    faces.sort(key=lambda f: (f.dim, f.rays))

    incidence: dict[int, dict[tuple[int, int], int]] = {}
    for gi, g in enumerate(faces):
        if g.dim == 0:
            continue
        inc = incidence.setdefault(g.dim - 1, {})
        for fi, f in enumerate(faces):
            if f.dim == g.dim - 1 and set(f.rays) < set(g.rays):
                w = cone.rays[next(k for k in g.rays if k not in f.rays)]
                inc[(gi, fi)] = _incidence_sign(w, f.basis, g.basis)
    lat = FaceLattice(cone=cone, faces=tuple(faces), incidence=incidence)
    if len(lat.by_dim(0)) != 1 or len(lat.by_dim(cone.n)) != 1:
        raise AssertionError("face lattice is missing the apex or the cone itself")
    return lat


# -- lattice points --------------------------------------------------------

def _grid(window: Box) -> np.ndarray:
    if any(hi < lo for lo, hi in window):
        return np.zeros((0, len(window)), dtype=np.int64)
    axes = [np.arange(lo, hi + 1, dtype=np.int64) for lo, hi in window]
    return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(window))


def lattice_points_shifted(cone: Cone, a: Sequence[int], window: Box) -> list[tuple[int, ...]]:
    """Lattice points u in the box ``window`` (inclusive bounds) with ``V u >= a``."""
    if len(a) != cone.r:
        raise ValueError(f"coefficient vector has length {len(a)}, expected {cone.r}")
    if len(window) != cone.n:
        raise ValueError("window dimension mismatch")
    pts = _grid(window)
    if not len(pts):
        return []
    V = np.array(cone.V, dtype=np.int64)
    keep = np.all(pts @ V.T >= np.array(a, dtype=np.int64), axis=1)
    return [tuple(int(x) for x in p) for p in pts[keep]]


def count_points_many(V: Sequence[Sequence[int]], shifts: np.ndarray, window: Box) -> np.ndarray:
    """For each row a of ``shifts``, the number of u in the box with ``V u >= a``.

    The last coordinate is counted as an interval, so only the first n - 1
    coordinates are enumerated.
    """
    Vn = np.array(V, dtype=np.int64)
    shifts = np.atleast_2d(np.asarray(shifts, dtype=np.int64))
    if any(hi < lo for lo, hi in window):
        return np.zeros(len(shifts), dtype=np.int64)
    n = Vn.shape[1]
    lo_n, hi_n = window[-1]
    head = _grid(window[:-1]) if n > 1 else np.zeros((1, 0), dtype=np.int64)
    partial = head @ Vn[:, :-1].T  # (G, r)
    last = Vn[:, -1]
    pos, neg, zero = last > 0, last < 0, last == 0
    out = np.zeros(len(shifts), dtype=np.int64)
    step = max(1, 2**22 // max(1, len(head) * len(last)))
    for s in range(0, len(shifts), step):
        need = shifts[s:s + step, None, :] - partial[None, :, :]  # need_i <= last_i * t
        low = np.full(need.shape[:2], lo_n, dtype=np.int64)
        high = np.full(need.shape[:2], hi_n, dtype=np.int64)
        if pos.any():
            low = np.maximum(low, (-(-need[:, :, pos] // last[pos])).max(axis=2))
        if neg.any():
            high = np.minimum(high, (need[:, :, neg] // last[neg]).min(axis=2))
        ok = np.all(need[:, :, zero] <= 0, axis=2) if zero.any() else True
        out[s:s + step] = (np.clip(high - low + 1, 0, None) * ok).sum(axis=1)
    return out


def count_points_shifted(cone: Cone, a: Sequence[int], window: Box) -> int:
    return int(count_points_many(cone.V, np.array([a]), window)[0])


def _height_box(cone: Cone, H: int) -> list[tuple[int, int]]:
    """Coordinate box containing every u in C with height(u) <= H."""
    for rows in itertools.combinations(range(cone.r), cone.n):
        sub = [cone.V[i] for i in rows]
        if lattice.det(tuple(sub)) == 0:
            continue
        inv = _rational_inverse(sub)
        return [
            (-math.ceil(H * sum(abs(x) for x in row)), math.ceil(H * sum(abs(x) for x in row)))
            for row in inv
        ]
    raise NotPointed("no invertible facet subset")


def _rational_inverse(M: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next(r for r in range(c, n) if A[r][c] != 0)
        A[c], A[piv] = A[piv], A[c]
        p = A[c][c]
        A[c] = [x / p for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def hilbert_basis(cone: Cone, height_bound: int) -> list[tuple[int, ...]]:
    """Irreducible lattice points of C inside ``[-height_bound, height_bound]^n``.

    Raises BoundTooSmall unless every nonzero lattice point of C in that box is
    a nonnegative integer combination of the returned vectors.
    """
    window = [(-height_bound, height_bound)] * cone.n
    win = [u for u in lattice_points_shifted(cone, (0,) * cone.r, window) if any(u)]
    if not win:
        raise BoundTooSmall("window contains no nonzero lattice point")
    H = max(cone.height(u) for u in win)
    pts = [u for u in lattice_points_shifted(cone, (0,) * cone.r, _height_box(cone, H))
           if any(u) and cone.height(u) <= H]
    pts.sort(key=lambda u: (cone.height(u), u))
    pool = set(pts)
    irreducible: list[tuple[int, ...]] = []
    for x in pts:
        if not any(tuple(a - b for a, b in zip(x, g)) in pool for g in irreducible):
            irreducible.append(x)

    box = set(win)
    basis = [g for g in irreducible if g in box]
    generated: set[tuple[int, ...]] = set()
    for x in pts:
        if x in basis or any(tuple(a - b for a, b in zip(x, g)) in generated for g in basis):
            generated.add(x)
    missing = [u for u in win if u not in generated]
    if missing:
        raise BoundTooSmall(f"{len(missing)} window points not generated, e.g. {missing[0]}")
    return sorted(basis)
