"""Local cohomology of divisorial modules via the Ishida complex.

For ``M_a`` and a degree ``u`` the degree-u strand of the Ishida complex has one
cell for each face F of the cone with ``<u, v_j> >= a_j`` for every facet j
containing F, placed in cohomological degree ``dim F``.  The passing faces are
closed under going up, so they form a subcomplex of the signed face complex.
Only the pass/fail pattern of the facet inequalities matters, so cohomology is
cached per pattern.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import frobenius, toric
from .cone import Box, FaceLattice
from .errors import HypothesisViolated
from .toric import DivClass, ToricRing

DEFAULT_WINDOW = 8

WINDOW_CAVEAT = (
    "vanishing is only checked inside the scanned window; an MCM claim is not a proof"
)


def _rank(rows: list[list[int]]) -> int:
    """Exact rank over Q by fraction-free elimination."""
    M = [r[:] for r in rows if any(r)]
    rank = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        p = M[rank][c]
        for i in range(rank + 1, len(M)):
            if M[i][c]:
                f = M[i][c]
                M[i] = [p * x - f * y for x, y in zip(M[i], M[rank])]
                g = math.gcd(*M[i])
                if g > 1:
                    M[i] = [x // g for x in M[i]]
        rank += 1
    return rank


@dataclass
class IshidaComplex:
    faces: FaceLattice
    _cache: dict[tuple[bool, ...], tuple[int, ...]] = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return self.faces.cone.n

    def cells(self, pattern: Sequence[bool]) -> list[int]:
        return [i for i, F in enumerate(self.faces.faces) if all(pattern[j] for j in F.facets)]

    def differential(self, k: int, cells: Sequence[int]) -> list[list[int]]:
        """Matrix of d: C^k -> C^(k+1) restricted to ``cells`` (rows indexed by (k+1)-faces)."""
        src = [i for i in cells if self.faces.faces[i].dim == k]
        dst = [i for i in cells if self.faces.faces[i].dim == k + 1]
        inc = self.faces.incidence.get(k, {})
        return [[inc.get((g, f), 0) for f in src] for g in dst]

    def ranks(self, pattern: Sequence[bool]) -> tuple[int, ...]:
        pattern = tuple(bool(x) for x in pattern)
        hit = self._cache.get(pattern)
        if hit is not None:
            return hit
        cells = self.cells(pattern)
        dims = [sum(1 for i in cells if self.faces.faces[i].dim == k) for k in range(self.n + 1)]
        rk = [_rank(self.differential(k, cells)) if dims[k] and dims[k + 1] else 0 for k in range(self.n)]
        h = tuple(dims[k] - (rk[k] if k < self.n else 0) - (rk[k - 1] if k > 0 else 0) for k in range(self.n + 1))
        self._cache[pattern] = h
        return h

    def dd_is_zero(self, pattern: Sequence[bool]) -> bool:
        cells = self.cells(pattern)
        for k in range(self.n - 1):
            d0 = self.differential(k, cells)
            d1 = self.differential(k + 1, cells)
            if not d0 or not d1 or not d0[0]:
                continue
            prod = np.array(d1, dtype=np.int64) @ np.array(d0, dtype=np.int64)
            if np.any(prod):
                return False
        return True


_complexes: dict = {}


def ishida_complex(R: ToricRing) -> IshidaComplex:
    if R.cone not in _complexes:
        _complexes[R.cone] = IshidaComplex(R.faces)
    return _complexes[R.cone]


def pattern(R: ToricRing, a: Sequence[int], u: Sequence[int]) -> tuple[bool, ...]:
    return tuple(x >= y for x, y in zip(R.div(u), a))


def cohomology_at_degree(R: ToricRing, a: Sequence[int], u: Sequence[int]) -> tuple[int, ...]:
    """Dimensions of H^0..H^n of M_a in degree u."""
    if len(a) != R.r or len(u) != R.n:
        raise ValueError("dimension mismatch")
    return ishida_complex(R).ranks(pattern(R, a, u))


@dataclass(frozen=True)
class LocalCohomologyReport:
    coeffs: tuple[int, ...]
    window: tuple[tuple[int, int], ...]
    # nonzero[i] = sorted ((u, dim H^i_u), ...)
    nonzero: tuple[tuple[tuple[tuple[int, ...], int], ...], ...]


@dataclass(frozen=True)
class DepthVerdict:
    n: int
    depth_upper: Optional[int]
    depth_claim: Optional[int]
    certificate: Optional[tuple[int, tuple[int, ...], int]]
    window: tuple[tuple[int, int], ...]
    caveat: str

    @property
    def is_mcm(self) -> bool:
        return self.depth_upper is None and self.depth_claim == self.n


def _box(R: ToricRing, window: int | Box) -> tuple[tuple[int, int], ...]:
    if isinstance(window, int):
        return ((-window, window),) * R.n
    return tuple((int(lo), int(hi)) for lo, hi in window)


def depth_scan(R: ToricRing, a: Sequence[int], window: int | Box = DEFAULT_WINDOW) -> tuple[DepthVerdict, LocalCohomologyReport]:
    """Scan every degree in the window; the smallest nonvanishing H^i with i < n bounds depth."""
    box = _box(R, window)
    if any(hi < lo for lo, hi in box):
        raise ValueError("empty window")
    cx = ishida_complex(R)
    axes = [np.arange(lo, hi + 1, dtype=np.int64) for lo, hi in box]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, R.n)
    pats = grid @ np.array(R.cone.V, dtype=np.int64).T >= np.array(a, dtype=np.int64)
    uniq, inv = np.unique(pats, axis=0, return_inverse=True)
    inv = inv.reshape(-1)
    hs = np.array([cx.ranks(tuple(row)) for row in uniq.tolist()], dtype=np.int64)
    per_point = hs[inv]
    nonzero = []
    for i in range(R.n + 1):
        idx = np.nonzero(per_point[:, i])[0]
        nonzero.append(tuple((tuple(int(x) for x in grid[j]), int(per_point[j, i])) for j in idx))
    report = LocalCohomologyReport(tuple(a), box, tuple(nonzero))
    low = next((i for i in range(R.n) if nonzero[i]), None)
    if low is None:
        verdict = DepthVerdict(R.n, None, R.n if nonzero[R.n] else None, None, box, WINDOW_CAVEAT)
    else:
        u, h = nonzero[low][0]
        verdict = DepthVerdict(R.n, low, None, (low, u, h), box, "depth upper bound is certified")
    return verdict, report


def verify_certificate(R: ToricRing, a: Sequence[int], verdict: DepthVerdict) -> bool:
    if verdict.certificate is None:
        return False
    i, u, h = verdict.certificate
    return cohomology_at_degree(R, a, u)[i] == h and h > 0


def ring_cm_check(R: ToricRing, window: int | Box = DEFAULT_WINDOW) -> DepthVerdict:
    return depth_scan(R, (0,) * R.r, window)[0]


@dataclass(frozen=True)
class HomMCMStep:
    e: int
    hom_class: DivClass
    coeffs: tuple[int, ...]
    verdict: DepthVerdict


@dataclass(frozen=True)
class HomMCMReport:
    ft_class: DivClass
    target: DivClass
    steps: tuple[HomMCMStep, ...]
    target_abundant: Optional[str]

    @property
    def passed(self) -> bool:
        return all(s.verdict.is_mcm for s in self.steps)


def verify_hom_mcm(R: ToricRing, a: DivClass, b: DivClass, e_range: Sequence[int] | int,
                   window: int | Box = DEFAULT_WINDOW, abundance_emax: int = 3) -> HomMCMReport:
    """Depth of Hom(M(e), L) for a finite F-type class a and target class b."""
    if not frobenius.ft_test(R, a).is_ft:
        raise HypothesisViolated(f"class {a} is not of finite F-type")
    if isinstance(e_range, int):
        e_range = range(e_range + 1)
    verdict = None
    if abundance_emax:
        verdict = frobenius.abundance_test(R, (0,) * R.r, b, abundance_emax).verdict
        if verdict != "abundant":
            warnings.warn(f"(R, M_b) not detected as abundant ({verdict})", stacklevel=2)
    steps = []
    for e in e_range:
        h = toric.hom_class(R, frobenius.twist_class(R, a, e), b)
        rep = toric.representative(R, h)
        steps.append(HomMCMStep(e, h, rep, depth_scan(R, rep, window)[0]))
    return HomMCMReport(a, b, tuple(steps), verdict)
