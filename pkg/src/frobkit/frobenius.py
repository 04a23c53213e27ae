"""Frobenius pushforwards of divisorial modules at the level of divisor classes.

Grouping the lattice points of ``M_a`` by residue modulo ``qZ^n`` gives

    F^e_* M_a  =  ⊕_{r in [0, q)^n}  M_{c(r)},   c(r)_i = ceil((a_i - <r, v_i>) / q),

so counting the classes of the vectors ``c(r)`` yields the full decomposition
into rank-one reflexive summands.  Everything downstream (splitting numbers,
multiplicities, abundance) reads off these counts.
"""
from __future__ import annotations

import math
import os
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

import numpy as np

from . import toric
from .cone import count_points_many, count_points_shifted
from .errors import CapExceeded, InsufficientData
from .toric import DivClass, ToricRing

DEFAULT_CAP = 2**24
CHUNK = 2**20
NO_BOUND = -math.inf


def default_cap() -> int:
    return int(os.environ.get("FROBKIT_CAP", DEFAULT_CAP))


@dataclass(frozen=True)
class FrobeniusLevel:
    p: int
    e: int

    @property
    def q(self) -> int:
        return self.p**self.e


@dataclass(frozen=True)
class EstimatorConfig:
    """Thresholds for the finite-range growth heuristics."""

    # a ratio sequence counts as bounded below if it never shrinks faster than p^(-decay_exponent) per step
    decay_exponent: Fraction = Fraction(1, 2)
    points: int = 3
    # relative change under which a_e / q^n is called stable
    stable_tol: Fraction = Fraction(1, 20)
    # abundance: fraction of the range treated as the tail
    tail_fraction: Fraction = Fraction(1, 2)
    min_exponent: Fraction = Fraction(0)


DEFAULT_CONFIG = EstimatorConfig()


# -- twists and finite F-type ----------------------------------------------

def twist_class(R: ToricRing, c: DivClass, e: int) -> DivClass:
    """Class of M(e), the reflexive hull of the e-th Frobenius functor: p^e * c."""
    return toric.scale_class(R, c, R.p**e)


@dataclass(frozen=True)
class FTReport:
    source: DivClass
    is_ft: bool
    order: float | int
    pre_period: Optional[int]
    period: Optional[int]
    orbit: tuple[DivClass, ...]


def ft_test(R: ToricRing, c: DivClass) -> FTReport:
    order = toric.order_of(R, c)
    if order == math.inf:
        orbit = tuple(twist_class(R, c, e) for e in range(4))
        return FTReport(c, False, order, None, None, orbit)
    seen: dict[DivClass, int] = {}
    orbit = []
    x = c
    while x not in seen:
        seen[x] = len(orbit)
        orbit.append(x)
        x = toric.scale_class(R, x, R.p)
    start = seen[x]
    return FTReport(c, True, order, start, len(orbit) - start, tuple(orbit))


# -- pushforward decomposition ---------------------------------------------

@dataclass(frozen=True)
class DecompositionMultiset:
    level: FrobeniusLevel
    source: DivClass
    coeffs: tuple[int, ...]
    counts: dict[DivClass, int] = field(hash=False)

    def __getitem__(self, c: DivClass) -> int:
        return self.counts.get(c, 0)

    @property
    def total(self) -> int:
        return sum(self.counts.values())


def _check_cap(q: int, n: int, cap: Optional[int]) -> None:
    cap = default_cap() if cap is None else cap
    if q**n > cap:
        raise CapExceeded(f"q^n = {q}^{n} = {q**n} exceeds the enumeration cap {cap}")


def _residues(q: int, n: int, start: int, stop: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    return np.stack(np.unravel_index(idx, (q,) * n), axis=1).astype(np.int64)


def residue_coefficients(R: ToricRing, a: Sequence[int], q: int) -> Iterator[np.ndarray]:
    """Yield, chunk by chunk, the vectors c(r) for r in [0, q)^n (row-major order)."""
    V = np.array(R.cone.V, dtype=np.int64).T
    av = np.array(a, dtype=np.int64)
    total = q**R.n
    for start in range(0, total, CHUNK):
        r = _residues(q, R.n, start, min(total, start + CHUNK))
        yield -((r @ V - av) // q)


def _class_keys(R: ToricRing, c: np.ndarray) -> np.ndarray:
    U = R.smith.U
    bound = max(1, max(abs(x) for row in U for x in row)) * max(1, int(np.abs(c).max(initial=0))) * R.r
    if bound >= 2**62:
        y = np.array(c, dtype=object) @ np.array(U, dtype=object).T
    else:
        y = c @ np.array(U, dtype=np.int64).T
    cols = [y[:, R.smith.rank:]]
    for i, d in R._torsion_slots:
        cols.append((y[:, i] % d)[:, None])
    return np.concatenate(cols, axis=1) if cols else np.zeros((len(c), 0), dtype=np.int64)


def decompose_pushforward(
    R: ToricRing, a: Sequence[int], level: FrobeniusLevel, cap: Optional[int] = None
) -> DecompositionMultiset:
    """Multiset of classes of the rank-one summands of F^e_* M_a."""
    if len(a) != R.r:
        raise ValueError(f"coefficient vector has length {len(a)}, expected {R.r}")
    q = level.q
    _check_cap(q, R.n, cap)
    f = R.invariants_of_Cl.free_rank
    counts: Counter[DivClass] = Counter()
    for c in residue_coefficients(R, a, q):
        keys = _class_keys(R, c)
        if keys.shape[1] == 0:
            counts[toric.trivial_class(R)] += len(c)
            continue
        uniq, mult = np.unique(keys, axis=0, return_counts=True)
        for row, m in zip(uniq.tolist(), mult.tolist()):
            counts[DivClass(tuple(int(x) for x in row[:f]), tuple(int(x) for x in row[f:]))] += m
    out = DecompositionMultiset(level, toric.class_of(R, a), tuple(a), dict(sorted(counts.items())))
    if out.total != q**R.n:
        raise AssertionError("rank not conserved")
    return out


def hilbert_consistency(R: ToricRing, a: Sequence[int], q: int, B: int) -> tuple[int, int]:
    """Count degrees of M_a in [0, qB)^n directly and through the residue pieces in [0, B)^n.

    Returns the two counts; they agree when the residue formula is right.
    """
    direct = count_points_shifted(R.cone, a, [(0, q * B - 1)] * R.n)
    window = [(0, B - 1)] * R.n
    via = 0
    for c in residue_coefficients(R, a, q):
        uniq, mult = np.unique(c, axis=0, return_counts=True)
        via += int(count_points_many(R.cone.V, uniq, window) @ mult)
    return direct, via


# -- splitting numbers and growth estimates --------------------------------

def _degree_of_growth(
    values: Sequence[int], qs: Sequence[int], p: int, top: int, alpha: int, config: EstimatorConfig
) -> float | int:
    """Largest k <= top with values[e] / q^(k + alpha) bounded below over the last points."""
    if len(values) < config.points:
        raise InsufficientData(f"need at least {config.points} data points, got {len(values)}")
    tail = list(zip(values, qs))[-config.points:]
    if all(v == 0 for v, _ in tail):
        return NO_BOUND
    num, den = config.decay_exponent.numerator, config.decay_exponent.denominator
    for k in range(top, -1, -1):
        s = [Fraction(v, q ** (k + alpha)) for v, q in tail]
        if s[-1] <= 0:
            continue
        # s[i+1] / s[i] >= p^(-num/den)  <=>  (s[i+1]/s[i])^den * p^num >= 1
        if all(s[i] == 0 or (s[i + 1] / s[i]) ** den * p**num >= 1 for i in range(len(s) - 1)):
            return k
    return NO_BOUND


def _stable(values: Sequence[int], qs: Sequence[int], n: int, config: EstimatorConfig) -> bool:
    s = [Fraction(v, q**n) for v, q in list(zip(values, qs))[-config.points:]]
    if len(s) < 3 or s[-1] == 0:
        return False
    d = [abs(s[i + 1] - s[i]) for i in range(len(s) - 1)]
    return all(d[i + 1] <= d[i] for i in range(len(d) - 1)) and d[-1] / s[-1] < config.stable_tol


@dataclass(frozen=True)
class SplittingData:
    ring: str
    p: int
    n: int
    alpha: int
    a_e: tuple[int, ...]  # e = 1, 2, ...

    @property
    def qs(self) -> tuple[int, ...]:
        return tuple(self.p ** (e + 1) for e in range(len(self.a_e)))

    @property
    def signature_estimates(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(a, q ** (self.n + self.alpha)) for a, q in zip(self.a_e, self.qs))


def splitting_numbers(R: ToricRing, e_max: int, cap: Optional[int] = None) -> SplittingData:
    zero = (0,) * R.r
    triv = toric.trivial_class(R)
    a_e = tuple(decompose_pushforward(R, zero, FrobeniusLevel(R.p, e), cap)[triv] for e in range(1, e_max + 1))
    return SplittingData(R.name, R.p, R.n, R.alpha, a_e)


@dataclass(frozen=True)
class SdimVerdict:
    sdim: float | int
    confident: bool


def estimate_sdim(data: SplittingData, n: Optional[int] = None, alpha: Optional[int] = None,
                  config: EstimatorConfig = DEFAULT_CONFIG) -> SdimVerdict:
    n = data.n if n is None else n
    alpha = data.alpha if alpha is None else alpha
    k = _degree_of_growth(data.a_e, data.qs, data.p, n, alpha, config)
    return SdimVerdict(k, k == n and _stable(data.a_e, data.qs, n + alpha, config))


def depth_bound_from_abundance(dim: int, alpha: int, b_e: Sequence[int], qs: Sequence[int],
                               config: EstimatorConfig = DEFAULT_CONFIG) -> float | int:
    """Depth lower bound k for the target: b_e / q^(k + alpha) stays bounded below.

    Only as good as the computed range; NO_BOUND when b_e vanishes on the tail.
    """
    if not b_e or len(b_e) != len(qs):
        raise InsufficientData("need matching nonempty b_e and q lists")
    p = next(k for k in range(2, qs[0] + 1) if qs[0] % k == 0)
    return _degree_of_growth(b_e, qs, p, dim, alpha, config)


# -- abundance ---------------------------------------------------------------

@dataclass(frozen=True)
class AbundanceData:
    source: DivClass
    target: DivClass
    p: int
    b_e: tuple[int, ...]  # e = 1, 2, ...
    verdict: str  # "abundant" | "not_abundant" | "inconclusive"
    growth_exponent_fit: Optional[Fraction]

    @property
    def qs(self) -> tuple[int, ...]:
        return tuple(self.p ** (e + 1) for e in range(len(self.b_e)))


def _fit_exponent(b: Sequence[int], qs: Sequence[int]) -> Optional[Fraction]:
    pts = [(math.log(q), math.log(v)) for v, q in zip(b, qs) if v > 0]
    if len(pts) < 2:
        return None
    x = np.array([t[0] for t in pts])
    y = np.array([t[1] for t in pts])
    slope = float(np.polyfit(x, y, 1)[0])
    return Fraction(slope).limit_denominator(1000)


def abundance_verdict(b: Sequence[int], qs: Sequence[int], config: EstimatorConfig = DEFAULT_CONFIG):
    if len(b) < 2:
        return "inconclusive", None
    size = max(2, math.ceil(len(b) * config.tail_fraction))
    tail, tail_q = list(b[-size:]), list(qs[-size:])
    fit = _fit_exponent(tail, tail_q)
    if all(v == 0 for v in tail) or len(set(tail)) == 1:
        return "not_abundant", fit
    increasing = all(x < y for x, y in zip(tail, tail[1:]))
    if increasing and fit is not None and fit > config.min_exponent:
        return "abundant", fit
    return "inconclusive", fit


def abundance_test(R: ToricRing, source: Sequence[int], target: DivClass, e_max: int,
                   cap: Optional[int] = None, config: EstimatorConfig = DEFAULT_CONFIG) -> AbundanceData:
    """Multiplicities b_e of M_target in F^e_* M_source for e = 1..e_max, with a verdict.

    With a perfect coefficient field the pair is abundant exactly when b_e is
    unbounded; over a finite range that is a heuristic call.
    """
    b = tuple(decompose_pushforward(R, source, FrobeniusLevel(R.p, e), cap)[target] for e in range(1, e_max + 1))
    qs = tuple(R.p**e for e in range(1, e_max + 1))
    verdict, fit = abundance_verdict(b, qs, config)
    return AbundanceData(toric.class_of(R, source), target, R.p, b, verdict, fit)


# -- index shifting ----------------------------------------------------------

def index_shift_check(R: ToricRing, a: Sequence[int], e: int, f: int, cap: Optional[int] = None) -> bool:
    """[M(e)](f) = M(e+f) on classes, and two-stage pushforward equals one-stage."""
    c = toric.class_of(R, a)
    if twist_class(R, twist_class(R, c, e), f) != twist_class(R, c, e + f):
        return False
    one = decompose_pushforward(R, a, FrobeniusLevel(R.p, e + f), cap).counts
    first = decompose_pushforward(R, a, FrobeniusLevel(R.p, e), cap)
    two: Counter[DivClass] = Counter()
    for cls, m in first.counts.items():
        inner = decompose_pushforward(R, toric.representative(R, cls), FrobeniusLevel(R.p, f), cap)
        for k, v in inner.counts.items():
            two[k] += m * v
    return dict(two) == one
