"""Monomial ideals over k[x_1..x_n] and their Frobenius pushforwards.

The pushforward of a monomial ideal I splits by residues r in [0, q)^n into
the ideals generated by ``max(0, ceil((m - r) / q))`` over generators m.  That
piece depends on r only coordinate by coordinate, so residues are grouped per
variable and the q^n scan collapses to a product of small groups.

Two monomial ideals are isomorphic as modules exactly when one is a monomial
translate of the other; ``iso_normal_form`` picks the translate with no common
factor in any variable.
"""
from __future__ import annotations

import itertools
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import ParseError
from .frobenius import FrobeniusLevel, _check_cap

ALIASES = "xyzuvw"

Exponent = tuple[int, ...]


def _minimalize(gens: Iterable[Exponent]) -> frozenset[Exponent]:
    gens = set(gens)
    return frozenset(g for g in gens if not any(h != g and all(x <= y for x, y in zip(h, g)) for h in gens))


@dataclass(frozen=True)
class MonomialIdeal:
    n: int
    gens: frozenset[Exponent]

    @classmethod
    def of(cls, gens: Iterable[Sequence[int]], n: Optional[int] = None) -> "MonomialIdeal":
        gens = [tuple(int(x) for x in g) for g in gens]
        if not gens:
            raise ValueError("the zero ideal is not supported")
        n = len(gens[0]) if n is None else n
        if any(len(g) != n or min(g) < 0 for g in gens):
            raise ValueError("exponent vectors must be nonnegative of length n")
        return cls(n, _minimalize(gens))

    @classmethod
    def unit(cls, n: int) -> "MonomialIdeal":
        return cls(n, frozenset({(0,) * n}))

    @property
    def is_unit(self) -> bool:
        return self.gens == {(0,) * self.n}

    def contains(self, u: Sequence[int]) -> bool:
        return any(all(x >= y for x, y in zip(u, g)) for g in self.gens)

    def sorted_gens(self) -> list[Exponent]:
        return sorted(self.gens, key=lambda g: (sum(g), tuple(-x for x in g)))

    def __str__(self) -> str:
        return format_ideal(self)


def format_ideal(I: MonomialIdeal) -> str:
    names = list(ALIASES) if I.n <= len(ALIASES) else [f"x{i + 1}" for i in range(I.n)]
    out = []
    for g in I.sorted_gens():
        terms = [names[i] + (f"^{x}" if x > 1 else "") for i, x in enumerate(g) if x]
        out.append("*".join(terms) or "1")
    return "(" + ", ".join(out) + ")"


_TERM = re.compile(r"\s*([A-Za-z]\w*)\s*(?:\^\s*(\d+))?\s*")


def _var_index(name: str, n: Optional[int]) -> int:
    m = re.fullmatch(r"x(\d+)", name)
    if m:
        return int(m.group(1)) - 1
    if len(name) == 1 and name in ALIASES:
        return ALIASES.index(name)
    raise KeyError(name)


def parse_ideal(text: str, n: Optional[int] = None) -> MonomialIdeal:
    """Parse generators such as ``"x^2*y, z^3"`` or ``"x1*x3^2, x2"``.

    Without ``n`` the number of variables is the largest index mentioned.
    """
    gens = []
    col = 1
    for part in text.split(","):
        exps: dict[int, int] = {}
        if part.strip() != "1":
            for factor in part.split("*"):
                m = _TERM.fullmatch(factor)
                if not m:
                    raise ParseError(f"bad monomial factor {factor.strip()!r}", 1, col)
                try:
                    i = _var_index(m.group(1), n)
                except KeyError:
                    raise ParseError(f"unknown variable {m.group(1)!r}", 1, col) from None
                exps[i] = exps.get(i, 0) + int(m.group(2) or 1)
                col += len(factor) + 1
        else:
            col += len(part) + 1
        gens.append(exps)
    width = max((max(e) + 1 for e in gens if e), default=1)
    if n is None:
        n = width
    elif width > n:
        raise ParseError(f"variable index {width} exceeds n = {n}", 1, 1)
    return MonomialIdeal.of([tuple(e.get(i, 0) for i in range(n)) for e in gens], n)


def frobenius_power(I: MonomialIdeal, q: int) -> MonomialIdeal:
    if q < 1:
        raise ValueError("q must be positive")
    return MonomialIdeal(I.n, frozenset(tuple(q * x for x in g) for g in I.gens))


def iso_normal_form(I: MonomialIdeal) -> MonomialIdeal:
    mins = [min(g[i] for g in I.gens) for i in range(I.n)]
    return MonomialIdeal(I.n, frozenset(tuple(x - m for x, m in zip(g, mins)) for g in I.gens))


@dataclass(frozen=True)
class MonomialDecomposition:
    level: FrobeniusLevel
    source: MonomialIdeal
    pieces: dict[MonomialIdeal, int] = field(hash=False)  # normal forms
    raw: dict[MonomialIdeal, int] = field(hash=False, repr=False)  # untranslated pieces

    @property
    def total(self) -> int:
        return sum(self.pieces.values())


def _ceil_div(x: int, q: int) -> int:
    return -((-x) // q)


def decompose_pushforward_ideal(I: MonomialIdeal, level: FrobeniusLevel, cap: Optional[int] = None) -> MonomialDecomposition:
    q = level.q
    _check_cap(q, I.n, cap)
    gens = sorted(I.gens)
    per_var = []
    for i in range(I.n):
        groups: Counter[tuple[int, ...]] = Counter()
        for r in range(q):
            groups[tuple(max(0, _ceil_div(g[i] - r, q)) for g in gens)] += 1
        per_var.append(list(groups.items()))
    raw: Counter[MonomialIdeal] = Counter()
    for combo in itertools.product(*per_var):
        mult = math.prod(c for _, c in combo)
        piece = MonomialIdeal.of([tuple(key[k] for key, _ in combo) for k in range(len(gens))], I.n)
        raw[piece] += mult
    pieces: Counter[MonomialIdeal] = Counter()
    for piece, m in raw.items():
        pieces[iso_normal_form(piece)] += m
    out = MonomialDecomposition(level, I, dict(pieces), dict(raw))
    if out.total != q**I.n:
        raise AssertionError("rank not conserved")
    return out


def count_copies(D: MonomialDecomposition, target: MonomialIdeal) -> int:
    return D.pieces.get(iso_normal_form(target), 0)


def hilbert_consistency_ideal(I: MonomialIdeal, level: FrobeniusLevel, B: int) -> tuple[int, int]:
    """Standard monomials of I in [0, qB)^n, counted directly and through the pieces in [0, B)^n."""

    def outside(J: MonomialIdeal, side: int) -> int:
        axes = [np.arange(side, dtype=np.int64)] * J.n
        grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, J.n)
        inside = np.zeros(len(grid), dtype=bool)
        for g in J.gens:
            inside |= np.all(grid >= np.array(g), axis=1)
        return int(np.count_nonzero(~inside))

    q = level.q
    D = decompose_pushforward_ideal(I, level, cap=q**I.n)
    return outside(I, q * B), sum(m * outside(J, B) for J, m in D.raw.items())


@dataclass(frozen=True)
class SyzygyExample:
    d: int
    level: FrobeniusLevel
    copies_of_C: int  # summands of F^e_*(R/(u,v,w)) isomorphic to R/(u,v,w)
    koszul_ranks: tuple[int, int]  # ranks of F^e_*(R^3) and F^e_*(R)
    rank_pushforward: int  # rank of F^e_*(M)
    b_e: int  # copies of M in F^e_*(M)
    free_rank: int  # free summands of F^e_*(M)


def syzygy_pushforward(d: int, level: FrobeniusLevel, cap: Optional[int] = None) -> SyzygyExample:
    """Copies of M = second syzygy of R/(u,v,w) in its Frobenius pushforward.

    u, v, w are the last three of d variables.  The pushforward of
    C = R/(u,v,w) is read off the decomposition of (u,v,w); Schanuel applied to
    the pushed-forward Koszul sequence and to m copies of the original one
    then fixes the summands of the pushforward of M.
    """
    if d < 3:
        raise ValueError("need d >= 3")
    q = level.q
    J = MonomialIdeal.of([tuple(int(i == j) for i in range(d)) for j in range(d - 3, d)], d)
    D = decompose_pushforward_ideal(J, level, cap)
    unexpected = [P for P in D.pieces if P != J and not P.is_unit]
    if unexpected:
        raise AssertionError(f"unexpected pieces {unexpected}")
    m = count_copies(D, J)  # nonunit pieces give C, unit pieces give 0
    r3, r1 = 3 * q**d, q**d
    rank_M = r3 - r1  # C has rank zero
    # F_*M + R^(3m) + R^(q^d) = M^m + R^(3q^d) + R^m
    free = r3 + m - 3 * m - r1
    if m * (3 - 1) + free != rank_M or free < 0:
        raise AssertionError("rank bookkeeping failed")
    return SyzygyExample(d, level, m, (r3, r1), rank_M, m, free)
