"""The worked-example suite run by ``frobkit verify --suite paper``.

Each check returns a :class:`Criterion`; the CLI exits non-zero if any fails.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import depth, frobenius, monomial, toric
from .errors import HypothesisViolated
from .frobenius import FrobeniusLevel
from .rings import registry_ring


@dataclass(frozen=True)
class Criterion:
    id: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.id:2d} {self.name}: {self.detail} ({self.seconds:.2f}s)"


def _quadric_class(R, k: int) -> toric.DivClass:
    return toric.make_class(R, [k])


def check_class_group() -> tuple[bool, str]:
    A = registry_ring("A1", 3)
    c = toric.class_of(A, (0, 1))
    cl = toric.class_group(A)
    ok = str(cl) == "Z/2" and toric.order_of(A, c) == 2
    return ok, f"Cl(A1) = {cl}, order of [(x,z)] = {toric.order_of(A, c)}"


def check_ft() -> tuple[bool, str]:
    A3 = registry_ring("A1", 3)
    c = toric.class_of(A3, (0, 1))
    r3 = frobenius.ft_test(A3, c)
    r2 = frobenius.ft_test(A3.with_p(2), c)
    ok = r3.is_ft and (r3.pre_period, r3.period) == (0, 1)
    ok &= r2.is_ft and len(r2.orbit) > 1 and r2.orbit[1] == toric.trivial_class(A3)
    for p in (2, 3):
        Q = registry_ring("quadric3", p)
        for k in (1, -1, 2, -2):
            ok &= not frobenius.ft_test(Q, _quadric_class(Q, k)).is_ft
    return ok, f"A1 p=3 (e',f)=({r3.pre_period},{r3.period}); p=2 orbit {[str(x) for x in r2.orbit]}; quadric +-1,+-2 not FT"


def check_ideal_copies() -> tuple[bool, str]:
    I = monomial.parse_ideal("x,y", 3)
    unit = monomial.MonomialIdeal.unit(3)
    bad = []
    for p in (2, 3):
        for e in range(1, 5):
            q = p**e
            D = monomial.decompose_pushforward_ideal(I, FrobeniusLevel(p, e))
            if monomial.count_copies(D, I) != q or monomial.count_copies(D, unit) != q**3 - q:
                bad.append((p, e))
    return not bad, "copies = q, free = q^3 - q" if not bad else f"failed at {bad}"


def check_syzygy_copies() -> tuple[bool, str]:
    bad = []
    for d in (3, 4, 5):
        for p in (2, 3):
            for e in range(1, 4):
                q = p**e
                s = monomial.syzygy_pushforward(d, FrobeniusLevel(p, e))
                if s.b_e != q ** (d - 3) or s.koszul_ranks != (3 * q**d, q**d) or s.rank_pushforward != 2 * q**d:
                    bad.append((d, p, e))
    return not bad, "b_e = q^(d-3) with Koszul ranks 3q^d -> q^d" if not bad else f"failed at {bad}"


def check_splitting() -> tuple[bool, str]:
    A = registry_ring("A1", 3)
    a = frobenius.splitting_numbers(A, 4).a_e
    ok = a[:2] == (5, 41) and all(x == (3 ** (2 * e) + 1) // 2 for e, x in enumerate(a, 1))
    Q = registry_ring("quadric3", 2)
    zero = (0,) * Q.r
    allowed = {_quadric_class(Q, k) for k in (-1, 0, 1)}
    qa = []
    for e in range(1, 7):
        D = frobenius.decompose_pushforward(Q, zero, FrobeniusLevel(2, e))
        ok &= set(D.counts) <= allowed
        qa.append(D[toric.trivial_class(Q)])
    ok &= qa[0] == 6
    s = [Fraction(x, 2 ** (3 * e)) for e, x in enumerate(qa, 1)]
    diffs = [abs(s[i + 1] - s[i]) for i in range(len(s) - 1)]
    ok &= all(2 * diffs[i + 1] <= diffs[i] for i in range(len(diffs) - 1))
    ok &= abs(s[-1] - Fraction(2, 3)) < Fraction(2, 100)
    return ok, f"A1 a_e = {a}; quadric a_e = {qa}, a_6/q^3 = {float(s[-1]):.5f}"


def check_abundance() -> tuple[bool, str]:
    Q = registry_ring("quadric3", 2)
    zero = (0,) * Q.r
    ok = True
    out = []
    for k in (1, -1, 2, -2):
        ab = frobenius.abundance_test(Q, zero, _quadric_class(Q, k), 6)
        want = "abundant" if abs(k) == 1 else "not_abundant"
        ok &= ab.verdict == want and (abs(k) == 1 or not any(ab.b_e))
        out.append(f"{k:+d}:{ab.verdict}")
    A = registry_ring("A1", 3)
    ab = frobenius.abundance_test(A, (0, 0), toric.trivial_class(A), 4)
    ok &= ab.verdict == "abundant"
    return ok, f"quadric {' '.join(out)}; A1 (R,R) {ab.verdict}"


def _cyclic_cases():
    for d in (1, 2, 3, 4):
        p = next(x for x in (2, 3, 5) if d % x)
        yield toric.cyclic_quotient_ring(2, d, (1, 1), p)


def check_torsion_mcm() -> tuple[bool, str]:
    rings = [registry_ring("A1", 3)] + list(_cyclic_cases())
    checked = 0
    for R in rings:
        size = R.invariants_of_Cl.torsion[0] if R.invariants_of_Cl.torsion else 1
        for t in range(size):
            c = toric.make_class(R, [t] if R.invariants_of_Cl.torsion else [])
            v, _ = depth.depth_scan(R, toric.representative(R, c), 8)
            if not v.is_mcm:
                return False, f"{R.name} class {c} not MCM in window"
            checked += 1
    return True, f"{checked} torsion classes MCM in [-8,8]^2"


def check_non_mcm() -> tuple[bool, str]:
    Q = registry_ring("quadric3", 2)
    out = []
    for k in (2, -2):
        a = toric.representative(Q, _quadric_class(Q, k))
        v, _ = depth.depth_scan(Q, a, 8)
        if v.depth_upper is None or v.depth_upper > 2 or not depth.verify_certificate(Q, a, v):
            return False, f"no certificate for class {k}"
        out.append(f"class {k:+d}: H^{v.certificate[0]} != 0 at u={v.certificate[1]}")
    return True, "; ".join(out)


def check_hom_mcm() -> tuple[bool, str]:
    A = registry_ring("A1", 3)
    nt = toric.class_of(A, (0, 1))
    runs = [(A, nt, b) for b in (toric.trivial_class(A), nt)]
    Q = registry_ring("quadric3", 2)
    runs += [(Q, toric.trivial_class(Q), _quadric_class(Q, k)) for k in (1, -1)]
    for R, a, b in runs:
        rep = depth.verify_hom_mcm(R, a, b, 4, 8)
        if not rep.passed:
            return False, f"{R.name} a={a} b={b} failed"
    try:
        depth.verify_hom_mcm(Q, _quadric_class(Q, 1), toric.trivial_class(Q), 1, 4, abundance_emax=0)
        return False, "quadric class 1 accepted as FT"
    except HypothesisViolated:
        pass
    return True, f"{len(runs)} (ring, a, b) runs MCM for e = 0..4"


def structural_instances(seed: int = 20240601, count: int = 20):
    rng = random.Random(seed)
    pool = [("A1", 3), ("A1", 2), ("quadric3", 2), ("quadric3", 3), ("cyclic3_1-1", 2), ("poly2", 3)]
    out = []
    for _ in range(count):
        name, p = rng.choice(pool)
        R = registry_ring(name, p)
        a = tuple(rng.randint(-2, 2) for _ in range(R.r))
        total = rng.randint(1, 4)
        e = rng.randint(0, total)
        out.append((R, a, e, total - e))
    return out


def check_structure() -> tuple[bool, str]:
    notes = []
    for R, a, e, f in structural_instances():
        if not frobenius.index_shift_check(R, a, e, f):
            return False, f"index shift failed for {R.name} a={a} e={e} f={f}"
        for k in {e, e + f}:
            D = frobenius.decompose_pushforward(R, a, FrobeniusLevel(R.p, k))
            if D.total != R.p ** (k * R.n):
                return False, "rank not conserved"
            direct, via = frobenius.hilbert_consistency(R, a, R.p**k, 6)
            if direct != via:
                return False, f"Hilbert mismatch {direct} != {via} for {R.name} a={a} q={R.p**k}"
    notes.append("20 index-shift instances")
    for name, p in (("A1", 3), ("quadric3", 2), ("cyclic3_1-1", 2)):
        cx = depth.ishida_complex(registry_ring(name, p))
        if not all(cx.dd_is_zero(pt) for pt in itertools.product((False, True), repeat=cx.faces.cone.r)):
            return False, f"d o d != 0 on {name}"
    notes.append("d o d = 0")
    for R, a in abundance_depth_pairs():
        ab = frobenius.abundance_test(R, (0,) * R.r, toric.class_of(R, a), 4)
        k = frobenius.depth_bound_from_abundance(R.n, R.alpha, ab.b_e, ab.qs)
        v, _ = depth.depth_scan(R, a, 8)
        if v.depth_upper is not None and k > v.depth_upper:
            return False, f"abundance claims depth >= {k} but scan certifies <= {v.depth_upper}"
    notes.append("abundance depth bounds consistent with scans")
    return True, ", ".join(notes)


def abundance_depth_pairs():
    Q = registry_ring("quadric3", 2)
    A = registry_ring("A1", 3)
    yield from ((Q, toric.representative(Q, _quadric_class(Q, k))) for k in (-2, -1, 0, 1, 2, 3))
    yield from ((A, a) for a in ((0, 0), (0, 1)))


CHECKS: list[tuple[str, Callable[[], tuple[bool, str]]]] = [
    ("class group and order", check_class_group),
    ("finite F-type decisions", check_ft),
    ("copies of (x, y) in F^e_*(x, y)", check_ideal_copies),
    ("copies of a second syzygy", check_syzygy_copies),
    ("splitting numbers", check_splitting),
    ("abundance verdicts", check_abundance),
    ("torsion classes are MCM", check_torsion_mcm),
    ("non-MCM certificate", check_non_mcm),
    ("Hom(M(e), L) is MCM", check_hom_mcm),
    ("structural invariants", check_structure),
]


def run_suite(suite: str = "paper") -> list[Criterion]:
    if suite != "paper":
        raise ValueError(f"unknown suite {suite!r}")
    results = []
    for i, (name, fn) in enumerate(CHECKS, 1):
        t = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crashing check is a failing check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(Criterion(i, name, bool(ok), detail, time.perf_counter() - t))
    return results
