"""Ring definitions: the built-in registry and ``[ring]`` spec files.

A spec file is a single ``[ring]`` table of ``key = value`` lines (TOML)::

    [ring]
    name = "A1"
    kind = "toric"            # or "cyclic_quotient", "polynomial"
    facet_normals = [[0, 1], [2, -1]]
    p = 3

``cyclic_quotient`` takes ``n``, ``d`` and ``weights``; ``polynomial`` takes
``vars`` (the number of variables).  Unknown or missing keys are errors.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

import tomli

from . import toric
from .cone import hilbert_basis
from .errors import ParseError, ValidationError
from .toric import ToricRing

KIND_FIELDS = {
    "toric": {"facet_normals"},
    "cyclic_quotient": {"n", "d", "weights"},
    "polynomial": {"vars"},
}
COMMON = {"name", "kind", "p"}


@dataclass(frozen=True)
class RingSpecFile:
    name: str
    kind: str
    p: int
    facet_normals: Optional[tuple[tuple[int, ...], ...]] = None
    n: Optional[int] = None
    d: Optional[int] = None
    weights: Optional[tuple[int, ...]] = None
    vars: Optional[int] = None


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % k for k in range(2, math.isqrt(p) + 1))


def _int(value, key: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"{key} must be an integer")
    return value


def parse_ring_spec(text: str) -> RingSpecFile:
    try:
        doc = tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        raise ParseError(str(exc).split(" (at")[0], getattr(exc, "lineno", None), getattr(exc, "colno", None)) from None
    if set(doc) != {"ring"} or not isinstance(doc["ring"], dict):
        raise ParseError("expected exactly one [ring] table", 1, 1)
    body = doc["ring"]
    kind = body.get("kind")
    if kind not in KIND_FIELDS:
        raise ValidationError(f"kind must be one of {sorted(KIND_FIELDS)}, got {kind!r}")
    allowed = COMMON | KIND_FIELDS[kind]
    extra = set(body) - allowed
    if extra:
        raise ValidationError(f"unknown keys for kind {kind!r}: {sorted(extra)}")
    missing = allowed - set(body)
    if missing:
        raise ValidationError(f"missing keys: {sorted(missing)}")
    p = _int(body["p"], "p")
    if not _is_prime(p):
        raise ValidationError(f"p = {p} is not prime")
    name = str(body["name"])
    if kind == "toric":
        rows = body["facet_normals"]
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise ValidationError("facet_normals must be a list of integer rows")
        V = tuple(tuple(_int(x, "facet_normals") for x in r) for r in rows)
        return RingSpecFile(name, kind, p, facet_normals=V)
    if kind == "cyclic_quotient":
        w = body["weights"]
        if not isinstance(w, list):
            raise ValidationError("weights must be a list")
        return RingSpecFile(name, kind, p, n=_int(body["n"], "n"), d=_int(body["d"], "d"),
                            weights=tuple(_int(x, "weights") for x in w))
    return RingSpecFile(name, kind, p, vars=_int(body["vars"], "vars"))


def build_ring(spec: RingSpecFile) -> ToricRing:
    if spec.kind == "toric":
        return toric.make_ring(spec.facet_normals, spec.p, name=spec.name)
    if spec.kind == "cyclic_quotient":
        return toric.cyclic_quotient_ring(spec.n, spec.d, spec.weights, spec.p, name=spec.name)
    R = toric.polynomial_ring(spec.vars, spec.p)
    return toric.ToricRing(R.cone, spec.p, name=spec.name)


# -- registry ----------------------------------------------------------------

def _relation(lhs: tuple[int, ...], rhs: tuple[int, ...]) -> Callable[[list], bool]:
    """Check sum of Hilbert basis elements at lhs == sum at rhs (indices into the sorted basis)."""

    def check(basis: list) -> bool:
        def total(idx):
            return tuple(sum(basis[i][k] for i in idx) for k in range(len(basis[0])))

        return total(lhs) == total(rhs)

    return check


@dataclass(frozen=True)
class RegistryEntry:
    V: tuple[tuple[int, ...], ...]
    description: str
    relation: Optional[Callable[[list], bool]] = None
    generators: int = 0


REGISTRY: dict[str, RegistryEntry] = {
    # basis (1,0), (1,1), (1,2) = x, z, y with x*y = z^2
    "A1": RegistryEntry(((0, 1), (2, -1)), "k[x,y,z]/(xy - z^2)", _relation((0, 2), (1, 1)), 3),
    # basis (0,0,1), (0,1,1), (1,0,1), (1,1,1) with g2 + g3 = g1 + g4, i.e. xy = uv
    "quadric3": RegistryEntry(
        ((1, 0, 0), (0, 1, 0), (-1, 0, 1), (0, -1, 1)), "k[x,y,u,v]/(xy - uv)", _relation((1, 2), (0, 3)), 4
    ),
}


def registry_ring(name: str, p: int) -> ToricRing:
    m = re.fullmatch(r"poly(\d+)", name)
    if m:
        return toric.ToricRing(toric.polynomial_ring(int(m.group(1)), p).cone, p, name=name)
    m = re.fullmatch(r"cyclic(\d+)_(\d+(?:-\d+)*)", name)
    if m:
        weights = tuple(int(w) for w in m.group(2).split("-"))
        return toric.cyclic_quotient_ring(len(weights), int(m.group(1)), weights, p, name=name)
    if name not in REGISTRY:
        raise ValidationError(f"unknown ring {name!r}; known: {sorted(REGISTRY)} plus polyN and cyclicD_w1-w2-...")
    entry = REGISTRY[name]
    R = toric.make_ring(entry.V, p, name=name)
    basis = hilbert_basis(R.cone, 2)
    if len(basis) != entry.generators or (entry.relation and not entry.relation(basis)):
        raise AssertionError(f"registry ring {name} fails its generator relation check: {basis}")
    return R


def load_ring(ref: str, p: Optional[int] = None) -> ToricRing:
    """Registry name or path to a spec file; ``p`` overrides the file's characteristic."""
    path = Path(ref)
    if path.suffix in {".toml", ".ring"} or path.is_file():
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read {ref}: {exc}") from None
        R = build_ring(parse_ring_spec(text))
        return R.with_p(p) if p is not None else R
    if p is None:
        raise ValidationError("registry rings need an explicit --p")
    if not _is_prime(p):
        raise ValidationError(f"p = {p} is not prime")
    return registry_ring(ref, p)


__all__ = ["RingSpecFile", "parse_ring_spec", "build_ring", "registry_ring", "load_ring", "REGISTRY"]
