"""Command-line front end.

Every subcommand prints one JSON report envelope on stdout (``--pretty`` for a
plain-text table).  Exit codes: 0 ok, 1 parse/validation error, 2 cap
exceeded, 3 verification failure, 4 hypothesis violated.

Vectors are comma separated; write negative leading entries as
``--coeffs=-1,0,0,0`` so argparse does not read them as flags.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import math
import sys
import time
from fractions import Fraction
from typing import Any, Optional, Sequence

from . import __version__, depth, frobenius, monomial, toric
from .cone import hilbert_basis
from .errors import BoundTooSmall, FrobkitError, ParseError
from .frobenius import FrobeniusLevel
from .rings import load_ring
from .toric import DivClass, ToricRing

log = logging.getLogger("frobkit")

HEURISTIC = "verdict is a finite-range heuristic; liminf statements are not decidable from finitely many e"


# -- encoding -----------------------------------------------------------------

def jsonable(obj: Any) -> Any:
    """Exact JSON form: integers stay integers, rationals become {num, den}."""
    if isinstance(obj, DivClass):
        return {"free": list(obj.free_part), "torsion": list(obj.torsion_part)}
    if isinstance(obj, monomial.MonomialIdeal):
        return {"ideal": str(obj), "gens": sorted(list(g) for g in obj.gens)}
    if isinstance(obj, Fraction):
        return {"num": obj.numerator, "den": obj.denominator}
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if dataclasses.is_dataclass(obj):
        return {f.name: jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj) if not f.name.startswith("_")}
    if isinstance(obj, dict):
        if all(isinstance(k, str) for k in obj):
            return {k: jsonable(v) for k, v in obj.items()}
        return [{"key": jsonable(k), "value": jsonable(v)} for k, v in obj.items()]
    if isinstance(obj, (list, tuple, set, frozenset)):
        return [jsonable(x) for x in obj]
    return str(obj)


def envelope(command: str, ring: Optional[ToricRing], params: dict, result: Any, caveats: Sequence[str], t0: float) -> dict:
    return {
        "command": command,
        "ring": None if ring is None else {"name": ring.name, "p": ring.p, "facet_normals": [list(r) for r in ring.cone.V]},
        "parameters": jsonable(params),
        "result": jsonable(result),
        "caveats": list(caveats),
        "wall_time_seconds_estimate": round(time.perf_counter() - t0, 6),
    }


def _pretty(obj: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines += _pretty(v, indent + 1)
            else:
                lines.append(f"{pad}{k:<24} {v}")
        return lines
    if isinstance(obj, list):
        if all(not isinstance(x, (dict, list)) for x in obj):
            return [pad + ", ".join(map(str, obj))]
        lines = []
        for x in obj:
            sub = _pretty(x, indent + 1)
            lines.append(pad + "- " + sub[0].lstrip())
            lines += sub[1:]
        return lines
    return [pad + str(obj)]


# -- argument helpers ---------------------------------------------------------

def parse_vector(text: str) -> tuple[int, ...]:
    body = text.strip().strip("[]()").replace(" ", "")
    if not body:
        return ()
    try:
        return tuple(int(x) for x in body.split(","))
    except ValueError:
        raise ParseError(f"cannot read integer vector {text!r}") from None


def resolve_class(R: ToricRing, coeffs: Optional[str], cls: Optional[str], what: str) -> tuple[DivClass, tuple[int, ...]]:
    if (coeffs is None) == (cls is None):
        raise ParseError(f"give exactly one of the coefficient-vector or class forms for {what}")
    if coeffs is not None:
        a = parse_vector(coeffs)
        return toric.class_of(R, a), a
    c = toric.make_class(R, parse_vector(cls))
    return c, toric.representative(R, c)


def _class_entry(R: ToricRing, c: DivClass) -> dict:
    return {"class": c, "coeffs": list(toric.representative(R, c)), "order": toric.order_of(R, c)}


# -- commands -----------------------------------------------------------------

def cmd_ring_show(R, args):
    caveats = []
    try:
        hb = hilbert_basis(R.cone, args.bound)
    except BoundTooSmall as exc:
        hb = None
        caveats.append(f"Hilbert basis not certified at bound {args.bound}: {exc}")
    omega = toric.canonical_class(R)
    res = {
        "n": R.n,
        "r": R.r,
        "alpha": R.alpha,
        "rays": [list(x) for x in R.cone.rays],
        "hilbert_basis": hb,
        "class_group": {"free_rank": R.invariants_of_Cl.free_rank, "torsion": list(R.invariants_of_Cl.torsion), "text": str(R.invariants_of_Cl)},
        "canonical_class": omega,
        "gorenstein": omega == toric.trivial_class(R),
    }
    return res, caveats


def cmd_classgroup(R, args):
    inv = R.invariants_of_Cl
    return {
        "free_rank": inv.free_rank,
        "torsion": list(inv.torsion),
        "text": str(inv),
        "smith_diagonal": list(R.smith.diagonal),
    }, []


def cmd_ft(R, args):
    c, a = resolve_class(R, args.coeffs, args.cls, "--coeffs/--class")
    rep = frobenius.ft_test(R, c)
    return {"coeffs": list(a), "class": c, "report": rep}, [] if rep.is_ft else ["class has infinite order: no period"]


def cmd_decompose(R, args):
    c, a = resolve_class(R, args.coeffs, args.cls, "--coeffs/--class")
    D = frobenius.decompose_pushforward(R, a, FrobeniusLevel(R.p, args.e), args.cap)
    summands = [dict(_class_entry(R, k), count=v) for k, v in D.counts.items()]
    return {"coeffs": list(a), "class": c, "q": D.level.q, "total": D.total, "summands": summands}, []


def cmd_signature(R, args):
    data = frobenius.splitting_numbers(R, args.emax, args.cap)
    res = {"a_e": list(data.a_e), "q": list(data.qs), "signature_estimates": list(data.signature_estimates)}
    caveats = []
    if args.emax >= 3:
        v = frobenius.estimate_sdim(data)
        res["sdim_estimate"] = v.sdim
        res["sdim_confident"] = v.confident
        caveats.append(HEURISTIC)
    else:
        caveats.append("sdim needs at least 3 levels")
    return res, caveats


def cmd_abundance(R, args):
    _, src = resolve_class(R, args.source, args.source_class, "--source/--source-class")
    tgt, tgt_coeffs = resolve_class(R, args.target_coeffs, args.target, "--target/--target-coeffs")
    ab = frobenius.abundance_test(R, src, tgt, args.emax, args.cap)
    res = {
        "source_coeffs": list(src),
        "target_coeffs": list(tgt_coeffs),
        "source": ab.source,
        "target": tgt,
        "b_e": list(ab.b_e),
        "q": list(ab.qs),
        "verdict": ab.verdict,
        "growth_exponent_estimate": ab.growth_exponent_fit,
    }
    if len(ab.b_e) >= 3:
        res["depth_lower_bound_estimate"] = frobenius.depth_bound_from_abundance(R.n, R.alpha, ab.b_e, ab.qs)
    return res, [HEURISTIC]


def cmd_depth(R, args):
    c, a = resolve_class(R, args.coeffs, args.cls, "--coeffs/--class")
    v, rep = depth.depth_scan(R, a, args.window)
    res = {
        "coeffs": list(a),
        "class": c,
        "verdict": v,
        "mcm": v.is_mcm,
        "nonzero_counts": [len(x) for x in rep.nonzero],
        "nonzero_below_top": [[{"u": list(u), "rank": h} for u, h in rep.nonzero[i]] for i in range(R.n)],
    }
    return res, [v.caveat]


def cmd_hom_mcm(R, args):
    a, a_coeffs = resolve_class(R, args.ft, args.ft_class, "--ft/--ft-class")
    b, b_coeffs = resolve_class(R, args.target_coeffs, args.target, "--target/--target-coeffs")
    rep = depth.verify_hom_mcm(R, a, b, args.emax, args.window)
    res = {
        "ft_coeffs": list(a_coeffs),
        "target_coeffs": list(b_coeffs),
        "ft_class": a,
        "target": b,
        "target_abundance": rep.target_abundant,
        "steps": [{"e": s.e, "hom_class": s.hom_class, "coeffs": list(s.coeffs), "mcm": s.verdict.is_mcm,
                   "depth_upper": s.verdict.depth_upper} for s in rep.steps],
        "passed": rep.passed,
    }
    return res, [depth.WINDOW_CAVEAT]


def cmd_monomial(args):
    I = monomial.parse_ideal(args.ideal, args.nvars)
    if args.action == "frobpower":
        return {"ideal": I, "q": args.q, "power": monomial.frobenius_power(I, args.q)}, []
    level = FrobeniusLevel(args.p, args.e)
    D = monomial.decompose_pushforward_ideal(I, level, args.cap)
    res = {
        "ideal": I,
        "q": level.q,
        "total": D.total,
        "pieces": [{"piece": k, "count": v} for k, v in sorted(D.pieces.items(), key=lambda kv: (-kv[1], str(kv[0])))],
    }
    if args.target:
        res["target"] = monomial.parse_ideal(args.target, I.n)
        res["copies"] = monomial.count_copies(D, res["target"])
    return res, []


def cmd_syzygy(args):
    s = monomial.syzygy_pushforward(args.d, FrobeniusLevel(args.p, args.e), args.cap)
    return s, []


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="frobkit", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="plain-text output instead of JSON")
    common.add_argument("--cap", type=int, default=None, help="q^n enumeration cap (default $FROBKIT_CAP or 2^24)")
    common.add_argument("-v", "--verbose", action="store_true")
    ringp = argparse.ArgumentParser(add_help=False, parents=[common])
    ringp.add_argument("--ring", required=True, help="registry name (A1, quadric3, polyN, cyclicD_w1-w2) or spec file")
    ringp.add_argument("--p", type=int, default=None, help="characteristic (overrides the spec file)")

    def class_args(sp, coeff_flag="--coeffs", class_flag="--class", dest="cls"):
        sp.add_argument(coeff_flag, dest=coeff_flag.lstrip("-").replace("-", "_"), default=None, help="divisor coefficient vector")
        sp.add_argument(class_flag, dest=dest, default=None, help="class in Smith coordinates (free part first)")

    sub = ap.add_subparsers(dest="command", required=True)
    ring = sub.add_parser("ring", parents=[ringp], help="ring data")
    ring.add_argument("action", choices=["show"])
    ring.add_argument("--bound", type=int, default=3, help="coordinate bound for the Hilbert basis")
    ring.set_defaults(run=cmd_ring_show)

    sp = sub.add_parser("classgroup", parents=[ringp], help="divisor class group")
    sp.set_defaults(run=cmd_classgroup)

    sp = sub.add_parser("ft", parents=[ringp], help="finite F-type test for a divisor class")
    class_args(sp)
    sp.set_defaults(run=cmd_ft)

    sp = sub.add_parser("decompose", parents=[ringp], help="F^e_* M_a as a multiset of classes")
    class_args(sp)
    sp.add_argument("--e", type=int, required=True)
    sp.set_defaults(run=cmd_decompose)

    sp = sub.add_parser("signature", parents=[ringp], help="splitting numbers a_e and sdim estimate")
    sp.add_argument("--emax", type=int, required=True)
    sp.set_defaults(run=cmd_signature)

    sp = sub.add_parser("abundance", parents=[ringp], help="multiplicities b_e and abundance verdict")
    sp.add_argument("--source", default=None, help="source coefficient vector")
    sp.add_argument("--source-class", dest="source_class", default=None)
    sp.add_argument("--target", default=None, help="target class in Smith coordinates")
    sp.add_argument("--target-coeffs", dest="target_coeffs", default=None)
    sp.add_argument("--emax", type=int, required=True)
    sp.set_defaults(run=cmd_abundance)

    sp = sub.add_parser("depth", parents=[ringp], help="Ishida-complex depth scan")
    class_args(sp)
    sp.add_argument("--window", type=int, default=depth.DEFAULT_WINDOW)
    sp.set_defaults(run=cmd_depth)

    sp = sub.add_parser("hom-mcm", parents=[ringp], help="check Hom(M(e), L) is MCM")
    sp.add_argument("--ft", default=None, help="coefficient vector of the finite F-type class")
    sp.add_argument("--ft-class", dest="ft_class", default=None)
    sp.add_argument("--target", default=None, help="target class in Smith coordinates")
    sp.add_argument("--target-coeffs", dest="target_coeffs", default=None)
    sp.add_argument("--emax", type=int, required=True)
    sp.add_argument("--window", type=int, default=depth.DEFAULT_WINDOW)
    sp.set_defaults(run=cmd_hom_mcm)

    mono = sub.add_parser("monomial", help="monomial ideals over a polynomial ring")
    msub = mono.add_subparsers(dest="action", required=True)
    for name in ("decompose", "frobpower"):
        sp = msub.add_parser(name, parents=[common])
        sp.add_argument("--ideal", required=True, help='generators, e.g. "x^2*y, z^3"')
        sp.add_argument("--nvars", type=int, default=None)
        if name == "decompose":
            sp.add_argument("--p", type=int, required=True)
            sp.add_argument("--e", type=int, required=True)
            sp.add_argument("--target", default=None, help="count copies of this ideal")
        else:
            sp.add_argument("--q", type=int, required=True)
        sp.set_defaults(run_plain=cmd_monomial)
    sp = msub.add_parser("syzygy-example", parents=[common])
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--e", type=int, required=True)
    sp.set_defaults(run_plain=cmd_syzygy)

    sp = sub.add_parser("verify", parents=[common], help="run the worked-example acceptance suite")
    sp.add_argument("--suite", default="paper", choices=["paper"])
    sp.set_defaults(run_plain=None)
    return ap


def _params(args) -> dict:
    skip = {"run", "run_plain", "pretty", "verbose", "command"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _emit(env: dict, pretty: bool) -> None:
    if pretty:
        print("\n".join(_pretty({k: v for k, v in env.items() if k != "parameters"})))
    else:
        print(json.dumps(env, sort_keys=True, indent=2))


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    logging.captureWarnings(True)
    t0 = time.perf_counter()
    try:
        if args.command == "verify":
            from .verify import run_suite

            results = run_suite(args.suite)
            for c in results:
                log.info(c.line())
            ok = all(c.passed for c in results)
            env = envelope("verify", None, _params(args), {
                "passed": ok,
                "criteria": [{"id": c.id, "name": c.name, "passed": c.passed, "detail": c.detail} for c in results],
                "failed": [c.id for c in results if not c.passed],
            }, [], t0)
            if args.pretty:
                print("\n".join(c.line() for c in results))
            else:
                _emit(env, False)
            return 0 if ok else 3
        if getattr(args, "run_plain", None):
            result, caveats = args.run_plain(args)
            ring = None
        else:
            ring = load_ring(args.ring, args.p)
            result, caveats = args.run(ring, args)
        command = args.command if args.command not in {"ring", "monomial"} else f"{args.command} {args.action}"
        _emit(envelope(command, ring, _params(args), result, caveats, t0), args.pretty)
        return 0
    except FrobkitError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
