"""Splitting numbers a_e and the ratios a_e / q^n for a few rings.

    python scripts/signature_table.py --rings A1:3 quadric3:2 cyclic5_1-2:3 --emax 4
"""
import argparse
from dataclasses import dataclass, field

from frobkit import frobenius
from frobkit.rings import registry_ring


@dataclass
class Config:
    rings: list = field(default_factory=lambda: ["A1:3", "quadric3:2", "cyclic5_1-2:3"])
    emax: int = 4
    cap: int = 2**24


def run(cfg: Config) -> list[dict]:
    rows = []
    for spec in cfg.rings:
        name, p = spec.split(":")
        R = registry_ring(name, int(p))
        e_max = cfg.emax
        while e_max > 1 and R.p ** (e_max * R.n) > cfg.cap:
            e_max -= 1
        data = frobenius.splitting_numbers(R, e_max, cfg.cap)
        verdict = frobenius.estimate_sdim(data) if e_max >= 3 else None
        for e, (a, s) in enumerate(zip(data.a_e, data.signature_estimates), 1):
            rows.append({"ring": spec, "e": e, "q": R.p**e, "a_e": a, "ratio": float(s),
                         "sdim": None if verdict is None else verdict.sdim})
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rings", nargs="+", default=Config().rings, help="NAME:P registry entries")
    ap.add_argument("--emax", type=int, default=Config.emax)
    ap.add_argument("--cap", type=int, default=Config.cap)
    cfg = Config(**vars(ap.parse_args()))
    print(f"{'ring':<16}{'e':>3}{'q':>6}{'a_e':>12}{'a_e/q^n':>12}{'sdim':>6}")
    for r in run(cfg):
        print(f"{r['ring']:<16}{r['e']:>3}{r['q']:>6}{r['a_e']:>12}{r['ratio']:>12.6f}{str(r['sdim']):>6}")


if __name__ == "__main__":
    main()
