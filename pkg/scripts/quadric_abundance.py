"""Multiplicity of each class of the xy - uv quadric in F^e_* R, with verdicts.

Class k of Cl = Z shows up in the pushforward of R only for |k| <= 1; those
counts grow like q^3 while the others stay zero.
"""
import argparse
from dataclasses import dataclass

from frobkit import depth, frobenius, toric
from frobkit.rings import registry_ring


@dataclass
class Config:
    p: int = 2
    emax: int = 6
    kmax: int = 3
    window: int = 6


def main():
    ap = argparse.ArgumentParser(description="quadric class survey")
    for f in ("p", "emax", "kmax", "window"):
        ap.add_argument(f"--{f}", type=int, default=getattr(Config, f))
    cfg = Config(**vars(ap.parse_args()))
    Q = registry_ring("quadric3", cfg.p)
    zero = (0,) * Q.r
    print(f"{'class':>6}  {'verdict':<14}{'mcm':<6}{'depth<=':<8}b_e")
    for k in range(-cfg.kmax, cfg.kmax + 1):
        c = toric.make_class(Q, [k])
        ab = frobenius.abundance_test(Q, zero, c, cfg.emax)
        v, _ = depth.depth_scan(Q, toric.representative(Q, c), cfg.window)
        print(f"{k:>6}  {ab.verdict:<14}{str(v.is_mcm):<6}{str(v.depth_upper):<8}{list(ab.b_e)}")


if __name__ == "__main__":
    main()
