"""Torsion classes of cyclic quotient surfaces 1/d(1, w): FT periods and depth.

Every class of such a ring is torsion, so each should come out of finite
F-type and MCM within the scanned window.
"""
import argparse
import math
from dataclasses import dataclass

from frobkit import depth, frobenius, toric


@dataclass
class Config:
    dmax: int = 7
    p: int = 0  # 0 picks the smallest prime coprime to d
    window: int = 6


def smallest_coprime_prime(d: int) -> int:
    return next(x for x in (2, 3, 5, 7, 11, 13) if d % x)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dmax", type=int, default=Config.dmax)
    ap.add_argument("--p", type=int, default=Config.p)
    ap.add_argument("--window", type=int, default=Config.window)
    cfg = Config(**vars(ap.parse_args()))
    for d in range(2, cfg.dmax + 1):
        p = cfg.p or smallest_coprime_prime(d)
        for w in range(1, d):
            if math.gcd(w, d) != 1:
                continue
            R = toric.cyclic_quotient_ring(2, d, (1, w), p)
            periods, mcm = [], 0
            for t in range(d):
                c = toric.make_class(R, [t])
                r = frobenius.ft_test(R, c)
                periods.append((r.pre_period, r.period))
                mcm += depth.depth_scan(R, toric.representative(R, c), cfg.window)[0].is_mcm
            print(f"1/{d}(1,{w}) p={p}  Cl={toric.class_group(R)}  mcm {mcm}/{d}  (e',f) {sorted(set(periods))}")


if __name__ == "__main__":
    main()
