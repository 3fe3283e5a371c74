"""H_1(C(k)) = Z/k over Z, and acyclicity over Q and over Z/p for p not dividing k."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from topinv.generators import ck_complex
from topinv.homology import homology
from topinv.rings import QQ, ZZ, PrimeField


@dataclass
class Config:
    k_max: int = 30
    primes: tuple = (2, 3, 5, 7)
    strategy: str = "morse"


def main(cfg: Config):
    print(f"{'k':>3} {'f-vector':>16} {'H_1':>6} {'Q-acyclic':>9} " + " ".join(f"b1(Z/{p})" for p in cfg.primes)
          + "  secs")
    for k in range(2, cfg.k_max + 1):
        t = time.perf_counter()
        K = ck_complex(k)
        H = homology(K, ZZ, strategy=cfg.strategy)
        acyc = all(g.is_trivial for g in homology(K, QQ, reduced=True, strategy=cfg.strategy).groups)
        mods = [homology(K, PrimeField(p), strategy=cfg.strategy).betti()[1] for p in cfg.primes]
        print(f"{k:>3} {str(K.f_vector()):>16} {H[1].format():>6} {str(acyc):>9} "
              + " ".join(f"{b:>7}" for b in mods) + f"  {time.perf_counter() - t:.3f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k-max", type=int, default=30)
    ap.add_argument("--strategy", choices=("raw", "morse"), default="morse")
    a = ap.parse_args()
    main(Config(k_max=a.k_max, strategy=a.strategy))
