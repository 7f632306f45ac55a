"""Betti numbers, Euler characteristics and the oracle comparison for all 1 <= k < n <= N."""
import argparse
from dataclasses import dataclass

from mnk.coho import betti, euler_characteristic, hilbert_oracle, weyl_index


@dataclass
class Config:
    max_n: int = 6
    cache_dir: str | None = ".mnk-cache"


def main(cfg: Config):
    print(f"{'n':>2} {'k':>2} {'chi':>6}  oracle  betti")
    for n in range(2, cfg.max_n + 1):
        for k in range(1, n):
            d = betti(n, k, cache_dir=cfg.cache_dir)
            ok = d == hilbert_oracle(n, k) and sum(d) == weyl_index(n, k)
            print(f"{n:>2} {k:>2} {euler_characteristic(n, k):>6}  {'ok' if ok else 'BAD':>6}  {d}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-n", type=int, default=Config.max_n)
    p.add_argument("--cache-dir", default=Config.cache_dir)
    a = p.parse_args()
    main(Config(a.max_n, a.cache_dir))
