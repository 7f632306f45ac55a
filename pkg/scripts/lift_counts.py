"""Count and check the block-form linear lifts of the classified endomorphisms."""
import argparse
from dataclasses import dataclass, field
from fractions import Fraction

from mnk.endo import classified_endo, count_lifts, enumerate_classified_lifts, gram_report, lift_restricts_to


@dataclass
class Config:
    pairs: list = field(default_factory=lambda: [(2, 1), (3, 1), (3, 2), (4, 2)])
    ms: list = field(default_factory=lambda: [Fraction(1), Fraction(2), Fraction(-1, 2)])


def main(cfg: Config):
    for n, k in cfg.pairs:
        for m in cfg.ms:
            c = count_lifts(n, k, m)
            targets = {s: classified_endo(n, k, m, s) for s in (1, -1)}
            good = sum(gram_report(L.H).D == m * m and lift_restricts_to(L.H, targets[L.sign])
                       for L in enumerate_classified_lifts(n, k, m))
            print(f"({n},{k}) m={m}: {c.total} lifts (expected {c.expected}), "
                  f"+1: {c.per_sign[1]}, -1: {c.per_sign[-1]}, checked {good}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--m", action="append", type=Fraction, help="repeatable; default 1, 2, -1/2")
    a = p.parse_args()
    cfg = Config()
    if a.m:
        cfg.ms = a.m
    main(cfg)
