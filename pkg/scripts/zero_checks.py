"""Run the forced-zero checks for every proposition instance and tabulate the outcomes."""
import argparse
import logging
from dataclasses import dataclass

from mnk.zerocheck import verify_proposition

CASES = [
    ("P1_4", 3, 1), ("P1_4", 4, 2), ("P1_4", 5, 3), ("P6_2", 3, 1), ("P6_2", 4, 2),
    ("P1_5", 2, 1), ("P1_5", 3, 1), ("P1_5", 3, 2), ("P1_5", 4, 2),
    ("P6_4", 3, 1), ("P6_4", 4, 2), ("P6_5", 4, 2), ("P6_5", 5, 3),
    ("EX7_1", 5, 3), ("EX7_2", 6, 4),
]


@dataclass
class Config:
    timeout: float = 3600.0
    complex_budget: float = 10.0
    only: str | None = None


def main(cfg: Config):
    for prop, n, k in CASES:
        if cfg.only and prop != cfg.only:
            continue
        r = verify_proposition(prop, n, k, timeout=cfg.timeout, complex_budget=cfg.complex_budget)
        print(f"{prop:>5} ({n},{k})  {r.outcome:<12} C={str(r.complex_verdict):<5} R={str(r.real_verdict):<5} "
              f"{r.unknown_count:>3} unknowns {r.constraint_count:>4} eqs  {r.elapsed:7.1f}s  {r.stage}")
        for note in r.notes:
            print(f"{'':14}{note}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--timeout", type=float, default=Config.timeout)
    p.add_argument("--complex-budget", type=float, default=Config.complex_budget)
    p.add_argument("--only", help="a single proposition id")
    p.add_argument("-v", action="store_true", help="debug logging")
    a = p.parse_args()
    logging.basicConfig(level=logging.DEBUG if a.v else logging.WARNING)
    main(Config(a.timeout, a.complex_budget, a.only))
