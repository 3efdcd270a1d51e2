"""Reproduce the worked examples: tableaux, R, verdict matrix and fixture checks.

    python scripts/reproduce_examples.py [--force-full]
"""

import argparse
from dataclasses import dataclass

from collostab.worked_examples import FIXTURES, format_results, run_fixture_suite
from collostab.stability import NOTIONS, classify

MARK = {True: "yes", False: "no"}


@dataclass
class Config:
    force_full: bool = False


def verdict_table(cfg: Config) -> str:
    w = max(len(fx.name) for fx in FIXTURES) + 2
    head = f"{'method':<{w}}" + "".join(f"{n:>7}" for n in NOTIONS)
    lines = [head, "-" * len(head)]
    for fx in FIXTURES:
        method = fx.build()
        rep = classify(method, force_full=cfg.force_full)
        lines.append(f"{fx.name:<{w}}" + "".join(f"{MARK[rep[n]]:>7}" for n in NOTIONS))
        lines.append(f"{'':<4}R = {rep.stability.to_str()}")
    return "\n".join(lines)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--force-full", action="store_true", help="skip the structural shortcuts")
    cfg = Config(**vars(ap.parse_args()))
    print(verdict_table(cfg))
    print()
    print(format_results(run_fixture_suite()))


if __name__ == "__main__":
    main()
