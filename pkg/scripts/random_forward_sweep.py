"""Random forward node sets: how often each notion holds, and a search for I without A.

Small forward methods (s <= 4) never show I without A; larger ones can.
The sweep counts both and prints the first few I-not-A examples found.

    python scripts/random_forward_sweep.py --samples 300 --smax 6 --seed 1
"""

import argparse
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from collostab.collocation import method_from_nodes
from collostab.stability import NOTIONS, classify


@dataclass
class Config:
    samples: int = 300
    smin: int = 1
    smax: int = 6
    hi: int = 2
    max_den: int = 12
    seed: int = 1
    show: int = 5


def draw_nodes(rng: random.Random, s: int, cfg: Config) -> list[Fraction]:
    nodes = set()
    while len(nodes) < s:
        q = rng.randint(1, cfg.max_den)
        nodes.add(Fraction(rng.randint(0, cfg.hi * q), q))
    return sorted(nodes)


def run(cfg: Config) -> None:
    rng = random.Random(cfg.seed)
    counts: dict[int, Counter] = {}
    totals: Counter = Counter()
    examples = []
    for _ in range(cfg.samples):
        s = rng.randint(cfg.smin, cfg.smax)
        nodes = draw_nodes(rng, s, cfg)
        rep = classify(method_from_nodes(nodes))
        totals[s] += 1
        c = counts.setdefault(s, Counter())
        for n in NOTIONS:
            c[n] += rep[n]
        if rep["I"] and not rep["A"]:
            c["I-not-A"] += 1
            if len(examples) < cfg.show:
                examples.append((nodes, rep.stability.to_str()))
    print(f"{'s':>2} {'count':>6}" + "".join(f"{n:>7}" for n in NOTIONS) + f"{'I-not-A':>9}")
    for s in sorted(counts):
        c = counts[s]
        print(f"{s:>2} {totals[s]:>6}" + "".join(f"{c[n]:>7}" for n in NOTIONS) + f"{c['I-not-A']:>9}")
    for nodes, r in examples:
        print("I but not A:", ", ".join(map(str, nodes)), " R =", r)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(Config()).items():
        ap.add_argument("--" + name.replace("_", "-"), dest=name, type=int, default=default)
    run(Config(**vars(ap.parse_args())))


if __name__ == "__main__":
    main()
