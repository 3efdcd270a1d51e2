"""Gauss collocation methods: tau(pi) root location, R and verdicts for s = 1..smax.

    python scripts/gauss_table.py --smax 6
"""

import argparse
import time
from dataclasses import dataclass

from collostab.collocation import gauss_pi, method_gauss
from collostab.exactmath import tau_transform
from collostab.rootloc import all_open_rhp, numeric_roots
from collostab.stability import classify


@dataclass
class Config:
    smax: int = 6
    force_full: bool = True


def run(cfg: Config) -> None:
    print(f"{'s':>2} {'tau roots in RHP':>17} {'min Re(root)':>13} {'A_hat':>6} {'I_hat':>6} {'fast s':>8} {'full s':>8}")
    for s in range(1, cfg.smax + 1):
        tau = tau_transform(gauss_pi(s))
        rhp = all_open_rhp(tau).all_open_rhp
        min_re = min(z.real for z in numeric_roots(tau).as_complex())
        t0 = time.perf_counter()
        fast = classify(method_gauss(s))
        t1 = time.perf_counter()
        full = classify(method_gauss(s), force_full=True) if cfg.force_full else fast
        t2 = time.perf_counter()
        agree = fast.summary() == full.summary()
        print(f"{s:>2} {str(rhp):>17} {min_re:>13.6f} {str(full['A_hat']):>6} {str(full['I_hat']):>6}"
              f" {t1 - t0:>8.3f} {t2 - t1:>8.3f}" + ("" if agree else "  fast/full disagree"))
        print(f"   R = {fast.stability.to_str()}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--smax", type=int, default=6)
    ap.add_argument("--no-full", dest="force_full", action="store_false", help="skip the full decision pass")
    run(Config(**vars(ap.parse_args())))


if __name__ == "__main__":
    main()
