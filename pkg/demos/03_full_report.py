"""Every bound on one random pair with a singular weight.

Upper bounds must sit above the optimized radius and lower bounds below it.
The stated Crawford lower bound is included as printed and can overshoot
(see 04_crawford_counterexample.py); its corrected variant is listed next
to it.
"""

import numpy as np

from semihilbert import bound_report
from semihilbert.fuzz import random_pair

if __name__ == "__main__":
    A, S = random_pair(np.random.default_rng(2024), 4, 1)
    rep = bound_report(A, S, pair_id="demo")
    print(f"dw = {rep.dw.value:.6f}  (cap {rep.dw.upper_cap:.6f})\n")
    for kind in ("upper", "lower"):
        print(f"{kind} bounds")
        for e in sorted((e for e in rep.entries if e.kind == kind), key=lambda e: e.value):
            mark = "ok " if e.holds else "VIOLATED"
            label = e.bound_id + (f" n={e.params['n']}" if "n" in e.params else "")
            print(f"  {label:<20}{e.value:12.6f}  {mark} {','.join(e.flags)}")
